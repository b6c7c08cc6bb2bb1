#include "ihlab/lattice.hpp"

#include <json.hpp>

#include "ihlab/errors.hpp"
#include "ihlab_fixture_data.hpp"

namespace ihlab {

namespace {

using json = nlohmann::json;

Matrix<mpq_class> parse_gram(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("gram must be a nonempty array of rows");
  const std::size_t n = j.size();
  Matrix<mpq_class> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw InputError("gram must be square");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = j[i][k];
      if (e.is_string())
        g(i, k) = parse_rational(e.get<std::string>());
      else if (e.is_number_integer())
        g(i, k) = mpq_class(static_cast<long>(e.get<std::int64_t>()));
      else
        throw InputError("gram entries must be rational strings or integers");
    }
  }
  return g;
}

std::optional<std::pair<std::size_t, std::size_t>> parse_pair(const json& j) {
  if (!j.contains("hyperbolic_pair") || j["hyperbolic_pair"].is_null()) return std::nullopt;
  const auto& p = j["hyperbolic_pair"];
  if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
    throw InputError("hyperbolic_pair must be [i, j] with nonnegative indices");
  return std::make_pair(p[0].get<std::size_t>(), p[1].get<std::size_t>());
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

void check_declared(const LatticeFixture& fx, const json& j) {
  auto sig = fx.lattice.signature();
  if (sig != fx.declared_signature)
    throw InputError("fixture " + fx.name + ": signature (" + std::to_string(sig.first) + "," +
                     std::to_string(sig.second) + ") differs from declared (" +
                     std::to_string(fx.declared_signature.first) + "," +
                     std::to_string(fx.declared_signature.second) + ")");
  if (j.value("even", false) && !fx.lattice.is_even())
    throw InputError("fixture " + fx.name + ": lattice is declared even but is not");
}

}  // namespace

QuadraticLattice::QuadraticLattice(Matrix<mpq_class> gram,
                                   std::optional<std::pair<std::size_t, std::size_t>> hyperbolic_pair)
    : gram_(std::move(gram)), hyperbolic_pair_(hyperbolic_pair) {
  const std::size_t n = gram_.rows();
  if (n == 0 || gram_.cols() != n) throw InputError("gram matrix must be square and nonempty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i))
        throw InputError("gram matrix not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (rank(Rationals{}, gram_) != n) throw InputError("gram matrix is degenerate");
  if (hyperbolic_pair_) {
    auto [e, f] = *hyperbolic_pair_;
    if (e >= n || f >= n || e == f) throw InputError("hyperbolic_pair indices out of range");
    if (gram_(e, e) != 0 || gram_(f, f) != 0 || gram_(e, f) != 1)
      throw InputError("hyperbolic_pair must satisfy q(e) = q(f) = 0 and (e, f) = 1");
  }
}

mpq_class QuadraticLattice::pair(std::span<const mpq_class> x, std::span<const mpq_class> y) const {
  const std::size_t n = b2();
  if (x.size() != n || y.size() != n)
    throw InputError("lattice pairing: expected vectors of length " + std::to_string(n));
  mpq_class s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    mpq_class row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(y[j]) != 0 && sgn(gram_(i, j)) != 0) row += gram_(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

std::pair<std::size_t, std::size_t> QuadraticLattice::signature() const {
  // symmetric elimination by congruence; Sylvester's law of inertia
  Matrix<mpq_class> a = gram_;
  const std::size_t n = a.rows();
  std::size_t pos = 0, neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(a(piv, piv)) == 0) ++piv;
    if (piv == n) {
      // all remaining diagonal entries vanish: e_k <- e_k + e_j for some a(k, j) != 0
      std::size_t r = n, c = n;
      for (std::size_t i = k; i < n && r == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (sgn(a(i, j)) != 0) {
            r = i;
            c = j;
            break;
          }
      if (r == n) break;  // remaining block is zero
      for (std::size_t j = 0; j < n; ++j) a(r, j) += a(c, j);
      for (std::size_t i = 0; i < n; ++i) a(i, r) += a(i, c);
      piv = r;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, piv));
    }
    mpq_class d = a(k, k);
    (sgn(d) > 0 ? pos : neg)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      mpq_class factor = a(i, k) / d;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) a(k, i) = 0;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < i; ++j) a(j, i) = a(i, j);
  }
  return {pos, neg};
}

bool QuadraticLattice::is_even() const {
  for (std::size_t i = 0; i < b2(); ++i)
    for (std::size_t j = 0; j < b2(); ++j) {
      if (gram_(i, j).get_den() != 1) return false;
      if (i == j && gram_(i, i).get_num() % 2 != 0) return false;
    }
  return true;
}

mpq_class QuadraticLattice::determinant() const {
  Matrix<mpq_class> a = gram_;
  const std::size_t n = a.rows();
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(a(piv, k)) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      mpq_class factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

QuadraticLattice QuadraticLattice::direct_sum(const QuadraticLattice& other) const {
  const std::size_t n = b2(), m = other.b2();
  Matrix<mpq_class> g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = gram_(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = other.gram_(i, j);
  auto hp = hyperbolic_pair_;
  if (!hp && other.hyperbolic_pair_)
    hp = std::make_pair(other.hyperbolic_pair_->first + n, other.hyperbolic_pair_->second + n);
  return QuadraticLattice(std::move(g), hp);
}

RationalVector QuadraticLattice::basis_vector(std::size_t i) const {
  RationalVector v(b2());
  v.at(i) = 1;
  return v;
}

bool is_lattice_alias(const std::string& alias) {
  return alias == "k3" || alias == "k3n" || alias == "toy5";
}

LatticeFixture load_lattice_fixture(const std::string& alias, int n) {
  auto from_text = [](const char* text) {
    json j = parse_json(text, "fixture data");
    LatticeFixture fx;
    fx.name = j.at("name").get<std::string>();
    auto sig = j.at("signature");
    fx.declared_signature = {sig[0].get<std::size_t>(), sig[1].get<std::size_t>()};
    if (j.contains("gram")) fx.lattice = QuadraticLattice(parse_gram(j["gram"]), parse_pair(j));
    return std::make_pair(fx, j);
  };
  if (alias == "k3" || alias == "toy5") {
    auto [fx, j] = from_text(alias == "k3" ? fixture_data::kK3 : fixture_data::kToy5);
    check_declared(fx, j);
    return fx;
  }
  if (alias == "k3n") {
    if (n < 2) throw InputError("lattice k3n needs n >= 2 (the extra summand is <-2(n-1)>)");
    auto [base, bj] = from_text(fixture_data::kK3);
    check_declared(base, bj);
    auto [fx, j] = from_text(fixture_data::kK3n);
    Matrix<mpq_class> extra(1, 1);
    extra(0, 0) = mpq_class(-2L * (n - 1));
    fx.lattice = base.lattice.direct_sum(QuadraticLattice(std::move(extra)));
    check_declared(fx, j);
    return fx;
  }
  throw InputError("unknown lattice alias '" + alias + "' (expected k3, k3n or toy5)");
}

QuadraticLattice lattice_from_json_text(const std::string& text) {
  json j = parse_json(text, "lattice file");
  if (!j.contains("gram")) throw InputError("lattice file has no 'gram' field");
  return QuadraticLattice(parse_gram(j["gram"]), parse_pair(j));
}

}  // namespace ihlab

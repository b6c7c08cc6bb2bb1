#include "ihlab/verbitsky.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ihlab/errors.hpp"

namespace ihlab {

namespace {

using Poly = std::map<Monomial, mpq_class>;

Monomial times(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Monomial times(const Monomial& a, std::uint16_t i) {
  Monomial out(a);
  out.insert(std::upper_bound(out.begin(), out.end(), i), i);
  return out;
}

mpz_class factorial(std::size_t k) {
  mpz_class r = 1;
  for (std::size_t i = 2; i <= k; ++i) r *= static_cast<unsigned long>(i);
  return r;
}

/// prod_i a_i! for the exponent vector of m
mpz_class exponent_factorial(const Monomial& m) {
  mpz_class r = 1;
  for (std::size_t s = 0; s < m.size();) {
    std::size_t e = s;
    while (e < m.size() && m[e] == m[s]) ++e;
    r *= factorial(e - s);
    s = e;
  }
  return r;
}

/// The unnormalized polarization of q^n: phi0(x^a) = a! coeff_a(q^n) / (2n)!.
Poly polarization(const QuadraticLattice& lat, int n) {
  const std::size_t b2 = lat.b2();
  Poly q;
  for (std::size_t i = 0; i < b2; ++i)
    for (std::size_t j = i; j < b2; ++j) {
      const mpq_class& g = lat.gram()(i, j);
      if (sgn(g) == 0) continue;
      q[Monomial{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)}] = (i == j) ? g : mpq_class(2 * g);
    }
  Poly power{{Monomial{}, mpq_class(1)}};
  for (int step = 0; step < n; ++step) {
    Poly next;
    for (const auto& [ma, ca] : power)
      for (const auto& [mb, cb] : q) next[times(ma, mb)] += ca * cb;
    power.clear();
    for (auto& [m, c] : next)
      if (sgn(c) != 0) power.emplace(m, c);
  }
  const mpq_class denom(factorial(2 * static_cast<std::size_t>(n)));
  for (auto& [m, c] : power) c = c * mpq_class(exponent_factorial(m)) / denom;
  return power;
}

std::map<Monomial, std::size_t> index_of(const std::vector<Monomial>& basis) {
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

/// Primitive integral representative with positive leading entry.
RationalVector normalize_line(RationalVector v) {
  mpz_class l = 1, g = 0;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g == 0) return v;
  int sign = 0;
  for (const auto& x : v)
    if (sgn(x) != 0) {
      sign = sgn(x);
      break;
    }
  for (auto& x : v) x = x / mpq_class(g) * sign;
  return v;
}

bool rational_sqrt(const mpq_class& d, mpq_class& out) {
  if (sgn(d) < 0) return false;
  if (!mpz_perfect_square_p(d.get_num_mpz_t()) || !mpz_perfect_square_p(d.get_den_mpz_t())) return false;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), d.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), d.get_den_mpz_t());
  out = mpq_class(a, b);
  out.canonicalize();
  return true;
}

class IsotropicSampler {
 public:
  IsotropicSampler(const QuadraticLattice& lat, std::uint64_t seed) : lat_(lat), rng_(seed), coeff_(-3, 3) {}

  RationalVector next() {
    for (std::size_t attempt = 0; attempt < 100000; ++attempt) {
      const bool use_pair = lat_.hyperbolic_pair() && attempt % 4 == 3;
      auto v = use_pair ? from_pair() : from_discriminant();
      if (v.empty()) continue;
      v = normalize_line(std::move(v));
      bool nonzero = std::any_of(v.begin(), v.end(), [](const mpq_class& x) { return sgn(x) != 0; });
      if (!nonzero || lat_.q(v) != 0) continue;
      if (!seen_.insert(key(v)).second) continue;
      return v;
    }
    throw ArithmeticObstruction("no new rational isotropic vector found after 100000 attempts");
  }

 private:
  RationalVector random_vector() {
    RationalVector v(lat_.b2());
    for (auto& x : v) x = coeff_(rng_);
    return v;
  }

  // q(v + t w) = 0 solved for rational t
  RationalVector from_discriminant() {
    auto v = random_vector();
    auto w = random_vector();
    mpq_class a = lat_.q(w), b = lat_.pair(v, w), c = lat_.q(v);
    mpq_class t;
    if (sgn(a) == 0) {
      if (sgn(b) == 0) return sgn(c) == 0 ? v : RationalVector{};
      t = -c / (2 * b);
    } else {
      mpq_class s;
      if (!rational_sqrt(b * b - a * c, s)) return {};
      t = (rng_() & 1) ? mpq_class((s - b) / a) : mpq_class((-b - s) / a);
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += t * w[i];
    return v;
  }

  // x' = x - (x,f) e - (x,e) f is orthogonal to e and f; then
  // a e - q(x')/(2a) f + x' is isotropic
  RationalVector from_pair() {
    auto [ei, fi] = *lat_.hyperbolic_pair();
    auto e = lat_.basis_vector(ei), f = lat_.basis_vector(fi);
    auto x = random_vector();
    mpq_class xf = lat_.pair(x, f), xe = lat_.pair(x, e);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= xf * e[i] + xe * f[i];
    int a = 0;
    while (a == 0) a = coeff_(rng_);
    mpq_class b = -lat_.q(x) / (2 * a);
    x[ei] += a;
    x[fi] += b;
    return x;
  }

  static std::string key(const RationalVector& v) {
    std::string s;
    for (const auto& x : v) s += x.get_str() + ",";
    return s;
  }

  const QuadraticLattice& lat_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> coeff_;
  std::set<std::string> seen_;
};

/// Row-echelon basis mod p, grown one vector at a time.  Reduction keeps
/// the working vector in unreduced 128-bit accumulators and only reduces
/// the entry at each pivot as it is reached.
class IncrementalEchelon {
 public:
  IncrementalEchelon(const PrimeField& f, std::size_t dim) : f_(f), dim_(dim), row_at_(dim, npos) {}

  std::size_t rank() const { return rows_.size(); }

  bool insert(const VectorOver<PrimeField>& v) {
    std::vector<unsigned __int128> acc(v.begin(), v.end());
    const std::uint64_t p = f_.modulus();
    for (std::size_t c = 0; c < dim_; ++c) {
      std::uint64_t x = f_.reduce(acc[c]);
      if (x == 0) continue;
      if (row_at_[c] == npos) {
        VectorOver<PrimeField> row(dim_, 0);
        std::uint64_t inv = f_.inv(x);
        for (std::size_t j = c; j < dim_; ++j) row[j] = f_.mul(f_.reduce(acc[j]), inv);
        row_at_[c] = rows_.size();
        rows_.push_back(std::move(row));
        return true;
      }
      const auto& row = rows_[row_at_[c]];
      const std::uint64_t m = p - x;
      for (std::size_t j = c; j < dim_; ++j)
        if (row[j]) acc[j] += static_cast<unsigned __int128>(m) * row[j];
    }
    return false;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  PrimeField f_;
  std::size_t dim_;
  std::vector<std::size_t> row_at_;
  std::vector<VectorOver<PrimeField>> rows_;
};

/// alpha^k in the monomial basis of Sym^k: coefficient (k!/a!) alpha^a.
VectorOver<PrimeField> power_in_sym(const PrimeField& f, const RationalVector& alpha,
                                    const std::vector<Monomial>& basis, std::size_t k) {
  auto a = convert_vector(f, std::span<const mpq_class>(alpha));
  const mpz_class kf = factorial(k);
  VectorOver<PrimeField> out(basis.size(), 0);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    std::uint64_t c = f.from_rational(mpq_class(kf / exponent_factorial(basis[r])));
    for (auto i : basis[r]) c = f.mul(c, a[i]);
    out[r] = c;
  }
  return out;
}

}  // namespace

std::vector<Monomial> monomial_basis(std::size_t b2, std::size_t k) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::uint16_t first) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = first; i < b2; ++i) {
      cur.push_back(static_cast<std::uint16_t>(i));
      self(self, static_cast<std::uint16_t>(i));
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<RationalVector> sample_isotropic(const QuadraticLattice& lattice, std::uint64_t seed, std::size_t count) {
  IsotropicSampler sampler(lattice, seed);
  std::vector<RationalVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

ShConstruction build_sh_construction(const QuadraticLattice& lattice, int n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("build_sh needs n >= 1");
  const std::size_t b2 = lattice.b2();
  const std::size_t top = 2 * static_cast<std::size_t>(n);
  const std::size_t half = static_cast<std::size_t>(n);
  if (b2 > 65535) throw PreconditionError("b2 too large");

  ShConstruction sh;
  std::vector<std::vector<Monomial>> sym(top + 1);
  for (std::size_t k = 0; k <= top; ++k) sym[k] = monomial_basis(b2, k);
  std::vector<std::map<Monomial, std::size_t>> idx(half + 1);
  for (std::size_t k = 0; k <= half; ++k) idx[k] = index_of(sym[k]);

  // polarization, normalized so (ef)^n (or the first nonvanishing monomial) has value 1
  Poly phi = polarization(lattice, n);
  if (phi.empty()) throw ConstructionError("q^n vanishes identically");
  if (auto hp = lattice.hyperbolic_pair()) {
    Monomial ef;
    for (int i = 0; i < n; ++i) ef = times(ef, Monomial{static_cast<std::uint16_t>(std::min(hp->first, hp->second)),
                                                        static_cast<std::uint16_t>(std::max(hp->first, hp->second))});
    sh.phi_scale = phi.at(ef);
  } else {
    sh.phi_scale = phi.begin()->second;
  }
  for (auto& [m, c] : phi) c /= sh.phi_scale;
  auto phi_at = [&](const Monomial& m) {
    auto it = phi.find(m);
    return it == phi.end() ? mpq_class(0) : it->second;
  };

  // degree-(n+1) component of the ideal: span of sampled alpha^{n+1}
  {
    PrimeField f(PrimeField::kDefaultPrime);
    const auto& upper = sym[half + 1];
    const auto& lower = sym[half - 1];
    sh.ideal_target = upper.size() - lower.size();
    Matrix<std::uint64_t> catalecticant(upper.size(), lower.size());
    for (std::size_t r = 0; r < upper.size(); ++r)
      for (std::size_t c = 0; c < lower.size(); ++c) catalecticant(r, c) = f.from_rational(phi_at(times(upper[r], lower[c])));
    IncrementalEchelon ech(f, upper.size());
    IsotropicSampler sampler(lattice, seed);
    std::size_t stable = 0;
    const std::size_t budget = sh.ideal_target + 200;
    while (!(stable >= 10 && ech.rank() == sh.ideal_target)) {
      if (sh.samples_drawn >= budget)
        throw ConstructionError("isotropic span did not saturate: rank " + std::to_string(ech.rank()) + " of target " +
                                std::to_string(sh.ideal_target) + " after " + std::to_string(sh.samples_drawn) +
                                " samples (dim Sym^" + std::to_string(half + 1) + " = " +
                                std::to_string(upper.size()) + ")");
      auto alpha = sampler.next();
      ++sh.samples_drawn;
      auto v = power_in_sym(f, alpha, upper, half + 1);
      auto pairing = vec_mat(f, std::span<const std::uint64_t>(v), catalecticant);
      if (!std::all_of(pairing.begin(), pairing.end(), [](std::uint64_t x) { return x == 0; }))
        throw ConstructionError("power of an isotropic class pairs nontrivially with Sym^" + std::to_string(half - 1));
      stable = ech.insert(v) ? 0 : stable + 1;
    }
    sh.ideal_rank = ech.rank();
  }

  GradedAlgebraModel& m = sh.model;
  m.name = "SH(b2=" + std::to_string(b2) + ",n=" + std::to_string(n) + ")";
  m.n = n;
  m.lattice = lattice;
  m.marking = marking_from_hyperbolic_pair(lattice);
  for (std::size_t k = 0; k <= top; ++k) m.dims.push_back(sym[k <= half ? k : top - k].size());
  m.integral = RationalVector{mpq_class(1)};

  m.h2_action.assign(b2, {});
  for (std::size_t i = 0; i < b2; ++i) {
    const auto gi = static_cast<std::uint16_t>(i);
    auto& blocks = m.h2_action[i];
    for (std::size_t k = 0; k < top; ++k) {
      Matrix<mpq_class> b(m.dims[k], m.dims[k + 1]);
      if (k < half) {
        for (std::size_t r = 0; r < sym[k].size(); ++r) b(r, idx[k + 1].at(times(sym[k][r], gi))) = 1;
      } else if (k == half) {
        const auto& lower = sym[half - 1];
        for (std::size_t r = 0; r < sym[half].size(); ++r) {
          auto xm = times(sym[half][r], gi);
          for (std::size_t c = 0; c < lower.size(); ++c) b(r, c) = phi_at(times(xm, lower[c]));
        }
      } else {
        // coordinates over Sym^{2n-k} -> Sym^{2n-k-1}: c'(m) = c(x_i m)
        const std::size_t src = top - k;
        for (std::size_t c = 0; c < sym[src - 1].size(); ++c) b(idx[src].at(times(sym[src - 1][c], gi)), c) = 1;
      }
      blocks.push_back(std::move(b));
    }
  }

  sh.projection.resize(top + 1);
  for (std::size_t k = half + 1; k <= top; ++k) {
    Matrix<mpq_class> p(sym[k].size(), sym[top - k].size());
    for (std::size_t r = 0; r < sym[k].size(); ++r)
      for (std::size_t c = 0; c < sym[top - k].size(); ++c) p(r, c) = phi_at(times(sym[k][r], sym[top - k][c]));
    sh.projection[k] = std::move(p);
  }
  sh.monomials = std::move(sym);
  return sh;
}

GradedAlgebraModel build_sh(const QuadraticLattice& lattice, int n, std::uint64_t seed) {
  return build_sh_construction(lattice, n, seed).model;
}

}  // namespace ihlab

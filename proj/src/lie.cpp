#include "ihlab/lie.hpp"

#include <chrono>
#include <random>
#include <set>

#include "ihlab/errors.hpp"
#include "ihlab/sl2.hpp"

namespace ihlab {

template <class F>
MatrixOver<F> lie_bracket(const F& f, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw InputError("lie_bracket: operators must be square of the same size (" + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                     ")");
  return subtract(f, multiply(f, b, a), multiply(f, a, b));
}

// ---------------------------------------------------------------------------
// OperatorSpan

template <class F>
struct OperatorSpan<F>::Impl {
  using S = typename F::Scalar;
  F f;
  std::size_t len;
  std::vector<VectorOver<F>> rows;
  std::vector<std::size_t> pivots;
  // prime field only: random functional and its values on the rows
  VectorOver<F> functional;
  VectorOver<F> rho;

  Impl(const F& field, std::size_t n, std::uint64_t seed) : f(field), len(n * n) {
    if constexpr (std::is_same_v<F, PrimeField>) {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::uint64_t> dist(1, f.modulus() - 1);
      functional.resize(len);
      for (auto& x : functional) x = dist(rng);
    }
  }

  S evaluate(const S* v) const
    requires std::is_same_v<F, PrimeField>
  {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < len; ++j)
      if (v[j]) acc += static_cast<unsigned __int128>(functional[j]) * v[j];
    S s = f.reduce(acc);
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (v[pivots[k]]) f.sub_mul(s, v[pivots[k]], rho[k]);
    return s;
  }

  bool contains(const S* v) const {
    if constexpr (std::is_same_v<F, PrimeField>) {
      return evaluate(v) == 0;
    } else {
      std::vector<bool> is_pivot(len, false);
      for (auto p : pivots) is_pivot[p] = true;
      for (std::size_t j = 0; j < len; ++j) {
        if (is_pivot[j]) continue;
        S r = v[j];
        for (std::size_t k = 0; k < rows.size(); ++k) {
          const S& c = v[pivots[k]];
          if (!f.is_zero(c) && !f.is_zero(rows[k][j])) f.sub_mul(r, c, rows[k][j]);
        }
        if (!f.is_zero(r)) return false;
      }
      return true;
    }
  }

  VectorOver<F> residual(const S* v) const {
    if constexpr (std::is_same_v<F, PrimeField>) {
      const std::uint64_t p = f.modulus();
      std::vector<unsigned __int128> acc(v, v + len);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::uint64_t c = v[pivots[k]];
        if (!c) continue;
        const std::uint64_t m = p - c;
        const auto& row = rows[k];
        for (std::size_t j = 0; j < len; ++j)
          if (row[j]) acc[j] += static_cast<unsigned __int128>(m) * row[j];
      }
      VectorOver<F> out(len);
      for (std::size_t j = 0; j < len; ++j) out[j] = f.reduce(acc[j]);
      return out;
    } else {
      VectorOver<F> out(v, v + len);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const S c = v[pivots[k]];
        if (f.is_zero(c)) continue;
        for (std::size_t j = 0; j < len; ++j)
          if (!f.is_zero(rows[k][j])) f.sub_mul(out[j], c, rows[k][j]);
      }
      return out;
    }
  }

  bool insert(const S* v) {
    if (contains(v)) return false;
    auto r = residual(v);
    std::size_t c = 0;
    while (c < len && f.is_zero(r[c])) ++c;
    if (c == len) return false;  // functional collision on a member: cannot happen for an exact residual
    auto inv = f.inv(r[c]);
    for (auto& x : r)
      if (!f.is_zero(x)) x = f.mul(x, inv);
    S rho_new{};
    if constexpr (std::is_same_v<F, PrimeField>) {
      unsigned __int128 acc = 0;
      for (std::size_t j = 0; j < len; ++j)
        if (r[j]) acc += static_cast<unsigned __int128>(functional[j]) * r[j];
      rho_new = f.reduce(acc);
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      S factor = rows[k][c];
      if (f.is_zero(factor)) continue;
      auto& row = rows[k];
      for (std::size_t j = 0; j < len; ++j)
        if (!f.is_zero(r[j])) f.sub_mul(row[j], factor, r[j]);
      if constexpr (std::is_same_v<F, PrimeField>) f.sub_mul(rho[k], factor, rho_new);
    }
    rows.push_back(std::move(r));
    pivots.push_back(c);
    if constexpr (std::is_same_v<F, PrimeField>) rho.push_back(rho_new);
    return true;
  }
};

template <class F>
OperatorSpan<F>::OperatorSpan(const F& f, std::size_t n, std::uint64_t seed) : impl_(std::make_unique<Impl>(f, n, seed)) {}
template <class F>
OperatorSpan<F>::~OperatorSpan() = default;
template <class F>
OperatorSpan<F>::OperatorSpan(OperatorSpan&&) noexcept = default;
template <class F>
OperatorSpan<F>& OperatorSpan<F>::operator=(OperatorSpan&&) noexcept = default;

template <class F>
std::size_t OperatorSpan<F>::dim() const {
  return impl_->rows.size();
}

template <class F>
bool OperatorSpan<F>::contains(const MatrixOver<F>& op) const {
  if (op.data().size() != impl_->len) throw InputError("OperatorSpan: operator has the wrong size");
  return impl_->contains(op.data().data());
}

template <class F>
bool OperatorSpan<F>::insert(const MatrixOver<F>& op) {
  if (op.data().size() != impl_->len) throw InputError("OperatorSpan: operator has the wrong size");
  return impl_->insert(op.data().data());
}

// ---------------------------------------------------------------------------
// Closure

template <class F>
ClosureBuilder<F>::ClosureBuilder(const F& f, std::size_t n, std::size_t budget, std::uint64_t seed)
    : field_(f), n_(n), budget_(budget) {
  closure_.ambient = n;
  closure_.span = std::make_shared<OperatorSpan<F>>(f, n, seed);
}

template <class F>
typename ClosureBuilder<F>::Sparse ClosureBuilder<F>::to_sparse(const MatrixOver<F>& m) const {
  Sparse s;
  s.row_start.push_back(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!field_.is_zero(m(i, j))) {
        s.col.push_back(j);
        s.val.push_back(m(i, j));
      }
    s.row_start.push_back(s.col.size());
  }
  return s;
}

template <class F>
MatrixOver<F> ClosureBuilder<F>::bracket_with(const MatrixOver<F>& x, std::size_t gi) const {
  // [X, G] = M_G M_X - M_X M_G with G sparse
  const Sparse& g = generators_[gi];
  const std::size_t n = n_;
  const F& f = field_;
  MatrixOver<F> out(n, n);
  if constexpr (std::is_same_v<F, PrimeField>) {
    const std::uint64_t p = f.modulus();
    std::vector<unsigned __int128> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t t = g.row_start[i]; t < g.row_start[i + 1]; ++t) {
        const std::uint64_t v = g.val[t];
        const std::uint64_t* xr = x.row(g.col[t]).data();
        for (std::size_t j = 0; j < n; ++j)
          if (xr[j]) acc[j] += static_cast<unsigned __int128>(v) * xr[j];
      }
      const std::uint64_t* xi = x.row(i).data();
      for (std::size_t k = 0; k < n; ++k) {
        if (!xi[k]) continue;
        const std::uint64_t m = p - xi[k];
        for (std::size_t t = g.row_start[k]; t < g.row_start[k + 1]; ++t)
          acc[g.col[t]] += static_cast<unsigned __int128>(m) * g.val[t];
      }
      for (std::size_t j = 0; j < n; ++j) out(i, j) = f.reduce(acc[j]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = g.row_start[i]; t < g.row_start[i + 1]; ++t) {
        const auto& v = g.val[t];
        for (std::size_t j = 0; j < n; ++j)
          if (!f.is_zero(x(g.col[t], j))) out(i, j) = f.add(out(i, j), f.mul(v, x(g.col[t], j)));
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (f.is_zero(x(i, k))) continue;
        for (std::size_t t = g.row_start[k]; t < g.row_start[k + 1]; ++t)
          f.sub_mul(out(i, g.col[t]), x(i, k), g.val[t]);
      }
    }
  }
  return out;
}

template <class F>
bool ClosureBuilder<F>::push(MatrixOver<F> op, std::string label) {
  if (op.rows() != n_ || op.cols() != n_)
    throw InputError("lie_closure: operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                     ", expected " + std::to_string(n_) + "x" + std::to_string(n_));
  if (!closure_.span->insert(op)) return false;
  closure_.basis.push_back(std::move(op));
  closure_.provenance.push_back(std::move(label));
  processed_.push_back(0);
  if (closure_.basis.size() > budget_) closure_.budget_exceeded = true;
  return true;
}

template <class F>
bool ClosureBuilder<F>::add_generator(const MatrixOver<F>& op, const std::string& label) {
  if (!push(op, "generator " + label)) return false;
  generators_.push_back(to_sparse(op));
  generator_basis_index_.push_back(closure_.basis.size() - 1);
  closure_.generator_count = generators_.size();
  closure_.closed = false;
  return true;
}

template <class F>
void ClosureBuilder<F>::saturate() {
  for (std::size_t b = 0; b < closure_.basis.size(); ++b) {
    while (processed_[b] < generators_.size()) {
      if (closure_.budget_exceeded) {
        closure_.closed = false;
        return;
      }
      const std::size_t g = processed_[b];
      auto br = bracket_with(closure_.basis[b], g);
      ++closure_.brackets;
      ++processed_[b];
      push(std::move(br), "[b" + std::to_string(b) + ", g" + std::to_string(g) + "]");
    }
  }
  closure_.closed = !closure_.budget_exceeded;
}

template <class F>
LieClosure<F> lie_closure(const F& f, const std::vector<MatrixOver<F>>& generators, std::size_t budget) {
  if (generators.empty()) {
    LieClosure<F> empty;
    empty.closed = true;
    return empty;
  }
  const std::size_t n = generators.front().rows();
  ClosureBuilder<F> builder(f, n, budget);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].rows() != n || generators[i].cols() != n)
      throw InputError("lie_closure: generator " + std::to_string(i) + " has the wrong size");
    builder.add_generator(generators[i], std::to_string(i));
  }
  builder.saturate();
  return builder.result();
}

template <class F>
std::vector<int> operator_shifts(const Algebra<F>& alg, const MatrixOver<F>& op) {
  std::set<int> shifts;
  for (std::size_t k = 0; k <= alg.top(); ++k)
    for (std::size_t t = 0; t <= alg.top(); ++t) {
      const std::size_t r0 = alg.offset(k), c0 = alg.offset(t);
      bool nonzero = false;
      for (std::size_t i = 0; i < alg.dims[k] && !nonzero; ++i)
        for (std::size_t j = 0; j < alg.dims[t] && !nonzero; ++j) nonzero = !alg.field.is_zero(op(r0 + i, c0 + j));
      if (nonzero) shifts.insert(2 * (static_cast<int>(t) - static_cast<int>(k)));
    }
  return {shifts.begin(), shifts.end()};
}

// ---------------------------------------------------------------------------
// LLV

std::size_t so_dimension(std::size_t m) { return m * (m - 1) / 2; }

namespace {

template <class F>
LlvResult run_llv(const GradedAlgebraModel& model, const F& f, std::uint64_t seed, std::size_t budget) {
  const auto start = std::chrono::steady_clock::now();
  auto alg = Algebra<F>::from(f, model);
  const std::size_t b2 = alg.b2();
  const std::size_t n = alg.total_dim();

  LlvResult res;
  res.expected = so_dimension(b2 + 2);
  res.ambient = n;
  ClosureBuilder<F> builder(f, n, budget, seed ^ 0x9e3779b97f4a7c15ULL);

  auto add_triple = [&](const RationalVector& alpha, const std::string& label) {
    auto t = sl2_triple(alg, alpha);
    ++res.lefschetz_classes;
    builder.add_generator(to_dense(alg, t.L), "L(" + label + ")");
    builder.add_generator(to_dense(alg, t.H), "H(" + label + ")");
    builder.add_generator(to_dense(alg, t.Lambda), "Lambda(" + label + ")");
  };

  for (std::size_t i = 0; i < b2; ++i) {
    RationalVector alpha(b2);
    alpha[i] = 1;
    for (int t = 1; t <= 16 && !is_lefschetz(alg, alpha); ++t) {
      alpha.assign(b2, 0);
      alpha[i] = 1;
      alpha[(i + 1) % b2] += t;
    }
    if (!is_lefschetz(alg, alpha)) continue;
    add_triple(alpha, "e" + std::to_string(i));
  }
  if (res.lefschetz_classes == 0) throw PreconditionError("llv: no Lefschetz-type class found near the coordinate axes");
  builder.saturate();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::size_t unchanged = 0;
  for (std::size_t extra = 0; extra < 64 && unchanged < 3 && builder.result().closed; ++extra) {
    RationalVector alpha(b2);
    for (auto& x : alpha) x = coeff(rng);
    if (!is_lefschetz(alg, alpha)) continue;
    const std::size_t before = builder.result().dim();
    add_triple(alpha, "extra" + std::to_string(extra));
    builder.saturate();
    unchanged = builder.result().dim() == before ? unchanged + 1 : 0;
  }

  const auto& c = builder.result();
  res.dimension = c.dim();
  res.closed = c.closed;
  res.budget_exceeded = c.budget_exceeded;
  res.stabilized = unchanged >= 3;
  res.generators = c.generator_count;
  res.brackets = c.brackets;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace

LlvResult llv_dimension(const GradedAlgebraModel& model, std::uint64_t seed, const ScalarDomain& domain,
                        std::optional<std::size_t> budget, bool certify) {
  const std::size_t expected = so_dimension(model.b2() + 2);
  const std::size_t cap = budget.value_or(2 * expected + 10);
  LlvResult res = std::visit([&](const auto& f) { return run_llv(model, f, seed, cap); }, make_field(domain));
  res.domain = domain;
  if (certify && domain.mode == ScalarDomain::Mode::kPrimeField && res.conclusive()) {
    LlvResult check;
    if (model.total_dim() <= 64) {
      check = run_llv(model, Rationals{}, seed, cap);
      res.certification_mode = "exact";
    } else {
      std::uint64_t p = domain.prime == PrimeField::kCertificationPrime ? PrimeField::kDefaultPrime
                                                                        : PrimeField::kCertificationPrime;
      check = run_llv(model, PrimeField(p), seed, cap);
      res.certification_mode = "modp:" + std::to_string(p);
    }
    res.certified_dimension = check.dimension;
    res.seconds += check.seconds;
  }
  return res;
}

#define IHLAB_INSTANTIATE(F)                                                                                  \
  template MatrixOver<F> lie_bracket(const F&, const MatrixOver<F>&, const MatrixOver<F>&);                   \
  template class OperatorSpan<F>;                                                                             \
  template class ClosureBuilder<F>;                                                                           \
  template LieClosure<F> lie_closure(const F&, const std::vector<MatrixOver<F>>&, std::size_t);               \
  template std::vector<int> operator_shifts(const Algebra<F>&, const MatrixOver<F>&);

IHLAB_INSTANTIATE(Rationals)
IHLAB_INSTANTIATE(PrimeField)

#undef IHLAB_INSTANTIATE

}  // namespace ihlab

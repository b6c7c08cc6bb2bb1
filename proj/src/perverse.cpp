#include "ihlab/perverse.hpp"

#include <map>
#include <string>
#include <tuple>

#include "ihlab/errors.hpp"

namespace ihlab {

namespace {

template <class F>
OperatorOnTotal<F> cup_rational(const Algebra<F>& alg, const RationalVector& v) {
  auto w = convert_vector(alg.field, std::span<const mpq_class>(v));
  return cup_operator(alg, std::span<const typename F::Scalar>(w));
}

std::string at_string(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// Kernels and images of powers of one operator, cached per degree index.
template <class F>
class PowerSpaces {
 public:
  PowerSpaces(const Algebra<F>& alg, const OperatorOnTotal<F>& l) : alg_(alg), l_(l) {}

  /// Ker(L^m) cap H^{2e}
  const Subspace<F>& kernel(std::size_t e, long m) {
    auto key = std::make_pair(e, m);
    auto it = kernels_.find(key);
    if (it != kernels_.end()) return it->second;
    Subspace<F> s;
    if (m <= 0)
      s = Subspace<F>::zero(alg_.dims[e]);
    else
      s = subspace_kernel(alg_.field, power_block(alg_, l_, e, static_cast<std::size_t>(m)));
    return kernels_.emplace(key, std::move(s)).first->second;
  }

  /// Im(L^m) cap H^{2e}
  const Subspace<F>& image(std::size_t e, long m) {
    auto key = std::make_pair(e, m);
    auto it = images_.find(key);
    if (it != images_.end()) return it->second;
    Subspace<F> s;
    if (m < 0 || static_cast<long>(e) < m)
      s = Subspace<F>::zero(alg_.dims[e]);
    else if (m == 0)
      s = Subspace<F>::full(alg_.field, alg_.dims[e]);
    else
      s = subspace_image(alg_.field, power_block(alg_, l_, e - static_cast<std::size_t>(m), static_cast<std::size_t>(m)));
    return images_.emplace(key, std::move(s)).first->second;
  }

  /// Ker(L^m) cap Im(L^j) cap H^{2e}
  const Subspace<F>& term(std::size_t e, long m, long j) {
    auto key = std::make_tuple(e, m, j);
    auto it = terms_.find(key);
    if (it != terms_.end()) return it->second;
    const auto& k = kernel(e, m);
    const auto& i = image(e, j);
    Subspace<F> s;
    if (k.dim() == 0 || i.dim() == 0)
      s = Subspace<F>::zero(alg_.dims[e]);
    else if (k.dim() == alg_.dims[e])
      s = i;
    else if (i.dim() == alg_.dims[e])
      s = k;
    else
      s = subspace_intersect(alg_.field, k, i);
    return terms_.emplace(key, std::move(s)).first->second;
  }

 private:
  const Algebra<F>& alg_;
  const OperatorOnTotal<F>& l_;
  std::map<std::pair<std::size_t, long>, Subspace<F>> kernels_, images_;
  std::map<std::tuple<std::size_t, long, long>, Subspace<F>> terms_;
};

}  // namespace

void require_isotropic(const GradedAlgebraModel& model, const RationalVector& gamma) {
  if (gamma.size() != model.b2())
    throw PreconditionError("class has " + std::to_string(gamma.size()) + " entries, expected b2 = " +
                            std::to_string(model.b2()));
  if (std::all_of(gamma.begin(), gamma.end(), [](const mpq_class& x) { return sgn(x) == 0; }))
    throw PreconditionError("class is zero");
  mpq_class q = model.lattice.q(gamma);
  if (q != 0) throw PreconditionError("class is not isotropic: q = " + format_rational(q));
}

template <class F>
Subspace<F> Filtration<F>::at(int k, std::size_t e) const {
  const auto& row = pieces.at(e);
  if (k < 0) return Subspace<F>::zero(row.front().ambient_dim());
  if (k >= static_cast<int>(row.size())) return row.back();
  return row[static_cast<std::size_t>(k)];
}

template <class F>
Filtration<F> perverse_filtration(const Algebra<F>& alg, const RationalVector& gamma) {
  if (!alg.model) throw PreconditionError("perverse_filtration needs the source model");
  require_isotropic(*alg.model, gamma);
  auto l = cup_rational(alg, gamma);
  PowerSpaces<F> spaces(alg, l);
  const long n = alg.n;
  const std::size_t top = alg.top();

  Filtration<F> filt;
  filt.n = alg.n;
  for (std::size_t e = 0; e <= top; ++e) {
    const long d = 2 * static_cast<long>(e);
    std::vector<Subspace<F>> row;
    for (long k = 0; k <= 2 * n; ++k) {
      Subspace<F> acc = Subspace<F>::zero(alg.dims[e]);
      for (long i = 1; i <= 2 * n + 1; ++i) {
        const auto& t = spaces.term(e, n + k + i - d, i - 1);
        if (t.dim() == 0) continue;
        acc = subspace_sum(alg.field, acc, t);
        if (acc.dim() == alg.dims[e]) break;
      }
      row.push_back(std::move(acc));
    }
    filt.pieces.push_back(std::move(row));
  }
  return filt;
}

template <class F>
PerverseTable perverse_table(const Filtration<F>& filt) {
  const std::size_t size = 2 * static_cast<std::size_t>(filt.n) + 1;
  PerverseTable t(size, std::vector<std::size_t>(size, 0));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      if ((i + j) % 2 != 0) continue;
      const std::size_t e = (i + j) / 2;
      const int ii = static_cast<int>(i);
      t[i][j] = filt.dim(ii, e) - filt.dim(ii - 1, e);
    }
  return t;
}

template <class F>
PerverseTable perverse_table(const Algebra<F>& alg, const RationalVector& gamma) {
  return perverse_table(perverse_filtration(alg, gamma));
}

template <class F>
CheckReport check_filtration_invariants(const Algebra<F>& alg, const Filtration<F>& filt) {
  std::vector<std::string> monotone, exhaustive;
  for (std::size_t e = 0; e < filt.pieces.size(); ++e) {
    const auto& row = filt.pieces[e];
    for (std::size_t k = 0; k + 1 < row.size(); ++k)
      if (!row[k + 1].contains(alg.field, row[k]))
        monotone.push_back("internal-invariant: P_" + std::to_string(k) + " not inside P_" + std::to_string(k + 1) +
                           " in degree " + std::to_string(2 * e));
    if (row.back().dim() != alg.dims[e])
      exhaustive.push_back("internal-invariant: P_2n has dimension " + std::to_string(row.back().dim()) + " of " +
                           std::to_string(alg.dims[e]) + " in degree " + std::to_string(2 * e));
  }
  CheckReport r;
  r.record("filtration_monotone", monotone.empty(), monotone);
  r.record("filtration_exhaustive", exhaustive.empty(), exhaustive);
  return r;
}

CheckReport check_graded_dimensions(const PerverseTable& table, const std::vector<std::size_t>& dims) {
  std::vector<std::string> bad;
  const std::size_t size = table.size();
  for (std::size_t e = 0; e < dims.size(); ++e) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < size; ++i) {
      const long j = 2 * static_cast<long>(e) - static_cast<long>(i);
      if (j >= 0 && j < static_cast<long>(size)) s += table[i][static_cast<std::size_t>(j)];
    }
    if (s != dims[e])
      bad.push_back("degree " + std::to_string(2 * e) + ": table sums to " + std::to_string(s) + ", dimension is " +
                    std::to_string(dims[e]));
  }
  CheckReport r;
  r.record("graded_dimensions", bad.empty(), bad);
  return r;
}

CheckReport check_symmetry(const PerverseTable& table) {
  std::vector<std::string> bad;
  const std::size_t m = table.size() - 1;
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j <= m; ++j) {
      if (table[i][j] != table[m - i][j])
        bad.push_back(at_string(i, j) + " = " + std::to_string(table[i][j]) + " but " + at_string(m - i, j) + " = " +
                      std::to_string(table[m - i][j]));
      if (table[i][j] != table[i][m - j])
        bad.push_back(at_string(i, j) + " = " + std::to_string(table[i][j]) + " but " + at_string(i, m - j) + " = " +
                      std::to_string(table[i][m - j]));
    }
  CheckReport r;
  r.record("symmetry", bad.empty(), bad);
  return r;
}

CheckReport check_border(const PerverseTable& table) {
  std::vector<std::string> bad;
  for (std::size_t d = 0; d < table.size(); ++d) {
    const std::size_t want = d % 2 == 0 ? 1 : 0;
    if (table[0][d] != want)
      bad.push_back(at_string(0, d) + " = " + std::to_string(table[0][d]) + ", expected " + std::to_string(want));
    if (d > 0 && table[d][0] != want)
      bad.push_back(at_string(d, 0) + " = " + std::to_string(table[d][0]) + ", expected " + std::to_string(want));
  }
  CheckReport r;
  r.record("border", bad.empty(), bad);
  return r;
}

template <class F>
CheckReport check_invariance(const Algebra<F>& alg, const RationalVector& gamma1, const RationalVector& gamma2) {
  CheckReport r;
  if (alg.b2() < 5)
    r.add({"invariance_hypothesis", Status::kWarn, {"b2 = " + std::to_string(alg.b2()) + " < 5"}});
  auto f1 = perverse_filtration(alg, gamma1);
  auto f2 = perverse_filtration(alg, gamma2);
  std::vector<std::string> bad;
  for (std::size_t e = 0; e < f1.pieces.size(); ++e)
    for (std::size_t k = 0; k < f1.pieces[e].size(); ++k)
      if (f1.pieces[e][k].dim() != f2.pieces[e][k].dim())
        bad.push_back("P_" + std::to_string(k) + " in degree " + std::to_string(2 * e) + ": " +
                      std::to_string(f1.pieces[e][k].dim()) + " vs " + std::to_string(f2.pieces[e][k].dim()));
  r.record("invariance", bad.empty(), bad);
  return r;
}

template <class F>
LefschetzPairOutcome lefschetz_pair(const Algebra<F>& alg, const RationalVector& gamma, const RationalVector& gamma2) {
  if (!alg.model) throw PreconditionError("lefschetz_pair needs the source model");
  require_isotropic(*alg.model, gamma2);
  auto filt = perverse_filtration(alg, gamma);
  auto l2 = cup_rational(alg, gamma2);
  const auto& f = alg.field;
  const int n = alg.n;
  const std::size_t top = alg.top();

  LefschetzPairOutcome out;
  out.asserted = alg.model->lattice.pair(gamma, gamma2) != 0;

  // (i)
  for (std::size_t e = 0; e < top; ++e)
    for (int i = 0; i <= 2 * n; ++i) {
      auto src = filt.at(i, e);
      if (src.dim() == 0) continue;
      auto img = subspace_map(f, src, l2.blocks[e]);
      if (!filt.at(i + 2, e + 1).contains(f, img))
        out.witnesses_i.push_back("gamma' P_" + std::to_string(i) + " H^" + std::to_string(2 * e) +
                                  " not inside P_" + std::to_string(i + 2) + " H^" + std::to_string(2 * e + 2));
    }
  out.property_i = out.witnesses_i.empty();

  // (ii)
  for (int k = 1; k <= n; ++k)
    for (std::size_t e = 0; e + static_cast<std::size_t>(k) <= top; ++e) {
      const std::size_t e2 = e + static_cast<std::size_t>(k);
      const auto power = power_block(alg, l2, e, static_cast<std::size_t>(k));
      const auto lo = filt.at(n - k, e), lo_prev = filt.at(n - k - 1, e);
      const auto hi = filt.at(n + k, e2), hi_prev = filt.at(n + k - 1, e2);
      const std::size_t gr_lo = lo.dim() - lo_prev.dim(), gr_hi = hi.dim() - hi_prev.dim();
      const std::string where = "gamma'^" + std::to_string(k) + ": Gr_" + std::to_string(n - k) + " H^" +
                                std::to_string(2 * e) + " -> Gr_" + std::to_string(n + k) + " H^" +
                                std::to_string(2 * e2);
      auto img_prev = subspace_map(f, lo_prev, power);
      auto img = subspace_map(f, lo, power);
      if (!hi_prev.contains(f, img_prev) || !hi.contains(f, img)) {
        out.witnesses_ii.push_back(where + " is not well defined");
        continue;
      }
      const std::size_t rk = subspace_sum(f, img, hi_prev).dim() - hi_prev.dim();
      if (gr_lo != gr_hi || rk != gr_lo)
        out.witnesses_ii.push_back(where + " has rank " + std::to_string(rk) + " between dimensions " +
                                   std::to_string(gr_lo) + " and " + std::to_string(gr_hi));
    }
  out.property_ii = out.witnesses_ii.empty();
  return out;
}

template <class F>
CheckReport check_lefschetz_pair(const Algebra<F>& alg, const RationalVector& gamma, const RationalVector& gamma2) {
  auto o = lefschetz_pair(alg, gamma, gamma2);
  CheckReport r;
  auto status = [&](bool holds) {
    if (holds) return Status::kPass;
    return o.asserted ? Status::kFail : Status::kInfo;
  };
  r.add({"lefschetz_pair_i", status(o.property_i), o.witnesses_i});
  r.add({"lefschetz_pair_ii", status(o.property_ii), o.witnesses_ii});
  return r;
}

template <class F>
CheckReport check_p0_claim(const Algebra<F>& alg, const HodgeMarking& marking) {
  if (!alg.model) throw PreconditionError("check_p0_claim needs the source model");
  check_marking(alg.model->lattice, marking);
  const auto& f = alg.field;
  const std::size_t top = alg.top();
  const std::size_t n = static_cast<std::size_t>(alg.n);
  auto filt = perverse_filtration(alg, marking.sigma);
  auto ls = cup_rational(alg, marking.sigma);
  auto hodge = hodge_numbers(alg, marking);

  std::vector<std::string> span_bad, ineq_p0, ineq_gr;
  VectorOver<F> power = alg.unit();
  std::size_t total = 0;
  for (std::size_t e = 0; e <= top; ++e) {
    if (e > 0) power = vec_mat(f, std::span<const typename F::Scalar>(power), ls.blocks[e - 1]);
    Subspace<F> expect = e <= n ? Subspace<F>::span(f, [&] {
      MatrixOver<F> m(0, alg.dims[e]);
      m.append_row(power);
      return m;
    }())
                                : Subspace<F>::zero(alg.dims[e]);
    const auto p0 = filt.at(0, e);
    total += p0.dim();
    if (!(p0 == expect))
      span_bad.push_back("degree " + std::to_string(2 * e) + ": P_0 has dimension " + std::to_string(p0.dim()) +
                         ", span of sigma^" + std::to_string(e) + " has dimension " + std::to_string(expect.dim()));
    // d = 2e in both inequalities of (2.1)
    const std::size_t d = 2 * e;
    const std::size_t ih_d0 = d <= top ? hodge[d][0] : 0;
    const std::size_t ih_0d = d <= top ? hodge[0][d] : 0;
    if (p0.dim() != ih_d0)
      ineq_p0.push_back("dim P_0 H^" + std::to_string(d) + " = " + std::to_string(p0.dim()) + ", Ih^{" +
                        std::to_string(d) + ",0} = " + std::to_string(ih_d0));
    const int di = static_cast<int>(d);
    const std::size_t gr = filt.dim(di, e) - filt.dim(di - 1, e);
    if (gr != ih_0d)
      ineq_gr.push_back("dim Gr_" + std::to_string(d) + " H^" + std::to_string(d) + " = " + std::to_string(gr) +
                        ", Ih^{0," + std::to_string(d) + "} = " + std::to_string(ih_0d));
  }
  CheckReport r;
  r.record("p0_claim_span", span_bad.empty(), span_bad);
  r.record("p0_claim_total_dim", total == n + 1,
           total == n + 1 ? std::vector<std::string>{}
                          : std::vector<std::string>{"total " + std::to_string(total) + ", expected " +
                                                     std::to_string(n + 1)});
  r.record("p0_bound_equality", ineq_p0.empty(), ineq_p0);
  r.record("gr_bound_equality", ineq_gr.empty(), ineq_gr);
  return r;
}

template <class F>
CheckReport perverse_equals_hodge(const Algebra<F>& alg, const HodgeMarking& marking, const RationalVector& gamma) {
  if (!alg.model) throw PreconditionError("perverse_equals_hodge needs the source model");
  check_marking(alg.model->lattice, marking);
  const auto& f = alg.field;
  const std::size_t top = alg.top();
  auto grading = torus_grading(alg, marking);
  auto hodge = hodge_numbers(alg, grading);
  auto perverse = perverse_table(alg, gamma);

  std::vector<std::string> table_bad;
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; j <= top; ++j)
      if (perverse[i][j] != hodge[i][j])
        table_bad.push_back(at_string(i, j) + ": perverse " + std::to_string(perverse[i][j]) + ", Hodge " +
                            std::to_string(hodge[i][j]));

  std::vector<std::string> sym_bad;
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; q < p; ++q)
      if (hodge[p][q] != hodge[q][p])
        sym_bad.push_back("Ih" + at_string(p, q) + " = " + std::to_string(hodge[p][q]) + " but Ih" + at_string(q, p) +
                          " = " + std::to_string(hodge[q][p]));

  // the sigmabar filtration: P_i cap H^{2k} = sum of weight spaces w <= i - k
  auto filt = perverse_filtration(alg, marking.sigmabar);
  std::vector<std::string> mech_bad;
  const int wmax = static_cast<int>(top);
  for (std::size_t k = 0; k <= top; ++k)
    for (int i = 0; i <= wmax; ++i) {
      Subspace<F> expect = Subspace<F>::zero(alg.dims[k]);
      for (int w = -wmax; w <= i - static_cast<int>(k); ++w) expect = subspace_sum(f, expect, grading.weight_space(k, w));
      if (!(filt.at(i, k) == expect))
        mech_bad.push_back("P^sigmabar_" + std::to_string(i) + " H^" + std::to_string(2 * k) + " (dim " +
                           std::to_string(filt.dim(i, k)) + ") differs from the Hodge piece (dim " +
                           std::to_string(expect.dim()) + ")");
      const int j = 2 * static_cast<int>(k) - i;
      if (j < 0 || j > wmax) continue;
      const std::size_t gr = filt.dim(i, k) - filt.dim(i - 1, k);
      if (gr != hodge[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        mech_bad.push_back("dim Gr^sigmabar_" + std::to_string(i) + " H^" + std::to_string(2 * k) + " = " +
                           std::to_string(gr) + " but Ih" + at_string(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) +
                           " = " + std::to_string(hodge[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]));
    }

  CheckReport r;
  r.record("perverse_equals_hodge", table_bad.empty(), table_bad);
  r.record("hodge_symmetry", sym_bad.empty(), sym_bad);
  r.record("sigmabar_filtration_is_hodge", mech_bad.empty(), mech_bad);
  return r;
}

#define IHLAB_INSTANTIATE(F)                                                                                    \
  template struct Filtration<F>;                                                                                \
  template Filtration<F> perverse_filtration(const Algebra<F>&, const RationalVector&);                         \
  template PerverseTable perverse_table(const Filtration<F>&);                                                  \
  template PerverseTable perverse_table(const Algebra<F>&, const RationalVector&);                              \
  template CheckReport check_filtration_invariants(const Algebra<F>&, const Filtration<F>&);                    \
  template CheckReport check_invariance(const Algebra<F>&, const RationalVector&, const RationalVector&);       \
  template LefschetzPairOutcome lefschetz_pair(const Algebra<F>&, const RationalVector&, const RationalVector&); \
  template CheckReport check_lefschetz_pair(const Algebra<F>&, const RationalVector&, const RationalVector&);   \
  template CheckReport check_p0_claim(const Algebra<F>&, const HodgeMarking&);                                  \
  template CheckReport perverse_equals_hodge(const Algebra<F>&, const HodgeMarking&, const RationalVector&);

IHLAB_INSTANTIATE(Rationals)
IHLAB_INSTANTIATE(PrimeField)

#undef IHLAB_INSTANTIATE

}  // namespace ihlab

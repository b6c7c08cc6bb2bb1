#include "ihlab/model.hpp"

#include <functional>
#include <random>
#include <string>

#include "ihlab/errors.hpp"

namespace ihlab {

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kWarn: return "warn";
    case Status::kInfo: return "info";
    case Status::kSkipped: return "skipped";
  }
  return "unknown";
}

std::size_t GradedAlgebraModel::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims) s += d;
  return s;
}

std::size_t GradedAlgebraModel::offset(std::size_t k) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < k; ++j) s += dims.at(j);
  return s;
}

void check_marking(const QuadraticLattice& lattice, const HodgeMarking& marking) {
  if (marking.sigma.size() != lattice.b2() || marking.sigmabar.size() != lattice.b2())
    throw PreconditionError("hodge marking vectors must have b2 = " + std::to_string(lattice.b2()) + " entries");
  if (lattice.q(marking.sigma) != 0) throw PreconditionError("hodge marking: q(sigma) != 0");
  if (lattice.q(marking.sigmabar) != 0) throw PreconditionError("hodge marking: q(sigmabar) != 0");
  if (lattice.pair(marking.sigma, marking.sigmabar) == 0)
    throw PreconditionError("hodge marking: (sigma, sigmabar) = 0");
}

std::optional<HodgeMarking> marking_from_hyperbolic_pair(const QuadraticLattice& lattice) {
  if (!lattice.hyperbolic_pair()) return std::nullopt;
  auto [e, f] = *lattice.hyperbolic_pair();
  return HodgeMarking{lattice.basis_vector(e), lattice.basis_vector(f)};
}

// ---------------------------------------------------------------------------
// Algebra

template <class F>
Algebra<F> Algebra<F>::from(const F& f, const GradedAlgebraModel& m) {
  Algebra<F> a{f, m.n, m.dims, {}, {}, &m};
  a.h2.reserve(m.h2_action.size());
  for (const auto& per_degree : m.h2_action) {
    std::vector<MatrixOver<F>> blocks;
    blocks.reserve(per_degree.size());
    for (const auto& b : per_degree) blocks.push_back(convert_matrix(f, b));
    a.h2.push_back(std::move(blocks));
  }
  a.integral = convert_vector(f, std::span<const mpq_class>(m.integral));
  return a;
}

template <class F>
std::size_t Algebra<F>::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims) s += d;
  return s;
}

template <class F>
std::size_t Algebra<F>::offset(std::size_t k) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < k; ++j) s += dims.at(j);
  return s;
}

template <class F>
VectorOver<F> Algebra<F>::unit() const {
  return VectorOver<F>{field.one()};
}

// ---------------------------------------------------------------------------
// Operators

template <class F>
OperatorOnTotal<F> zero_operator(const Algebra<F>& alg, int shift) {
  OperatorOnTotal<F> op;
  op.shift = shift;
  for (std::size_t k = 0; k <= alg.top(); ++k) {
    std::size_t cols = op.lands(k, alg.top()) ? alg.dims[op.target(k)] : 0;
    op.blocks.emplace_back(alg.dims[k], cols);
  }
  return op;
}

template <class F>
OperatorOnTotal<F> identity_operator(const Algebra<F>& alg) {
  OperatorOnTotal<F> op;
  for (std::size_t k = 0; k <= alg.top(); ++k) op.blocks.push_back(identity(alg.field, alg.dims[k]));
  return op;
}

template <class F>
OperatorOnTotal<F> compose(const Algebra<F>& alg, const OperatorOnTotal<F>& a, const OperatorOnTotal<F>& b) {
  auto out = zero_operator(alg, a.shift + b.shift);
  for (std::size_t k = 0; k <= alg.top(); ++k) {
    if (!out.lands(k, alg.top()) || !b.lands(k, alg.top())) continue;
    std::size_t mid = b.target(k);
    if (!a.lands(mid, alg.top())) continue;
    out.blocks[k] = multiply(alg.field, b.blocks[k], a.blocks[mid]);
  }
  return out;
}

template <class F>
OperatorOnTotal<F> combine(const Algebra<F>& alg, const typename F::Scalar& s, const OperatorOnTotal<F>& a,
                           const typename F::Scalar& t, const OperatorOnTotal<F>& b) {
  if (a.shift != b.shift) throw InputError("combine: operators have different degree shifts");
  auto out = zero_operator(alg, a.shift);
  for (std::size_t k = 0; k <= alg.top(); ++k) {
    add_scaled(alg.field, out.blocks[k], s, a.blocks[k]);
    add_scaled(alg.field, out.blocks[k], t, b.blocks[k]);
  }
  return out;
}

template <class F>
bool operator_is_zero(const Algebra<F>& alg, const OperatorOnTotal<F>& a) {
  for (const auto& b : a.blocks)
    if (!is_zero(alg.field, b)) return false;
  return true;
}

template <class F>
bool operator_equal(const Algebra<F>& alg, const OperatorOnTotal<F>& a, const OperatorOnTotal<F>& b) {
  if (a.shift != b.shift) return operator_is_zero(alg, a) && operator_is_zero(alg, b);
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    if (!(a.blocks[k] == b.blocks[k])) return false;
  return true;
}

template <class F>
MatrixOver<F> to_dense(const Algebra<F>& alg, const OperatorOnTotal<F>& a) {
  const std::size_t n = alg.total_dim();
  MatrixOver<F> m(n, n);
  for (std::size_t k = 0; k <= alg.top(); ++k) {
    if (!a.lands(k, alg.top())) continue;
    const std::size_t r0 = alg.offset(k), c0 = alg.offset(a.target(k));
    const auto& b = a.blocks[k];
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
  }
  return m;
}

template <class F>
MatrixOver<F> power_block(const Algebra<F>& alg, const OperatorOnTotal<F>& op, std::size_t k, std::size_t e) {
  MatrixOver<F> acc = identity(alg.field, alg.dims[k]);
  std::size_t cur = k;
  for (std::size_t step = 0; step < e; ++step) {
    if (!op.lands(cur, alg.top())) return MatrixOver<F>(alg.dims[k], 0);
    acc = multiply(alg.field, acc, op.blocks[cur]);
    cur = op.target(cur);
  }
  return acc;
}

template <class F>
OperatorOnTotal<F> cup_operator(const Algebra<F>& alg, std::span<const typename F::Scalar> v) {
  if (v.size() != alg.b2())
    throw InputError("cup_operator: class has " + std::to_string(v.size()) + " entries, expected b2 = " +
                     std::to_string(alg.b2()));
  auto op = zero_operator(alg, 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (alg.field.is_zero(v[i])) continue;
    for (std::size_t k = 0; k < alg.top(); ++k) add_scaled(alg.field, op.blocks[k], v[i], alg.h2[i][k]);
  }
  return op;
}

OperatorOnTotal<Rationals> cup_operator(const Algebra<Rationals>& alg, const RationalVector& v) {
  return cup_operator(alg, std::span<const mpq_class>(v));
}

// ---------------------------------------------------------------------------
// Validation

namespace {

/// Visits every multiset i_1 <= ... <= i_len of generator indices.  The
/// callback receives the state after applying the last generator.
template <class State, class Step, class Leaf>
void for_each_monomial(std::size_t b2, std::size_t len, const State& start, Step step, Leaf leaf) {
  std::function<void(const State&, std::size_t, std::size_t)> rec = [&](const State& s, std::size_t depth,
                                                                        std::size_t first) {
    if (depth == len) {
      leaf(s);
      return;
    }
    for (std::size_t i = first; i < b2; ++i) rec(step(s, i, depth), depth + 1, i);
  };
  rec(start, 0, 0);
}

}  // namespace

template <class F>
CheckReport validate_model(const Algebra<F>& alg) {
  const F& f = alg.field;
  CheckReport report;
  const std::size_t top = alg.top();
  const std::size_t b2 = alg.model ? alg.model->b2() : alg.b2();

  std::vector<std::string> shape_issues;
  if (alg.dims.size() != top + 1)
    shape_issues.push_back("expected " + std::to_string(top + 1) + " graded pieces, got " +
                           std::to_string(alg.dims.size()));
  else {
    if (alg.dims[0] != 1) shape_issues.push_back("degree 0 has dimension " + std::to_string(alg.dims[0]));
    if (alg.dims[top] != 1) shape_issues.push_back("top degree has dimension " + std::to_string(alg.dims[top]));
    if (alg.dims[1] != b2)
      shape_issues.push_back("degree 2 has dimension " + std::to_string(alg.dims[1]) + " but b2 = " +
                             std::to_string(b2));
  }
  report.record("dims_shape", shape_issues.empty(), shape_issues);
  if (!shape_issues.empty()) return report;

  std::vector<std::string> palin;
  for (std::size_t k = 0; k <= top; ++k)
    if (alg.dims[k] != alg.dims[top - k])
      palin.push_back("dims[" + std::to_string(2 * k) + "] = " + std::to_string(alg.dims[k]) + " != dims[" +
                      std::to_string(2 * (top - k)) + "] = " + std::to_string(alg.dims[top - k]));
  report.record("palindromic_dims", palin.empty(), palin);

  std::vector<std::string> shapes;
  if (alg.h2.size() != b2) shapes.push_back("h2_action lists " + std::to_string(alg.h2.size()) + " generators");
  for (std::size_t i = 0; i < alg.h2.size() && shapes.empty(); ++i) {
    if (alg.h2[i].size() != top) {
      shapes.push_back("generator " + std::to_string(i) + " has " + std::to_string(alg.h2[i].size()) + " blocks");
      break;
    }
    for (std::size_t k = 0; k < top; ++k)
      if (alg.h2[i][k].rows() != alg.dims[k] || alg.h2[i][k].cols() != alg.dims[k + 1])
        shapes.push_back("generator " + std::to_string(i) + " degree " + std::to_string(2 * k) + " block is " +
                         std::to_string(alg.h2[i][k].rows()) + "x" + std::to_string(alg.h2[i][k].cols()));
  }
  if (alg.integral.size() != alg.dims[top]) shapes.push_back("integral has wrong length");
  report.record("block_shapes", shapes.empty(), shapes);
  if (!shapes.empty() || !palin.empty()) return report;

  // L_i(1) = alpha_i
  std::vector<std::string> gen;
  for (std::size_t i = 0; i < b2; ++i) {
    const auto& row = alg.h2[i][0];
    for (std::size_t j = 0; j < b2; ++j) {
      bool expect_one = (i == j);
      if (expect_one ? !(row(0, j) == f.one()) : !f.is_zero(row(0, j))) {
        gen.push_back("L_" + std::to_string(i) + "(1) has coefficient " + f.to_string(row(0, j)) + " on alpha_" +
                      std::to_string(j));
        break;
      }
    }
  }
  report.record("degree2_identification", gen.empty(), gen);

  std::vector<std::string> comm;
  for (std::size_t i = 0; i < b2 && comm.empty(); ++i)
    for (std::size_t j = i + 1; j < b2 && comm.empty(); ++j)
      for (std::size_t k = 0; k + 1 < top; ++k) {
        auto ij = multiply(f, alg.h2[i][k], alg.h2[j][k + 1]);
        auto ji = multiply(f, alg.h2[j][k], alg.h2[i][k + 1]);
        if (!(ij == ji)) {
          comm.push_back("L_" + std::to_string(i) + " L_" + std::to_string(j) + " != L_" + std::to_string(j) +
                         " L_" + std::to_string(i) + " on degree " + std::to_string(2 * k));
          break;
        }
      }
  report.record("commutativity", comm.empty(), comm);

  bool integral_nonzero = !f.is_zero(alg.integral[0]);
  report.record("integral_nonzero", integral_nonzero,
                integral_nonzero ? std::vector<std::string>{} : std::vector<std::string>{"integral vanishes"});
  if (!comm.empty() || !integral_nonzero) return report;

  // Pairing on the H^2-generated subalgebra: G_k[m][y] = integral(L_m y) for
  // monomials m of length k and basis vectors y of degree index 2n - k.
  std::vector<std::string> degenerate, ungenerated;
  for (std::size_t k = 0; k <= top; ++k) {
    const std::size_t other = top - k;
    MatrixOver<F> images(0, alg.dims[k]);
    for_each_monomial(
        b2, k, VectorOver<F>{f.one()},
        [&](const VectorOver<F>& v, std::size_t i, std::size_t depth) { return vec_mat(f, v, alg.h2[i][depth]); },
        [&](const VectorOver<F>& v) { images.append_row(v); });
    if (images.rows() == 0) images = MatrixOver<F>(0, alg.dims[k]);
    const std::size_t span_rank = rank(f, images);

    MatrixOver<F> gram(0, alg.dims[other]);
    for_each_monomial(
        b2, k, identity(f, alg.dims[other]),
        [&](const MatrixOver<F>& r, std::size_t i, std::size_t depth) {
          return multiply(f, r, alg.h2[i][other + depth]);
        },
        [&](const MatrixOver<F>& r) {
          VectorOver<F> col(r.rows(), f.zero());
          for (std::size_t y = 0; y < r.rows(); ++y) col[y] = f.mul(r(y, 0), alg.integral[0]);
          gram.append_row(col);
        });
    const std::size_t pairing_rank = rank(f, gram);
    if (pairing_rank != span_rank)
      degenerate.push_back("degree " + std::to_string(2 * k) + ": pairing rank " + std::to_string(pairing_rank) +
                           " < " + std::to_string(span_rank));
    if (span_rank != alg.dims[k])
      ungenerated.push_back("degree " + std::to_string(2 * k) + ": H^2-monomials span " + std::to_string(span_rank) +
                            " of " + std::to_string(alg.dims[k]));
  }
  report.record("pairing_nondegenerate", degenerate.empty(), degenerate);
  report.add({"generated_by_h2", ungenerated.empty() ? Status::kPass : Status::kWarn, ungenerated});

  if (alg.model && alg.model->marking) {
    try {
      check_marking(alg.model->lattice, *alg.model->marking);
      report.pass("hodge_marking_valid");
    } catch (const PreconditionError& e) {
      report.fail("hodge_marking_valid", {e.what()});
    }
  }
  return report;
}

CheckReport validate_model(const GradedAlgebraModel& model, const ScalarDomain& domain) {
  return std::visit([&](const auto& f) { return validate_model(Algebra<std::decay_t<decltype(f)>>::from(f, model)); },
                    make_field(domain));
}

// ---------------------------------------------------------------------------
// Fujiki constant

mpq_class top_power_integral(const Algebra<Rationals>& alg, const RationalVector& alpha) {
  const Rationals& f = alg.field;
  VectorOver<Rationals> v = alg.unit();
  for (std::size_t k = 0; k < alg.top(); ++k) {
    VectorOver<Rationals> next(alg.dims[k + 1]);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (sgn(alpha[i]) == 0) continue;
      auto part = vec_mat(f, std::span<const mpq_class>(v), alg.h2[i][k]);
      for (std::size_t j = 0; j < next.size(); ++j)
        if (sgn(part[j]) != 0) next[j] += alpha[i] * part[j];
    }
    v = std::move(next);
  }
  return v[0] * alg.integral[0];
}

namespace {

mpq_class power(const mpq_class& x, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

std::string format_vector(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
  return s + ")";
}

}  // namespace

FujikiResult fujiki_check(const GradedAlgebraModel& model, std::uint64_t seed, std::size_t samples) {
  auto alg = Algebra<Rationals>::from(Rationals{}, model);
  const auto& lat = model.lattice;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5);
  auto random_class = [&] {
    RationalVector a(lat.b2());
    for (auto& x : a) x = coeff(rng);
    return a;
  };

  FujikiResult result;
  if (auto hp = lat.hyperbolic_pair()) {
    result.determining_class = lat.basis_vector(hp->first);
    result.determining_class[hp->second] = 1;
  } else {
    do result.determining_class = random_class();
    while (lat.q(result.determining_class) == 0);
  }
  const mpq_class q0 = lat.q(result.determining_class);
  result.constant = top_power_integral(alg, result.determining_class) / power(q0, model.n);

  for (std::size_t s = 0; s < samples;) {
    auto a = random_class();
    bool nonzero = false;
    for (const auto& x : a) nonzero = nonzero || sgn(x) != 0;
    if (!nonzero) continue;
    mpq_class lhs = top_power_integral(alg, a);
    mpq_class rhs = result.constant * power(lat.q(a), model.n);
    if (lhs != rhs)
      throw StructuralError("model is not of Fujiki type: witness alpha = " + format_vector(a) + " gives integral " +
                            format_rational(lhs) + " but c q^n = " + format_rational(rhs));
    ++s;
  }
  result.verified_samples = samples;

  if (model.marking) {
    // integral((sigma sigmabar)^n)
    auto l_sigma = cup_operator(alg, model.marking->sigma);
    auto l_bar = cup_operator(alg, model.marking->sigmabar);
    VectorOver<Rationals> v = alg.unit();
    std::size_t k = 0;
    for (int i = 0; i < model.n; ++i, ++k) v = vec_mat(alg.field, std::span<const mpq_class>(v), l_sigma.blocks[k]);
    for (int i = 0; i < model.n; ++i, ++k) v = vec_mat(alg.field, std::span<const mpq_class>(v), l_bar.blocks[k]);
    mpq_class s = v[0] * alg.integral[0];
    result.sigma_integral = s;
    if (sgn(s) != 0) result.sigma_normalized_constant = result.constant / s;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Hodge bigrading

template <class F>
const Subspace<F>& TorusGrading<F>::weight_space(std::size_t k, int w) const {
  const auto& row = weight_spaces.at(k);
  const int top = static_cast<int>(row.size() / 2);
  if (w < -top || w > top) throw InputError("weight out of range");
  return row[static_cast<std::size_t>(w + top)];
}

template <class F>
TorusGrading<F> torus_grading(const Algebra<F>& alg, const HodgeMarking& marking) {
  const F& f = alg.field;
  if (!alg.model) throw PreconditionError("torus_grading needs the source model");
  check_marking(alg.model->lattice, marking);
  const auto& lat = alg.model->lattice;
  const std::size_t b2 = alg.b2();
  const std::size_t top = alg.top();

  // W(e_i) = ((e_i, sigmabar) sigma - (e_i, sigma) sigmabar) / (sigma, sigmabar)
  const mpq_class norm = lat.pair(marking.sigma, marking.sigmabar);
  std::vector<OperatorOnTotal<F>> cup_w;
  for (std::size_t i = 0; i < b2; ++i) {
    auto e = lat.basis_vector(i);
    mpq_class a = lat.pair(e, marking.sigmabar) / norm;
    mpq_class b = lat.pair(e, marking.sigma) / norm;
    RationalVector w(b2);
    for (std::size_t j = 0; j < b2; ++j) w[j] = a * marking.sigma[j] - b * marking.sigmabar[j];
    auto wf = convert_vector(f, std::span<const mpq_class>(w));
    cup_w.push_back(cup_operator(alg, std::span<const typename F::Scalar>(wf)));
  }

  TorusGrading<F> g;
  g.derivation.push_back(MatrixOver<F>(1, 1));
  for (std::size_t k = 0; k < top; ++k) {
    // D(alpha_i x) = W(alpha_i) x + alpha_i D(x); solve S D_{k+1} = T
    const std::size_t src = alg.dims[k], dst = alg.dims[k + 1];
    MatrixOver<F> aug(0, 2 * dst);
    for (std::size_t i = 0; i < b2; ++i) {
      auto t = multiply(f, g.derivation[k], alg.h2[i][k]);
      add_scaled(f, t, f.one(), cup_w[i].blocks[k]);
      for (std::size_t r = 0; r < src; ++r) {
        VectorOver<F> row(2 * dst, f.zero());
        for (std::size_t c = 0; c < dst; ++c) {
          row[c] = alg.h2[i][k](r, c);
          row[dst + c] = t(r, c);
        }
        aug.append_row(row);
      }
    }
    auto pivots = rref(f, aug);
    std::size_t s_rank = 0;
    while (s_rank < pivots.size() && pivots[s_rank] < dst) ++s_rank;
    if (s_rank != dst)
      throw StructuralError("bigrading undefined in degree " + std::to_string(2 * (k + 1)) +
                            ": degree-2 products do not span");
    if (pivots.size() != s_rank)
      throw StructuralError("bigrading inconsistent in degree " + std::to_string(2 * (k + 1)) +
                            ": the structure tensors are not bihomogeneous for this marking");
    MatrixOver<F> d(dst, dst);
    for (std::size_t r = 0; r < dst; ++r)
      for (std::size_t c = 0; c < dst; ++c) d(r, c) = aug(r, dst + c);
    g.derivation.push_back(std::move(d));
  }

  const int wmax = static_cast<int>(top);
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<Subspace<F>> row;
    std::size_t total = 0;
    for (int w = -wmax; w <= wmax; ++w) {
      auto shifted = g.derivation[k];
      auto wf = f.from_int(w);
      for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) = f.sub(shifted(i, i), wf);
      row.push_back(subspace_kernel(f, shifted));
      total += row.back().dim();
    }
    if (total != alg.dims[k])
      throw StructuralError("bigrading inconsistent in degree " + std::to_string(2 * k) +
                            ": weight spaces have total dimension " + std::to_string(total) + " of " +
                            std::to_string(alg.dims[k]));
    g.weight_spaces.push_back(std::move(row));
  }
  return g;
}

template <class F>
NumberTable hodge_numbers(const Algebra<F>& alg, const TorusGrading<F>& grading) {
  const std::size_t top = alg.top();
  NumberTable table(top + 1, std::vector<std::size_t>(top + 1, 0));
  const int wmax = static_cast<int>(top);
  for (std::size_t k = 0; k <= top; ++k)
    for (int w = -wmax; w <= wmax; ++w) {
      std::size_t d = grading.weight_space(k, w).dim();
      if (d == 0) continue;
      long p = static_cast<long>(k) + w, q = static_cast<long>(k) - w;
      if (p < 0 || q < 0 || p > wmax || q > wmax)
        throw StructuralError("bigrading puts " + std::to_string(d) + " dimensions of degree " +
                              std::to_string(2 * k) + " at (p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                              "), outside the diamond");
      table[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = d;
    }
  return table;
}

template <class F>
NumberTable hodge_numbers(const Algebra<F>& alg, const HodgeMarking& marking) {
  return hodge_numbers(alg, torus_grading(alg, marking));
}

#define IHLAB_INSTANTIATE(F)                                                                                        \
  template struct Algebra<F>;                                                                                       \
  template struct TorusGrading<F>;                                                                                  \
  template OperatorOnTotal<F> zero_operator(const Algebra<F>&, int);                                                \
  template OperatorOnTotal<F> identity_operator(const Algebra<F>&);                                                 \
  template OperatorOnTotal<F> compose(const Algebra<F>&, const OperatorOnTotal<F>&, const OperatorOnTotal<F>&);     \
  template OperatorOnTotal<F> combine(const Algebra<F>&, const F::Scalar&, const OperatorOnTotal<F>&,               \
                                      const F::Scalar&, const OperatorOnTotal<F>&);                                 \
  template bool operator_equal(const Algebra<F>&, const OperatorOnTotal<F>&, const OperatorOnTotal<F>&);            \
  template bool operator_is_zero(const Algebra<F>&, const OperatorOnTotal<F>&);                                     \
  template MatrixOver<F> to_dense(const Algebra<F>&, const OperatorOnTotal<F>&);                                    \
  template MatrixOver<F> power_block(const Algebra<F>&, const OperatorOnTotal<F>&, std::size_t, std::size_t);       \
  template OperatorOnTotal<F> cup_operator(const Algebra<F>&, std::span<const F::Scalar>);                          \
  template CheckReport validate_model(const Algebra<F>&);                                                           \
  template TorusGrading<F> torus_grading(const Algebra<F>&, const HodgeMarking&);                                   \
  template NumberTable hodge_numbers(const Algebra<F>&, const TorusGrading<F>&);                                    \
  template NumberTable hodge_numbers(const Algebra<F>&, const HodgeMarking&);

IHLAB_INSTANTIATE(Rationals)
IHLAB_INSTANTIATE(PrimeField)

#undef IHLAB_INSTANTIATE

}  // namespace ihlab

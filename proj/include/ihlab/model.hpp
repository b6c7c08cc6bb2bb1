#pragma once

// Graded Frobenius algebras standing in for the intersection cohomology of
// an irreducible symplectic variety of complex dimension 2n.
//
// Only even degrees are stored.  Degree index k in [0, 2n] is cohomological
// degree 2k.  The degree-2 piece has basis alpha_0..alpha_{b2-1}, and the
// algebra is described by the cup-product operators L_i = (alpha_i cup -)
// restricted to each degree, as dims[k] x dims[k+1] matrices acting on row
// vectors.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ihlab/lattice.hpp"
#include "ihlab/matrix.hpp"
#include "ihlab/report.hpp"
#include "ihlab/subspace.hpp"

namespace ihlab {

/// sigma of type (2,0) and sigmabar of type (0,2); the (1,1) part is their
/// common orthogonal complement.
struct HodgeMarking {
  RationalVector sigma;
  RationalVector sigmabar;
};

struct GradedAlgebraModel {
  std::string name;
  int n = 1;
  std::vector<std::size_t> dims;
  /// h2_action[i][k] : degree index k -> k + 1, for k in [0, 2n).
  std::vector<std::vector<Matrix<mpq_class>>> h2_action;
  QuadraticLattice lattice;
  /// Linear functional on the top piece.
  RationalVector integral;
  std::optional<HodgeMarking> marking;

  std::size_t b2() const { return lattice.b2(); }
  std::size_t top() const { return static_cast<std::size_t>(2 * n); }
  std::size_t total_dim() const;
  std::size_t offset(std::size_t k) const;
};

/// Throws PreconditionError unless q(sigma) = q(sigmabar) = 0 and
/// (sigma, sigmabar) != 0.
void check_marking(const QuadraticLattice& lattice, const HodgeMarking& marking);

/// Default marking sigma = e, sigmabar = f from the lattice's hyperbolic pair.
std::optional<HodgeMarking> marking_from_hyperbolic_pair(const QuadraticLattice& lattice);

/// A model with its structure tensors converted into the field F.
template <class F>
struct Algebra {
  F field;
  int n = 1;
  std::vector<std::size_t> dims;
  std::vector<std::vector<MatrixOver<F>>> h2;
  VectorOver<F> integral;
  const GradedAlgebraModel* model = nullptr;

  static Algebra from(const F& f, const GradedAlgebraModel& m);

  std::size_t b2() const { return h2.size(); }
  std::size_t top() const { return static_cast<std::size_t>(2 * n); }
  std::size_t total_dim() const;
  std::size_t offset(std::size_t k) const;
  VectorOver<F> unit() const;
};

/// A linear map on the total space that moves degree index k to k + shift/2
/// (shift is in cohomological degrees).  blocks[k] is dims[k] x dims[k'],
/// with dims[k'] = 0 when k' falls outside [0, 2n].
template <class F>
struct OperatorOnTotal {
  int shift = 0;
  std::vector<MatrixOver<F>> blocks;

  std::size_t target(std::size_t k) const { return k + static_cast<std::size_t>(shift / 2); }
  bool lands(std::size_t k, std::size_t top) const {
    auto t = static_cast<long>(k) + shift / 2;
    return t >= 0 && t <= static_cast<long>(top);
  }
};

template <class F>
OperatorOnTotal<F> zero_operator(const Algebra<F>& alg, int shift);

template <class F>
OperatorOnTotal<F> identity_operator(const Algebra<F>& alg);

/// A o B (apply B first).
template <class F>
OperatorOnTotal<F> compose(const Algebra<F>& alg, const OperatorOnTotal<F>& a, const OperatorOnTotal<F>& b);

template <class F>
OperatorOnTotal<F> combine(const Algebra<F>& alg, const typename F::Scalar& s, const OperatorOnTotal<F>& a,
                           const typename F::Scalar& t, const OperatorOnTotal<F>& b);

template <class F>
bool operator_equal(const Algebra<F>& alg, const OperatorOnTotal<F>& a, const OperatorOnTotal<F>& b);

template <class F>
bool operator_is_zero(const Algebra<F>& alg, const OperatorOnTotal<F>& a);

/// Dense N x N matrix (row-vector convention) of an operator.
template <class F>
MatrixOver<F> to_dense(const Algebra<F>& alg, const OperatorOnTotal<F>& a);

/// The composite op^e from degree index k, as a dims[k] x dims[k+e*shift/2]
/// matrix.  e = 0 gives the identity.
template <class F>
MatrixOver<F> power_block(const Algebra<F>& alg, const OperatorOnTotal<F>& op, std::size_t k, std::size_t e);

/// sum_i v_i L_i.  Throws InputError when v does not have b2 entries.
template <class F>
OperatorOnTotal<F> cup_operator(const Algebra<F>& alg, std::span<const typename F::Scalar> v);

OperatorOnTotal<Rationals> cup_operator(const Algebra<Rationals>& alg, const RationalVector& v);

/// Runs every GradedAlgebraModel invariant and lists pass/fail per check.
template <class F>
CheckReport validate_model(const Algebra<F>& alg);

CheckReport validate_model(const GradedAlgebraModel& model, const ScalarDomain& domain);

/// integral(alpha^{2n}) = c * q(alpha)^n, determined from one alpha with
/// q(alpha) != 0 and verified exactly on independently sampled classes.
struct FujikiResult {
  mpq_class constant;
  std::size_t verified_samples = 0;
  RationalVector determining_class;
  /// integral((sigma sigmabar)^n) for the model's marking, when present.
  std::optional<mpq_class> sigma_integral;
  /// c after rescaling the integral so that integral((sigma sigmabar)^n) = 1.
  std::optional<mpq_class> sigma_normalized_constant;
};

/// Throws StructuralError (with a witness class) if the model is not of
/// Fujiki type.
FujikiResult fujiki_check(const GradedAlgebraModel& model, std::uint64_t seed, std::size_t samples = 20);

/// integral(alpha^{2n}) computed by iterated cup products.
mpq_class top_power_integral(const Algebra<Rationals>& alg, const RationalVector& alpha);

/// Torus action of a Hodge marking: the derivation D extending
/// W = sigma (x) sigmabar^* - sigmabar (x) sigma^* from the degree-2 piece.
/// D acts on H^{p,q} by (p - q) / 2.
template <class F>
struct TorusGrading {
  std::vector<MatrixOver<F>> derivation;  // per degree index, square
  /// weight_spaces[k][w + 2n] = Ker(D_k - w) for w in [-2n, 2n].
  std::vector<std::vector<Subspace<F>>> weight_spaces;

  const Subspace<F>& weight_space(std::size_t k, int w) const;
};

/// Throws StructuralError naming the degree where the bigrading is
/// inconsistent, PreconditionError for an invalid marking.
template <class F>
TorusGrading<F> torus_grading(const Algebra<F>& alg, const HodgeMarking& marking);

using NumberTable = std::vector<std::vector<std::size_t>>;

/// Ih^{p,q} as a (2n+1) x (2n+1) table indexed [p][q].
template <class F>
NumberTable hodge_numbers(const Algebra<F>& alg, const HodgeMarking& marking);

template <class F>
NumberTable hodge_numbers(const Algebra<F>& alg, const TorusGrading<F>& grading);

}  // namespace ihlab

#pragma once

// The filtration attached to an isotropic class gamma:
//
//   P_k cap H^d = sum_{i=1}^{2n+1} Ker(gamma^{n+k+i-d}) cap Im(gamma^{i-1}) cap H^d
//
// with d the cohomological degree.  Negative exponents give the zero
// subspace; exponent 0 has zero kernel and full image.

#include <vector>

#include "ihlab/model.hpp"

namespace ihlab {

template <class F>
struct Filtration {
  int n = 1;
  /// pieces[e][k] = P_k cap (degree index e), k = 0..2n
  std::vector<std::vector<Subspace<F>>> pieces;

  /// P_k cap H^{2e}; k < 0 gives 0 and k > 2n the whole piece.
  Subspace<F> at(int k, std::size_t e) const;
  std::size_t dim(int k, std::size_t e) const { return at(k, e).dim(); }
};

/// (2n+1) x (2n+1) table indexed [i][j].
using PerverseTable = NumberTable;

/// Throws PreconditionError when gamma = 0 or q(gamma) != 0.
template <class F>
Filtration<F> perverse_filtration(const Algebra<F>& alg, const RationalVector& gamma);

/// T[i][j] = dim P_i cap H^{i+j} - dim P_{i-1} cap H^{i+j}.
template <class F>
PerverseTable perverse_table(const Filtration<F>& filt);

template <class F>
PerverseTable perverse_table(const Algebra<F>& alg, const RationalVector& gamma);

/// Monotone and exhaustive in every degree.
template <class F>
CheckReport check_filtration_invariants(const Algebra<F>& alg, const Filtration<F>& filt);

/// Sum over i + j = d of T[i][j] equals dim H^d.
CheckReport check_graded_dimensions(const PerverseTable& table, const std::vector<std::size_t>& dims);

/// T[i][j] = T[2n-i][j] = T[i][2n-j].
CheckReport check_symmetry(const PerverseTable& table);

/// Row i = 0 and column j = 0 equal (1, 0, 1, ..., 1).
CheckReport check_border(const PerverseTable& table);

/// Equal filtration dimensions for both classes in every (k, d).  A b2 < 5
/// model produces a warning entry.
template <class F>
CheckReport check_invariance(const Algebra<F>& alg, const RationalVector& gamma1, const RationalVector& gamma2);

struct LefschetzPairOutcome {
  bool property_i = false;
  bool property_ii = false;
  std::vector<std::string> witnesses_i;
  std::vector<std::string> witnesses_ii;
  /// (gamma, gamma') != 0: both properties are asserted.
  bool asserted = false;
};

/// (i) gamma' P_i H^j is inside P_{i+2} H^{j+2}; (ii) gamma'^k induces
/// Gr_{n-k} H^d ~ Gr_{n+k} H^{d+2k} for k = 1..n.
template <class F>
LefschetzPairOutcome lefschetz_pair(const Algebra<F>& alg, const RationalVector& gamma, const RationalVector& gamma2);

template <class F>
CheckReport check_lefschetz_pair(const Algebra<F>& alg, const RationalVector& gamma, const RationalVector& gamma2);

/// P^sigma_0 cap H^{2k} = span{sigma^k} (k <= n) and 0 above, plus both
/// inequalities dim P^sigma_0 H^d <= Ih^{d,0} and dim Gr^sigma_d H^d <=
/// Ih^{0,d} checked as equalities.
template <class F>
CheckReport check_p0_claim(const Algebra<F>& alg, const HodgeMarking& marking);

/// Entrywise perverse_table(gamma) = hodge_numbers(marking), and the
/// sigmabar-filtration agrees with the Hodge filtration:
/// P^{sigmabar}_i cap H^{2k} is the sum of the weight spaces w <= i - k.
template <class F>
CheckReport perverse_equals_hodge(const Algebra<F>& alg, const HodgeMarking& marking, const RationalVector& gamma);

/// Throws PreconditionError unless gamma is a nonzero isotropic class of
/// the model's lattice.
void require_isotropic(const GradedAlgebraModel& model, const RationalVector& gamma);

}  // namespace ihlab

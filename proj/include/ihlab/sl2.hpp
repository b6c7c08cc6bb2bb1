#pragma once

#include <vector>

#include "ihlab/model.hpp"

namespace ihlab {

template <class F>
struct Sl2Triple {
  OperatorOnTotal<F> L;
  OperatorOnTotal<F> H;
  OperatorOnTotal<F> Lambda;
};

/// alpha^{2j} : degree 2n - 2j -> 2n + 2j is an isomorphism for j = 1..n.
template <class F>
bool is_lefschetz(const Algebra<F>& alg, const RationalVector& alpha);

/// is_lefschetz(alpha) <=> q(alpha) != 0 on every sample.
template <class F>
CheckReport lefschetz_criterion_check(const Algebra<F>& alg, const std::vector<RationalVector>& samples);

/// Components gamma_j (j = 0, 1, ...) of a class gamma of degree index k,
/// gamma = sum_j L^j gamma_j with gamma_j primitive of degree index k - j.
/// Throws PreconditionError when alpha is not of Lefschetz type.
template <class F>
std::vector<VectorOver<F>> primitive_decompose(const Algebra<F>& alg, const RationalVector& alpha, std::size_t k,
                                               const VectorOver<F>& gamma);

/// Throws PreconditionError when alpha is not of Lefschetz type.
template <class F>
Sl2Triple<F> sl2_triple(const Algebra<F>& alg, const RationalVector& alpha);

/// [H,L] = 2L, [H,Lambda] = -2 Lambda, [L,Lambda] = H.
template <class F>
CheckReport check_sl2_relations(const Algebra<F>& alg, const Sl2Triple<F>& t);

/// AB - BA on block operators.
template <class F>
OperatorOnTotal<F> commutator(const Algebra<F>& alg, const OperatorOnTotal<F>& a, const OperatorOnTotal<F>& b);

}  // namespace ihlab

#pragma once

// Lie closure of operator sets on the total space of a model.
//
// Operators here are dense N x N matrices in the row-vector convention, so
// the operator composite A o B has matrix M_B M_A.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ihlab/model.hpp"

namespace ihlab {

/// Operator commutator [A, B] = A o B - B o A, i.e. M_B M_A - M_A M_B.
template <class F>
MatrixOver<F> lie_bracket(const F& f, const MatrixOver<F>& a, const MatrixOver<F>& b);

/// Span of flattened N x N operators kept in reduced row-echelon form.
/// Over the prime field membership is decided by a random linear
/// functional vanishing on the span (false positives with probability
/// at most 1/p per query); over the rationals by the exact residual.
template <class F>
class OperatorSpan {
 public:
  OperatorSpan(const F& f, std::size_t n, std::uint64_t seed);
  ~OperatorSpan();
  OperatorSpan(OperatorSpan&&) noexcept;
  OperatorSpan& operator=(OperatorSpan&&) noexcept;

  std::size_t dim() const;
  bool contains(const MatrixOver<F>& op) const;
  /// Adds op unless it already lies in the span; returns whether it was new.
  bool insert(const MatrixOver<F>& op);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

template <class F>
struct LieClosure {
  std::size_t ambient = 0;
  std::vector<MatrixOver<F>> basis;
  /// "generator <label>" or "[b<i>, g<j>]" for each basis element.
  std::vector<std::string> provenance;
  /// Every bracket of a basis element with a generator was checked.
  bool closed = false;
  bool budget_exceeded = false;
  std::size_t brackets = 0;
  std::size_t generator_count = 0;

  std::size_t dim() const { return basis.size(); }
  bool contains(const MatrixOver<F>& op) const { return span->contains(op); }

  std::shared_ptr<OperatorSpan<F>> span;
};

/// Incremental closure: generators may be added after a closure pass, and
/// only the new brackets are evaluated.
template <class F>
class ClosureBuilder {
 public:
  ClosureBuilder(const F& f, std::size_t n, std::size_t budget, std::uint64_t seed = 0x1f2e3d4c);

  /// Adds a generator; returns false when it already lies in the span.
  bool add_generator(const MatrixOver<F>& op, const std::string& label);
  /// Brackets until closed or over budget.
  void saturate();

  const LieClosure<F>& result() const { return closure_; }

 private:
  struct Sparse {
    std::vector<std::size_t> row_start;
    std::vector<std::size_t> col;
    std::vector<typename F::Scalar> val;
  };
  Sparse to_sparse(const MatrixOver<F>& m) const;
  MatrixOver<F> bracket_with(const MatrixOver<F>& x, std::size_t g) const;
  bool push(MatrixOver<F> op, std::string label);

  F field_;
  std::size_t n_;
  std::size_t budget_;
  LieClosure<F> closure_;
  std::vector<Sparse> generators_;
  std::vector<std::size_t> generator_basis_index_;
  /// processed_[b] = number of generators basis element b was bracketed with
  std::vector<std::size_t> processed_;
};

/// Closure of the given generators (pruned to a linearly independent set).
template <class F>
LieClosure<F> lie_closure(const F& f, const std::vector<MatrixOver<F>>& generators, std::size_t budget);

/// Shifts (in cohomological degree) of the nonzero blocks of a dense operator.
template <class F>
std::vector<int> operator_shifts(const Algebra<F>& alg, const MatrixOver<F>& op);

struct LlvResult {
  std::size_t dimension = 0;
  std::size_t expected = 0;
  std::size_t ambient = 0;
  bool closed = false;
  bool stabilized = false;
  bool budget_exceeded = false;
  ScalarDomain domain;
  std::size_t generators = 0;
  std::size_t lefschetz_classes = 0;
  std::size_t brackets = 0;
  double seconds = 0;
  /// Certification rerun (exact for N <= 64, a second prime above).
  std::optional<std::string> certification_mode;
  std::optional<std::size_t> certified_dimension;

  bool conclusive() const { return closed && stabilized; }
  bool matches() const {
    return conclusive() && dimension == expected && (!certified_dimension || *certified_dimension == dimension);
  }
};

/// dim of the Lie algebra generated by the sl2-triples of the b2 coordinate
/// directions (perturbed to Lefschetz type) and seeded extra Lefschetz
/// classes, added until the dimension is unchanged by 3 consecutive extras.
/// Budget defaults to 2 * expected + 10.
LlvResult llv_dimension(const GradedAlgebraModel& model, std::uint64_t seed, const ScalarDomain& domain,
                        std::optional<std::size_t> budget = {}, bool certify = true);

std::size_t so_dimension(std::size_t m);

}  // namespace ihlab

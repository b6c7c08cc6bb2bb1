#pragma once

// Subspaces of F^n in canonical form: the basis is the reduced row-echelon
// matrix of any spanning set, so two Subspace values describe the same
// space exactly when their bases compare equal.

#include <cstddef>
#include <string>
#include <vector>

#include "ihlab/matrix.hpp"

namespace ihlab {

template <class F>
class Subspace {
 public:
  using Scalar = typename F::Scalar;

  Subspace() = default;

  static Subspace zero(std::size_t ambient) { return Subspace(ambient, MatrixOver<F>(0, ambient), {}); }

  static Subspace full(const F& f, std::size_t ambient) {
    std::vector<std::size_t> pivots(ambient);
    for (std::size_t i = 0; i < ambient; ++i) pivots[i] = i;
    return Subspace(ambient, identity(f, ambient), std::move(pivots));
  }

  /// Span of the rows of `generators`.
  static Subspace span(const F& f, MatrixOver<F> generators) {
    const std::size_t n = generators.cols();
    auto pivots = rref(f, generators);
    if (generators.rows() == 0) generators = MatrixOver<F>(0, n);
    return Subspace(n, std::move(generators), std::move(pivots));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const MatrixOver<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Membership by reduction against the pivots.
  bool contains(const F& f, std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw InputError("Subspace::contains: ambient mismatch");
    VectorOver<F> r(v.begin(), v.end());
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      auto c = r[pivots_[k]];
      if (f.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!f.is_zero(basis_(k, j))) f.sub_mul(r[j], c, basis_(k, j));
    }
    for (const auto& x : r)
      if (!f.is_zero(x)) return false;
    return true;
  }

  bool contains(const F& f, const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InputError("Subspace::contains: ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(f, other.basis_.row(i))) return false;
    return true;
  }

  bool operator==(const Subspace& other) const = default;

 private:
  Subspace(std::size_t ambient, MatrixOver<F> basis, std::vector<std::size_t> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t ambient_ = 0;
  MatrixOver<F> basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : v M = 0}
template <class F>
Subspace<F> subspace_kernel(const F& f, const MatrixOver<F>& m) {
  return Subspace<F>::span(f, left_kernel(f, m));
}

/// Row space of M.
template <class F>
Subspace<F> subspace_image(const F& f, const MatrixOver<F>& m) {
  return Subspace<F>::span(f, m);
}

template <class F>
Subspace<F> subspace_sum(const F& f, const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw InputError("subspace_sum: ambient " + std::to_string(a.ambient_dim()) + " vs " +
                     std::to_string(b.ambient_dim()));
  if (b.dim() == 0) return a;
  if (a.dim() == 0) return b;
  MatrixOver<F> stacked = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.basis().row(i));
  return Subspace<F>::span(f, std::move(stacked));
}

template <class F>
Subspace<F> subspace_intersect(const F& f, const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw InputError("subspace_intersect: ambient " + std::to_string(a.ambient_dim()) + " vs " +
                     std::to_string(b.ambient_dim()));
  const std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace<F>::zero(n);
  // relations c.A + d.B = 0 give the intersection as c.A
  MatrixOver<F> stacked = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.basis().row(i));
  auto relations = left_kernel(f, stacked);
  MatrixOver<F> gens(0, n);
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    VectorOver<F> v(n, f.zero());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const auto& c = relations(r, i);
      if (f.is_zero(c)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!f.is_zero(a.basis()(i, j))) v[j] = f.add(v[j], f.mul(c, a.basis()(i, j)));
    }
    gens.append_row(v);
  }
  return Subspace<F>::span(f, std::move(gens));
}

/// Image of a subspace under x -> x M.
template <class F>
Subspace<F> subspace_map(const F& f, const Subspace<F>& s, const MatrixOver<F>& m) {
  if (s.ambient_dim() != m.rows()) throw InputError("subspace_map: ambient mismatch");
  if (s.dim() == 0) return Subspace<F>::zero(m.cols());
  return Subspace<F>::span(f, multiply(f, s.basis(), m));
}

}  // namespace ihlab

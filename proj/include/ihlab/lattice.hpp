#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ihlab/matrix.hpp"

namespace ihlab {

using RationalVector = std::vector<mpq_class>;

/// A rational symmetric bilinear form on the degree-2 piece: the BBF form q
/// and its polarization (x, y), with q(x) = (x, x).
class QuadraticLattice {
 public:
  QuadraticLattice() = default;
  /// Throws InputError unless gram is square, symmetric and nondegenerate,
  /// and the optional hyperbolic pair satisfies q(e) = q(f) = 0, (e, f) = 1.
  QuadraticLattice(Matrix<mpq_class> gram, std::optional<std::pair<std::size_t, std::size_t>> hyperbolic_pair = {});

  std::size_t b2() const { return gram_.rows(); }
  const Matrix<mpq_class>& gram() const { return gram_; }
  const std::optional<std::pair<std::size_t, std::size_t>>& hyperbolic_pair() const { return hyperbolic_pair_; }

  mpq_class pair(std::span<const mpq_class> x, std::span<const mpq_class> y) const;
  mpq_class q(std::span<const mpq_class> x) const { return pair(x, x); }

  /// (positive, negative) counts of the diagonalized form.
  std::pair<std::size_t, std::size_t> signature() const;
  /// Integral entries and even diagonal.
  bool is_even() const;
  mpq_class determinant() const;

  /// Orthogonal direct sum.
  QuadraticLattice direct_sum(const QuadraticLattice& other) const;

  RationalVector basis_vector(std::size_t i) const;

 private:
  Matrix<mpq_class> gram_;
  std::optional<std::pair<std::size_t, std::size_t>> hyperbolic_pair_;
};

/// Built-in lattices.  The Gram matrices ship as JSON data files that are
/// compiled in and validated (signature, evenness) on every load.
struct LatticeFixture {
  std::string name;
  QuadraticLattice lattice;
  std::pair<std::size_t, std::size_t> declared_signature;
};

/// Aliases: "k3" (b2 = 22), "k3n" (K3 lattice + <-2(n-1)>, b2 = 23, needs
/// n >= 2), "toy5" (U + <-2>^3).  Throws InputError for unknown names or
/// fixture data that fails validation.
LatticeFixture load_lattice_fixture(const std::string& alias, int n);

bool is_lattice_alias(const std::string& alias);

/// Parses a lattice from the JSON text of a Gram file or model file
/// (fields `gram`, optional `hyperbolic_pair`).
QuadraticLattice lattice_from_json_text(const std::string& text);

}  // namespace ihlab

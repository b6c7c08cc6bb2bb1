#pragma once

// The subalgebra generated by H^2: Sym(H^2) modulo the ideal generated by
// (n+1)-st powers of isotropic classes.
//
// Degree index k <= n is stored in the monomial basis of Sym^k.  Above the
// middle, a class y of degree index k is stored by its pairing coordinates
// (phi(y m))_m over the monomials m of Sym^{2n-k}, where phi is the
// polarization of q^n on Sym^{2n}.

#include <cstdint>
#include <string>
#include <vector>

#include "ihlab/lattice.hpp"
#include "ihlab/model.hpp"

namespace ihlab {

/// A monomial of Sym^k as a sorted list of generator indices.
using Monomial = std::vector<std::uint16_t>;

/// All monomials of Sym^k(Q^b2) in lexicographic order.
std::vector<Monomial> monomial_basis(std::size_t b2, std::size_t k);

struct ShConstruction {
  GradedAlgebraModel model;
  /// monomials[k] for k in [0, 2n]; degree k > n uses monomials[2n - k]
  /// as its coordinate labels.
  std::vector<std::vector<Monomial>> monomials;
  /// projection[k] for k > n: Sym^k -> SH^{2k} in coordinates (empty for
  /// k <= n, where the projection is the identity).
  std::vector<Matrix<mpq_class>> projection;
  /// Value of the unnormalized polarization on (ef)^n (or the first
  /// monomial where it is nonzero); phi is divided by it.
  mpq_class phi_scale;
  /// Dimension of the span of sampled alpha^{n+1} in Sym^{n+1}, and the
  /// target dim Sym^{n+1} - dim Sym^{n-1}.
  std::size_t ideal_rank = 0;
  std::size_t ideal_target = 0;
  std::size_t samples_drawn = 0;
};

/// Throws ConstructionError when the span of sampled isotropic powers does
/// not reach the target within the sampling budget, PreconditionError for
/// n < 1.
ShConstruction build_sh_construction(const QuadraticLattice& lattice, int n, std::uint64_t seed = 42);

GradedAlgebraModel build_sh(const QuadraticLattice& lattice, int n, std::uint64_t seed = 42);

/// `count` pairwise non-proportional primitive integral vectors with
/// q = 0, deterministic in the seed.  Throws ArithmeticObstruction when none
/// can be found.
std::vector<RationalVector> sample_isotropic(const QuadraticLattice& lattice, std::uint64_t seed, std::size_t count);

}  // namespace ihlab

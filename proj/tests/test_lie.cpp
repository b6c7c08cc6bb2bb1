#include <doctest.h>

#include "fixtures.hpp"
#include "ihlab/errors.hpp"
#include "ihlab/lie.hpp"
#include "ihlab/sl2.hpp"
#include "oracle.hpp"

using namespace ihlab;
using fixtures::vec;

namespace {

oracle::Vec flatten(const Matrix<mpq_class>& m) { return oracle::Vec(m.data().begin(), m.data().end()); }

oracle::Mat unflatten(const oracle::Vec& v, std::size_t n) {
  oracle::Mat m(n, oracle::Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = v[i * n + j];
  return m;
}

oracle::Vec flatten(const oracle::Mat& m) {
  oracle::Vec v;
  for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
  return v;
}

// Closure by brackets of all pairs of basis elements until nothing new
// appears; spans are tracked through the rank of the flattened list.
std::size_t naive_closure_dimension(const std::vector<Matrix<mpq_class>>& generators) {
  if (generators.empty()) return 0;
  const std::size_t n = generators[0].rows();
  oracle::Mat basis;
  auto try_add = [&](const oracle::Vec& v) {
    auto extended = basis;
    extended.push_back(v);
    if (oracle::rank(extended) > basis.size()) {
      basis.push_back(v);
      return true;
    }
    return false;
  };
  for (const auto& g : generators) try_add(flatten(g));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t size = basis.size();
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) {
        auto a = unflatten(basis[i], n), b = unflatten(basis[j], n);
        auto ab = oracle::multiply(a, b), ba = oracle::multiply(b, a);
        oracle::Vec c(n * n);
        auto fab = flatten(ab), fba = flatten(ba);
        for (std::size_t k = 0; k < n * n; ++k) c[k] = fab[k] - fba[k];
        grew = try_add(c) || grew;
      }
  }
  return basis.size();
}

// dim {X : X G + G X^T = 0} for the Gram matrix of H^2 plus a hyperbolic plane.
std::size_t mukai_so_dimension(const QuadraticLattice& lat) {
  const std::size_t b = lat.b2(), m = b + 2;
  oracle::Mat g(m, oracle::Vec(m, 0));
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) g[i][j] = lat.gram()(i, j);
  g[b][b + 1] = g[b + 1][b] = 1;
  // one equation per (r, c): sum_k X[r][k] G[k][c] + G[r][k] X[c][k] = 0,
  // written as columns of the coefficient matrix so the left kernel is the
  // solution space
  oracle::Mat coeff(m * m, oracle::Vec(m * m, 0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t k = 0; k < m; ++k) {
        coeff[r * m + k][r * m + c] += g[k][c];
        coeff[c * m + k][r * m + c] += g[r][k];
      }
  return oracle::left_kernel(coeff).size();
}

std::vector<Matrix<mpq_class>> triple_generators(const Algebra<Rationals>& alg,
                                                 const std::vector<RationalVector>& classes) {
  std::vector<Matrix<mpq_class>> out;
  for (const auto& a : classes) {
    auto t = sl2_triple(alg, a);
    out.push_back(to_dense(alg, t.L));
    out.push_back(to_dense(alg, t.H));
    out.push_back(to_dense(alg, t.Lambda));
  }
  return out;
}

}  // namespace

TEST_CASE("lie bracket basics") {
  Rationals q;
  auto alg = Algebra<Rationals>::from(q, fixtures::toy5());
  auto a = to_dense(alg, cup_operator(alg, vec({1, 0, 2, 0, 0})));
  auto b = to_dense(alg, cup_operator(alg, vec({0, 1, 0, 0, 3})));
  CHECK(is_zero(q, lie_bracket(q, a, a)));
  CHECK(is_zero(q, lie_bracket(q, a, b)));
  auto t = sl2_triple(alg, vec({1, 1, 0, 0, 0}));
  CHECK(lie_bracket(q, to_dense(alg, t.H), to_dense(alg, t.L)) == scale(q, mpq_class(2), to_dense(alg, t.L)));
  CHECK_THROWS_AS(lie_bracket(q, a, Matrix<mpq_class>(3, 3)), InputError);
}

TEST_CASE("closure of small generator sets") {
  Rationals q;
  auto alg = Algebra<Rationals>::from(q, fixtures::toy5());
  auto gens = triple_generators(alg, {vec({1, 1, 0, 0, 0})});
  auto c = lie_closure(q, gens, 100);
  CHECK(c.dim() == 3);
  CHECK(c.closed);
  CHECK(lie_closure(q, std::vector<Matrix<mpq_class>>{Matrix<mpq_class>(7, 7)}, 100).dim() == 0);
  CHECK(lie_closure(q, std::vector<Matrix<mpq_class>>{}, 100).dim() == 0);
  auto partial = lie_closure(q, triple_generators(alg, {vec({1, 1, 0, 0, 0}), vec({0, 0, 1, 0, 0})}), 4);
  CHECK(partial.budget_exceeded);
  CHECK_FALSE(partial.closed);
}

TEST_CASE("toy5 closure agrees with the naive all-pairs closure") {
  Rationals q;
  auto alg = Algebra<Rationals>::from(q, fixtures::toy5());
  std::vector<RationalVector> classes = {vec({1, 1, 0, 0, 0}), vec({1, -1, 0, 0, 0}), vec({0, 0, 1, 0, 0}),
                                         vec({0, 0, 0, 1, 0}), vec({0, 0, 0, 0, 1}), vec({1, 1, 1, 1, 0})};
  auto gens = triple_generators(alg, classes);
  const auto naive = naive_closure_dimension(gens);
  CHECK(naive == 21);
  auto c = lie_closure(q, gens, 100);
  CHECK(c.dim() == naive);
  CHECK(c.closed);
  // L of an isotropic class and H lie in the closure
  CHECK(c.contains(to_dense(alg, cup_operator(alg, vec({1, 0, 0, 0, 0})))));
  CHECK(c.contains(to_dense(alg, cup_operator(alg, vec({1, 1, 1, 0, 0})))));
  CHECK(c.contains(gens[1]));
  // every element moves degrees by -2, 0 or +2
  for (const auto& x : c.basis)
    for (int s : operator_shifts(alg, x)) CHECK((s == -2 || s == 0 || s == 2));
}

TEST_CASE("so dimension oracle from the Mukai form") {
  CHECK(mukai_so_dimension(fixtures::toy5().lattice) == 21);
  CHECK(so_dimension(7) == 21);
  CHECK(mukai_so_dimension(fixtures::k3().lattice) == 276);
  CHECK(so_dimension(24) == 276);
  CHECK(mukai_so_dimension(fixtures::k3n2().lattice) == 300);
  CHECK(so_dimension(25) == 300);
}

TEST_CASE("llv dimension on toy5") {
  auto r = llv_dimension(fixtures::toy5(), 42, ScalarDomain::exact());
  CHECK(r.dimension == 21);
  CHECK(r.expected == 21);
  CHECK(r.matches());
  CHECK_FALSE(r.certification_mode);
  auto r2 = llv_dimension(fixtures::toy5(2), 42, ScalarDomain::exact());
  CHECK(r2.dimension == 21);
  CHECK(r2.ambient == 27);
  auto r3 = llv_dimension(fixtures::toy5(2), 7, ScalarDomain::modular());
  CHECK(r3.dimension == 21);
  REQUIRE(r3.certified_dimension);
  CHECK(*r3.certified_dimension == 21);
}

TEST_CASE("llv dimension is seed independent on K3") {
  auto a = llv_dimension(fixtures::k3(), 1, ScalarDomain::modular(), std::nullopt, false);
  auto b = llv_dimension(fixtures::k3(), 2, ScalarDomain::modular(), std::nullopt, false);
  CHECK(a.dimension == 276);
  CHECK(b.dimension == 276);
  CHECK(a.expected == 276);
}

TEST_CASE("llv budget exhaustion is inconclusive") {
  auto r = llv_dimension(fixtures::toy5(), 42, ScalarDomain::exact(), 10);
  CHECK(r.budget_exceeded);
  CHECK_FALSE(r.conclusive());
  CHECK_FALSE(r.matches());
}

TEST_CASE("operator span membership over the prime field") {
  PrimeField f;
  OperatorSpan<PrimeField> span(f, 3, 1);
  MatrixOver<PrimeField> a(3, 3), b(3, 3);
  a(0, 1) = 1;
  b(1, 2) = 5;
  CHECK(span.insert(a));
  CHECK(span.insert(b));
  auto c = add(f, scale(f, f.from_int(3), a), b);
  CHECK(span.contains(c));
  CHECK_FALSE(span.insert(c));
  CHECK(span.dim() == 2);
  MatrixOver<PrimeField> d(3, 3);
  d(2, 2) = 1;
  CHECK_FALSE(span.contains(d));
}

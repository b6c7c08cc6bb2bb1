#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ihlab/errors.hpp"
#include "ihlab/lie.hpp"
#include "ihlab/sl2.hpp"

using namespace ihlab;
using fixtures::vec;

namespace {

std::vector<RationalVector> random_classes(std::size_t b2, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<RationalVector> out;
  for (std::size_t s = 0; s < count; ++s) {
    RationalVector a(b2);
    for (auto& x : a) x = d(rng);
    out.push_back(a);
  }
  return out;
}

// The model with the degree-2 basis permuted: alpha'_i = alpha_{perm[i]}.
// Degree indices 1 and 2n - 1 (labelled by the generators) are permuted
// alike; every other degree keeps its basis.
GradedAlgebraModel relabel(const GradedAlgebraModel& m, const std::vector<std::size_t>& perm) {
  GradedAlgebraModel out = m;
  const std::size_t b = m.b2(), top = m.top();
  Matrix<mpq_class> g(b, b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) g(i, j) = m.lattice.gram()(perm[i], perm[j]);
  out.lattice = QuadraticLattice(g);
  out.marking.reset();
  auto relabelled = [&](std::size_t k, std::size_t x) { return (k == 1 || k == top - 1) ? perm[x] : x; };
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t k = 0; k < top; ++k) {
      const auto& old = m.h2_action[perm[i]][k];
      auto& blk = out.h2_action[i][k];
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c) blk(r, c) = old(relabelled(k, r), relabelled(k + 1, c));
    }
  return out;
}

}  // namespace

TEST_CASE("is_lefschetz examples") {
  auto alg = Algebra<Rationals>::from(Rationals{}, fixtures::toy5());
  CHECK(is_lefschetz(alg, vec({1, 1, 0, 0, 0})));
  CHECK(is_lefschetz(alg, vec({0, 0, 1, 0, 0})));
  CHECK_FALSE(is_lefschetz(alg, vec({1, 1, 1, 0, 0})));
  CHECK_FALSE(is_lefschetz(alg, vec({0, 0, 0, 0, 0})));
  CHECK_FALSE(is_lefschetz(alg, vec({1, 0, 0, 0, 0})));
}

TEST_CASE("Lefschetz criterion on random classes") {
  for (const auto* m : {&fixtures::toy5(), &fixtures::toy5(2), &fixtures::k3(), &fixtures::k3n2()}) {
    auto samples = random_classes(m->b2(), 50, 17);
    samples.push_back(fixtures::unit_vector(m->b2(), 0));
    auto alg = Algebra<PrimeField>::from(PrimeField{}, *m);
    auto r = lefschetz_criterion_check(alg, samples);
    CHECK_MESSAGE(r.ok(), m->name);
  }
}

TEST_CASE("Lefschetz classes force palindromic dims") {
  const auto& m = fixtures::k3n2();
  auto alg = Algebra<PrimeField>::from(PrimeField{}, m);
  REQUIRE(is_lefschetz(alg, vec({1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0})));
  for (std::size_t k = 0; k <= m.top(); ++k) CHECK(m.dims[k] == m.dims[m.top() - k]);
}

TEST_CASE("primitive decomposition examples") {
  auto alg = Algebra<Rationals>::from(Rationals{}, fixtures::toy5());
  Rationals q;
  auto alpha = vec({1, 1, 0, 0, 0});
  SUBCASE("the unit is primitive") {
    auto parts = primitive_decompose(alg, alpha, 0, alg.unit());
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == VectorOver<Rationals>{1});
  }
  SUBCASE("alpha = L(1)") {
    auto parts = primitive_decompose(alg, alpha, 1, alpha);
    REQUIRE(parts.size() == 2);
    CHECK(std::all_of(parts[0].begin(), parts[0].end(), [](const mpq_class& x) { return x == 0; }));
    CHECK(parts[1] == VectorOver<Rationals>{1});
  }
  SUBCASE("a primitive class is returned unchanged") {
    auto l = cup_operator(alg, alpha);
    auto ker = subspace_kernel(q, l.blocks[1]);
    REQUIRE(ker.dim() == 4);
    VectorOver<Rationals> g(ker.basis().row(2).begin(), ker.basis().row(2).end());
    auto parts = primitive_decompose(alg, alpha, 1, g);
    CHECK(parts[0] == g);
    CHECK(parts[1] == VectorOver<Rationals>{0});
  }
  SUBCASE("non-Lefschetz alpha") {
    CHECK_THROWS_AS(primitive_decompose(alg, vec({1, 0, 0, 0, 0}), 0, alg.unit()), PreconditionError);
  }
}

TEST_CASE("primitive decomposition round trip") {
  const auto& m = fixtures::toy5(2);
  auto alg = Algebra<Rationals>::from(Rationals{}, m);
  Rationals q;
  auto alpha = vec({1, 3, 1, 0, -1});
  REQUIRE(is_lefschetz(alg, alpha));
  auto l = cup_operator(alg, alpha);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-4, 4);
  for (std::size_t k = 0; k <= m.top(); ++k) {
    VectorOver<Rationals> g(m.dims[k]);
    for (auto& x : g) x = d(rng);
    auto parts = primitive_decompose(alg, alpha, k, g);
    VectorOver<Rationals> sum(m.dims[k], 0);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const std::size_t src = k - j;
      if (parts[j].empty()) continue;
      // primitive: L^{2n - 2 src + 1} kills it
      auto kill = power_block(alg, l, src, m.top() - 2 * src + 1);
      if (kill.cols() > 0) {
        auto z = vec_mat(q, std::span<const mpq_class>(parts[j]), kill);
        CHECK(std::all_of(z.begin(), z.end(), [](const mpq_class& x) { return x == 0; }));
      }
      auto lifted = vec_mat(q, std::span<const mpq_class>(parts[j]), power_block(alg, l, src, j));
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += lifted[i];
    }
    CHECK(sum == g);
  }
}

TEST_CASE("sl2 triple examples") {
  auto alg = Algebra<Rationals>::from(Rationals{}, fixtures::toy5());
  auto alpha = vec({0, 0, 1, 0, 0});
  auto t = sl2_triple(alg, alpha);
  // Lambda(alpha) = 2 * unit
  auto back = vec_mat(alg.field, std::span<const mpq_class>(alpha), t.Lambda.blocks[1]);
  CHECK(back == VectorOver<Rationals>{2});
  // H is (2k - 2n) on degree index k
  CHECK(t.H.blocks[2] == scale(alg.field, mpq_class(2), identity(alg.field, 1)));
  CHECK(t.H.blocks[0] == scale(alg.field, mpq_class(-2), identity(alg.field, 1)));
  CHECK(check_sl2_relations(alg, t).ok());
  CHECK_THROWS_AS(sl2_triple(alg, vec({1, 0, 0, 0, 0})), PreconditionError);
}

TEST_CASE("sl2 relations on the b2 = 23, n = 2 model") {
  const auto& m = fixtures::k3n2();
  auto alg = Algebra<PrimeField>::from(PrimeField{}, m);
  std::size_t done = 0;
  for (const auto& a : random_classes(m.b2(), 12, 99)) {
    if (m.lattice.q(a) == 0) continue;
    auto t = sl2_triple(alg, a);
    auto r = check_sl2_relations(alg, t);
    CHECK(r.ok());
    CHECK(r.checks.size() == 3);
    CHECK(t.H.blocks[4] == scale(alg.field, alg.field.from_int(4), identity(alg.field, 1)));
    if (++done == 5) break;
  }
  CHECK(done == 5);
}

TEST_CASE("sl2 relations hold exactly over the rationals") {
  const auto& m = fixtures::toy5(2);
  auto alg = Algebra<Rationals>::from(Rationals{}, m);
  for (const auto& a : random_classes(m.b2(), 6, 4)) {
    if (m.lattice.q(a) == 0) continue;
    auto t = sl2_triple(alg, a);
    CHECK(check_sl2_relations(alg, t).ok());
    // also as dense matrices with the Lie bracket of the closure code
    auto L = to_dense(alg, t.L), H = to_dense(alg, t.H), Lam = to_dense(alg, t.Lambda);
    CHECK(lie_bracket(alg.field, H, L) == scale(alg.field, mpq_class(2), L));
    CHECK(lie_bracket(alg.field, H, Lam) == scale(alg.field, mpq_class(-2), Lam));
    CHECK(lie_bracket(alg.field, L, Lam) == H);
  }
}

TEST_CASE("Lambda does not depend on the labelling of the degree-2 basis") {
  const auto& m = fixtures::toy5(2);
  std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  auto pm = relabel(m, perm);
  REQUIRE(validate_model(pm, ScalarDomain::exact()).ok());
  auto alg = Algebra<Rationals>::from(Rationals{}, m);
  auto palg = Algebra<Rationals>::from(Rationals{}, pm);
  auto alpha = vec({3, 1, 1, -1, 0});
  RationalVector palpha(5);
  for (std::size_t i = 0; i < 5; ++i) palpha[i] = alpha[perm[i]];
  auto t = sl2_triple(alg, alpha);
  auto pt = sl2_triple(palg, palpha);
  // change of basis in degree indices 1 and 3: new basis vector i is old perm[i]
  auto lambda_entry = [&](std::size_t k, std::size_t r, std::size_t c) { return pt.Lambda.blocks[k](r, c); };
  for (std::size_t r = 0; r < 5; ++r) CHECK(lambda_entry(1, r, 0) == t.Lambda.blocks[1](perm[r], 0));
  for (std::size_t r = 0; r < 15; ++r)
    for (std::size_t c = 0; c < 5; ++c) CHECK(lambda_entry(2, r, c) == t.Lambda.blocks[2](r, perm[c]));
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 15; ++c) CHECK(lambda_entry(3, r, c) == t.Lambda.blocks[3](perm[r], c));
}

TEST_CASE("commutator of cup products vanishes") {
  auto alg = Algebra<Rationals>::from(Rationals{}, fixtures::toy5(2));
  auto a = cup_operator(alg, vec({1, 0, 2, 0, 1})), b = cup_operator(alg, vec({0, 1, 0, 3, 0}));
  CHECK(operator_is_zero(alg, commutator(alg, a, b)));
}

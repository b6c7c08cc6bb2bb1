#include <doctest.h>

#include <random>

#include "ihlab/errors.hpp"
#include "ihlab/field.hpp"
#include "ihlab/subspace.hpp"
#include "oracle.hpp"

using namespace ihlab;

namespace {

Matrix<mpq_class> qmat(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size(), c = rows.begin()->size();
  Matrix<mpq_class> m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

Matrix<mpq_class> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix<mpq_class> m(r, c);
  for (auto& x : m.data()) x = d(rng);
  return m;
}

oracle::Mat to_rows(const Matrix<mpq_class>& m) {
  oracle::Mat out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

}  // namespace

TEST_CASE("rational parsing and formatting round-trip") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-3")) == "-3");
  CHECK(format_rational(parse_rational(" 0/7 ")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("prime field arithmetic") {
  PrimeField f;
  const auto p = f.modulus();
  CHECK(p > (1ULL << 40));
  CHECK(p < (1ULL << 50));
  CHECK(is_probable_prime(p));
  CHECK(is_probable_prime(PrimeField::kCertificationPrime));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = rng() % p, b = rng() % p;
    unsigned __int128 exact = static_cast<unsigned __int128>(a) * b % p;
    CHECK(f.mul(a, b) == static_cast<std::uint64_t>(exact));
    if (a) CHECK(f.mul(a, f.inv(a)) == 1);
  }
  CHECK(f.from_rational(mpq_class(1, 2)) == f.inv(2));
  CHECK(f.from_int(-1) == p - 1);
  CHECK_THROWS_AS(PrimeField(1000003), InputError);
}

TEST_CASE("automatic scalar domain switches at total dimension 64") {
  CHECK(ScalarDomain::automatic(64, PrimeField::kDefaultPrime).mode == ScalarDomain::Mode::kExactRational);
  CHECK(ScalarDomain::automatic(65, PrimeField::kDefaultPrime).mode == ScalarDomain::Mode::kPrimeField);
}

TEST_CASE("kernel examples") {
  Rationals q;
  auto zero_kernel = subspace_kernel(q, Matrix<mpq_class>(3, 3));
  CHECK(zero_kernel == Subspace<Rationals>::full(q, 3));
  CHECK(subspace_kernel(q, identity(q, 4)).dim() == 0);
  auto k = subspace_kernel(q, qmat({{1, 1}, {2, 2}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis()(0, 0) == 1);
  CHECK(k.basis()(0, 1) == mpq_class(-1, 2));
}

TEST_CASE("image examples") {
  Rationals q;
  CHECK(subspace_image(q, identity(q, 5)) == Subspace<Rationals>::full(q, 5));
  CHECK(subspace_image(q, Matrix<mpq_class>(3, 4)).dim() == 0);
  auto im = subspace_image(q, qmat({{1, 0}, {1, 0}}));
  CHECK(im == Subspace<Rationals>::span(q, qmat({{1, 0}})));
}

TEST_CASE("intersection and sum examples") {
  Rationals q;
  auto a = Subspace<Rationals>::span(q, qmat({{1, 0, 0}, {0, 1, 0}}));
  auto b = Subspace<Rationals>::span(q, qmat({{0, 1, 0}, {0, 0, 1}}));
  auto z = Subspace<Rationals>::zero(3);
  CHECK(subspace_intersect(q, a, a) == a);
  CHECK(subspace_intersect(q, a, z) == z);
  CHECK(subspace_intersect(q, a, b) == Subspace<Rationals>::span(q, qmat({{0, 1, 0}})));
  CHECK(subspace_sum(q, a, z) == a);
  CHECK(subspace_sum(q, a, a) == a);
  auto x = Subspace<Rationals>::span(q, qmat({{1, 0}}));
  auto y = Subspace<Rationals>::span(q, qmat({{0, 1}}));
  CHECK(subspace_sum(q, x, y) == Subspace<Rationals>::full(q, 2));
  CHECK_THROWS_AS(subspace_intersect(q, a, x), InputError);
  CHECK_THROWS_AS(subspace_sum(q, a, x), InputError);
}

TEST_CASE("modular law and oracle agreement on random subspaces") {
  Rationals q;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 6;
    auto ma = random_matrix(rng, 1 + trial % 4, n, -2, 2);
    auto mb = random_matrix(rng, 1 + (trial / 3) % 4, n, -2, 2);
    auto a = Subspace<Rationals>::span(q, ma), b = Subspace<Rationals>::span(q, mb);
    auto cap = subspace_intersect(q, a, b), cup = subspace_sum(q, a, b);
    CHECK(cap.dim() + cup.dim() == a.dim() + b.dim());
    CHECK(to_rows(cap.basis()) == oracle::intersect(to_rows(a.basis()), to_rows(b.basis()), n));
    CHECK(to_rows(cup.basis()) == oracle::sum(to_rows(ma), to_rows(mb)));
    auto km = random_matrix(rng, n, 1 + trial % 5, -1, 1);
    auto ker = subspace_kernel(q, km);
    CHECK(ker.dim() + rank(q, km) == n);
    CHECK(to_rows(ker.basis()) == oracle::left_kernel(to_rows(km)));
  }
}

TEST_CASE("canonical form is independent of the spanning set") {
  Rationals q;
  auto a = Subspace<Rationals>::span(q, qmat({{1, 2, 3}, {0, 1, 1}}));
  auto b = Subspace<Rationals>::span(q, qmat({{1, 3, 4}, {2, 5, 7}, {1, 2, 3}}));
  CHECK(a == b);
  CHECK(a.basis() == b.basis());
}

TEST_CASE("prime-field ranks never exceed rational ranks and agree on small integer matrices") {
  Rationals q;
  PrimeField f;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_matrix(rng, 6, 7, -1, 1);
    auto exact = rank(q, m);
    auto modp = rank(f, convert_matrix(f, m));
    CHECK(modp <= exact);
    CHECK(modp == exact);
  }
}

TEST_CASE("inverse and multiply") {
  Rationals q;
  auto m = qmat({{2, 1}, {1, 1}});
  CHECK(multiply(q, m, inverse(q, m)) == identity(q, 2));
  CHECK_THROWS_AS(inverse(q, qmat({{1, 1}, {1, 1}})), PreconditionError);
  CHECK_THROWS_AS(multiply(q, m, Matrix<mpq_class>(3, 3)), InputError);
}

#pragma once

// Scalar domains: exact rationals (GMP) and a large prime field.
//
// Every linear-algebra routine in ihlab is a template over a field object
// F exposing the small interface below.  Field objects are cheap values;
// the prime field carries its modulus, the rational field is stateless.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace ihlab {

/// Parses "p/q", "p" or "-p/q" into a canonical rational.  Throws InputError.
mpq_class parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1) text for a rational.
std::string format_rational(const mpq_class& value);

class Rationals {
 public:
  using Scalar = mpq_class;

  static constexpr bool is_exact = true;

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar from_int(std::int64_t v) const { return Scalar(static_cast<long>(v)); }
  Scalar from_rational(const mpq_class& v) const { return v; }

  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar neg(const Scalar& a) const { return -a; }
  Scalar inv(const Scalar& a) const;
  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

  // a <- a - c * b
  void sub_mul(Scalar& a, const Scalar& c, const Scalar& b) const { a -= c * b; }

  std::string to_string(const Scalar& a) const { return format_rational(a); }
  std::string describe() const { return "exact-rational"; }
};

/// Integers modulo a prime p with 2^40 < p < 2^50.  The upper bound lets
/// hot loops accumulate up to 2^28 unreduced products in 128 bits.
class PrimeField {
 public:
  using Scalar = std::uint64_t;

  static constexpr bool is_exact = false;
  static constexpr std::uint64_t kDefaultPrime = 35192203097543ULL;
  static constexpr std::uint64_t kCertificationPrime = 70384346221601ULL;

  explicit PrimeField(std::uint64_t p = kDefaultPrime);

  std::uint64_t modulus() const { return p_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_int(std::int64_t v) const;
  Scalar from_rational(const mpq_class& v) const;

  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    auto r = static_cast<std::int64_t>(
        a * b - p_ * static_cast<std::uint64_t>(inv_p_ * a * b));
    if (r < 0) r += static_cast<std::int64_t>(p_);
    if (r >= static_cast<std::int64_t>(p_)) r -= static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r);
  }
  Scalar inv(Scalar a) const;
  bool is_zero(Scalar a) const { return a == 0; }

  void sub_mul(Scalar& a, Scalar c, Scalar b) const { a = sub(a, mul(c, b)); }

  /// Reduces a 128-bit accumulator.
  Scalar reduce(unsigned __int128 v) const { return static_cast<Scalar>(v % p_); }

  std::string to_string(Scalar a) const { return std::to_string(a); }
  std::string describe() const { return "prime-field"; }

 private:
  std::uint64_t p_;
  long double inv_p_;
};

/// Which scalar domain a computation runs in.
struct ScalarDomain {
  enum class Mode { kExactRational, kPrimeField };
  Mode mode = Mode::kExactRational;
  std::uint64_t prime = PrimeField::kDefaultPrime;

  static ScalarDomain exact() { return {Mode::kExactRational, PrimeField::kDefaultPrime}; }
  static ScalarDomain modular(std::uint64_t p = PrimeField::kDefaultPrime) {
    return {Mode::kPrimeField, p};
  }
  /// Exact for total dimension <= 64, prime field above.
  static ScalarDomain automatic(std::size_t total_dim, std::uint64_t prime);

  std::string name() const { return mode == Mode::kExactRational ? "exact" : "modp"; }
};

/// The prime named by IHLAB_PRIME, or the default.  Throws InputError for a
/// value that is not a prime in (2^40, 2^50).
std::uint64_t prime_from_environment();

bool is_probable_prime(std::uint64_t n);

using AnyField = std::variant<Rationals, PrimeField>;

AnyField make_field(const ScalarDomain& domain);

}  // namespace ihlab

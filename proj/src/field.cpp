#include "ihlab/field.hpp"

#include <cstdlib>
#include <string>

#include "ihlab/errors.hpp"

namespace ihlab {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw InputError("empty rational literal");
  s = s.substr(first, last - first + 1);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rationals::Scalar Rationals::inv(const Scalar& a) const {
  if (sgn(a) == 0) throw std::domain_error("inverse of zero");
  return 1 / a;
}

bool is_probable_prime(std::uint64_t n) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), inv_p_(1.0L / static_cast<long double>(p)) {
  if (p <= (1ULL << 40) || p >= (1ULL << 50) || !is_probable_prime(p))
    throw InputError("modulus " + std::to_string(p) + " is not a prime in (2^40, 2^50)");
}

PrimeField::Scalar PrimeField::from_int(std::int64_t v) const {
  auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Scalar>(r);
}

PrimeField::Scalar PrimeField::from_rational(const mpq_class& v) const {
  mpz_class mod;
  mpz_import(mod.get_mpz_t(), 1, 1, sizeof(p_), 0, 0, &p_);
  mpz_class num = v.get_num() % mod;
  if (num < 0) num += mod;
  mpz_class den = v.get_den() % mod;
  if (den == 0)
    throw std::domain_error("denominator of " + format_rational(v) + " vanishes mod " +
                            std::to_string(p_));
  auto n = static_cast<Scalar>(mpz_get_ui(num.get_mpz_t()));
  auto d = static_cast<Scalar>(mpz_get_ui(den.get_mpz_t()));
  return mul(n, inv(d));
}

PrimeField::Scalar PrimeField::inv(Scalar a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // extended Euclid on signed 128-bit to stay clear of overflow
  __int128 t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Scalar>(t);
}

ScalarDomain ScalarDomain::automatic(std::size_t total_dim, std::uint64_t prime) {
  return total_dim <= 64 ? ScalarDomain{Mode::kExactRational, prime}
                         : ScalarDomain{Mode::kPrimeField, prime};
}

std::uint64_t prime_from_environment() {
  const char* env = std::getenv("IHLAB_PRIME");
  if (env == nullptr || *env == '\0') return PrimeField::kDefaultPrime;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw InputError(std::string("IHLAB_PRIME is not an integer: ") + env);
  PrimeField check(v);  // validates
  return check.modulus();
}

AnyField make_field(const ScalarDomain& domain) {
  if (domain.mode == ScalarDomain::Mode::kExactRational) return Rationals{};
  return PrimeField(domain.prime);
}

}  // namespace ihlab

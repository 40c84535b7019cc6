#include "weft/field.hpp"

namespace weft {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin; this base set decides primality for all 64-bit n.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Field::Field(std::uint64_t modulus) : p_(modulus) {
  if (modulus <= 2 || !is_prime_u64(modulus))
    throw Error(Errc::CompositeModulus, "modulus must be an odd prime > 2, got " + std::to_string(modulus));
  if (modulus >= (std::uint64_t{1} << 63))
    throw Error(Errc::ParameterOutOfRange, "modulus must fit in 63 bits");
}

Fp Field::from_int(std::int64_t x) const {
  if (x >= 0) return from_uint(static_cast<std::uint64_t>(x));
  std::uint64_t mag = static_cast<std::uint64_t>(-(x + 1)) + 1;  // |x| without UB at INT64_MIN
  return neg(from_uint(mag));
}

Fp Field::pow(Fp a, std::uint64_t e) const { return Fp{powmod_u64(a.v, e, p_)}; }

Fp Field::inv(Fp a) const {
  if (a.v == 0) throw Error(Errc::DivisionByZero, "inverse of 0");
  return pow(a, p_ - 2);
}

Fp Field::embed_rational(std::int64_t num, std::int64_t den) const {
  Fp d = from_int(den);
  if (d.v == 0) throw Error(Errc::NonInvertibleDenominator, "denominator divisible by modulus");
  return mul(from_int(num), inv(d));
}

Fp Field::factorial(std::uint64_t k) const {
  Fp r = one();
  for (std::uint64_t i = 2; i <= k; ++i) r = mul(r, from_uint(i));
  return r;
}

Fp Field::binomial(std::uint64_t n, std::uint64_t k) const {
  if (k > n) return zero();
  k = std::min(k, n - k);
  Fp num = one(), den = one();
  for (std::uint64_t i = 0; i < k; ++i) {
    num = mul(num, from_uint(n - i));
    den = mul(den, from_uint(i + 1));
  }
  return div(num, den);
}

}  // namespace weft

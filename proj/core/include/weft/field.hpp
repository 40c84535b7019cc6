#pragma once

#include <cstdint>
#include <vector>

#include "weft/config.hpp"
#include "weft/error.hpp"

namespace weft {

/// Residue in [0, p); the modulus lives in the ambient Field context.
struct Fp {
  std::uint64_t v = 0;

  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
  friend bool operator<(Fp a, Fp b) { return a.v < b.v; }  // storage order only
};

bool is_prime_u64(std::uint64_t n);

/// Exact arithmetic mod an odd prime p. Immutable after construction.
class Field {
 public:
  explicit Field(std::uint64_t modulus = kDefaultModulus);

  std::uint64_t modulus() const { return p_; }

  Fp zero() const { return Fp{0}; }
  Fp one() const { return Fp{1}; }

  Fp from_uint(std::uint64_t x) const { return Fp{x % p_}; }
  Fp from_int(std::int64_t x) const;

  Fp add(Fp a, Fp b) const {
    std::uint64_t r = a.v + b.v;  // p < 2^63, no overflow
    if (r >= p_) r -= p_;
    return Fp{r};
  }
  Fp sub(Fp a, Fp b) const { return Fp{a.v >= b.v ? a.v - b.v : a.v + (p_ - b.v)}; }
  Fp neg(Fp a) const { return a.v == 0 ? a : Fp{p_ - a.v}; }
  Fp mul(Fp a, Fp b) const {
    return Fp{static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % p_)};
  }
  Fp pow(Fp a, std::uint64_t e) const;
  Fp inv(Fp a) const;  // throws DivisionByZero on 0
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

  /// num * den^{-1} mod p; throws NonInvertibleDenominator when p | den.
  Fp embed_rational(std::int64_t num, std::int64_t den) const;

  /// k! mod p.
  Fp factorial(std::uint64_t k) const;
  /// binomial(n, k) mod p (exact for n < p).
  Fp binomial(std::uint64_t n, std::uint64_t k) const;

 private:
  std::uint64_t p_;
};

}  // namespace weft

#include <doctest.h>

#include "weft/error.hpp"
#include "weft/field.hpp"
#include "weft/rng.hpp"

using namespace weft;

TEST_CASE("additive inverse wraps to zero") {
  Field F;
  CHECK(F.add(F.one(), F.from_uint(F.modulus() - 1)) == F.zero());
}

TEST_CASE("inverse definition") {
  Field F;
  Fp two = F.from_uint(2);
  CHECK(F.mul(F.inv(two), two) == F.one());
  CHECK_THROWS_AS(F.inv(F.zero()), Error);
}

TEST_CASE("fermat power over p = 101") {
  Field F(101);
  CHECK(F.pow(F.from_uint(3), 100) == F.one());
}

TEST_CASE("rational embedding") {
  Field F;
  CHECK(F.mul(F.embed_rational(1, 2), F.from_uint(2)) == F.one());
  CHECK(F.add(F.embed_rational(-1, 2), F.embed_rational(1, 2)) == F.zero());
  Field F7(7);
  CHECK(F7.embed_rational(3, 4) == F7.from_uint(6));
  CHECK_THROWS_AS(F7.embed_rational(1, 14), Error);
}

TEST_CASE("modulus must be an odd prime") {
  CHECK_THROWS_AS(Field(1), Error);
  CHECK_THROWS_AS(Field(2), Error);
  CHECK_THROWS_AS(Field(91), Error);  // 7 * 13
  CHECK_NOTHROW(Field(101));
  CHECK_NOTHROW(Field((std::uint64_t{1} << 61) - 1));
}

TEST_CASE("field axioms on random triples") {
  Field F;
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    Fp a = F.from_uint(rng.next()), b = F.from_uint(rng.next()), c = F.from_uint(rng.next());
    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
  }
}

TEST_CASE("rational embedding is a ring homomorphism") {
  Field F;
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    std::int64_t a = static_cast<std::int64_t>(rng.below(2000)) - 1000;
    std::int64_t b = static_cast<std::int64_t>(rng.below(2000)) - 1000;
    std::int64_t c = static_cast<std::int64_t>(rng.below(999)) + 1;
    std::int64_t d = static_cast<std::int64_t>(rng.below(999)) + 1;
    Fp sum = F.embed_rational(a * d + b * c, c * d);
    CHECK(sum == F.add(F.embed_rational(a, c), F.embed_rational(b, d)));
    Fp prod = F.embed_rational(a * b, c * d);
    CHECK(prod == F.mul(F.embed_rational(a, c), F.embed_rational(b, d)));
  }
}

TEST_CASE("binomial and factorial") {
  Field F;
  CHECK(F.binomial(5, 2) == F.from_uint(10));
  CHECK(F.binomial(4, 7) == F.zero());
  CHECK(F.factorial(5) == F.from_uint(120));
}

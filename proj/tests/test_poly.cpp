#include <doctest.h>

#include <bit>

#include "weft/error.hpp"
#include "weft/poly.hpp"
#include "weft/rng.hpp"
#include "weft/verify.hpp"

using namespace weft;

namespace {

Circuit one_plus_x_times_one_plus_y(const Field& F) {
  Circuit c;
  c.n_vars = 2;
  std::uint32_t a = c.add({c.constant(F.one()), c.input(0)});
  std::uint32_t b = c.add({c.constant(F.one()), c.input(1)});
  c.output = c.mul({a, b});
  return c;
}

}  // namespace

TEST_CASE("expand basics") {
  Field F;
  CHECK(expand(one_plus_x_times_one_plus_y(F), F, 100).term_count() == 4);
  Circuit z;
  z.n_vars = 0;
  z.output = z.constant(F.zero());
  CHECK(expand(z, F, 100).is_zero());
}

TEST_CASE("expand term cap") {
  Field F;
  Circuit c = one_plus_x_times_one_plus_y(F);
  CHECK_THROWS_AS(expand(c, F, 3), Error);
}

TEST_CASE("homogeneous parts") {
  Field F;
  SparsePoly f = expand(one_plus_x_times_one_plus_y(F), F, 100);
  SparsePoly h1 = hp(f, 1, F);
  SparsePoly want(2);
  want.add_term({1, 0}, F.one(), F);
  want.add_term({0, 1}, F.one(), F);
  CHECK(h1 == want);
  CHECK(hp(f, f.degree() + 1, F).is_zero());
}

TEST_CASE("support components and restriction") {
  Field F;
  SparsePoly f(2);
  f.add_term({2, 0}, F.one(), F);  // X0^2
  f.add_term({1, 1}, F.one(), F);  // X0 X1
  SparsePoly s1 = spc(f, 1, F);
  SparsePoly w1(2);
  w1.add_term({2, 0}, F.one(), F);
  CHECK(s1 == w1);
  SparsePoly s2 = spc(f, 2, F);
  SparsePoly w2(2);
  w2.add_term({1, 1}, F.one(), F);
  CHECK(s2 == w2);

  SparsePoly g(3);
  g.add_term({1, 1, 0}, F.one(), F);
  g.add_term({0, 0, 1}, F.one(), F);
  SparsePoly r = restrict_to(g, {0, 1}, F);
  SparsePoly wr(3);
  wr.add_term({1, 1, 0}, F.one(), F);
  CHECK(r == wr);
  CHECK(restrict_to(g, {0, 1, 2}, F) == g);
}

TEST_CASE("support components partition the polynomial") {
  Field F;
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    SparsePoly f = random_poly(rng, F, 5, 10, 3);
    SparsePoly sum(5);
    for (std::uint32_t k = 0; k <= 5; ++k) sum = sum.plus(spc(f, k, F), F);
    CHECK(sum == f);
  }
}

TEST_CASE("restriction is additive and multiplicative") {
  Field F;
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    SparsePoly f = random_poly(rng, F, 4, 6, 2);
    SparsePoly g = random_poly(rng, F, 4, 6, 2);
    std::set<std::uint32_t> A{0, 2};
    CHECK(restrict_to(f.plus(g, F), A, F) ==
          restrict_to(f, A, F).plus(restrict_to(g, A, F), F));
    CHECK(restrict_to(f.times(g, F, 100000), A, F) ==
          restrict_to(f, A, F).times(restrict_to(g, A, F), F, 100000));
  }
}

TEST_CASE("inclusion-exclusion support component") {
  Field F;
  SparsePoly f(2);
  f.add_term({1, 1}, F.one(), F);
  CHECK(spc_by_inclusion_exclusion(f, 2, F, 100000) == spc(f, 2, F));
  SparsePoly c = SparsePoly::constant(3, F.from_uint(7));
  CHECK(spc_by_inclusion_exclusion(c, 1, F, 100000).is_zero());

  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    SparsePoly g = random_poly(rng, F, 5, 8, 2);
    for (std::uint32_t k = 0; k <= 3; ++k)
      CHECK(spc_by_inclusion_exclusion(g, k, F, 100000) == spc(g, k, F));
  }
}

TEST_CASE("restricted-support inclusion-exclusion identity") {
  Field F;
  Rng rng(8);
  for (int i = 0; i < 25; ++i) {
    SparsePoly f = random_poly(rng, F, 6, 8, 2);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      if (std::popcount(mask) > 3) continue;
      std::set<std::uint32_t> A;
      for (std::uint32_t b = 0; b < 6; ++b)
        if (mask & (1u << b)) A.insert(b);
      CHECK(spc_of_restriction_incl_excl(f, A, F) ==
            spc(restrict_to(f, A, F), static_cast<std::uint32_t>(A.size()), F));
    }
  }
}

TEST_CASE("hp and spc are linear") {
  Field F;
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    SparsePoly f = random_poly(rng, F, 4, 6, 2);
    SparsePoly g = random_poly(rng, F, 4, 6, 2);
    Fp a = F.from_uint(rng.next()), b = F.from_uint(rng.next());
    SparsePoly combo = f.scaled(a, F).plus(g.scaled(b, F), F);
    for (std::uint32_t k = 0; k <= 3; ++k) {
      CHECK(hp(combo, k, F) == hp(f, k, F).scaled(a, F).plus(hp(g, k, F).scaled(b, F), F));
      CHECK(spc(combo, k, F) == spc(f, k, F).scaled(a, F).plus(spc(g, k, F).scaled(b, F), F));
    }
  }
}

TEST_CASE("univariate interpolation") {
  Field F;
  std::vector<std::pair<Fp, Fp>> pts;
  for (std::uint64_t x = 0; x <= 2; ++x) pts.emplace_back(F.from_uint(x), F.from_uint(x * x));
  auto coef = interpolate_univariate(pts, F);
  REQUIRE(coef.size() == 3);
  CHECK(coef[0] == F.zero());
  CHECK(coef[1] == F.zero());
  CHECK(coef[2] == F.one());

  std::vector<std::pair<Fp, Fp>> flat{{F.from_uint(3), F.from_uint(9)}};
  auto c0 = interpolate_univariate(flat, F);
  REQUIRE(c0.size() == 1);
  CHECK(c0[0] == F.from_uint(9));

  std::vector<std::pair<Fp, Fp>> dup{{F.one(), F.one()}, {F.one(), F.zero()}};
  CHECK_THROWS_AS(interpolate_univariate(dup, F), Error);
}

TEST_CASE("interpolation round-trips a random degree-6 polynomial") {
  Field F;
  Rng rng(10);
  std::vector<Fp> coef(7);
  for (auto& c : coef) c = F.from_uint(rng.next());
  std::vector<std::pair<Fp, Fp>> pts;
  for (std::uint64_t x = 1; x <= 7; ++x) {
    Fp v = F.zero();
    for (std::size_t d = coef.size(); d-- > 0;) v = F.add(F.mul(v, F.from_uint(x)), coef[d]);
    pts.emplace_back(F.from_uint(x), v);
  }
  CHECK(interpolate_univariate(pts, F) == coef);
}

TEST_CASE("coefficient-extraction weights recover coefficients") {
  Field F;
  Rng rng(11);
  std::vector<Fp> nodes{F.from_uint(1), F.from_uint(2), F.from_uint(3), F.from_uint(4)};
  std::vector<Fp> coef(4);
  for (auto& c : coef) c = F.from_uint(rng.next());
  for (std::uint32_t k = 0; k < 4; ++k) {
    auto beta = lagrange_coeff_weights(nodes, k, F);
    Fp got = F.zero();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Fp v = F.zero();
      for (std::size_t d = coef.size(); d-- > 0;) v = F.add(F.mul(v, nodes[i]), coef[d]);
      got = F.add(got, F.mul(beta[i], v));
    }
    CHECK(got == coef[k]);
  }
}

TEST_CASE("term-list round trip") {
  Field F;
  Rng rng(12);
  SparsePoly f = random_poly(rng, F, 4, 10, 3);
  CHECK(parse_poly(write_poly(f, F), 4, F) == f);
}

TEST_CASE("inclusion-exclusion subset cap") {
  Field F;
  Rng rng(14);
  SparsePoly f = random_poly(rng, F, 20, 5, 1);
  CHECK_THROWS_AS(spc_by_inclusion_exclusion(f, 10, F, 1000), Error);
}

TEST_CASE("expansion composes like polynomial substitution") {
  Field F;
  Rng rng(15);
  for (int i = 0; i < 10; ++i) {
    Circuit inner = random_weft1_circuit(rng, F, 2);
    // host: Z^2 + 3Z with Z the inner circuit
    Circuit host;
    host.n_vars = 2;
    std::uint32_t a = host.input(0), b = host.input(1);
    std::uint32_t z = splice(host, inner, std::vector<std::uint32_t>{a, b});
    host.output = host.add({host.mul({z, z}), host.mul({host.constant(F.from_uint(3)), z})});
    SparsePoly zp = expand(inner, F, 100000);
    SparsePoly want =
        zp.times(zp, F, 1000000).plus(zp.scaled(F.from_uint(3), F), F);
    CHECK(expand(host, F, 1000000) == want);
  }
}

TEST_CASE("suffix evaluation binds the trailing block") {
  Field F;
  SparsePoly f(3);  // X0 Y0 + Y1^2
  f.add_term({1, 1, 0}, F.one(), F);
  f.add_term({0, 0, 2}, F.one(), F);
  std::vector<Fp> suffix{F.from_uint(3), F.from_uint(5)};
  SparsePoly got = f.eval_suffix(1, suffix, F);
  SparsePoly want(1);
  want.add_term({1}, F.from_uint(3), F);
  want.add_term({0}, F.from_uint(25), F);
  CHECK(got == want);
}

TEST_CASE("poly_to_circuit inverts expand") {
  Field F;
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    SparsePoly f = random_poly(rng, F, 3, 6, 2);
    CHECK(expand(poly_to_circuit(f, F), F, 100000) == f);
  }
}

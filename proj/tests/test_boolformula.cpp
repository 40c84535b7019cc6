#include <doctest.h>

#include "weft/boolformula.hpp"
#include "weft/error.hpp"
#include "weft/rng.hpp"

using namespace weft;

namespace {

BooleanFormula random_formula(Rng& rng, std::uint32_t n_vars, std::uint32_t depth) {
  BooleanFormula f;
  f.n_vars = n_vars;
  std::function<std::uint32_t(std::uint32_t)> rec = [&](std::uint32_t d) -> std::uint32_t {
    if (d == 0 || rng.below(4) == 0)
      return f.var(static_cast<std::uint32_t>(rng.below(n_vars)));
    switch (rng.below(3)) {
      case 0: return f.lnot(rec(d - 1));
      case 1: return f.land({rec(d - 1), rec(d - 1)});
      default: return f.lor({rec(d - 1), rec(d - 1)});
    }
  };
  f.root = rec(depth);
  return f;
}

}  // namespace

TEST_CASE("arithmetization matches truth tables on {0,1}") {
  Field F;
  BooleanFormula andf;
  andf.n_vars = 2;
  andf.root = andf.land({andf.var(0), andf.var(1)});
  Circuit ac = arithmetize(andf, F);
  auto at = [&](Circuit& c, int x, int y) {
    std::vector<Fp> p{x ? F.one() : F.zero(), y ? F.one() : F.zero()};
    return evaluate(c, p, F);
  };
  CHECK(at(ac, 1, 1) == F.one());
  CHECK(at(ac, 1, 0) == F.zero());

  BooleanFormula orf;
  orf.n_vars = 2;
  orf.root = orf.lor({orf.var(0), orf.var(1)});
  Circuit oc = arithmetize(orf, F);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      CHECK(at(oc, x, y) == ((x || y) ? F.one() : F.zero()));
}

TEST_CASE("arithmetization of random formulas over all points") {
  Field F;
  Rng rng(21);
  for (int i = 0; i < 25; ++i) {
    BooleanFormula f = random_formula(rng, 4, 3);
    Circuit c = arithmetize(f, F);
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
      std::vector<std::uint8_t> a(4);
      std::vector<Fp> x(4);
      for (std::uint32_t b = 0; b < 4; ++b) {
        a[b] = (mask >> b) & 1;
        x[b] = a[b] ? F.one() : F.zero();
      }
      CHECK(evaluate(c, x, F) == (eval_bool(f, a) ? F.one() : F.zero()));
    }
  }
}

TEST_CASE("arithmetization never raises the weft") {
  Field F;
  BooleanFormula f;
  f.n_vars = 6;
  std::vector<std::uint32_t> lits;
  for (std::uint32_t i = 0; i < 6; ++i) lits.push_back(f.var(i));
  f.root = f.lor(std::move(lits));
  Circuit c = arithmetize(f, F);
  CHECK(bool_metrics(f, 2).weft == 1);
  CHECK(metrics(c).weft <= 1);
}

TEST_CASE("weighted sat enumeration matches the exhaustive oracle") {
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    BooleanFormula f = random_formula(rng, 5, 3);
    for (std::uint32_t w = 0; w <= 5; ++w)
      CHECK(count_weighted_sat(f, w, 1'000'000) == count_weighted_sat_exhaustive(f, w));
  }
}

TEST_CASE("weighted sat respects the visit cap") {
  BooleanFormula f;
  f.n_vars = 20;
  f.root = f.constant(true);
  CHECK_THROWS_AS(count_weighted_sat(f, 10, 50), Error);
}

TEST_CASE("and_tree and or_tree keep the weft at zero") {
  BooleanFormula f;
  f.n_vars = 9;
  std::vector<std::uint32_t> lits;
  for (std::uint32_t i = 0; i < 9; ++i) lits.push_back(f.var(i));
  f.root = f.and_tree(std::move(lits));
  CHECK(bool_metrics(f, 2).weft == 0);
}

TEST_CASE("prefix serialization round trip") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    BooleanFormula f = random_formula(rng, 4, 3);
    BooleanFormula g = parse_bool_formula(write_bool_formula(f), 4);
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
      std::vector<std::uint8_t> a(4);
      for (std::uint32_t b = 0; b < 4; ++b) a[b] = (mask >> b) & 1;
      CHECK(eval_bool(f, a) == eval_bool(g, a));
    }
  }
}

TEST_CASE("iff builder keeps the tree property") {
  BooleanFormula f;
  f.n_vars = 3;
  f.root = f.land({f.iff(f.var(0), f.land({f.var(1), f.var(2)})), f.var(1)});
  // tree property is what the enumeration engine checks up front
  CHECK_NOTHROW(count_weighted_sat(f, 2, 100000));
  std::vector<std::uint8_t> a{1, 1, 1};
  CHECK(eval_bool(f, a));
  a = {1, 1, 0};
  CHECK(!eval_bool(f, a));
}

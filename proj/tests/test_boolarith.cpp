#include <doctest.h>

#include <bit>

#include "weft/boolarith.hpp"
#include "weft/error.hpp"
#include "weft/rng.hpp"
#include "weft/sums.hpp"
#include "weft/verify.hpp"

using namespace weft;

namespace {

BAFormula constant_ba(Fp value, std::uint32_t n_x, const Field& F) {
  BAFormula ba;
  ba.n_assign = 1;
  ba.n_x = n_x;
  ba.weight = 1;
  ba.B.n_vars = 1;
  ba.B.root = ba.B.var(0);
  Circuit r;
  r.n_vars = n_x;
  r.output = r.constant(value);
  ba.coeffs.push_back(std::move(r));
  return ba;
}

FiveLayerFormula normalize(const Circuit& c, const Field& F, const RunConfig& cfg) {
  return weft1_normal_form(c, F, cfg);
}

}  // namespace

TEST_CASE("ba_eval on tiny formulas") {
  Field F;
  // B = y1, R1 = 5, weight 1
  BAFormula ba = constant_ba(F.from_uint(5), 0, F);
  CHECK(ba_eval(ba, {}, F, 1000) == F.from_uint(5));

  // unsatisfiable B
  BAFormula dead = ba;
  dead.B = BooleanFormula{};
  dead.B.n_vars = 1;
  dead.B.root = dead.B.constant(false);
  CHECK(ba_eval(dead, {}, F, 1000) == F.zero());

  // B = y1 | y2 at weight 1 with R = (2, 3)
  BAFormula orba;
  orba.n_assign = 2;
  orba.n_x = 0;
  orba.weight = 1;
  orba.B.n_vars = 2;
  orba.B.root = orba.B.lor({orba.B.var(0), orba.B.var(1)});
  for (std::uint64_t v : {2ull, 3ull}) {
    Circuit r;
    r.n_vars = 0;
    r.output = r.constant(F.from_uint(v));
    orba.coeffs.push_back(std::move(r));
  }
  CHECK(ba_eval(orba, {}, F, 1000) == F.from_uint(5));
}

TEST_CASE("restriction table records supports, restrictions, and values") {
  Field F;
  RunConfig cfg;
  Circuit c;  // X0 * X1 + X2, wide enough to hit the normal form honestly
  c.n_vars = 3;
  c.output = c.add({c.mul({c.input(0), c.input(1)}), c.input(2)});
  FiveLayerFormula f5 = normalize(c, F, cfg);
  RestrictionTable t = build_restriction_table(f5, F, cfg);
  CHECK(!t.gates.empty());
  for (const auto& [gate, gi] : t.gates) {
    CHECK(gi.restricted.size() == (std::size_t{1} << gi.support.size()));
    // full-mask restriction is the gate polynomial itself; all-ones values match
    for (std::uint32_t m = 0; m < gi.restricted.size(); ++m)
      CHECK(gi.at_ones[m] == gi.restricted[m].eval_all_ones(F));
  }
}

TEST_CASE("restriction-table cap rejects wide supports") {
  Field F;
  RunConfig cfg;
  cfg.support_cap = 1;
  Circuit c;
  c.n_vars = 3;
  c.output = c.add({c.mul({c.input(0), c.input(1)}), c.input(2), c.constant(F.one())});
  FiveLayerFormula f5 = normalize(c, F, cfg);
  CHECK_THROWS_AS(build_restriction_table(f5, F, cfg), Error);
}

TEST_CASE("moebius products telescope on explicit examples") {
  Field F;
  // p = (1 + X0)(1 + X1)
  SparsePoly p(2);
  p.add_term({0, 0}, F.one(), F);
  p.add_term({1, 0}, F.one(), F);
  p.add_term({0, 1}, F.one(), F);
  p.add_term({1, 1}, F.one(), F);
  MoebiusQ q_empty = moebius_q_poly(p, {}, F);
  CHECK(q_empty.num == SparsePoly::constant(2, F.one()));  // p|_{} = 1

  MoebiusQ q0 = moebius_q_poly(p, {0}, F);
  SparsePoly want(2);
  want.add_term({0, 0}, F.one(), F);
  want.add_term({1, 0}, F.one(), F);
  CHECK(q0.num == want);  // (1 + X0) / 1
  CHECK(q0.den == SparsePoly::constant(2, F.one()));

  MoebiusQ q01 = moebius_q_poly(p, {0, 1}, F);
  // p * p|_{} / ((1+X0)(1+X1)) = 1
  CHECK(q01.num == q01.den.times(SparsePoly::constant(2, F.one()), F, 1000));

  // p = X0: the empty restriction vanishes and is omitted
  SparsePoly x0 = SparsePoly::variable(2, 0);
  MoebiusQ qx = moebius_q_poly(x0, {0}, F);
  CHECK(qx.num == x0);
  CHECK(qx.den == SparsePoly::constant(2, F.one()));
}

TEST_CASE("spc pipeline on hand-checked formulas") {
  Field F;
  RunConfig cfg;
  {
    Circuit c;  // X0 * X1
    c.n_vars = 2;
    c.output = c.mul({c.input(0), c.input(1)});
    FiveLayerFormula f5 = normalize(c, F, cfg);
    BAFormula ba = build_spc_ba(f5, 2, true, F, cfg);
    std::vector<Fp> ones(2, F.one());
    CHECK(ba_eval(ba, ones, F, cfg.cap_enum) == F.one());
    BAFormula ba0 = build_spc_ba(f5, 0, true, F, cfg);
    CHECK(ba_eval(ba0, ones, F, cfg.cap_enum) == F.zero());
  }
  {
    Circuit c;  // X0 + X1^2
    c.n_vars = 2;
    c.output = c.add({c.input(0), c.mul({c.input(1), c.input(1)})});
    FiveLayerFormula f5 = normalize(c, F, cfg);
    BAFormula ba = build_spc_ba(f5, 1, true, F, cfg);
    std::vector<Fp> ones(2, F.one());
    CHECK(ba_eval(ba, ones, F, cfg.cap_enum) == F.from_uint(2));
  }
  {
    Circuit c;  // support never exceeds the degree
    c.n_vars = 2;
    c.output = c.add({c.input(0), c.input(1)});
    FiveLayerFormula f5 = normalize(c, F, cfg);
    BAFormula ba = build_spc_ba(f5, 2, true, F, cfg);
    std::vector<Fp> ones(2, F.one());
    CHECK(ba_eval(ba, ones, F, cfg.cap_enum) == F.zero());
  }
}

TEST_CASE("spc pipeline agrees with the oracle on random circuits") {
  Field F;
  RunConfig cfg;
  Rng rng(71);
  for (int i = 0; i < 15; ++i) {
    Circuit c = random_weft1_circuit(rng, F, 5);
    SparsePoly f = expand(c, F, cfg.cap_terms);
    FiveLayerFormula f5 = normalize(c, F, cfg);
    std::vector<Fp> ones(5, F.one());
    for (std::uint32_t k = 0; k <= 2; ++k) {
      BAFormula ba = build_spc_ba(f5, k, true, F, cfg);
      CHECK(ba_eval(ba, ones, F, cfg.cap_enum) == spc(f, k, F).eval_all_ones(F));
    }
  }
}

TEST_CASE("spc pipeline with symbolic coefficients at random points") {
  Field F;
  RunConfig cfg;
  Rng rng(72);
  Circuit c;  // (X0 + X1 + X2) * (X0 + 2)
  c.n_vars = 3;
  std::uint32_t wide = c.add({c.input(0), c.input(1), c.input(2)});
  c.output = c.mul({wide, c.add({c.input(0), c.constant(F.from_uint(2))})});
  SparsePoly f = expand(c, F, cfg.cap_terms);
  FiveLayerFormula f5 = normalize(c, F, cfg);
  for (std::uint32_t k = 0; k <= 2; ++k) {
    BAFormula ba = build_spc_ba(f5, k, false, F, cfg);
    for (int t = 0; t < 5; ++t) {
      std::vector<Fp> x(3);
      for (auto& xi : x) xi = F.from_uint(rng.next());
      Fp got;
      try {
        got = ba_eval(ba, x, F, cfg.cap_enum);
      } catch (const Error& e) {
        if (e.code() == Errc::DenominatorZeroAtPoint) continue;
        throw;
      }
      CHECK(got == spc(f, k, F).eval(x, F));
    }
  }
}

TEST_CASE("the assembled Boolean side keeps weft 1") {
  Field F;
  RunConfig cfg;
  Rng rng(70);
  for (int i = 0; i < 8; ++i) {
    Circuit c = random_weft1_circuit(rng, F, 5);
    FiveLayerFormula f5 = normalize(c, F, cfg);
    for (std::uint32_t k = 0; k <= 2; ++k) {
      BAFormula ba = build_spc_ba(f5, k, true, F, cfg);
      CHECK(bool_metrics(ba.B, 2).weft <= 1);
    }
  }
}

TEST_CASE("dummy chain admits exactly one extension per core assignment") {
  Field F;
  RunConfig cfg;
  Rng rng(73);
  Circuit c = random_weft1_circuit(rng, F, 4);
  FiveLayerFormula f5 = normalize(c, F, cfg);
  SpcBaReport report;
  BAFormula ba = build_spc_ba(f5, 2, true, F, cfg, &report);
  CHECK(report.pieces > 0);
  // group satisfying assignments by their non-dummy prefix; each group must
  // be a singleton
  const std::uint32_t core_vars = ba.n_assign - report.dummy_vars;
  std::map<std::vector<std::uint8_t>, std::uint32_t> groups;
  enumerate_weighted_sat(ba.B, ba.weight, cfg.cap_enum, [&](const std::vector<std::uint8_t>& e) {
    std::vector<std::uint8_t> core(e.begin(), e.begin() + core_vars);
    ++groups[core];
  });
  for (const auto& [core, count] : groups) CHECK(count == 1);
}

TEST_CASE("gate-local restriction equals the oracle restriction") {
  Field F;
  RunConfig cfg;
  Rng rng(74);
  for (int i = 0; i < 10; ++i) {
    Circuit c = random_weft1_circuit(rng, F, 4);
    FiveLayerFormula f5 = normalize(c, F, cfg);
    RestrictionTable t = build_restriction_table(f5, F, cfg);
    // layer-3 gates: product/sum of child restrictions vs restriction of the
    // expanded gate polynomial
    for (std::uint32_t g = 0; g < f5.circuit.gates.size(); ++g) {
      if (f5.layer[g] != 3) continue;
      for (std::uint32_t mask = 0; mask < 16; ++mask) {
        if (std::popcount(mask) > 3) continue;
        std::set<std::uint32_t> A;
        for (std::uint32_t b = 0; b < 4; ++b)
          if (mask & (1u << b)) A.insert(b);
        SparsePoly combined(4);
        bool mul = f5.circuit.gates[g].kind == GateKind::Mul;
        combined = SparsePoly::constant(4, mul ? F.one() : F.zero());
        SparsePoly whole(4);
        whole = SparsePoly::constant(4, mul ? F.one() : F.zero());
        for (auto child : f5.circuit.gates[g].args) {
          const auto& gi = t.gates.at(child);
          SparsePoly part = gi.restricted[RestrictionTable::mask_of(gi, A)];
          SparsePoly full = gi.restricted[(1u << gi.support.size()) - 1];
          if (mul) {
            combined = combined.times(part, F, cfg.cap_terms);
            whole = whole.times(full, F, cfg.cap_terms);
          } else {
            combined = combined.plus(part, F);
            whole = whole.plus(full, F);
          }
        }
        CHECK(combined == restrict_to(whole, A, F));
      }
    }
  }
}

TEST_CASE("ba_add sums values and respects identity-like cases") {
  Field F;
  BAFormula five = constant_ba(F.from_uint(5), 1, F);
  BAFormula seven = constant_ba(F.from_uint(7), 1, F);
  BAFormula sum = ba_add(five, seven, F);
  std::vector<Fp> x{F.one()};
  CHECK(ba_eval(sum, x, F, 100000) == F.from_uint(12));

  // adding an unsatisfiable side changes nothing
  BAFormula dead = constant_ba(F.one(), 1, F);
  dead.B = BooleanFormula{};
  dead.B.n_vars = 1;
  dead.B.root = dead.B.constant(false);
  CHECK(ba_eval(ba_add(five, dead, F), x, F, 100000) == F.from_uint(5));

  BAFormula mism = constant_ba(F.one(), 2, F);
  CHECK_THROWS_AS(ba_add(five, mism, F), Error);
}

TEST_CASE("ba_add is associative in value") {
  Field F;
  RunConfig cfg;
  Rng rng(75);
  BAFormula a = constant_ba(F.from_uint(2), 1, F);
  BAFormula b = constant_ba(F.from_uint(3), 1, F);
  BAFormula c = constant_ba(F.from_uint(11), 1, F);
  BAFormula left = ba_add(ba_add(a, b, F), c, F);
  BAFormula right = ba_add(a, ba_add(b, c, F), F);
  for (int t = 0; t < 10; ++t) {
    std::vector<Fp> x{F.from_uint(rng.next())};
    CHECK(ba_eval(left, x, F, 1'000'000) == ba_eval(right, x, F, 1'000'000));
  }
}

TEST_CASE("ba_add with unequal weights pads the lighter side") {
  Field F;
  RunConfig cfg;
  Rng rng(76);
  // a two-variable BA of weight 2 plus a weight-1 constant
  BAFormula wide;
  wide.n_assign = 2;
  wide.n_x = 1;
  wide.weight = 2;
  wide.B.n_vars = 2;
  wide.B.root = wide.B.land({wide.B.var(0), wide.B.var(1)});
  for (std::uint64_t v : {2ull, 9ull}) {
    Circuit r;
    r.n_vars = 1;
    r.output = r.constant(F.from_uint(v));
    wide.coeffs.push_back(std::move(r));
  }
  BAFormula five = constant_ba(F.from_uint(5), 1, F);
  std::vector<Fp> x{F.one()};
  CHECK(ba_eval(ba_add(wide, five, F), x, F, 1'000'000) == F.from_uint(23));
}

TEST_CASE("weighted support sums") {
  Field F;
  // g = Y1 + Y1 Y2, k = 1: only the (1,0) vector contributes
  SparsePoly g(2);
  g.add_term({1, 0}, F.one(), F);
  g.add_term({1, 1}, F.one(), F);
  CHECK(weighted_spc_sum(g, 1, F) == F.one());

  SparsePoly c = SparsePoly::constant(3, F.one());
  CHECK(weighted_spc_sum(c, 2, F) == F.from_uint(3));  // C(3,2)

  SparsePoly xy(2);
  xy.add_term({1, 1}, F.one(), F);
  CHECK(weighted_spc_sum(xy, 1, F) == F.zero());
}

TEST_CASE("ba serialization round trip") {
  Field F;
  BAFormula ba = constant_ba(F.from_uint(5), 1, F);
  std::string text = write_ba(ba, F);
  BAFormula back = parse_ba(text);
  std::vector<Fp> x{F.one()};
  CHECK(ba_eval(back, x, F, 1000) == F.from_uint(5));
  CHECK(write_ba(back, F) == text);
}

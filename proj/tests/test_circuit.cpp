#include <doctest.h>

#include "weft/error.hpp"
#include "weft/circuit.hpp"
#include "weft/poly.hpp"
#include "weft/rng.hpp"
#include "weft/verify.hpp"

using namespace weft;

TEST_CASE("validate accepts a single input gate") {
  Circuit c;
  c.n_vars = 1;
  c.output = c.input(0);
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("validate rejects self-reference and forward edges") {
  Circuit c;
  c.n_vars = 1;
  c.gates.push_back({GateKind::Add, 0, {}, {0}});  // references itself
  c.output = 0;
  CHECK_THROWS_AS(validate(c), Error);
  try {
    validate(c);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CycleDetected);
  }
}

TEST_CASE("validate rejects out-of-range children") {
  Circuit c;
  c.n_vars = 1;
  c.input(0);
  c.gates.push_back({GateKind::Add, 0, {}, {0, 9}});
  c.output = 1;
  try {
    validate(c);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DanglingChild);
  }
}

TEST_CASE("validate rejects two sinks") {
  Circuit c;
  c.n_vars = 2;
  c.input(0);
  c.input(1);
  c.output = 0;
  try {
    validate(c);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MultipleOutputs);
  }
}

TEST_CASE("evaluation basics") {
  Field F;
  Circuit c;
  c.n_vars = 2;
  c.output = c.mul({c.input(0), c.input(1)});
  std::vector<Fp> x{F.from_uint(2), F.from_uint(3)};
  CHECK(evaluate(c, x, F) == F.from_uint(6));

  Circuit k;
  k.n_vars = 0;
  k.output = k.constant(F.from_uint(5));
  CHECK(evaluate(k, {}, F) == F.from_uint(5));
}

TEST_CASE("division evaluates and reports zero denominators") {
  Field F;
  Circuit c;
  c.n_vars = 1;
  c.output = c.divide(c.constant(F.one()), c.input(0));
  std::vector<Fp> ok{F.from_uint(4)};
  CHECK(evaluate(c, ok, F) == F.inv(F.from_uint(4)));
  std::vector<Fp> bad{F.zero()};
  CHECK_THROWS_AS(evaluate(c, bad, F), Error);
}

TEST_CASE("metrics: size is the edge count, weft counts wide gates") {
  Field F;
  Circuit c;
  c.n_vars = 3;
  std::uint32_t wide = c.add({c.input(0), c.input(1), c.input(2)});
  c.output = c.mul({wide, c.constant(F.one())});
  Metrics m = metrics(c);
  CHECK(m.size == 5);
  CHECK(m.depth == 2);
  CHECK(m.weft == 1);

  Circuit b;
  b.n_vars = 2;
  b.output = b.add({b.input(0), b.input(1)});
  CHECK(metrics(b).weft == 0);
}

TEST_CASE("metrics survive topological reordering") {
  Field F;
  Circuit c;
  c.n_vars = 2;
  std::uint32_t s = c.add({c.input(0), c.input(1)});
  std::uint32_t t = c.mul({c.input(0), c.input(0), c.input(1)});
  c.output = c.mul({s, t});
  Metrics before = metrics(c);
  // rebuild with leaves emitted in a different order
  Circuit d;
  d.n_vars = 2;
  std::uint32_t y = d.input(1), x0 = d.input(0);
  std::uint32_t t2 = d.mul({d.input(0), x0, y});
  std::uint32_t s2 = d.add({d.input(0), d.input(1)});
  d.output = d.mul({s2, t2});
  Metrics after = metrics(d);
  CHECK(before.size == after.size);
  CHECK(before.depth == after.depth);
  CHECK(before.weft == after.weft);
}

TEST_CASE("parse trees of sums and products") {
  Field F;
  Circuit c;
  c.n_vars = 2;
  c.output = c.add({c.input(0), c.input(1)});
  c.is_formula = true;
  auto trees = parse_trees(c, 1000);
  CHECK(trees.size() == 2);

  Circuit m;
  m.n_vars = 2;
  m.output = m.mul({m.input(0), m.input(1)});
  m.is_formula = true;
  CHECK(parse_trees(m, 1000).size() == 1);
}

TEST_CASE("parse-tree weights sum to the evaluation") {
  Field F;
  Rng rng(77);
  Circuit c;
  c.n_vars = 4;
  std::uint32_t l = c.add({c.input(0), c.input(1)});
  std::uint32_t r = c.add({c.input(2), c.input(3)});
  c.output = c.mul({l, r});
  c.is_formula = true;
  auto trees = parse_trees(c, 1000);
  CHECK(trees.size() == 4);
  for (int t = 0; t < 20; ++t) {
    std::vector<Fp> x(4);
    for (auto& xi : x) xi = F.from_uint(rng.next());
    Fp sum = F.zero();
    for (const auto& tree : trees) sum = F.add(sum, parse_tree_weight(c, tree, x, F));
    CHECK(sum == evaluate(c, x, F));
  }
}

TEST_CASE("parse trees demand the formula flag") {
  Circuit c;
  c.n_vars = 1;
  c.output = c.add({c.input(0), c.input(0)});
  c.is_formula = false;
  CHECK_THROWS_AS(parse_trees(c, 1000), Error);
}

TEST_CASE("splice wires sub-circuit inputs to host gates") {
  Field F;
  Circuit inner;
  inner.n_vars = 2;
  inner.output = inner.mul({inner.input(0), inner.input(1)});
  Circuit host;
  host.n_vars = 1;
  std::uint32_t x = host.input(0);
  std::uint32_t sq = splice(host, inner, std::vector<std::uint32_t>{x, x});
  host.output = sq;
  std::vector<Fp> pt{F.from_uint(5)};
  CHECK(evaluate(host, pt, F) == F.from_uint(25));
}

TEST_CASE("circuit text format round trip is byte-exact") {
  Field F;
  Circuit c;
  c.n_vars = 3;
  std::uint32_t wide = c.add({c.input(0), c.input(1), c.input(2)});
  std::uint32_t k = c.constant(F.from_uint(17));
  c.output = c.mul({wide, k});
  std::string first = write_circuit(c, F);
  ParsedCircuit back = parse_circuit(first);
  CHECK(back.modulus == F.modulus());
  CHECK(write_circuit(back.circuit, Field(back.modulus)) == first);
  std::vector<Fp> x{F.one(), F.from_uint(2), F.from_uint(3)};
  CHECK(evaluate(back.circuit, x, F) == evaluate(c, x, F));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_circuit(std::string("garbage")), Error);
  CHECK_THROWS_AS(parse_circuit(std::string("VARS 1 FANIN 2 MODULUS 7\n0 INPUT 0\n")), Error);
  CHECK_THROWS_AS(
      parse_circuit(std::string("VARS 1 FANIN 2 MODULUS 7\n0 ADD 5\nOUTPUT 0\n")), Error);
}

TEST_CASE("evaluation distributes over gate substitution") {
  Field F;
  Rng rng(79);
  for (int i = 0; i < 10; ++i) {
    Circuit inner = random_weft1_circuit(rng, F, 2);
    Circuit outer;
    outer.n_vars = 3;
    std::uint32_t a = outer.input(0), b = outer.input(1);
    std::uint32_t sub = splice(outer, inner, std::vector<std::uint32_t>{a, b});
    outer.output = outer.add({sub, outer.input(2)});
    std::vector<Fp> x{F.from_uint(rng.next()), F.from_uint(rng.next()), F.from_uint(rng.next())};
    std::vector<Fp> xin{x[0], x[1]};
    Fp inner_val = evaluate(inner, xin, F);
    CHECK(evaluate(outer, x, F) == F.add(inner_val, x[2]));
  }
}

#include <doctest.h>

#include "weft/error.hpp"
#include "weft/families.hpp"
#include "weft/rng.hpp"
#include "weft/sums.hpp"

using namespace weft;

TEST_CASE("clique generator basics") {
  Field F;
  CHECK(gen_clique(4, 0, F) == SparsePoly::constant(VariableLayout{4}.total(), F.one()));
  CHECK(gen_clique(3, 2, F).eval_all_ones(F) == F.from_uint(3));
  CHECK(gen_clique(4, 3, F).term_count() == 4);
}

TEST_CASE("clique evaluation by backtracking") {
  Field F;
  std::vector<Fp> unit(4, F.one());
  CHECK(clique_eval(Graph::complete(4), unit, 3, F) == F.from_uint(4));
  std::vector<Fp> none(5, F.one());
  CHECK(clique_eval(Graph::empty(5), none, 2, F) == F.zero());
  Graph k3 = Graph::complete(3);
  std::vector<Fp> w{F.from_uint(2), F.from_uint(3), F.from_uint(5)};
  CHECK(clique_eval(k3, w, 2, F) == F.from_uint(31));
}

TEST_CASE("weft-1 clique formula sums to the clique polynomial") {
  Field F;
  RunConfig cfg;
  BoundedSumSpec spec = gen_clique_weft1(3, 2, F);
  CHECK(bounded_sum_expand(spec, F, cfg.cap_terms, cfg.cap_enum) == gen_clique(3, 2, F));
  CHECK(metrics(spec.body).weft == 1);

  BoundedSumSpec zero = gen_clique_weft1(3, 0, F);
  SparsePoly s = bounded_sum_expand(zero, F, cfg.cap_terms, cfg.cap_enum);
  CHECK(s == SparsePoly::constant(VariableLayout{3}.total(), F.one()));
}

TEST_CASE("clique as a homogeneous part of the full generator") {
  Field F;
  for (std::uint32_t n = 2; n <= 5; ++n)
    for (std::uint32_t k = 0; k <= 3 && k <= n; ++k)
      CHECK(hp(gen_clique_full(n, F), k * (k - 1) / 2 + k, F) == gen_clique(n, k, F));
}

TEST_CASE("vertex cover families") {
  Field F;
  Graph tri = Graph::complete(3);
  SparsePoly covers = gen_vc_graph(tri, 2, F);
  CHECK(covers.eval_all_ones(F) == F.from_uint(3));

  Graph single = Graph::empty(2);
  single.add_edge(0, 1);
  CHECK(gen_vc_graph(single, 0, F).is_zero());
  CHECK(gen_vc_graph(Graph::empty(3), 0, F).eval_all_ones(F) == F.one());
}

TEST_CASE("branching circuit matches the cover polynomial") {
  Field F;
  RunConfig cfg;
  Graph tri = Graph::complete(3);
  Circuit c = vc_fpt_circuit(tri, 2, F);
  std::vector<Fp> ones(3, F.one());
  CHECK(evaluate(c, ones, F) == F.from_uint(3));

  Graph p3 = Graph::path(3);
  Circuit p = vc_fpt_circuit(p3, 1, F);
  CHECK(evaluate(p, ones, F) == F.one());  // only the middle vertex covers both edges

  Circuit z = vc_fpt_circuit(tri, 0, F);
  CHECK(evaluate(z, ones, F) == F.zero());
}

TEST_CASE("branching circuit is edge-order independent") {
  Field F;
  Rng rng(31);
  Graph g = Graph::cycle(5);
  g.add_edge(0, 2);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    Circuit lex = vc_fpt_circuit(g, k, F);
    Circuit rev = vc_fpt_circuit(g, k, F, EdgeOrder::ReverseLex);
    for (int t = 0; t < 20; ++t) {
      std::vector<Fp> x(5);
      for (auto& xi : x) xi = F.from_uint(rng.next());
      CHECK(evaluate(lex, x, F) == evaluate(rev, x, F));
    }
  }
}

TEST_CASE("sun-graph circuit matches the edge-labelled oracle") {
  Field F;
  RunConfig cfg;
  for (auto [n, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {4, 1}, {5, 1}, {4, 2}, {5, 2}, {6, 2}}) {
    Circuit c = vc_sun_circuit(n, k, F);
    CHECK(expand(c, F, cfg.cap_terms) == gen_vc_edges(Graph::sun(n, k), k, F));
  }
}

TEST_CASE("rectangular permanent") {
  Field F;
  SparsePoly r21 = gen_rper(2, 1, F);
  CHECK(r21.term_count() == 2);
  CHECK(gen_rper(3, 2, F).eval_all_ones(F) == F.from_uint(6));
  // k = n is the permanent
  SparsePoly per3 = gen_rper(3, 3, F);
  CHECK(per3.eval_all_ones(F) == F.from_uint(6));
  CHECK_THROWS_AS(gen_rper(2, 3, F), Error);
}

TEST_CASE("rper circuit: subset DP equals the oracle, fpt size") {
  Field F;
  RunConfig cfg;
  for (std::uint32_t n = 1; n <= 5; ++n) {
    for (std::uint32_t k = 1; k <= 3 && k <= n; ++k) {
      Circuit c = rper_fpt_circuit(n, k, F);
      CHECK(expand(c, F, cfg.cap_terms) == gen_rper(n, k, F));
      CHECK(metrics(c).size <= 16u * (1u << k) * k * n + 64u);
    }
  }
}

TEST_CASE("one-k-cycle permanents") {
  Field F;
  CHECK(gen_perk(3, 2, F).eval_all_ones(F) == F.from_uint(3));
  CHECK(gen_perk(3, 3, F).eval_all_ones(F) == F.from_uint(2));
  // zeroing a diagonal entry kills the fixed-point terms through it
  SparsePoly p = gen_perk(3, 2, F);
  std::vector<Fp> x(9, F.one());
  x[0] = F.zero();  // x_{0,0}
  CHECK(p.eval(x, F) == F.from_uint(2));  // the transposition fixing vertex 0 is gone
}

TEST_CASE("bounded-length permanents") {
  Field F;
  CHECK(gen_per_sparse(4, 2, 1, F) == gen_perk(4, 2, F));
  // n=4, k=2, c=2: six transposition-only permutations plus three double
  // transpositions
  CHECK(gen_per_sparse(4, 2, 2, F).eval_all_ones(F) == F.from_uint(9));
  CHECK(gen_per_sparse(4, 2, 2, F, true).eval_all_ones(F) == F.from_uint(9));
  // strict length: with c=3 the strict variant drops the (2,2) type
  CHECK(gen_per_sparse(4, 2, 3, F, true).eval_all_ones(F) == F.from_uint(6));
  CHECK_THROWS_AS(gen_per_sparse(4, 5, 1, F), Error);
}

TEST_CASE("grid tiling polynomial") {
  Field F;
  RunConfig cfg;
  SparsePoly g1 = gen_grid_tiling(4, 1, F, cfg.cap_enum);
  CHECK(g1.term_count() == 4);  // sum of the four labels

  SparsePoly g2 = gen_grid_tiling(4, 2, F, cfg.cap_enum);
  // on K4 with unit labels: anchored injective 4-tuples forming a 4-cycle
  VariableLayout L{4};
  std::vector<Fp> point(L.total(), F.one());
  CHECK(g2.eval(point, F) == F.from_uint(8));

  // a host missing edges kills the corresponding terms
  Graph c4 = Graph::cycle(4);
  std::vector<Fp> host(L.total(), F.one());
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = i + 1; j < 4; ++j)
      if (!c4.has_edge(i, j)) host[L.edge_var(i, j)] = F.zero();
  CHECK(g2.eval(host, F) == F.from_uint(2));  // the 4-cycle itself, two anchored traversals
}

TEST_CASE("family circuits expand to their oracles") {
  Field F;
  RunConfig cfg;
  for (std::uint32_t n = 2; n <= 5; ++n) {
    for (std::uint32_t k = 0; k <= 3 && k <= n; ++k) {
      Graph g = Graph::cycle(n);
      CHECK(expand(vc_fpt_circuit(g, k, F), F, cfg.cap_terms) == gen_vc_graph(g, k, F));
    }
  }
}

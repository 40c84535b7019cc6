#include <benchmark/benchmark.h>

#include "weft/cyclecover.hpp"
#include "weft/families.hpp"
#include "weft/poly.hpp"
#include "weft/rng.hpp"
#include "weft/sums.hpp"
#include "weft/transforms.hpp"
#include "weft/verify.hpp"

namespace {

using namespace weft;

void bm_field_mul(benchmark::State& state) {
  Field F;
  Rng rng(7);
  Fp a = F.from_uint(rng.next()), b = F.from_uint(rng.next());
  for (auto _ : state) {
    a = F.mul(a, b);
    benchmark::DoNotOptimize(a.v);
  }
}
BENCHMARK(bm_field_mul);

void bm_field_inv(benchmark::State& state) {
  Field F;
  Fp a = F.from_uint(123456789);
  for (auto _ : state) {
    a = F.inv(a);
    benchmark::DoNotOptimize(a.v);
  }
}
BENCHMARK(bm_field_inv);

void bm_expand_clique_weft1(benchmark::State& state) {
  Field F;
  const auto n = static_cast<std::uint32_t>(state.range(0));
  BoundedSumSpec spec = gen_clique_weft1(n, 2, F);
  for (auto _ : state) {
    SparsePoly p = bounded_sum_expand(spec, F, 1'000'000, 1'000'000);
    benchmark::DoNotOptimize(p.term_count());
  }
}
BENCHMARK(bm_expand_clique_weft1)->Arg(4)->Arg(5);

void bm_vc_circuit_eval(benchmark::State& state) {
  Field F;
  Graph g = Graph::sun(8, 2);
  Circuit c = vc_fpt_circuit(g, 3, F);
  Rng rng(11);
  std::vector<Fp> x(g.n);
  for (auto& xi : x) xi = F.from_uint(rng.next());
  for (auto _ : state) {
    Fp v = evaluate(c, x, F);
    benchmark::DoNotOptimize(v.v);
  }
}
BENCHMARK(bm_vc_circuit_eval);

void bm_weft1_normal_form(benchmark::State& state) {
  Field F;
  RunConfig cfg;
  Rng rng(23);
  Circuit c = random_weft1_circuit(rng, F, 6);
  for (auto _ : state) {
    FiveLayerFormula f5 = weft1_normal_form(c, F, cfg);
    benchmark::DoNotOptimize(f5.circuit.gates.size());
  }
}
BENCHMARK(bm_weft1_normal_form);

void bm_cycle_cover_k6(benchmark::State& state) {
  Field F;
  WeightedDigraph g = complete_digraph_sym(6, F);
  for (auto _ : state) {
    Fp v = cycle_cover_poly(g, CoverPattern::perk(3), F, 10, 10'000'000);
    benchmark::DoNotOptimize(v.v);
  }
}
BENCHMARK(bm_cycle_cover_k6);

}  // namespace

BENCHMARK_MAIN();

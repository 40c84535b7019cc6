#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weft/circuit.hpp"
#include "weft/config.hpp"
#include "weft/poly.hpp"
#include "weft/rng.hpp"

namespace weft {

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;

  void fail(const std::string& msg) {
    pass = false;
    lines.push_back("counterexample: " + msg);
  }
  void note(const std::string& msg) { lines.push_back(msg); }
};

/// Random constant-depth weft-<=1 circuit: bounded bottom formulas feeding a
/// few wide gates, recombined by a bounded top. n_vars <= 8, size <= 40,
/// depth <= 6.
Circuit random_weft1_circuit(Rng& rng, const Field& F, std::uint32_t n_vars);

/// Random sparse polynomial with small exponents; zero restrictions occur
/// naturally and are forced for var 0 when force_zero_restriction is set.
SparsePoly random_poly(Rng& rng, const Field& F, std::uint32_t n_vars, std::uint32_t max_terms,
                       std::uint32_t max_exp, bool force_zero_restriction = false);

// Identity suites; each mirrors one acceptance criterion at configurable
// scale. The default arguments are the acceptance-grade parameters.
SuiteResult verify_unique_split(std::uint32_t max_k = 100);
SuiteResult verify_gadget_counts();
SuiteResult verify_compose(const RunConfig& cfg, std::uint32_t bodies = 50,
                           std::uint32_t points = 10);
SuiteResult verify_weft1_normal_form(const RunConfig& cfg, std::uint32_t count = 100,
                                     std::uint32_t points = 20);
SuiteResult verify_spc_ba(const RunConfig& cfg, std::uint32_t count = 100);
SuiteResult verify_moebius(const RunConfig& cfg, std::uint32_t count = 100);
SuiteResult verify_weighted_spc(const RunConfig& cfg, std::uint32_t count = 100);
SuiteResult verify_vertex_cover(const RunConfig& cfg);
SuiteResult verify_clique_identities(const RunConfig& cfg);
SuiteResult verify_division_elimination(const RunConfig& cfg, std::uint32_t count = 20,
                                        std::uint32_t points = 20);
SuiteResult verify_cycle_cover(const RunConfig& cfg);
SuiteResult verify_coupling(const RunConfig& cfg);
SuiteResult verify_reduction_chain(const RunConfig& cfg, std::uint32_t random_graphs = 50);

std::vector<std::string> verify_suite_names();
SuiteResult run_verify_suite(const std::string& name, const RunConfig& cfg);

}  // namespace weft

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "weft/circuit.hpp"
#include "weft/config.hpp"
#include "weft/graph.hpp"
#include "weft/poly.hpp"

namespace weft {

struct DEdge {
  std::uint32_t u = 0, v = 0;
  Fp w{1};
  std::int32_t var = -1;    // symbolic variable id, -1 for constant weight
  std::int32_t color = -1;
  bool selector = false;
  bool removed = false;
};

/// Directed multigraph with field weights; self-loops and parallel edges
/// allowed. Zero-weight edges are dropped on insertion.
struct WeightedDigraph {
  std::uint32_t n = 0;
  std::vector<DEdge> edges;
  std::vector<std::int32_t> vertex_color;

  std::uint32_t add_vertex() { return n++; }
  std::uint32_t add_edge(std::uint32_t u, std::uint32_t v, Fp w, std::int32_t var = -1);
  void remove_edge(std::uint32_t id) { edges.at(id).removed = true; }
};

/// A cover assigns every vertex one outgoing live edge, targets distinct.
using Cover = std::vector<std::uint32_t>;  // vertex -> edge id

void enumerate_cycle_covers(const WeightedDigraph& g, std::uint64_t visit_cap,
                            const std::function<void(const Cover&)>& fn);

Fp cover_weight(const WeightedDigraph& g, const Cover& cover, const Field& F);
std::vector<std::uint32_t> cover_cycle_lengths(const WeightedDigraph& g, const Cover& cover);

/// One cycle of length k is designated; every other cycle must have length
/// <= c (== c or a self-loop when exact_length). c = 1 is the self-loop form.
struct CoverPattern {
  enum class Mode { Any, OneKCycle } mode = Mode::Any;
  std::uint32_t k = 0;
  std::uint32_t c = 1;
  bool exact_length = false;

  static CoverPattern any() { return {}; }
  static CoverPattern perk(std::uint32_t k) { return {Mode::OneKCycle, k, 1, false}; }
  static CoverPattern sparse(std::uint32_t k, std::uint32_t c, bool exact = false) {
    return {Mode::OneKCycle, k, c, exact};
  }
  bool matches(const std::vector<std::uint32_t>& lens) const;
};

Fp cycle_cover_poly(const WeightedDigraph& g, const CoverPattern& pattern, const Field& F,
                    std::uint32_t vertex_cap, std::uint64_t visit_cap);

/// Symbolic form over n_poly_vars variables, driven by the edges' var ids.
SparsePoly cycle_cover_poly_sym(const WeightedDigraph& g, const CoverPattern& pattern,
                                std::uint32_t n_poly_vars, const Field& F,
                                std::uint32_t vertex_cap, std::uint64_t visit_cap);

/// Complete digraph with self-loops; edge (u, v) carries variable u*n + v.
WeightedDigraph complete_digraph_sym(std::uint32_t n, const Field& F);

/// Record of one spliced coupling stage (one carrier edge riding one control
/// edge through the three-vertex gadget).
struct IffStage {
  std::uint32_t head = 0, tail = 0, carrier = 0;  // gadget vertices
  std::uint32_t control_in = 0;   // u0 -> head segment (carries the control weight)
  std::uint32_t control_out = 0;  // tail -> v0 segment
  std::uint32_t carrier_in = 0;   // u1 -> carrier segment (carries the edge weight)
  std::uint32_t carrier_out = 0;  // carrier -> v1 segment (re-spliced by cascades)
};

/// An m-iff coupling: a control edge plus m coupled edges, realized as a
/// cascade of verified single-edge couplings. A cover uses either the control
/// and every coupled edge (active) or none of them (inactive); every other
/// combination cancels.
struct IffCoupling {
  std::vector<IffStage> stages;

  enum class State { Active, Inactive, Borderline };
  State classify(const WeightedDigraph& g, const Cover& cover) const;
};

/// Splices one coupling through the listed edges; edges[0] is the control.
/// Throws EdgeNotFound for invalid or removed edge ids.
IffCoupling iff_splice(WeightedDigraph& g, const std::vector<std::uint32_t>& edge_ids,
                       const Field& F);

struct CouplingReport {
  bool pass = false;
  Fp lhs_total{};       // spliced-graph cover sum (pattern applied on projections)
  Fp rhs_total{};       // direct all-or-none cover sum on the base graph
  std::size_t mixed_groups = 0;
  bool mixed_all_zero = true;
  std::string detail;
};

/// Checks the coupling identity by full enumeration on both sides, grouping
/// spliced covers by their projected edge usage.
CouplingReport coupling_identity_check(const WeightedDigraph& g,
                                       const std::vector<std::uint32_t>& edge_ids,
                                       const CoverPattern& pattern, const Field& F,
                                       std::uint64_t visit_cap);

/// Circuit-to-cycle-cover reduction: formula tree with per-leaf selector
/// pairs in a directed clique, multiplication gates enforced by couplings.
struct CycleCoverReduction {
  WeightedDigraph graph;
  std::uint32_t root_vertex = 0;
  std::uint32_t root_loop_edge = 0;
  std::vector<std::uint32_t> selector_edges;  // first segment per leaf
  std::uint32_t n_leaves = 0;
};

CycleCoverReduction circuit_to_cyclecover(const Circuit& c, std::span<const Fp> assignment,
                                          const Field& F, const RunConfig& cfg);

/// Covers with the root off its self-loop, stratified by selector count L and
/// normalized by 1/L!; the total equals evaluate(c, assignment).
struct ReductionValue {
  Fp total{};
  std::map<std::uint32_t, Fp> strata;  // L -> stratum sum (unnormalized)
};
ReductionValue reduction_value(const CycleCoverReduction& red, const Field& F,
                               std::uint64_t visit_cap);

// --- partitioned subgraphs and the reduction chain ---

/// Sum over color-preserving copies of the colorful pattern H inside the
/// colored host G of prod X_v prod E_e, over VariableLayout(G.n).
SparsePoly partitioned_sub_poly(const Graph& H, const Graph& G, const Field& F,
                                std::uint64_t visit_cap);
std::uint64_t partitioned_sub_count(const Graph& H, const Graph& G, std::uint64_t visit_cap);

/// Colorful k x k grid pattern, colored by position i*k + j.
Graph grid_pattern(std::uint32_t k);

struct GridReduction {
  Graph host;  // colored host G'
  // vertex -> (i, j, x, y); diagonal vertices carry x == y
  std::vector<std::array<std::uint32_t, 4>> tags;
};

/// Colorful grid copies in the host correspond k!-to-1 to k-cliques of G.
GridReduction grid_reduction(const Graph& g, std::uint32_t k);

struct MinorExpansion {
  Graph host;  // colored by H' vertex ids
  std::vector<std::pair<std::uint32_t, std::uint32_t>> origin;  // (G vertex or UINT32_MAX for apex, H' vertex)
  std::vector<std::uint32_t> designated;  // one host vertex per (G vertex, branch set)
};

/// Expands a colored host along a minor model of H inside H'; branch_sets[0]
/// is the apex block B0. Validates connectivity and contraction containment.
MinorExpansion minor_expand(const Graph& g, const Graph& H, const Graph& Hprime,
                            const std::vector<std::set<std::uint32_t>>& branch_sets);

/// Matchings choosing exactly one edge of every color in X.
SparsePoly colored_matching_poly(const Graph& g, const std::set<std::int32_t>& X, const Field& F,
                                 std::uint64_t visit_cap);
std::uint64_t colored_matching_count(const Graph& g, const std::set<std::int32_t>& X,
                                     std::uint64_t visit_cap);

struct C6Construction {
  Graph host;                                   // edge-colored replacement graph
  std::map<std::int32_t, std::uint32_t> hedge_color;  // H edge id -> color in host
  std::vector<std::array<std::uint32_t, 2>> wtag;     // host vertex -> (G vertex, slot) or sentinel
};

/// Replaces every host vertex by a six-cycle and every admissible edge by a
/// slot-to-slot edge colored by its H edge.
C6Construction c6_construction(const Graph& H, const Graph& g);

/// Matchings of the C6 host, one edge per H-edge color, restricted to type
/// (1,...,1): per original color the matched slots come from one vertex.
std::uint64_t c6_type11_count(const C6Construction& cc, const Graph& H, const Graph& g,
                              std::uint64_t visit_cap);

/// Inclusion-exclusion over color subsets against an all-matchings oracle.
Fp matchings_incl_excl(const Graph& g, const std::set<std::int32_t>& X, const Field& F,
                       std::uint64_t visit_cap);

struct PerkReduction {
  WeightedDigraph graph;
  std::vector<std::int32_t> edge_var;  // digraph edge -> G edge index, -1 otherwise
  std::uint32_t k = 0;
};

/// Bipartite k-matchings as a one-(2k)-cycle cover problem: left-to-right
/// edges keep their variables, self-loops everywhere, complete right-to-left
/// return edges.
PerkReduction matching_to_perk(const Graph& g, const std::vector<std::uint32_t>& left,
                               std::uint32_t k, const Field& F);

/// The (2k)-cycle cover value of the reduction, normalized by (k-1)!.
SparsePoly perk_matching_poly(const PerkReduction& red, std::uint32_t n_edge_vars, const Field& F,
                              std::uint64_t visit_cap);

/// Brute-force k-matching polynomial over the graph's edge list order.
SparsePoly matching_poly(const Graph& g, std::uint32_t k, const Field& F);

// Digraph file format: N <n> DIRECTED / E <u> <v> <weight> [color] / SELECTOR <u> <v>.
std::string write_digraph(const WeightedDigraph& g);
WeightedDigraph parse_digraph(const std::string& text, const Field& F);

}  // namespace weft

#pragma once

#include <cstdint>

#include "weft/circuit.hpp"
#include "weft/graph.hpp"
#include "weft/poly.hpp"
#include "weft/sums_types.hpp"

namespace weft {

/// Flat variable indices for the edge/node polynomial families: the E block
/// (pairs i<j in lexicographic order) comes first, then the X block. Every
/// cross-module identity compares termwise against this ordering.
struct VariableLayout {
  std::uint32_t n = 0;

  std::uint32_t edge_count() const { return n * (n - 1) / 2; }
  std::uint32_t edge_var(std::uint32_t i, std::uint32_t j) const;  // i != j, order-free
  std::uint32_t node_var(std::uint32_t i) const { return edge_count() + i; }
  std::uint32_t total() const { return edge_count() + n; }
};

/// k x n grid of variables X_{i,j} (row-major), rows indexed by [k].
struct GridLayout {
  std::uint32_t rows = 0, cols = 0;
  std::uint32_t var(std::uint32_t i, std::uint32_t j) const { return i * cols + j; }
  std::uint32_t total() const { return rows * cols; }
};

// --- clique ---

/// Sum over k-subsets C of prod_{i<j in C} E_{ij} * prod_{i in C} X_i.
SparsePoly gen_clique(std::uint32_t n, std::uint32_t k, const Field& F);

/// Sum over all subsets (the unparameterized generator).
SparsePoly gen_clique_full(std::uint32_t n, const Field& F);

/// Weighted k-clique count by backtracking over an explicit graph.
Fp clique_eval(const Graph& g, std::span<const Fp> node_weights, std::uint32_t k, const Field& F);

/// The weft-1 formula: body over (E,X | v) with the bounded sum over ones(n,k).
BoundedSumSpec gen_clique_weft1(std::uint32_t n, std::uint32_t k, const Field& F);

// --- vertex cover ---

/// Sum over k-subsets C of prod over uncovered edges of (1 - E_{ij}) times
/// prod_{i in C} X_i, over the full VariableLayout(n). The generic family is
/// this on the complete graph.
SparsePoly gen_vc_edges(const Graph& g, std::uint32_t k, const Field& F);
SparsePoly gen_vc_generic(std::uint32_t n, std::uint32_t k, const Field& F);

/// Graph-specific family: sum over actual size-k vertex covers of prod X_i,
/// over n node variables only.
SparsePoly gen_vc_graph(const Graph& g, std::uint32_t k, const Field& F);

enum class EdgeOrder { Lex, ReverseLex };

/// Branching circuit over n node variables computing gen_vc_graph(g, k);
/// size is fpt-bounded (3^k branches plus an interpolation block per leaf).
Circuit vc_fpt_circuit(const Graph& g, std::uint32_t k, const Field& F,
                       EdgeOrder order = EdgeOrder::Lex);

/// Circuit over VariableLayout(n) computing gen_vc_edges(sun(n,k), k).
Circuit vc_sun_circuit(std::uint32_t n, std::uint32_t k, const Field& F);

// --- permanents ---

/// Sum over injective f: [k] -> [n] of prod X_{i, f(i)} (GridLayout(k, n)).
SparsePoly gen_rper(std::uint32_t n, std::uint32_t k, const Field& F);

/// Column-streaming subset DP; O(2^k k n) gates.
Circuit rper_fpt_circuit(std::uint32_t n, std::uint32_t k, const Field& F);

/// Permutations with exactly one k-cycle, all other points fixed
/// (GridLayout(n, n)).
SparsePoly gen_perk(std::uint32_t n, std::uint32_t k, const Field& F);

/// Permutations with one distinguished k-cycle and every other cycle of
/// length <= c (or exactly c when exact_length).
SparsePoly gen_per_sparse(std::uint32_t n, std::uint32_t k, std::uint32_t c, const Field& F,
                          bool exact_length = false);

// --- grid tiling ---

/// Anchored injective k x k grids over VariableLayout(n).
SparsePoly gen_grid_tiling(std::uint32_t n, std::uint32_t k, const Field& F,
                           std::uint64_t enum_cap);

}  // namespace weft

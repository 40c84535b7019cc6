#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace weft {

/// Undirected simple graph on vertices 0..n-1 with optional vertex colors and
/// per-edge colors (-1 = uncolored). Files use 1-based vertex ids.
struct Graph {
  std::uint32_t n = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j
  std::vector<std::int32_t> vertex_color;                   // empty or size n
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int32_t>> colored_edges;

  static Graph complete(std::uint32_t n);
  static Graph empty(std::uint32_t n);
  static Graph path(std::uint32_t n);
  static Graph cycle(std::uint32_t n);
  /// Clique on the first 2k vertices, every later vertex adjacent to all of
  /// them and to nothing else.
  static Graph sun(std::uint32_t n, std::uint32_t k);

  void add_edge(std::uint32_t i, std::uint32_t j);
  void add_colored_edge(std::uint32_t i, std::uint32_t j, std::int32_t color);
  bool has_edge(std::uint32_t i, std::uint32_t j) const;
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;

  /// Size-k vertex covers, brute force.
  std::vector<std::set<std::uint32_t>> vertex_covers(std::uint32_t k) const;
  /// Size-k cliques, brute force.
  std::vector<std::set<std::uint32_t>> cliques(std::uint32_t k) const;
};

std::string write_graph(const Graph& g);
Graph parse_graph(const std::string& text);

}  // namespace weft

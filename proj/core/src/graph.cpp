#include "weft/graph.hpp"

#include <sstream>

#include "weft/error.hpp"
#include "weft/poly.hpp"

namespace weft {

Graph Graph::complete(std::uint32_t n) {
  Graph g;
  g.n = n;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) g.edges.insert({i, j});
  return g;
}

Graph Graph::empty(std::uint32_t n) {
  Graph g;
  g.n = n;
  return g;
}

Graph Graph::path(std::uint32_t n) {
  Graph g;
  g.n = n;
  for (std::uint32_t i = 0; i + 1 < n; ++i) g.edges.insert({i, i + 1});
  return g;
}

Graph Graph::cycle(std::uint32_t n) {
  Graph g = path(n);
  if (n >= 3) g.edges.insert({0, n - 1});
  return g;
}

Graph Graph::sun(std::uint32_t n, std::uint32_t k) {
  if (n < 2 * k) throw Error(Errc::ParameterOutOfRange, "sun graph needs n >= 2k");
  Graph g;
  g.n = n;
  for (std::uint32_t i = 0; i < 2 * k; ++i)
    for (std::uint32_t j = i + 1; j < 2 * k; ++j) g.edges.insert({i, j});
  for (std::uint32_t j = 2 * k; j < n; ++j)
    for (std::uint32_t i = 0; i < 2 * k; ++i) g.edges.insert({i, j});
  return g;
}

void Graph::add_edge(std::uint32_t i, std::uint32_t j) {
  if (i == j) throw Error(Errc::ParameterOutOfRange, "self-loop in undirected graph");
  if (i >= n || j >= n) throw Error(Errc::ParameterOutOfRange, "edge endpoint out of range");
  edges.insert({std::min(i, j), std::max(i, j)});
}

void Graph::add_colored_edge(std::uint32_t i, std::uint32_t j, std::int32_t color) {
  add_edge(i, j);
  colored_edges.emplace_back(std::min(i, j), std::max(i, j), color);
}

bool Graph::has_edge(std::uint32_t i, std::uint32_t j) const {
  return edges.count({std::min(i, j), std::max(i, j)}) > 0;
}

std::vector<std::uint32_t> Graph::neighbors(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  return out;
}

std::vector<std::set<std::uint32_t>> Graph::vertex_covers(std::uint32_t k) const {
  std::vector<std::set<std::uint32_t>> out;
  for (const auto& s : k_subsets(n, k)) {
    std::set<std::uint32_t> cover(s.begin(), s.end());
    bool ok = true;
    for (const auto& [a, b] : edges) {
      if (!cover.count(a) && !cover.count(b)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(cover));
  }
  return out;
}

std::vector<std::set<std::uint32_t>> Graph::cliques(std::uint32_t k) const {
  std::vector<std::set<std::uint32_t>> out;
  for (const auto& s : k_subsets(n, k)) {
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (!has_edge(s[i], s[j])) {
          ok = false;
          break;
        }
    if (ok) out.emplace_back(s.begin(), s.end());
  }
  return out;
}

std::string write_graph(const Graph& g) {
  std::ostringstream os;
  os << "N " << g.n << "\n";
  if (!g.colored_edges.empty()) {
    for (const auto& [a, b, c] : g.colored_edges) os << "E " << a + 1 << ' ' << b + 1 << ' ' << c << "\n";
  } else {
    for (const auto& [a, b] : g.edges) os << "E " << a + 1 << ' ' << b + 1 << "\n";
  }
  if (!g.vertex_color.empty())
    for (std::uint32_t v = 0; v < g.n; ++v) os << "VC " << v + 1 << ' ' << g.vertex_color[v] << "\n";
  return os.str();
}

Graph parse_graph(const std::string& text) {
  Graph g;
  std::istringstream is(text);
  std::string line;
  bool have_n = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "N") {
      ls >> g.n;
      if (ls.fail()) throw Error(Errc::ParseError, "bad N line");
      std::string dir;
      ls >> dir;  // optional DIRECTED marker is accepted and ignored here
      have_n = true;
    } else if (tok == "E") {
      std::uint32_t a = 0, b = 0;
      ls >> a >> b;
      if (ls.fail() || a == 0 || b == 0 || a > g.n || b > g.n)
        throw Error(Errc::ParseError, "bad E line: " + line);
      std::int32_t color;
      if (ls >> color)
        g.add_colored_edge(a - 1, b - 1, color);
      else
        g.add_edge(a - 1, b - 1);
    } else if (tok == "VC") {
      std::uint32_t v = 0;
      std::int32_t color = 0;
      ls >> v >> color;
      if (ls.fail() || v == 0 || v > g.n) throw Error(Errc::ParseError, "bad VC line: " + line);
      if (g.vertex_color.empty()) g.vertex_color.assign(g.n, -1);
      g.vertex_color[v - 1] = color;
    } else {
      throw Error(Errc::ParseError, "unknown graph line: " + line);
    }
  }
  if (!have_n) throw Error(Errc::ParseError, "graph file missing N header");
  return g;
}

}  // namespace weft

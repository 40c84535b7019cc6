#include "weft/families.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "weft/error.hpp"

namespace weft {

std::uint32_t VariableLayout::edge_var(std::uint32_t i, std::uint32_t j) const {
  if (i == j || i >= n || j >= n) throw Error(Errc::ParameterOutOfRange, "bad edge pair");
  if (i > j) std::swap(i, j);
  // rank of (i, j) in lexicographic order over pairs i < j
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

SparsePoly gen_clique(std::uint32_t n, std::uint32_t k, const Field& F) {
  VariableLayout L{n};
  SparsePoly p(L.total());
  for (const auto& C : k_subsets(n, k)) {
    Exponents e(L.total(), 0);
    for (std::size_t a = 0; a < C.size(); ++a) {
      e[L.node_var(C[a])] = 1;
      for (std::size_t b = a + 1; b < C.size(); ++b) e[L.edge_var(C[a], C[b])] = 1;
    }
    p.add_term(e, F.one(), F);
  }
  return p;
}

SparsePoly gen_clique_full(std::uint32_t n, const Field& F) {
  VariableLayout L{n};
  SparsePoly p(L.total());
  for (std::uint32_t k = 0; k <= n; ++k) p = p.plus(gen_clique(n, k, F), F);
  return p;
}

namespace {

void clique_backtrack(const Graph& g, std::uint32_t k, std::uint32_t start,
                      std::vector<std::uint32_t>& cur, std::span<const Fp> w, const Field& F,
                      Fp& total) {
  if (cur.size() == k) {
    Fp prod = F.one();
    for (auto v : cur) prod = F.mul(prod, w[v]);
    total = F.add(total, prod);
    return;
  }
  for (std::uint32_t v = start; v < g.n; ++v) {
    bool ok = true;
    for (auto u : cur)
      if (!g.has_edge(u, v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    cur.push_back(v);
    clique_backtrack(g, k, v + 1, cur, w, F, total);
    cur.pop_back();
  }
}

}  // namespace

Fp clique_eval(const Graph& g, std::span<const Fp> node_weights, std::uint32_t k, const Field& F) {
  if (node_weights.size() != g.n) throw Error(Errc::LayoutMismatch, "weight vector length != n");
  Fp total = F.zero();
  std::vector<std::uint32_t> cur;
  clique_backtrack(g, k, 0, cur, node_weights, F, total);
  return total;
}

BoundedSumSpec gen_clique_weft1(std::uint32_t n, std::uint32_t k, const Field& F) {
  VariableLayout L{n};
  Circuit c;
  c.n_vars = L.total() + n;  // E,X block then the v block
  auto vvar = [&](std::uint32_t i) { return L.total() + i; };
  // prod_{i<j} (E_ij v_i v_j + 1 - v_i v_j) = (E_ij - 1) v_i v_j + 1
  std::vector<std::uint32_t> edge_factors;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      std::uint32_t vv = c.mul({c.input(vvar(i)), c.input(vvar(j))});
      std::uint32_t em1 = c.add({c.input(L.edge_var(i, j)), c.constant(F.neg(F.one()))});
      edge_factors.push_back(c.add({c.mul({vv, em1}), c.constant(F.one())}));
    }
  }
  // prod_i (X_i v_i + 1 - v_i) = (X_i - 1) v_i + 1
  std::vector<std::uint32_t> node_factors;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t xm1 = c.add({c.input(L.node_var(i)), c.constant(F.neg(F.one()))});
    node_factors.push_back(c.add({c.mul({c.input(vvar(i)), xm1}), c.constant(F.one())}));
  }
  std::uint32_t eprod = edge_factors.empty() ? c.constant(F.one()) : c.mul(edge_factors);
  std::uint32_t nprod = node_factors.empty() ? c.constant(F.one()) : c.mul(node_factors);
  c.output = c.mul({eprod, nprod});
  c.is_formula = true;
  return BoundedSumSpec{std::move(c), L.total(), n, k};
}

SparsePoly gen_vc_edges(const Graph& g, std::uint32_t k, const Field& F) {
  VariableLayout L{g.n};
  SparsePoly p(L.total());
  SparsePoly one = SparsePoly::constant(L.total(), F.one());
  for (const auto& C : k_subsets(g.n, k)) {
    std::set<std::uint32_t> cover(C.begin(), C.end());
    SparsePoly term = one;
    for (const auto& [a, b] : g.edges) {
      if (cover.count(a) || cover.count(b)) continue;
      SparsePoly factor = one.minus(SparsePoly::variable(L.total(), L.edge_var(a, b)), F);
      term = term.times(factor, F, UINT64_MAX);
    }
    Exponents x(L.total(), 0);
    for (auto v : C) x[L.node_var(v)] = 1;
    SparsePoly label(L.total());
    label.add_term(x, F.one(), F);
    p = p.plus(term.times(label, F, UINT64_MAX), F);
  }
  return p;
}

SparsePoly gen_vc_generic(std::uint32_t n, std::uint32_t k, const Field& F) {
  return gen_vc_edges(Graph::complete(n), k, F);
}

SparsePoly gen_vc_graph(const Graph& g, std::uint32_t k, const Field& F) {
  SparsePoly p(g.n);
  for (const auto& cover : g.vertex_covers(k)) {
    Exponents e(g.n, 0);
    for (auto v : cover) e[v] = 1;
    p.add_term(e, F.one(), F);
  }
  return p;
}

namespace {

// coeff of t^{|V|-k} in prod_{i in V} (t + X_i): the k-th elementary symmetric
// polynomial, built by interpolation at t = 1..|V|+1.
std::uint32_t esym_block(Circuit& c, const std::vector<std::uint32_t>& vertex_inputs,
                         const std::vector<std::uint32_t>& verts, std::uint32_t k, const Field& F) {
  const std::uint32_t m = static_cast<std::uint32_t>(verts.size());
  if (k > m) return c.constant(F.zero());
  if (k == 0) return c.constant(F.one());
  std::vector<Fp> nodes(m + 1);
  for (std::uint32_t i = 0; i <= m; ++i) nodes[i] = F.from_uint(i + 1);
  std::vector<Fp> beta = lagrange_coeff_weights(nodes, m - k, F);
  std::vector<std::uint32_t> parts;
  for (std::uint32_t i = 0; i <= m; ++i) {
    std::vector<std::uint32_t> factors;
    for (auto v : verts) factors.push_back(c.add({c.constant(nodes[i]), vertex_inputs[v]}));
    parts.push_back(c.mul({c.constant(beta[i]), c.mul_chain(factors, F)}));
  }
  return c.add_chain(parts, F);
}

struct VcRec {
  Circuit& c;
  const std::vector<std::uint32_t>& xin;
  const Field& F;
  EdgeOrder order;

  std::uint32_t run(std::vector<std::uint32_t> verts,
                    std::set<std::pair<std::uint32_t, std::uint32_t>> edges, std::int64_t k) {
    if (k < 0) return c.constant(F.zero());
    if (k == 0) return edges.empty() ? c.constant(F.one()) : c.constant(F.zero());
    if (edges.empty()) return esym_block(c, xin, verts, static_cast<std::uint32_t>(k), F);
    auto e = order == EdgeOrder::Lex ? *edges.begin() : *edges.rbegin();
    auto [u, v] = e;
    auto drop = [&](std::uint32_t w, std::vector<std::uint32_t> vs,
                    std::set<std::pair<std::uint32_t, std::uint32_t>> es) {
      vs.erase(std::remove(vs.begin(), vs.end(), w), vs.end());
      for (auto it = es.begin(); it != es.end();)
        it = (it->first == w || it->second == w) ? es.erase(it) : std::next(it);
      return std::make_pair(vs, es);
    };
    auto [vu, eu] = drop(u, verts, edges);
    auto [vv, ev] = drop(v, verts, edges);
    auto [vuv, euv] = drop(v, vu, eu);
    std::uint32_t a = c.mul({xin[u], run(vu, eu, k - 1)});
    std::uint32_t b = c.mul({xin[v], run(vv, ev, k - 1)});
    std::uint32_t both = c.mul({c.constant(F.neg(F.one())),
                                c.mul({xin[u], c.mul({xin[v], run(vuv, euv, k - 2)})})});
    return c.add({c.add({a, b}), both});
  }
};

}  // namespace

Circuit vc_fpt_circuit(const Graph& g, std::uint32_t k, const Field& F, EdgeOrder order) {
  Circuit c;
  c.n_vars = g.n;
  std::vector<std::uint32_t> xin(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i) xin[i] = c.input(i);
  std::vector<std::uint32_t> verts(g.n);
  std::iota(verts.begin(), verts.end(), 0);
  VcRec rec{c, xin, F, order};
  c.output = rec.run(verts, g.edges, k);
  return c;
}

Circuit vc_sun_circuit(std::uint32_t n, std::uint32_t k, const Field& F) {
  if (n < 2 * k) throw Error(Errc::ParameterOutOfRange, "sun circuit needs n >= 2k");
  VariableLayout L{n};
  Circuit c;
  c.n_vars = L.total();
  std::vector<std::uint32_t> ein(L.edge_count()), xin(n);
  for (std::uint32_t i = 0; i < L.edge_count(); ++i) ein[i] = c.input(i);
  for (std::uint32_t i = 0; i < n; ++i) xin[i] = c.input(L.node_var(i));
  auto one_minus_e = [&](std::uint32_t i, std::uint32_t j) {
    return c.add({c.constant(F.one()),
                  c.mul({c.constant(F.neg(F.one())), ein[L.edge_var(i, j)]})});
  };

  std::vector<std::uint32_t> summands;
  for (std::uint32_t kappa = 0; kappa <= k && kappa <= 2 * k; ++kappa) {
    for (const auto& C : k_subsets(2 * k, kappa)) {
      std::set<std::uint32_t> inC(C.begin(), C.end());
      std::vector<std::uint32_t> inner_rest;  // clique nodes outside C
      for (std::uint32_t i = 0; i < 2 * k; ++i)
        if (!inC.count(i)) inner_rest.push_back(i);
      // prod over uncovered clique pairs, prod over X_i in C
      std::vector<std::uint32_t> head;
      for (std::size_t a = 0; a < inner_rest.size(); ++a)
        for (std::size_t b = a + 1; b < inner_rest.size(); ++b)
          head.push_back(one_minus_e(inner_rest[a], inner_rest[b]));
      for (auto i : inC) head.push_back(xin[i]);
      std::uint32_t head_gate = c.mul_chain(head, F);

      // H_{k-kappa, X} of prod_{j >= 2k} (X_j + prod_{i notin C} (1 - E_{ij}))
      // by interpolation on a grading variable multiplying only the X_j's.
      std::uint32_t want = k - kappa;
      std::uint32_t deg = n - 2 * k;  // degree in the grading variable
      std::uint32_t tail_gate;
      if (want > deg) {
        tail_gate = c.constant(F.zero());
      } else if (n == 2 * k) {
        tail_gate = c.constant(want == 0 ? F.one() : F.zero());
      } else {
        std::vector<Fp> nodes(deg + 1);
        for (std::uint32_t i = 0; i <= deg; ++i) nodes[i] = F.from_uint(i + 1);
        std::vector<Fp> beta = lagrange_coeff_weights(nodes, want, F);
        std::vector<std::uint32_t> parts;
        for (std::uint32_t t = 0; t <= deg; ++t) {
          std::vector<std::uint32_t> factors;
          for (std::uint32_t j = 2 * k; j < n; ++j) {
            std::vector<std::uint32_t> unc;
            for (auto i : inner_rest) unc.push_back(one_minus_e(i, j));
            std::uint32_t scaled_x = c.mul({c.constant(nodes[t]), xin[j]});
            factors.push_back(c.add({scaled_x, c.mul_chain(unc, F)}));
          }
          parts.push_back(c.mul({c.constant(beta[t]), c.mul_chain(factors, F)}));
        }
        tail_gate = c.add_chain(parts, F);
      }
      summands.push_back(c.mul({head_gate, tail_gate}));
    }
  }
  c.output = c.add_chain(summands, F);
  return c;
}

SparsePoly gen_rper(std::uint32_t n, std::uint32_t k, const Field& F) {
  if (k > n) throw Error(Errc::ParameterOutOfRange, "rper needs k <= n");
  GridLayout L{k, n};
  SparsePoly p(L.total());
  std::vector<std::uint32_t> f(k, 0);
  std::vector<bool> used(n, false);
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t row) {
    if (row == k) {
      Exponents e(L.total(), 0);
      for (std::uint32_t i = 0; i < k; ++i) e[L.var(i, f[i])] = 1;
      p.add_term(e, F.one(), F);
      return;
    }
    for (std::uint32_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      f[row] = j;
      rec(row + 1);
      used[j] = false;
    }
  };
  rec(0);
  return p;
}

Circuit rper_fpt_circuit(std::uint32_t n, std::uint32_t k, const Field& F) {
  if (k > n) throw Error(Errc::ParameterOutOfRange, "rper needs k <= n");
  GridLayout L{k, n};
  Circuit c;
  c.n_vars = L.total();
  // dp[S] = sum over injective assignments of the rows in S to the columns
  // seen so far; columns stream left to right.
  std::vector<std::uint32_t> dp(std::size_t{1} << k);
  dp[0] = c.constant(F.one());
  for (std::uint32_t S = 1; S < (1u << k); ++S) dp[S] = c.constant(F.zero());
  for (std::uint32_t j = 0; j < n; ++j) {
    std::vector<std::uint32_t> next(std::size_t{1} << k);
    for (std::uint32_t S = 0; S < (1u << k); ++S) {
      std::vector<std::uint32_t> parts{dp[S]};
      for (std::uint32_t i = 0; i < k; ++i) {
        if (!(S & (1u << i))) continue;
        parts.push_back(c.mul({dp[S ^ (1u << i)], c.input(L.var(i, j))}));
      }
      next[S] = c.add_chain(parts, F);
    }
    dp = std::move(next);
  }
  c.output = dp[(1u << k) - 1];
  return c;
}

namespace {

std::vector<std::uint32_t> cycle_lengths(const std::vector<std::uint32_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::uint32_t> lens;
  for (std::uint32_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::uint32_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      ++len;
    }
    lens.push_back(len);
  }
  return lens;
}

}  // namespace

bool pattern_matches_lengths(std::vector<std::uint32_t> lens, std::uint32_t k, std::uint32_t c,
                             bool exact_length);

// Exposed for cyclecover; one k-cycle is designated, the rest must have
// length <= c (== c when exact_length, fixed points always allowed as the
// degenerate c = 1 case is "self loops").
bool pattern_matches_lengths(std::vector<std::uint32_t> lens, std::uint32_t k, std::uint32_t c,
                             bool exact_length) {
  auto it = std::find(lens.begin(), lens.end(), k);
  if (it == lens.end()) return false;
  lens.erase(it);
  for (auto l : lens) {
    if (exact_length ? (l != c && l != 1) : (l > c)) return false;
  }
  return true;
}

SparsePoly gen_perk(std::uint32_t n, std::uint32_t k, const Field& F) {
  return gen_per_sparse(n, k, 1, F);
}

SparsePoly gen_per_sparse(std::uint32_t n, std::uint32_t k, std::uint32_t c, const Field& F,
                          bool exact_length) {
  if (k < 2 || k > n) throw Error(Errc::ParameterOutOfRange, "per_sparse needs 2 <= k <= n");
  if (c < 1) throw Error(Errc::ParameterOutOfRange, "per_sparse needs c >= 1");
  if (n > 10) throw Error(Errc::EnumerationCapExceeded, "permutation enumeration capped at n = 10");
  GridLayout L{n, n};
  SparsePoly p(L.total());
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (!pattern_matches_lengths(cycle_lengths(perm), k, c, exact_length)) continue;
    Exponents e(L.total(), 0);
    for (std::uint32_t i = 0; i < n; ++i) e[L.var(i, perm[i])] = 1;
    p.add_term(e, F.one(), F);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

SparsePoly gen_grid_tiling(std::uint32_t n, std::uint32_t k, const Field& F,
                           std::uint64_t enum_cap) {
  VariableLayout L{n};
  SparsePoly p(L.total());
  if (k == 0) return p;
  if (k == 1) {
    for (std::uint32_t i = 0; i < n; ++i)
      p = p.plus(SparsePoly::variable(L.total(), L.node_var(i)), F);
    return p;
  }
  if (k * k > n) throw Error(Errc::ParameterOutOfRange, "grid tiling needs k^2 <= n");
  const std::uint32_t cells = k * k;
  std::uint64_t est = 1;
  for (std::uint32_t i = 0; i < cells; ++i) est = std::min(est * n, UINT64_MAX / 2);
  if (est > enum_cap) throw Error(Errc::EnumerationCapExceeded, "grid assignment space too large");

  std::vector<std::uint32_t> a(cells, 0);
  std::vector<bool> used(n, false);
  auto at = [&](std::uint32_t i, std::uint32_t j) -> std::uint32_t& { return a[i * k + j]; };
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t cell) {
    if (cell == cells) {
      // anchors kill the four grid automorphisms
      if (!(at(0, 0) < at(0, k - 1) && at(0, 0) < at(k - 1, 0))) return;
      Exponents e(L.total(), 0);
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) {
          e[L.node_var(at(i, j))] = 1;
          if (i + 1 < k) e[L.edge_var(at(i, j), at(i + 1, j))] = 1;
          if (j + 1 < k) e[L.edge_var(at(i, j), at(i, j + 1))] = 1;
        }
      p.add_term(e, F.one(), F);
      return;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      a[cell] = v;
      rec(cell + 1);
      used[v] = false;
    }
  };
  rec(0);
  return p;
}

}  // namespace weft

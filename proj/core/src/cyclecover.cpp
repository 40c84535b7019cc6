#include "weft/cyclecover.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "weft/error.hpp"
#include "weft/families.hpp"
#include "weft/transforms.hpp"

namespace weft {

// declared in families.cpp
bool pattern_matches_lengths(std::vector<std::uint32_t> lens, std::uint32_t k, std::uint32_t c,
                             bool exact_length);

std::uint32_t WeightedDigraph::add_edge(std::uint32_t u, std::uint32_t v, Fp w, std::int32_t var) {
  if (u >= n || v >= n) throw Error(Errc::ParameterOutOfRange, "digraph edge out of range");
  DEdge e;
  e.u = u;
  e.v = v;
  e.w = w;
  e.var = var;
  e.removed = (w.v == 0 && var < 0);  // zero-weight edges are dropped
  edges.push_back(e);
  return static_cast<std::uint32_t>(edges.size() - 1);
}

void enumerate_cycle_covers(const WeightedDigraph& g, std::uint64_t visit_cap,
                            const std::function<void(const Cover&)>& fn) {
  if (g.n > 64) throw Error(Errc::EnumerationCapExceeded, "cycle covers capped at 64 vertices");
  std::vector<std::vector<std::uint32_t>> out(g.n);
  for (std::uint32_t e = 0; e < g.edges.size(); ++e)
    if (!g.edges[e].removed) out[g.edges[e].u].push_back(e);
  Cover choice(g.n);
  std::uint64_t visits = 0;
  std::uint64_t used = 0;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t v) {
    if (++visits > visit_cap)
      throw Error(Errc::EnumerationCapExceeded, "cycle-cover enumeration cap");
    if (v == g.n) {
      fn(choice);
      return;
    }
    for (auto e : out[v]) {
      std::uint64_t bit = std::uint64_t{1} << g.edges[e].v;
      if (used & bit) continue;
      used |= bit;
      choice[v] = e;
      rec(v + 1);
      used &= ~bit;
    }
  };
  rec(0);
}

Fp cover_weight(const WeightedDigraph& g, const Cover& cover, const Field& F) {
  Fp w = F.one();
  for (auto e : cover) w = F.mul(w, g.edges[e].w);
  return w;
}

std::vector<std::uint32_t> cover_cycle_lengths(const WeightedDigraph& g, const Cover& cover) {
  std::vector<std::uint32_t> next(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) next[v] = g.edges[cover[v]].v;
  std::vector<bool> seen(g.n, false);
  std::vector<std::uint32_t> lens;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (seen[v]) continue;
    std::uint32_t len = 0, u = v;
    while (!seen[u]) {
      seen[u] = true;
      u = next[u];
      ++len;
    }
    lens.push_back(len);
  }
  return lens;
}

bool CoverPattern::matches(const std::vector<std::uint32_t>& lens) const {
  if (mode == Mode::Any) return true;
  return pattern_matches_lengths(lens, k, c, exact_length);
}

Fp cycle_cover_poly(const WeightedDigraph& g, const CoverPattern& pattern, const Field& F,
                    std::uint32_t vertex_cap, std::uint64_t visit_cap) {
  if (g.n > vertex_cap)
    throw Error(Errc::EnumerationCapExceeded, "digraph beyond the vertex cap");
  Fp total = F.zero();
  enumerate_cycle_covers(g, visit_cap, [&](const Cover& cover) {
    if (!pattern.matches(cover_cycle_lengths(g, cover))) return;
    total = F.add(total, cover_weight(g, cover, F));
  });
  return total;
}

SparsePoly cycle_cover_poly_sym(const WeightedDigraph& g, const CoverPattern& pattern,
                                std::uint32_t n_poly_vars, const Field& F,
                                std::uint32_t vertex_cap, std::uint64_t visit_cap) {
  if (g.n > vertex_cap)
    throw Error(Errc::EnumerationCapExceeded, "digraph beyond the vertex cap");
  SparsePoly total(n_poly_vars);
  enumerate_cycle_covers(g, visit_cap, [&](const Cover& cover) {
    if (!pattern.matches(cover_cycle_lengths(g, cover))) return;
    Fp coeff = F.one();
    Exponents e(n_poly_vars, 0);
    for (auto eid : cover) {
      const DEdge& edge = g.edges[eid];
      coeff = F.mul(coeff, edge.w);
      if (edge.var >= 0) ++e[static_cast<std::uint32_t>(edge.var)];
    }
    total.add_term(e, coeff, F);
  });
  return total;
}

WeightedDigraph complete_digraph_sym(std::uint32_t n, const Field& F) {
  WeightedDigraph g;
  g.n = n;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v)
      g.add_edge(u, v, F.one(), static_cast<std::int32_t>(u * n + v));
  return g;
}

// ---------------------------------------------------------------------------
// iff coupling
// ---------------------------------------------------------------------------

namespace {

// Single-edge coupling spliced through a control and a carrier edge. Weight
// table (head has the external in, tail the external out):
//   head->tail 1, tail->head 1, head loop -1, tail loop +1,
//   head->carrier 1/2, tail->carrier -1/2, carrier->head 1, carrier->tail 1,
//   carrier loop -1/2.
// Verified states: control and carrier both used -> factor 1 (head->tail);
// neither used -> internal covers sum to 1; every partial state sums to 0.
IffStage splice_one(WeightedDigraph& g, std::uint32_t control, std::uint32_t carrier,
                    const Field& F) {
  if (control >= g.edges.size() || carrier >= g.edges.size() || control == carrier ||
      g.edges[control].removed || g.edges[carrier].removed)
    throw Error(Errc::EdgeNotFound, "coupling requires live, distinct edges");
  DEdge ce = g.edges[control];
  DEdge re = g.edges[carrier];
  g.remove_edge(control);
  g.remove_edge(carrier);
  IffStage st;
  st.head = g.add_vertex();
  st.tail = g.add_vertex();
  st.carrier = g.add_vertex();
  st.control_in = g.add_edge(ce.u, st.head, ce.w, ce.var);
  st.control_out = g.add_edge(st.tail, ce.v, F.one());
  st.carrier_in = g.add_edge(re.u, st.carrier, re.w, re.var);
  st.carrier_out = g.add_edge(st.carrier, re.v, F.one());
  Fp half = F.embed_rational(1, 2), mhalf = F.embed_rational(-1, 2);
  g.add_edge(st.head, st.tail, F.one());
  g.add_edge(st.tail, st.head, F.one());
  g.add_edge(st.head, st.head, F.neg(F.one()));
  g.add_edge(st.tail, st.tail, F.one());
  g.add_edge(st.head, st.carrier, half);
  g.add_edge(st.tail, st.carrier, mhalf);
  g.add_edge(st.carrier, st.head, F.one());
  g.add_edge(st.carrier, st.tail, F.one());
  g.add_edge(st.carrier, st.carrier, mhalf);
  return st;
}

}  // namespace

IffCoupling iff_splice(WeightedDigraph& g, const std::vector<std::uint32_t>& edge_ids,
                       const Field& F) {
  if (edge_ids.size() < 2)
    throw Error(Errc::ParameterOutOfRange, "coupling needs a control and at least one edge");
  IffCoupling coupling;
  std::uint32_t control = edge_ids[0];
  for (std::size_t i = 1; i < edge_ids.size(); ++i) {
    IffStage st = splice_one(g, control, edge_ids[i], F);
    // cascade: the next stage couples against this carrier's exit segment
    control = st.carrier_out;
    coupling.stages.push_back(st);
  }
  return coupling;
}

IffCoupling::State IffCoupling::classify(const WeightedDigraph& g, const Cover& cover) const {
  std::vector<bool> chosen(g.edges.size(), false);
  for (auto e : cover) chosen[e] = true;
  bool all = true, none = true;
  auto mark = [&](bool used) {
    all = all && used;
    none = none && !used;
  };
  mark(chosen[stages.front().control_in] && chosen[stages.front().control_out]);
  for (const auto& st : stages) mark(chosen[st.carrier_in]);
  if (all) return State::Active;
  if (none) return State::Inactive;
  return State::Borderline;
}

CouplingReport coupling_identity_check(const WeightedDigraph& g,
                                       const std::vector<std::uint32_t>& edge_ids,
                                       const CoverPattern& pattern, const Field& F,
                                       std::uint64_t visit_cap) {
  CouplingReport report;
  const std::size_t n_orig = g.edges.size();
  WeightedDigraph spliced = g;
  IffCoupling coupling = iff_splice(spliced, edge_ids, F);

  // usage indicator per original edge id in the spliced graph
  std::vector<std::uint32_t> probe(n_orig);
  for (std::uint32_t e = 0; e < n_orig; ++e) probe[e] = e;
  probe[edge_ids[0]] = coupling.stages.front().control_in;
  for (std::size_t i = 1; i < edge_ids.size(); ++i)
    probe[edge_ids[i]] = coupling.stages[i - 1].carrier_in;

  std::map<std::vector<std::uint8_t>, Fp> groups;
  enumerate_cycle_covers(spliced, visit_cap, [&](const Cover& cover) {
    std::vector<bool> chosen(spliced.edges.size(), false);
    for (auto e : cover) chosen[e] = true;
    std::vector<std::uint8_t> key(n_orig, 0);
    for (std::uint32_t e = 0; e < n_orig; ++e) key[e] = chosen[probe[e]] ? 1 : 0;
    Fp w = cover_weight(spliced, cover, F);
    auto [it, fresh] = groups.emplace(std::move(key), w);
    if (!fresh) it->second = F.add(it->second, w);
  });

  // direct side: covers of g, keyed identically
  std::map<std::vector<std::uint8_t>, Fp> direct;
  enumerate_cycle_covers(g, visit_cap, [&](const Cover& cover) {
    std::vector<std::uint8_t> key(n_orig, 0);
    for (auto e : cover) key[e] = 1;
    Fp w = cover_weight(g, cover, F);
    auto [it, fresh] = direct.emplace(std::move(key), w);
    if (!fresh) it->second = F.add(it->second, w);
  });

  report.pass = true;
  auto coupled_state = [&](const std::vector<std::uint8_t>& key) {
    bool all = true, none = true;
    for (auto e : edge_ids) {
      all = all && key[e];
      none = none && !key[e];
    }
    return all ? 1 : (none ? 0 : -1);
  };
  auto project_pattern = [&](const std::vector<std::uint8_t>& key, bool& valid) {
    // rebuild the projected cover on g; valid iff the usage is a permutation
    std::vector<std::uint32_t> outdeg(g.n, 0);
    std::uint64_t inmask = 0;
    Cover proj(g.n, 0);
    valid = true;
    for (std::uint32_t e = 0; e < n_orig; ++e) {
      if (!key[e] || g.edges[e].removed) continue;
      const DEdge& ed = g.edges[e];
      std::uint64_t bit = std::uint64_t{1} << ed.v;
      if (outdeg[ed.u]++ || (inmask & bit)) {
        valid = false;
        return false;
      }
      inmask |= bit;
      proj[ed.u] = e;
    }
    for (std::uint32_t v = 0; v < g.n; ++v)
      if (outdeg[v] != 1) {
        valid = false;
        return false;
      }
    return pattern.matches(cover_cycle_lengths(g, proj));
  };

  for (const auto& [key, total] : groups) {
    int state = coupled_state(key);
    bool valid = false;
    bool pat = project_pattern(key, valid);
    if (state < 0 || !valid) {
      ++report.mixed_groups;
      if (total.v != 0) {
        report.mixed_all_zero = false;
        report.pass = false;
        report.detail = "borderline group with nonzero net weight";
      }
      continue;
    }
    if (!pat) continue;
    report.lhs_total = F.add(report.lhs_total, total);
    auto it = direct.find(key);
    Fp want = it == direct.end() ? F.zero() : it->second;
    if (total != want) {
      report.pass = false;
      report.detail = "projected group weight mismatch";
    }
  }
  for (const auto& [key, total] : direct) {
    if (coupled_state(key) < 0) continue;
    bool valid = false;
    if (!project_pattern(key, valid)) continue;
    report.rhs_total = F.add(report.rhs_total, total);
    if (!groups.count(key) && total.v != 0) {
      report.pass = false;
      report.detail = "direct cover missing from the spliced side";
    }
  }
  if (report.lhs_total != report.rhs_total) {
    report.pass = false;
    if (report.detail.empty()) report.detail = "totals differ";
  }
  return report;
}

// ---------------------------------------------------------------------------
// circuit to cycle cover
// ---------------------------------------------------------------------------

namespace {

struct TNode {
  GateKind kind = GateKind::Const;  // Const = value leaf
  Fp value{};
  std::vector<std::uint32_t> kids;
};
struct Tree {
  std::vector<TNode> nodes;
  std::uint32_t root = 0;
  std::uint32_t mk(TNode n) {
    nodes.push_back(std::move(n));
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }
};

std::uint32_t raw_tree(const Circuit& c, std::uint32_t g, std::span<const Fp> x, Tree& t) {
  const Gate& gate = c.gates[g];
  TNode n;
  switch (gate.kind) {
    case GateKind::Input:
      n.kind = GateKind::Const;
      n.value = x[gate.var];
      break;
    case GateKind::Const:
      n.kind = GateKind::Const;
      n.value = gate.cval;
      break;
    case GateKind::Add:
    case GateKind::Mul:
      n.kind = gate.kind;
      for (auto a : gate.args) n.kids.push_back(raw_tree(c, a, x, t));
      break;
    case GateKind::Div:
      throw Error(Errc::InvalidCircuit, "cycle-cover reduction requires division-free");
  }
  return t.mk(std::move(n));
}

// Alternation: Add gates on even levels, Mul on odd; leaves only under Adds.
std::uint32_t alternate(const Tree& in, std::uint32_t node, std::uint32_t level, Tree& out) {
  bool want_add = level % 2 == 0;
  const TNode& n = in.nodes[node];
  if (n.kind == GateKind::Const) {
    if (want_add) return out.mk({GateKind::Add, {}, {out.mk({GateKind::Const, n.value, {}})}});
    return out.mk({GateKind::Mul, {}, {alternate(in, node, level + 1, out)}});
  }
  bool is_add = n.kind == GateKind::Add;
  if (is_add != want_add) {
    return out.mk({want_add ? GateKind::Add : GateKind::Mul,
                   {},
                   {alternate(in, node, level + 1, out)}});
  }
  std::vector<std::uint32_t> kids;
  for (auto kid : n.kids) {
    const TNode& kn = in.nodes[kid];
    if (kn.kind == GateKind::Const && want_add)
      kids.push_back(out.mk({GateKind::Const, kn.value, {}}));
    else
      kids.push_back(alternate(in, kid, level + 1, out));
  }
  return out.mk({n.kind, {}, std::move(kids)});
}

std::uint32_t tree_leaf_depth_max(const Tree& t, std::uint32_t node, std::uint32_t level) {
  const TNode& n = t.nodes[node];
  if (n.kind == GateKind::Const) return level;
  std::uint32_t d = level;
  for (auto kid : n.kids) d = std::max(d, tree_leaf_depth_max(t, kid, level + 1));
  return d;
}

// Pads every leaf down to depth D with unary alternating gates.
std::uint32_t deepen(const Tree& in, std::uint32_t node, std::uint32_t level, std::uint32_t D,
                     Tree& out) {
  const TNode& n = in.nodes[node];
  if (n.kind == GateKind::Const) {
    if (level == D) return out.mk({GateKind::Const, n.value, {}});
    return out.mk({level % 2 == 0 ? GateKind::Add : GateKind::Mul,
                   {},
                   {deepen(in, node, level + 1, D, out)}});
  }
  std::vector<std::uint32_t> kids;
  for (auto kid : n.kids) kids.push_back(deepen(in, kid, level + 1, D, out));
  return out.mk({n.kind, {}, std::move(kids)});
}

void additive_children(const Tree& t, std::uint32_t addgate, std::vector<std::uint32_t>& out) {
  for (auto kid : t.nodes[addgate].kids) {
    const TNode& kn = t.nodes[kid];
    if (kn.kind == GateKind::Add)
      additive_children(t, kid, out);
    else
      out.push_back(kid);  // leaf or Mul gate
  }
}

}  // namespace

CycleCoverReduction circuit_to_cyclecover(const Circuit& c, std::span<const Fp> assignment,
                                          const Field& F, const RunConfig& cfg) {
  Circuit formula = to_formula(c, cfg);
  Tree raw;
  raw.root = raw_tree(formula, formula.output, assignment, raw);
  Tree alt;
  alt.root = alternate(raw, raw.root, 0, alt);
  std::uint32_t D = tree_leaf_depth_max(alt, alt.root, 0);
  Tree tree;
  tree.root = deepen(alt, alt.root, 0, D, tree);

  CycleCoverReduction red;
  WeightedDigraph& g = red.graph;
  const std::uint32_t tn = static_cast<std::uint32_t>(tree.nodes.size());
  for (std::uint32_t i = 0; i < tn; ++i) g.add_vertex();

  std::vector<std::uint32_t> parent(tn, UINT32_MAX);
  for (std::uint32_t i = 0; i < tn; ++i)
    for (auto kid : tree.nodes[i].kids) parent[kid] = i;

  std::vector<std::uint32_t> loop_edge(tn);
  for (std::uint32_t i = 0; i < tn; ++i) loop_edge[i] = g.add_edge(i, i, F.one());
  red.root_vertex = tree.root;
  red.root_loop_edge = loop_edge[tree.root];

  // upward edges into Add parents; a leaf edge carries the leaf value
  std::vector<std::uint32_t> up_edge(tn, UINT32_MAX);
  for (std::uint32_t i = 0; i < tn; ++i) {
    if (parent[i] == UINT32_MAX) continue;
    const TNode& pn = tree.nodes[parent[i]];
    if (pn.kind != GateKind::Add) continue;  // Mul parents wire through couplings
    Fp w = tree.nodes[i].kind == GateKind::Const ? tree.nodes[i].value : F.one();
    up_edge[i] = g.add_edge(i, parent[i], w);
  }

  // root dispatch edges
  {
    std::vector<std::uint32_t> ac;
    additive_children(tree, tree.root, ac);
    for (auto d : ac) g.add_edge(tree.root, d, F.one());
  }

  // multiplication gates: carrier paths per child plus the output coupling
  for (std::uint32_t v = 0; v < tn; ++v) {
    if (tree.nodes[v].kind != GateKind::Mul) continue;
    std::uint32_t control = up_edge[v];
    if (control == UINT32_MAX)
      throw Error(Errc::InvalidCircuit, "multiplication gate without an addition parent");
    std::vector<std::uint32_t> splice_list{control};
    for (auto q : tree.nodes[v].kids) {
      std::uint32_t vp = g.add_vertex();
      g.add_edge(vp, vp, F.one());
      splice_list.push_back(g.add_edge(q, vp, F.one()));
      std::vector<std::uint32_t> ac;
      additive_children(tree, q, ac);
      for (auto d : ac) g.add_edge(vp, d, F.one());
    }
    iff_splice(g, splice_list, F);
  }

  // per-leaf selector pairs in a directed clique, coupled to the leaf edges
  std::vector<std::uint32_t> leaves;
  for (std::uint32_t i = 0; i < tn; ++i)
    if (tree.nodes[i].kind == GateKind::Const && !g.edges[up_edge[i]].removed &&
        tree.nodes[i].value.v != 0)
      leaves.push_back(i);
  red.n_leaves = static_cast<std::uint32_t>(leaves.size());
  std::vector<std::uint32_t> s_in(leaves.size()), s_out(leaves.size()), sel(leaves.size());
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    s_in[a] = g.add_vertex();
    s_out[a] = g.add_vertex();
    g.add_edge(s_in[a], s_in[a], F.one());
    g.add_edge(s_out[a], s_out[a], F.one());
    sel[a] = g.add_edge(s_in[a], s_out[a], F.one());
    g.edges[sel[a]].selector = true;
  }
  for (std::size_t a = 0; a < leaves.size(); ++a)
    for (std::size_t b = 0; b < leaves.size(); ++b) g.add_edge(s_out[a], s_in[b], F.one());
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    IffCoupling cp = iff_splice(g, {sel[a], up_edge[leaves[a]]}, F);
    red.selector_edges.push_back(cp.stages.front().control_in);
  }
  return red;
}

ReductionValue reduction_value(const CycleCoverReduction& red, const Field& F,
                               std::uint64_t visit_cap) {
  ReductionValue rv;
  rv.total = F.zero();
  enumerate_cycle_covers(red.graph, visit_cap, [&](const Cover& cover) {
    if (cover[red.root_vertex] == red.root_loop_edge) return;  // root must be selected
    std::vector<bool> chosen(red.graph.edges.size(), false);
    for (auto e : cover) chosen[e] = true;
    std::uint32_t L = 0;
    for (auto s : red.selector_edges)
      if (chosen[s]) ++L;
    Fp w = cover_weight(red.graph, cover, F);
    auto [it, fresh] = rv.strata.emplace(L, w);
    if (!fresh) it->second = F.add(it->second, w);
  });
  for (const auto& [L, sum] : rv.strata)
    rv.total = F.add(rv.total, F.div(sum, F.factorial(L)));
  return rv;
}

// ---------------------------------------------------------------------------
// partitioned subgraphs and the reduction chain
// ---------------------------------------------------------------------------

namespace {

void check_colorful(const Graph& H) {
  if (H.vertex_color.size() != H.n)
    throw Error(Errc::ParameterOutOfRange, "pattern graph must be fully colored");
  std::set<std::int32_t> seen(H.vertex_color.begin(), H.vertex_color.end());
  if (seen.size() != H.n)
    throw Error(Errc::ParameterOutOfRange, "pattern graph must be colorful");
}

}  // namespace

SparsePoly partitioned_sub_poly(const Graph& H, const Graph& G, const Field& F,
                                std::uint64_t visit_cap) {
  check_colorful(H);
  if (G.vertex_color.size() != G.n)
    throw Error(Errc::ParameterOutOfRange, "host graph must be fully colored");
  VariableLayout L{G.n};
  SparsePoly poly(L.total());
  std::vector<std::vector<std::uint32_t>> candidates(H.n);
  for (std::uint32_t h = 0; h < H.n; ++h)
    for (std::uint32_t v = 0; v < G.n; ++v)
      if (G.vertex_color[v] == H.vertex_color[h]) candidates[h].push_back(v);
  std::vector<std::uint32_t> phi(H.n, 0);
  std::uint64_t visits = 0;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t h) {
    if (++visits > visit_cap)
      throw Error(Errc::EnumerationCapExceeded, "partitioned-sub enumeration cap");
    if (h == H.n) {
      Exponents e(L.total(), 0);
      for (std::uint32_t i = 0; i < H.n; ++i) e[L.node_var(phi[i])] = 1;
      for (const auto& [a, b] : H.edges) e[L.edge_var(phi[a], phi[b])] = 1;
      poly.add_term(e, F.one(), F);
      return;
    }
    for (auto v : candidates[h]) {
      bool ok = true;
      for (const auto& [a, b] : H.edges) {
        std::uint32_t other = a == h ? b : (b == h ? a : UINT32_MAX);
        if (other == UINT32_MAX || other > h) continue;
        if (!G.has_edge(v, phi[other])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      phi[h] = v;
      rec(h + 1);
    }
  };
  rec(0);
  return poly;
}

std::uint64_t partitioned_sub_count(const Graph& H, const Graph& G, std::uint64_t visit_cap) {
  Field F;  // counting only; any field works
  return partitioned_sub_poly(H, G, F, visit_cap).eval_all_ones(F).v;
}

Graph grid_pattern(std::uint32_t k) {
  Graph H;
  H.n = k * k;
  H.vertex_color.resize(H.n);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) {
      H.vertex_color[i * k + j] = static_cast<std::int32_t>(i * k + j);
      if (i + 1 < k) H.add_edge(i * k + j, (i + 1) * k + j);
      if (j + 1 < k) H.add_edge(i * k + j, i * k + j + 1);
    }
  return H;
}

GridReduction grid_reduction(const Graph& g, std::uint32_t k) {
  if (k < 2) throw Error(Errc::ParameterOutOfRange, "grid reduction needs k >= 2");
  GridReduction red;
  Graph& host = red.host;
  // vertices: diagonal (i,i,x,x) and, per oriented G-edge, (i,j,x,y)
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) {
      if (i == j) {
        for (std::uint32_t x = 0; x < g.n; ++x) red.tags.push_back({i, j, x, x});
      } else {
        for (const auto& [a, b] : g.edges) {
          red.tags.push_back({i, j, a, b});
          red.tags.push_back({i, j, b, a});
        }
      }
    }
  host.n = static_cast<std::uint32_t>(red.tags.size());
  host.vertex_color.resize(host.n);
  for (std::uint32_t v = 0; v < host.n; ++v)
    host.vertex_color[v] = static_cast<std::int32_t>(red.tags[v][0] * k + red.tags[v][1]);

  // two cells are adjacent when their partial assignments {i -> x, j -> y}
  // agree on shared grid indices and never reuse a vertex across indices
  auto compatible = [&](const std::array<std::uint32_t, 4>& a,
                        const std::array<std::uint32_t, 4>& b) {
    std::map<std::uint32_t, std::uint32_t> assign;
    std::map<std::uint32_t, std::uint32_t> owner;
    auto put = [&](std::uint32_t idx, std::uint32_t val) {
      auto it = assign.find(idx);
      if (it != assign.end()) return it->second == val;
      auto ot = owner.find(val);
      if (ot != owner.end() && ot->second != idx) return false;
      assign[idx] = val;
      owner[val] = idx;
      return true;
    };
    return put(a[0], a[2]) && put(a[1], a[3]) && put(b[0], b[2]) && put(b[1], b[3]);
  };
  for (std::uint32_t u = 0; u < host.n; ++u)
    for (std::uint32_t v = u + 1; v < host.n; ++v) {
      const auto& a = red.tags[u];
      const auto& b = red.tags[v];
      bool row = a[0] == b[0] && (a[1] + 1 == b[1] || b[1] + 1 == a[1]);
      bool col = a[1] == b[1] && (a[0] + 1 == b[0] || b[0] + 1 == a[0]);
      if (!row && !col) continue;
      if (compatible(a, b)) host.add_edge(u, v);
    }
  return red;
}

MinorExpansion minor_expand(const Graph& g, const Graph& H, const Graph& Hprime,
                            const std::vector<std::set<std::uint32_t>>& branch_sets) {
  if (branch_sets.size() != H.n + 1)
    throw Error(Errc::InvalidMinorModel, "need one branch set per pattern vertex plus the apex");
  // partition of V(H')
  {
    std::vector<std::uint32_t> owner(Hprime.n, UINT32_MAX);
    for (std::uint32_t i = 0; i < branch_sets.size(); ++i)
      for (auto w : branch_sets[i]) {
        if (w >= Hprime.n || owner[w] != UINT32_MAX)
          throw Error(Errc::InvalidMinorModel, "branch sets must partition the supergraph");
        owner[w] = i;
      }
    for (auto o : owner)
      if (o == UINT32_MAX)
        throw Error(Errc::InvalidMinorModel, "branch sets must cover the supergraph");
    // connectivity of each non-apex block
    for (std::uint32_t i = 1; i < branch_sets.size(); ++i) {
      const auto& B = branch_sets[i];
      if (B.empty()) throw Error(Errc::InvalidMinorModel, "empty branch set");
      std::set<std::uint32_t> reach{*B.begin()};
      bool grew = true;
      while (grew) {
        grew = false;
        for (auto w : B) {
          if (reach.count(w)) continue;
          for (auto r : reach)
            if (Hprime.has_edge(w, r)) {
              reach.insert(w);
              grew = true;
              break;
            }
        }
      }
      if (reach.size() != B.size())
        throw Error(Errc::InvalidMinorModel, "branch set does not induce a connected subgraph");
    }
    // contraction lands inside H
    for (const auto& [a, b] : Hprime.edges) {
      std::uint32_t ia = owner[a], ib = owner[b];
      if (ia == ib || ia == 0 || ib == 0) continue;
      if (!H.has_edge(ia - 1, ib - 1))
        throw Error(Errc::InvalidMinorModel, "contracted edge missing from the pattern");
    }
  }
  if (g.vertex_color.size() != g.n)
    throw Error(Errc::ParameterOutOfRange, "host graph must be fully colored");

  MinorExpansion out;
  Graph& host = out.host;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> id;  // (G vertex, H' vertex)
  auto block_of = [&](std::uint32_t gv) {
    return branch_sets[static_cast<std::uint32_t>(g.vertex_color[gv]) + 1];
  };
  for (std::uint32_t v = 0; v < g.n; ++v)
    for (auto w : block_of(v)) {
      id[{v, w}] = host.n++;
      out.origin.emplace_back(v, w);
    }
  const std::uint32_t apex_base = host.n;
  for (auto w : branch_sets[0]) {
    id[{UINT32_MAX, w}] = host.n++;
    out.origin.emplace_back(UINT32_MAX, w);
  }
  host.vertex_color.resize(host.n);
  for (std::uint32_t v = 0; v < host.n; ++v)
    host.vertex_color[v] = static_cast<std::int32_t>(out.origin[v].second);

  // within-block copies of H'
  for (std::uint32_t v = 0; v < g.n; ++v) {
    const auto& B = block_of(v);
    for (auto w : B)
      for (auto w2 : B)
        if (w < w2 && Hprime.has_edge(w, w2)) host.add_edge(id[{v, w}], id[{v, w2}]);
  }
  // cross-block edges
  for (std::uint32_t u = 0; u < g.n; ++u)
    for (std::uint32_t v = u + 1; v < g.n; ++v) {
      std::uint32_t cu = static_cast<std::uint32_t>(g.vertex_color[u]);
      std::uint32_t cv = static_cast<std::uint32_t>(g.vertex_color[v]);
      if (cu == cv) continue;
      bool connect = H.has_edge(cu, cv) ? g.has_edge(u, v) : true;
      if (!connect) continue;
      for (auto w : block_of(u))
        for (auto w2 : block_of(v)) host.add_edge(id[{u, w}], id[{v, w2}]);
    }
  // apex block: H'[B0] internally, connected to everything else
  for (auto w : branch_sets[0])
    for (auto w2 : branch_sets[0])
      if (w < w2 && Hprime.has_edge(w, w2)) host.add_edge(id[{UINT32_MAX, w}], id[{UINT32_MAX, w2}]);
  for (std::uint32_t a = apex_base; a < host.n; ++a)
    for (std::uint32_t v = 0; v < apex_base; ++v) host.add_edge(a, v);

  for (std::uint32_t v = 0; v < g.n; ++v)
    out.designated.push_back(id[{v, *block_of(v).begin()}]);
  return out;
}

namespace {

void colored_matchings_rec(const Graph& g, const std::vector<std::int32_t>& colors,
                           std::size_t idx, std::set<std::uint32_t>& used,
                           std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int32_t>>& pick,
                           std::uint64_t& visits, std::uint64_t cap,
                           const std::function<void()>& fn,
                           const std::vector<std::vector<std::size_t>>& by_color,
                           std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int32_t>>& chosen) {
  if (++visits > cap) throw Error(Errc::EnumerationCapExceeded, "colored matching enumeration cap");
  if (idx == colors.size()) {
    fn();
    return;
  }
  for (auto eidx : by_color[idx]) {
    auto [a, b, col] = pick[eidx];
    if (used.count(a) || used.count(b)) continue;
    used.insert(a);
    used.insert(b);
    chosen.push_back(pick[eidx]);
    colored_matchings_rec(g, colors, idx + 1, used, pick, visits, cap, fn, by_color, chosen);
    chosen.pop_back();
    used.erase(a);
    used.erase(b);
  }
}

void for_each_colored_matching(
    const Graph& g, const std::set<std::int32_t>& X, std::uint64_t cap,
    const std::function<void(const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int32_t>>&)>&
        fn) {
  std::vector<std::int32_t> colors(X.begin(), X.end());
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int32_t>> pick = g.colored_edges;
  std::vector<std::vector<std::size_t>> by_color(colors.size());
  for (std::size_t c = 0; c < colors.size(); ++c)
    for (std::size_t e = 0; e < pick.size(); ++e)
      if (std::get<2>(pick[e]) == colors[c]) by_color[c].push_back(e);
  std::set<std::uint32_t> used;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int32_t>> chosen;
  std::uint64_t visits = 0;
  colored_matchings_rec(g, colors, 0, used, pick, visits, cap,
                        [&]() { fn(chosen); }, by_color, chosen);
}

}  // namespace

SparsePoly colored_matching_poly(const Graph& g, const std::set<std::int32_t>& X, const Field& F,
                                 std::uint64_t visit_cap) {
  VariableLayout L{g.n};
  SparsePoly poly(L.total());
  for_each_colored_matching(g, X, visit_cap, [&](const auto& chosen) {
    Exponents e(L.total(), 0);
    for (const auto& [a, b, col] : chosen) {
      e[L.edge_var(a, b)] = 1;
      e[L.node_var(a)] = 1;
      e[L.node_var(b)] = 1;
    }
    poly.add_term(e, F.one(), F);
  });
  return poly;
}

std::uint64_t colored_matching_count(const Graph& g, const std::set<std::int32_t>& X,
                                     std::uint64_t visit_cap) {
  std::uint64_t count = 0;
  for_each_colored_matching(g, X, visit_cap, [&](const auto&) { ++count; });
  return count;
}

C6Construction c6_construction(const Graph& H, const Graph& g) {
  check_colorful(H);
  if (g.vertex_color.size() != g.n)
    throw Error(Errc::ParameterOutOfRange, "host graph must be fully colored");
  // slot order of the (exactly three) edges at each pattern vertex
  std::vector<std::vector<std::uint32_t>> slots(H.n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hedges(H.edges.begin(), H.edges.end());
  for (std::uint32_t v = 0; v < H.n; ++v) {
    for (std::uint32_t e = 0; e < hedges.size(); ++e)
      if (hedges[e].first == v || hedges[e].second == v) slots[v].push_back(e);
    if (slots[v].size() != 3)
      throw Error(Errc::ParameterOutOfRange, "pattern must be 3-regular");
  }
  auto slot_of = [&](std::uint32_t v, std::uint32_t e) {
    for (std::uint32_t s = 0; s < 3; ++s)
      if (slots[v][s] == e) return s;
    throw Error(Errc::ParameterOutOfRange, "edge not incident");
  };

  C6Construction cc;
  Graph& host = cc.host;
  const std::int32_t n_hedges = static_cast<std::int32_t>(hedges.size());
  // per G vertex: w_{v,0}, z_{v,0}, w_{v,1}, z_{v,1}, w_{v,2}, z_{v,2}
  std::vector<std::uint32_t> base(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    base[v] = host.n;
    host.n += 6;
    for (std::uint32_t s = 0; s < 3; ++s) {
      cc.wtag.push_back({v, s});      // w slot
      cc.wtag.push_back({v, 3 + s});  // z slot
    }
  }
  for (std::uint32_t v = 0; v < g.n; ++v) {
    std::int32_t cyc = n_hedges + g.vertex_color[v] * 6;
    for (std::uint32_t p = 0; p < 6; ++p)
      host.add_colored_edge(base[v] + p, base[v] + (p + 1) % 6, cyc + static_cast<std::int32_t>(p));
  }
  auto wvert = [&](std::uint32_t v, std::uint32_t slot) { return base[v] + 2 * slot; };
  for (std::uint32_t e = 0; e < hedges.size(); ++e) {
    auto [hu, hv] = hedges[e];
    std::uint32_t i = slot_of(hu, e), j = slot_of(hv, e);
    for (const auto& [a, b] : g.edges) {
      std::uint32_t ga = a, gb = b;
      if (g.vertex_color[ga] == static_cast<std::int32_t>(hv)) std::swap(ga, gb);
      if (g.vertex_color[ga] != static_cast<std::int32_t>(hu) ||
          g.vertex_color[gb] != static_cast<std::int32_t>(hv))
        continue;
      host.add_colored_edge(wvert(ga, i), wvert(gb, j), static_cast<std::int32_t>(e));
    }
    cc.hedge_color[static_cast<std::int32_t>(e)] = e;
  }
  return cc;
}

std::uint64_t c6_type11_count(const C6Construction& cc, const Graph& H, const Graph& g,
                              std::uint64_t visit_cap) {
  std::set<std::int32_t> X;
  for (const auto& [k, v] : cc.hedge_color) X.insert(k);
  std::uint64_t count = 0;
  for_each_colored_matching(cc.host, X, visit_cap, [&](const auto& chosen) {
    // matched w-slots grouped by original vertex; type (1,...,1) means all
    // three slots of each touched color come from a single vertex
    std::map<std::uint32_t, std::uint32_t> per_vertex;
    for (const auto& [a, b, col] : chosen) {
      ++per_vertex[cc.wtag[a][0]];
      ++per_vertex[cc.wtag[b][0]];
    }
    std::map<std::int32_t, std::uint32_t> per_color_vertices;
    bool ok = true;
    for (const auto& [v, cnt] : per_vertex) {
      if (cnt != 3) {
        ok = false;
        break;
      }
      ++per_color_vertices[g.vertex_color[v]];
    }
    if (!ok) return;
    for (std::uint32_t col = 0; col < H.n; ++col)
      if (per_color_vertices[static_cast<std::int32_t>(col)] != 1) return;
    ++count;
  });
  return count;
}

namespace {

std::uint64_t count_k_matchings(const Graph& g, std::uint32_t k, std::uint64_t cap) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> es(g.edges.begin(), g.edges.end());
  std::uint64_t count = 0, visits = 0;
  std::vector<bool> used(g.n, false);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t idx, std::uint32_t got) {
    if (++visits > cap) throw Error(Errc::EnumerationCapExceeded, "matching enumeration cap");
    if (got == k) {
      ++count;
      return;
    }
    if (idx == es.size()) return;
    rec(idx + 1, got);
    auto [a, b] = es[idx];
    if (!used[a] && !used[b]) {
      used[a] = used[b] = true;
      rec(idx + 1, got + 1);
      used[a] = used[b] = false;
    }
  };
  rec(0, 0);
  return count;
}

}  // namespace

Fp matchings_incl_excl(const Graph& g, const std::set<std::int32_t>& X, const Field& F,
                       std::uint64_t visit_cap) {
  if (X.size() > 12) throw Error(Errc::TooManyColors, "inclusion-exclusion capped at 12 colors");
  std::vector<std::int32_t> colors(X.begin(), X.end());
  const std::uint32_t k = static_cast<std::uint32_t>(colors.size());
  Fp total = F.zero();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::set<std::int32_t> S;
    for (std::uint32_t i = 0; i < k; ++i)
      if (mask & (1u << i)) S.insert(colors[i]);
    Graph sub;
    sub.n = g.n;
    for (const auto& [a, b, col] : g.colored_edges)
      if (S.count(col)) sub.add_edge(a, b);
    Fp term = F.from_uint(count_k_matchings(sub, k, visit_cap));
    if ((k - S.size()) % 2 == 1) term = F.neg(term);
    total = F.add(total, term);
  }
  return total;
}

PerkReduction matching_to_perk(const Graph& g, const std::vector<std::uint32_t>& left,
                               std::uint32_t k, const Field& F) {
  PerkReduction red;
  red.k = k;
  WeightedDigraph& d = red.graph;
  d.n = g.n;
  std::vector<bool> is_left(g.n, false);
  for (auto v : left) is_left.at(v) = true;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> es(g.edges.begin(), g.edges.end());
  for (std::uint32_t v = 0; v < g.n; ++v) d.add_edge(v, v, F.one());
  for (std::uint32_t e = 0; e < es.size(); ++e) {
    auto [a, b] = es[e];
    std::uint32_t l = is_left[a] ? a : b, r = is_left[a] ? b : a;
    if (is_left[l] == is_left[r])
      throw Error(Errc::ParameterOutOfRange, "graph is not bipartite over the given sides");
    d.add_edge(l, r, F.one(), static_cast<std::int32_t>(e));
  }
  for (std::uint32_t r = 0; r < g.n; ++r) {
    if (is_left[r]) continue;
    for (auto l : left) d.add_edge(r, l, F.one());
  }
  red.edge_var.assign(d.edges.size(), -1);
  for (std::uint32_t e = 0; e < d.edges.size(); ++e) red.edge_var[e] = d.edges[e].var;
  return red;
}

SparsePoly perk_matching_poly(const PerkReduction& red, std::uint32_t n_edge_vars, const Field& F,
                              std::uint64_t visit_cap) {
  SparsePoly p = cycle_cover_poly_sym(red.graph, CoverPattern::perk(2 * red.k), n_edge_vars, F,
                                      64, visit_cap);
  // each k-matching appears once per cyclic order of its edges
  Fp norm = F.factorial(red.k == 0 ? 0 : red.k - 1);
  return p.scaled(F.inv(norm), F);
}

SparsePoly matching_poly(const Graph& g, std::uint32_t k, const Field& F) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> es(g.edges.begin(), g.edges.end());
  SparsePoly p(static_cast<std::uint32_t>(es.size()));
  std::vector<bool> used(g.n, false);
  std::vector<std::uint32_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (chosen.size() == k) {
      Exponents e(p.n_vars(), 0);
      for (auto c : chosen) e[c] = 1;
      p.add_term(e, F.one(), F);
      return;
    }
    if (idx == es.size()) return;
    rec(idx + 1);
    auto [a, b] = es[idx];
    if (!used[a] && !used[b]) {
      used[a] = used[b] = true;
      chosen.push_back(static_cast<std::uint32_t>(idx));
      rec(idx + 1);
      chosen.pop_back();
      used[a] = used[b] = false;
    }
  };
  rec(0);
  return p;
}

std::string write_digraph(const WeightedDigraph& g) {
  std::ostringstream os;
  os << "N " << g.n << " DIRECTED\n";
  for (const auto& e : g.edges) {
    if (e.removed) continue;
    os << "E " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w.v;
    if (e.color >= 0) os << ' ' << e.color;
    os << "\n";
  }
  for (const auto& e : g.edges)
    if (!e.removed && e.selector) os << "SELECTOR " << e.u + 1 << ' ' << e.v + 1 << "\n";
  return os.str();
}

WeightedDigraph parse_digraph(const std::string& text, const Field& F) {
  WeightedDigraph g;
  std::istringstream is(text);
  std::string line;
  bool have_n = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> selectors;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "N") {
      std::string dir;
      ls >> g.n >> dir;
      if (ls.fail() || dir != "DIRECTED") throw Error(Errc::ParseError, "bad digraph header");
      have_n = true;
    } else if (tok == "E") {
      std::uint32_t u = 0, v = 0;
      std::uint64_t w = 0;
      ls >> u >> v >> w;
      if (ls.fail() || u == 0 || v == 0 || u > g.n || v > g.n)
        throw Error(Errc::ParseError, "bad digraph edge: " + line);
      std::uint32_t id = g.add_edge(u - 1, v - 1, F.from_uint(w));
      std::int32_t color;
      if (ls >> color) g.edges[id].color = color;
    } else if (tok == "SELECTOR") {
      std::uint32_t u = 0, v = 0;
      ls >> u >> v;
      if (ls.fail()) throw Error(Errc::ParseError, "bad SELECTOR line");
      selectors.emplace_back(u - 1, v - 1);
    } else {
      throw Error(Errc::ParseError, "unknown digraph line: " + line);
    }
  }
  if (!have_n) throw Error(Errc::ParseError, "digraph missing N header");
  for (auto& [u, v] : selectors)
    for (auto& e : g.edges)
      if (!e.removed && e.u == u && e.v == v) e.selector = true;
  return g;
}

}  // namespace weft

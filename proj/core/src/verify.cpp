#include "weft/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

#include "weft/boolarith.hpp"
#include "weft/cyclecover.hpp"
#include "weft/error.hpp"
#include "weft/families.hpp"
#include "weft/sums.hpp"
#include "weft/transforms.hpp"

namespace weft {

namespace {

std::string u64s(std::uint64_t v) { return std::to_string(v); }

std::vector<Fp> random_point(Rng& rng, const Field& F, std::uint32_t n) {
  std::vector<Fp> x(n);
  for (auto& xi : x) xi = F.from_uint(rng.next());
  return x;
}

}  // namespace

Circuit random_weft1_circuit(Rng& rng, const Field& F, std::uint32_t n_vars) {
  for (;;) {
    Circuit c;
    c.n_vars = n_vars;
    // bounded bottom formulas
    std::function<std::uint32_t(std::uint32_t)> bottom = [&](std::uint32_t depth) -> std::uint32_t {
      if (depth == 0 || rng.below(4) == 0) {
        if (rng.below(10) < 7) return c.input(static_cast<std::uint32_t>(rng.below(n_vars)));
        return c.constant(F.from_int(static_cast<std::int64_t>(rng.below(6)) - 2));
      }
      std::uint32_t a = bottom(depth - 1), b = bottom(depth - 1);
      return rng.below(2) ? c.add({a, b}) : c.mul({a, b});
    };
    std::uint32_t n_wide = 1 + static_cast<std::uint32_t>(rng.below(2));
    if (rng.below(10) == 0) n_wide = 0;  // occasionally weft 0
    std::vector<std::uint32_t> tops;
    for (std::uint32_t w = 0; w < n_wide; ++w) {
      std::uint32_t fanin = 3 + static_cast<std::uint32_t>(rng.below(3));
      std::vector<std::uint32_t> kids;
      for (std::uint32_t i = 0; i < fanin; ++i) kids.push_back(bottom(1 + rng.below(2)));
      tops.push_back(rng.below(2) ? c.add(std::move(kids)) : c.mul(std::move(kids)));
    }
    if (tops.empty()) tops.push_back(bottom(2));
    while (tops.size() > 1) {
      std::uint32_t a = tops.back();
      tops.pop_back();
      std::uint32_t b = tops.back();
      tops.pop_back();
      tops.push_back(rng.below(2) ? c.add({a, b}) : c.mul({a, b}));
    }
    std::uint32_t out = tops[0];
    if (rng.below(2)) out = c.add({out, c.constant(F.from_uint(rng.below(4)))});
    c.output = out;
    Metrics m = metrics(c);
    if (m.size <= 40 && m.depth <= 6 && m.weft <= 1) return c;
  }
}

SparsePoly random_poly(Rng& rng, const Field& F, std::uint32_t n_vars, std::uint32_t max_terms,
                       std::uint32_t max_exp, bool force_zero_restriction) {
  SparsePoly p(n_vars);
  std::uint32_t terms = 1 + static_cast<std::uint32_t>(rng.below(max_terms));
  for (std::uint32_t t = 0; t < terms; ++t) {
    Exponents e(n_vars, 0);
    for (std::uint32_t v = 0; v < n_vars; ++v)
      e[v] = static_cast<std::uint32_t>(rng.below(max_exp + 1));
    if (force_zero_restriction && n_vars > 0 && monomial_degree(e) == 0) e[0] = 1;
    Fp coeff = F.from_int(static_cast<std::int64_t>(rng.below(19)) - 9);
    p.add_term(e, coeff, F);
  }
  if (force_zero_restriction && n_vars > 0) {
    // guarantee p|_{} = 0 by multiplying through with X_0
    SparsePoly shifted(n_vars);
    for (const auto& [e, cf] : p.terms()) {
      Exponents e2 = e;
      ++e2[0];
      shifted.add_term(e2, cf, F);
    }
    return shifted;
  }
  return p;
}

SuiteResult verify_unique_split(std::uint32_t max_k) {
  SuiteResult r{"unique-split"};
  r.note("sweep: a*b = c, a+b+c = k^2+2k over 1 <= a,b,c for prime k+1 <= " + u64s(max_k + 1));
  for (std::uint64_t k = 1; k <= max_k; ++k) {
    if (!is_prime_u64(k + 1)) continue;
    const std::uint64_t target = k * k + 2 * k;
    std::uint64_t hits = 0;
    bool exact = true;
    for (std::uint64_t a = 1; a <= target; ++a) {
      for (std::uint64_t b = 1; a + b + a * b <= target; ++b) {
        if (a + b + a * b != target) continue;
        ++hits;
        if (a != k || b != k) exact = false;
      }
    }
    if (hits != 1 || !exact) {
      r.fail("k=" + u64s(k) + " has " + u64s(hits) + " solutions");
      return r;
    }
  }
  return r;
}

SuiteResult verify_gadget_counts() {
  SuiteResult r{"gadget-counts"};
  {
    BooleanFormula b = gadget_bipartite(2, 1);
    std::uint64_t got = count_weighted_sat_exhaustive(b, 1 * 1 + 2 * 1);
    r.note("bipartite(2,1) weight-3 assignments: " + u64s(got));
    if (got != 4) r.fail("expected 4");
  }
  {
    BooleanFormula b = gadget_bipartite(3, 2);
    std::uint64_t got = count_weighted_sat_exhaustive(b, 2 * 2 + 2 * 2);
    r.note("bipartite(3,2) weight-8 assignments: " + u64s(got));
    if (got != 9) r.fail("expected 9");
  }
  {
    GeneralGadget gg = gadget_general(3, 3, 2, 2);
    std::uint64_t got =
        count_weighted_sat_exhaustive(gg.formula, gg.ell * gg.ell + 2 * gg.ell);
    r.note("general(3,3,2,2): ell=" + u64s(gg.ell) + " m=" + u64s(gg.m) +
           " target-weight assignments: " + u64s(got));
    if (got != 9) r.fail("expected 9");
  }
  return r;
}

SuiteResult verify_compose(const RunConfig& cfg, std::uint32_t bodies, std::uint32_t points) {
  SuiteResult r{"compose"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 3 + 1);
  std::uint32_t full_checked = 0;
  for (std::uint32_t i = 0; i < bodies && r.pass; ++i) {
    std::uint32_t n_x = 1 + static_cast<std::uint32_t>(rng.below(2));
    std::uint32_t p = 1 + static_cast<std::uint32_t>(rng.below(3));
    std::uint32_t q = 1 + static_cast<std::uint32_t>(rng.below(3));
    std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(std::min<std::uint32_t>(p, 2)));
    std::uint32_t smax = std::min<std::uint32_t>(q, 2);
    if (smax < k) {
      --i;
      continue;
    }
    std::uint32_t s = k + static_cast<std::uint32_t>(rng.below(smax - k + 1));
    Circuit f = random_weft1_circuit(rng, F, n_x + p + q);
    BoundedSumSpec spec = compose_double_sum(f, n_x, p, q, k, s, F);
    GeneralGadget gg = gadget_general(p, q, k, s);
    for (std::uint32_t t = 0; t < points; ++t) {
      auto x = random_point(rng, F, n_x);
      Fp composed = composed_sum_eval(spec, gg.formula, x, F, cfg.cap_enum);
      Fp oracle = double_sum_eval(f, n_x, p, q, k, s, x, F, cfg.cap_enum);
      if (composed != oracle) {
        r.fail("body " + u64s(i) + " (p=" + u64s(p) + ",q=" + u64s(q) + ",k=" + u64s(k) +
               ",s=" + u64s(s) + ") point " + u64s(t));
        break;
      }
      // exercise the direct definition where the vector space is small
      if (full_checked < 5 && binomial_u64(spec.q, spec.k) <= 20000) {
        ++full_checked;
        if (bounded_sum_eval(spec, x, F, cfg.cap_enum) != oracle) {
          r.fail("full bounded sum disagrees on body " + u64s(i));
          break;
        }
      }
    }
  }
  r.note("bodies checked: " + u64s(bodies) + ", full-enumeration spot checks: " +
         u64s(full_checked));
  return r;
}

namespace {

std::vector<Circuit> weft1_corpus(const RunConfig& cfg, const Field& F, std::uint32_t count) {
  Rng rng(cfg.seed * 7 + 3);
  std::vector<Circuit> out;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(6));  // 3..8
    out.push_back(random_weft1_circuit(rng, F, n));
  }
  return out;
}

}  // namespace

SuiteResult verify_weft1_normal_form(const RunConfig& cfg, std::uint32_t count,
                                     std::uint32_t points) {
  SuiteResult r{"weft1-normal-form"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 11 + 5);
  auto corpus = weft1_corpus(cfg, F, count);
  for (std::uint32_t i = 0; i < corpus.size(); ++i) {
    const Circuit& c = corpus[i];
    FiveLayerFormula f5 = weft1_normal_form(c, F, cfg);
    if (auto bad = five_layer_report(f5)) {
      r.fail("circuit " + u64s(i) + " structure: " + *bad);
      continue;
    }
    for (std::uint32_t t = 0; t < points; ++t) {
      auto x = random_point(rng, F, c.n_vars);
      if (evaluate(c, x, F) != evaluate(f5.circuit, x, F)) {
        r.fail("circuit " + u64s(i) + " value mismatch at point " + u64s(t));
        break;
      }
    }
  }
  r.note("circuits: " + u64s(corpus.size()) + ", points each: " + u64s(points));
  return r;
}

SuiteResult verify_spc_ba(const RunConfig& cfg, std::uint32_t count) {
  SuiteResult r{"spc-ba"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 13 + 7);
  auto corpus = weft1_corpus(cfg, F, count);
  std::uint32_t used = 0, symbolic_checked = 0;
  for (std::uint32_t i = 0; i < corpus.size() && r.pass; ++i) {
    const Circuit& c = corpus[i];
    SparsePoly f;
    try {
      f = expand(c, F, 200);
    } catch (const Error& e) {
      if (e.code() == Errc::TermCapExceeded) continue;
      throw;
    }
    ++used;
    FiveLayerFormula f5 = weft1_normal_form(c, F, cfg);
    std::vector<Fp> ones(c.n_vars, F.one());
    for (std::uint32_t k = 0; k <= 3 && k <= c.n_vars; ++k) {
      BAFormula ba = build_spc_ba(f5, k, true, F, cfg);
      Fp got = ba_eval(ba, ones, F, cfg.cap_enum);
      Fp want = spc(f, k, F).eval_all_ones(F);
      if (got != want) {
        r.fail("circuit " + u64s(i) + " k=" + u64s(k) + ": ba=" + u64s(got.v) +
               " oracle=" + u64s(want.v));
        break;
      }
      if (symbolic_checked < 6 && c.n_vars <= 5 && metrics(c).size <= 20 && k <= 2) {
        ++symbolic_checked;
        BAFormula bax = build_spc_ba(f5, k, false, F, cfg);
        auto x = random_point(rng, F, c.n_vars);
        Fp gotx;
        bool defined = true;
        try {
          gotx = ba_eval(bax, x, F, cfg.cap_enum);
        } catch (const Error& e) {
          if (e.code() != Errc::DenominatorZeroAtPoint) throw;
          defined = false;
        }
        if (defined && gotx != spc(f, k, F).eval(x, F)) {
          r.fail("circuit " + u64s(i) + " k=" + u64s(k) + " symbolic point mismatch");
          break;
        }
      }
    }
  }
  // support components by inclusion-exclusion against the direct filter
  Rng rng2(cfg.seed * 17 + 9);
  for (std::uint32_t i = 0; i < 40 && r.pass; ++i) {
    std::uint32_t n = 1 + static_cast<std::uint32_t>(rng2.below(6));
    SparsePoly f = random_poly(rng2, F, n, 8, 2);
    for (std::uint32_t k = 0; k <= 3 && k <= n; ++k) {
      if (!(spc_by_inclusion_exclusion(f, k, F, cfg.cap_subsets) == spc(f, k, F))) {
        r.fail("inclusion-exclusion spc mismatch, poly " + u64s(i) + " k=" + u64s(k));
        break;
      }
    }
  }
  r.note("corpus circuits with <= 200 terms: " + u64s(used) +
         ", symbolic spot checks: " + u64s(symbolic_checked));
  return r;
}

SuiteResult verify_moebius(const RunConfig& cfg, std::uint32_t count) {
  SuiteResult r{"moebius"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 19 + 11);
  for (std::uint32_t i = 0; i < count && r.pass; ++i) {
    std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(4));
    bool force_zero = i % 3 == 0;
    SparsePoly p = random_poly(rng, F, n, 6, 2, force_zero);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) > 3) continue;
      std::set<std::uint32_t> A;
      for (std::uint32_t b = 0; b < n; ++b)
        if (mask & (1u << b)) A.insert(b);
      SparsePoly num = SparsePoly::constant(n, F.one());
      SparsePoly den = SparsePoly::constant(n, F.one());
      std::vector<std::uint32_t> avec(A.begin(), A.end());
      for (std::uint32_t sub = 0; sub < (1u << avec.size()); ++sub) {
        std::set<std::uint32_t> B;
        for (std::uint32_t b = 0; b < avec.size(); ++b)
          if (sub & (1u << b)) B.insert(avec[b]);
        MoebiusQ q = moebius_q_poly(p, B, F);
        num = num.times(q.num, F, cfg.cap_terms);
        den = den.times(q.den, F, cfg.cap_terms);
      }
      SparsePoly pa = restrict_to(p, A, F);
      bool ok = pa.is_zero() ? (num == den) : (num == pa.times(den, F, cfg.cap_terms));
      if (!ok) {
        r.fail("poly " + u64s(i) + " |A|=" + u64s(A.size()) +
               (pa.is_zero() ? " (zero restriction)" : ""));
        break;
      }
    }
  }
  r.note("polynomials: " + u64s(count) + ", every A with |A| <= 3, zero cases forced 1-in-3");
  return r;
}

SuiteResult verify_weighted_spc(const RunConfig& cfg, std::uint32_t count) {
  SuiteResult r{"weighted-spc"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 23 + 13);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.below(8));
    SparsePoly g = random_poly(rng, F, m, 10, 2);
    for (std::uint32_t k = 0; k <= 4 && k <= m; ++k) {
      try {
        weighted_spc_sum(g, k, F);
      } catch (const Error& e) {
        r.fail("poly " + u64s(i) + " k=" + u64s(k) + ": " + e.what());
        return r;
      }
    }
  }
  r.note("polynomials: " + u64s(count) + " with m <= 8, k <= 4, both sides exact");
  return r;
}

namespace {

std::vector<Graph> all_graphs_up_to(std::uint32_t max_n) {
  std::vector<Graph> out;
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      Graph g = Graph::empty(n);
      for (std::uint32_t b = 0; b < pairs.size(); ++b)
        if (mask & (1u << b)) g.add_edge(pairs[b].first, pairs[b].second);
      out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace

SuiteResult verify_vertex_cover(const RunConfig& cfg) {
  SuiteResult r{"vertex-cover"};
  Field F(cfg.modulus);
  auto graphs = all_graphs_up_to(5);
  double worst_ratio = 0;
  for (std::size_t gi = 0; gi < graphs.size() && r.pass; ++gi) {
    const Graph& g = graphs[gi];
    for (std::uint32_t k = 0; k <= 3 && k <= g.n; ++k) {
      Circuit c = vc_fpt_circuit(g, k, F);
      if (!(expand(c, F, cfg.cap_terms) == gen_vc_graph(g, k, F))) {
        r.fail("branching circuit mismatch, graph " + u64s(gi) + " k=" + u64s(k));
        break;
      }
      Circuit rev = vc_fpt_circuit(g, k, F, EdgeOrder::ReverseLex);
      if (!(expand(rev, F, cfg.cap_terms) == gen_vc_graph(g, k, F))) {
        r.fail("edge-order dependence, graph " + u64s(gi) + " k=" + u64s(k));
        break;
      }
      double denom = std::pow(3.0, k) * std::max(1u, g.n) * std::max(1u, g.n);
      worst_ratio = std::max(worst_ratio, static_cast<double>(metrics(c).size) / denom);
    }
  }
  // size bound pinned at 60 * 3^k * n^2
  r.note("worst measured size / (3^k n^2) = " + std::to_string(worst_ratio));
  if (worst_ratio > 60.0) r.fail("size bound 60 * 3^k * n^2 exceeded");
  for (std::uint32_t n = 2; n <= 5 && r.pass; ++n) {
    for (std::uint32_t k = 0; 2 * k <= n && k <= 2; ++k) {
      Circuit c = vc_sun_circuit(n, k, F);
      if (!(expand(c, F, cfg.cap_terms) == gen_vc_edges(Graph::sun(n, k), k, F)))
        r.fail("sun circuit mismatch n=" + u64s(n) + " k=" + u64s(k));
    }
  }
  r.note("graphs on <= 5 vertices: " + u64s(graphs.size()) + ", k <= 3, termwise");
  return r;
}

SuiteResult verify_clique_identities(const RunConfig& cfg) {
  SuiteResult r{"clique-identities"};
  Field F(cfg.modulus);
  for (std::uint32_t n = 1; n <= 5 && r.pass; ++n) {
    for (std::uint32_t k = 0; k <= 3 && k <= n; ++k) {
      BoundedSumSpec spec = gen_clique_weft1(n, k, F);
      if (!(bounded_sum_expand(spec, F, cfg.cap_terms, cfg.cap_enum) == gen_clique(n, k, F))) {
        r.fail("weft-1 formula sum mismatch n=" + u64s(n) + " k=" + u64s(k));
        break;
      }
      if (n >= 3 && metrics(spec.body).weft != 1) {
        r.fail("weft of the formula body is not 1 at n=" + u64s(n));
        break;
      }
    }
  }
  for (std::uint32_t n = 2; n <= 4 && r.pass; ++n) {
    Circuit full = poly_to_circuit(gen_clique_full(n, F), F);
    for (std::uint32_t k = 0; k <= n; ++k) {
      Circuit extracted = homogeneous_extract(full, k * (k - 1) / 2 + k, F);
      if (!(expand(extracted, F, cfg.cap_terms) == gen_clique(n, k, F))) {
        r.fail("homogeneous extraction mismatch n=" + u64s(n) + " k=" + u64s(k));
        break;
      }
    }
  }
  r.note("bounded sums for n <= 5, k <= 3; degree extraction for n <= 4");
  return r;
}

SuiteResult verify_division_elimination(const RunConfig& cfg, std::uint32_t count,
                                        std::uint32_t points) {
  SuiteResult r{"division-elimination"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 29 + 17);
  for (std::uint32_t i = 0; i < count && r.pass; ++i) {
    std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(3));
    SparsePoly target = random_poly(rng, F, n, 5, 2);
    SparsePoly q1 = random_poly(rng, F, n, 3, 1);
    q1.add_term(Exponents(n, 0), F.from_uint(1 + rng.below(5)), F);  // keep it nonzero somewhere
    Circuit c;
    c.n_vars = n;
    std::vector<std::uint32_t> id(n);
    for (std::uint32_t v = 0; v < n; ++v) id[v] = c.input(v);
    std::uint32_t tgt = splice(c, poly_to_circuit(target, F), id);
    std::uint32_t den = splice(c, poly_to_circuit(q1, F), id);
    std::uint32_t num = c.mul({tgt, den});
    c.output = c.divide(num, den);
    if (i % 2 == 1) {
      // nest a second cancelling layer
      SparsePoly q2 = random_poly(rng, F, n, 2, 1);
      q2.add_term(Exponents(n, 0), F.from_uint(1 + rng.below(5)), F);
      std::uint32_t den2 = splice(c, poly_to_circuit(q2, F), id);
      c.output = c.divide(c.mul({c.output, den2}), den2);
    }
    std::uint64_t d = target.degree();
    Circuit out = eliminate_divisions(c, d, F, cfg);
    if (out.division_bearing) {
      r.fail("output still divides, instance " + u64s(i));
      break;
    }
    std::uint32_t checked = 0;
    while (checked < points) {
      auto x = random_point(rng, F, n);
      Fp want;
      try {
        want = evaluate(c, x, F);
      } catch (const Error& e) {
        if (e.code() == Errc::DenominatorZeroAtPoint) continue;
        throw;
      }
      if (evaluate(out, x, F) != want) {
        r.fail("value mismatch, instance " + u64s(i));
        break;
      }
      ++checked;
    }
  }
  r.note("instances: " + u64s(count) + " (true degree <= 6), points each: " + u64s(points));
  return r;
}

SuiteResult verify_cycle_cover(const RunConfig& cfg) {
  SuiteResult r{"cycle-cover"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 31 + 19);
  // desk corpus: size <= 8 edges, depth <= 4
  std::vector<Circuit> corpus;
  {
    Circuit c;  // Const(5)
    c.n_vars = 1;
    c.output = c.constant(F.from_uint(5));
    corpus.push_back(c);
  }
  {
    Circuit c;  // X0
    c.n_vars = 1;
    c.output = c.input(0);
    corpus.push_back(c);
  }
  auto two_var = [&](bool mul) {
    Circuit c;
    c.n_vars = 2;
    std::uint32_t a = c.input(0), b = c.input(1);
    c.output = mul ? c.mul({a, b}) : c.add({a, b});
    return c;
  };
  corpus.push_back(two_var(false));
  corpus.push_back(two_var(true));
  {
    Circuit c;  // (X0 + X1) * X2
    c.n_vars = 3;
    c.output = c.mul({c.add({c.input(0), c.input(1)}), c.input(2)});
    corpus.push_back(c);
  }
  {
    Circuit c;  // X0 * X1 + X2
    c.n_vars = 3;
    c.output = c.add({c.mul({c.input(0), c.input(1)}), c.input(2)});
    corpus.push_back(c);
  }
  {
    Circuit c;  // (X0 + X1) * (X2 + X3)
    c.n_vars = 4;
    c.output = c.mul({c.add({c.input(0), c.input(1)}), c.add({c.input(2), c.input(3)})});
    corpus.push_back(c);
  }
  {
    Circuit c;  // fan-in-3 product
    c.n_vars = 3;
    c.output = c.mul({c.input(0), c.input(1), c.input(2)});
    corpus.push_back(c);
  }
  {
    Circuit c;  // fan-in-3 sum
    c.n_vars = 3;
    c.output = c.add({c.input(0), c.input(1), c.input(2)});
    corpus.push_back(c);
  }
  {
    Circuit c;  // (X0 + 2) * X1
    c.n_vars = 2;
    c.output = c.mul({c.add({c.input(0), c.constant(F.from_uint(2))}), c.input(1)});
    corpus.push_back(c);
  }
  std::uint32_t max_vertices = 0;
  for (std::uint32_t i = 0; i < corpus.size() && r.pass; ++i) {
    const Circuit& c = corpus[i];
    for (std::uint32_t t = 0; t < 2; ++t) {
      std::vector<Fp> x(c.n_vars);
      for (auto& xi : x) xi = F.from_uint(1 + rng.below(9));
      CycleCoverReduction red = circuit_to_cyclecover(c, x, F, cfg);
      max_vertices = std::max(max_vertices, red.graph.n);
      ReductionValue rv = reduction_value(red, F, 200'000'000);
      if (rv.total != evaluate(c, x, F)) {
        r.fail("normalized cover sum mismatch, circuit " + u64s(i));
        break;
      }
    }
  }
  r.note("corpus: " + u64s(corpus.size()) + " circuits, largest digraph " + u64s(max_vertices) +
         " vertices");
  return r;
}

SuiteResult verify_coupling(const RunConfig& cfg) {
  SuiteResult r{"coupling"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 37 + 23);
  std::uint32_t instances = 0;
  for (std::uint32_t n = 2; n <= 5 && r.pass; ++n) {
    std::vector<WeightedDigraph> bases;
    {
      // complete digraph with self-loops
      WeightedDigraph g;
      g.n = n;
      for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v)
          g.add_edge(u, v, F.from_uint(1 + ((u * 7 + v * 3) % 5)));
      bases.push_back(g);
    }
    if (n >= 4) {
      // two disjoint 2-cycles plus loops
      WeightedDigraph g;
      g.n = n;
      for (std::uint32_t v = 0; v < n; ++v) g.add_edge(v, v, F.one());
      g.add_edge(0, 1, F.from_uint(2));
      g.add_edge(1, 0, F.from_uint(3));
      g.add_edge(2, 3, F.from_uint(5));
      g.add_edge(3, 2, F.from_uint(7));
      bases.push_back(g);
    }
    {
      // directed cycle plus loops and a chord
      WeightedDigraph g;
      g.n = n;
      for (std::uint32_t v = 0; v < n; ++v) {
        g.add_edge(v, v, F.one());
        g.add_edge(v, (v + 1) % n, F.from_uint(2 + v));
      }
      if (n >= 3) g.add_edge(0, n - 1, F.from_uint(11));
      bases.push_back(g);
    }
    for (std::uint32_t s = 0; s < 4; ++s) {
      // sparse random base with loops
      WeightedDigraph g;
      g.n = n;
      for (std::uint32_t v = 0; v < n; ++v) g.add_edge(v, v, F.one());
      for (std::uint32_t e = 0; e < n + 2; ++e) {
        std::uint32_t u = static_cast<std::uint32_t>(rng.below(n));
        std::uint32_t v = static_cast<std::uint32_t>(rng.below(n));
        g.add_edge(u, v, F.from_uint(1 + rng.below(9)));
      }
      bases.push_back(g);
    }
    for (const auto& base : bases) {
      std::vector<std::uint32_t> live;
      for (std::uint32_t e = 0; e < base.edges.size(); ++e)
        if (!base.edges[e].removed) live.push_back(e);
      for (std::uint32_t m = 1; m <= 3 && r.pass; ++m) {
        if (live.size() < m + 1) continue;
        std::uint32_t offset = static_cast<std::uint32_t>(rng.below(live.size()));
        std::vector<std::uint32_t> pick;
        for (std::uint32_t j = 0; j <= m; ++j)
          pick.push_back(live[(offset + j) % live.size()]);
        ++instances;
        CouplingReport rep =
            coupling_identity_check(base, pick, CoverPattern::any(), F, cfg.cap_enum);
        if (!rep.pass) {
          r.fail("n=" + u64s(n) + " m=" + u64s(m) + ": " + rep.detail);
          break;
        }
        CouplingReport rep2 = coupling_identity_check(
            base, pick, CoverPattern::sparse(2, base.n, false), F, cfg.cap_enum);
        if (!rep2.pass) {
          r.fail("n=" + u64s(n) + " m=" + u64s(m) + " (patterned): " + rep2.detail);
          break;
        }
      }
    }
  }
  r.note("coupling instances checked (m in {1,2,3}, bases <= 5 vertices): " + u64s(instances));
  return r;
}

SuiteResult verify_reduction_chain(const RunConfig& cfg, std::uint32_t random_graphs) {
  SuiteResult r{"reduction-chain"};
  Field F(cfg.modulus);
  Rng rng(cfg.seed * 41 + 29);
  // grid reduction vs clique counts
  std::vector<std::pair<std::string, Graph>> hosts;
  hosts.emplace_back("K4", Graph::complete(4));
  hosts.emplace_back("K5", Graph::complete(5));
  hosts.emplace_back("C5", Graph::cycle(5));
  {
    // Petersen subgraph induced on the first 6 vertices
    Graph pet = Graph::empty(6);
    pet.add_edge(0, 1);
    pet.add_edge(1, 2);
    pet.add_edge(2, 3);
    pet.add_edge(3, 4);
    pet.add_edge(4, 0);
    pet.add_edge(0, 5);
    hosts.emplace_back("petersen6", pet);
  }
  for (const auto& [name, g] : hosts) {
    for (std::uint32_t k = 2; k <= 3 && r.pass; ++k) {
      GridReduction red = grid_reduction(g, k);
      std::uint64_t copies = partitioned_sub_count(grid_pattern(k), red.host, cfg.cap_enum * 10);
      std::uint64_t cliques = g.cliques(k).size();
      std::uint64_t kfact = 1;
      for (std::uint32_t i = 2; i <= k; ++i) kfact *= i;
      if (copies != kfact * cliques)
        r.fail(name + " k=" + u64s(k) + ": copies=" + u64s(copies) + " vs " + u64s(kfact) + "*" +
               u64s(cliques));
    }
  }
  // inclusion-exclusion vs direct colored-matching enumeration
  for (std::uint32_t i = 0; i < random_graphs && r.pass; ++i) {
    std::uint32_t left = 2 + static_cast<std::uint32_t>(rng.below(3));
    std::uint32_t right = 2 + static_cast<std::uint32_t>(rng.below(3));
    std::uint32_t ncol = 1 + static_cast<std::uint32_t>(rng.below(4));
    Graph g = Graph::empty(left + right);
    std::set<std::int32_t> X;
    for (std::uint32_t c = 0; c < ncol; ++c) X.insert(static_cast<std::int32_t>(c));
    for (std::uint32_t l = 0; l < left; ++l)
      for (std::uint32_t rr = 0; rr < right; ++rr)
        if (rng.below(10) < 6)
          g.add_colored_edge(l, left + rr, static_cast<std::int32_t>(rng.below(ncol)));
    Fp ie = matchings_incl_excl(g, X, F, cfg.cap_enum);
    Fp direct = F.from_uint(colored_matching_count(g, X, cfg.cap_enum));
    if (ie != direct)
      r.fail("graph " + u64s(i) + ": incl-excl=" + u64s(ie.v) + " direct=" + u64s(direct.v));
  }
  // bipartite matchings through the permanent pattern
  for (std::uint32_t a = 1; a <= 3 && r.pass; ++a) {
    for (std::uint32_t b = 1; b <= 3; ++b) {
      Graph g = Graph::empty(a + b);
      std::vector<std::uint32_t> left;
      for (std::uint32_t l = 0; l < a; ++l) {
        left.push_back(l);
        for (std::uint32_t rr = 0; rr < b; ++rr) g.add_edge(l, a + rr);
      }
      for (std::uint32_t k = 1; k <= 2 && k <= std::min(a, b); ++k) {
        PerkReduction red = matching_to_perk(g, left, k, F);
        SparsePoly got = perk_matching_poly(red, static_cast<std::uint32_t>(g.edges.size()), F,
                                            cfg.cap_enum * 4);
        SparsePoly want = matching_poly(g, k, F);
        if (!(got == want)) {
          r.fail("complete bipartite " + u64s(a) + "x" + u64s(b) + " k=" + u64s(k));
          break;
        }
      }
    }
  }
  r.note("grid hosts: 4, colored-matching graphs: " + u64s(random_graphs) +
         ", bipartite permanents up to 3x3");
  return r;
}

std::vector<std::string> verify_suite_names() {
  return {"unique-split",    "gadget-counts", "compose",        "weft1nf",
          "spc-ba",          "moebius",       "cl-spc",         "vc",
          "clique",          "divfree",       "cyclecover",     "coupling",
          "reduction-chain", "lemma-w1-1"};
}

SuiteResult run_verify_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "unique-split" || name == "lemma-w1-1") return verify_unique_split(100);
  if (name == "gadget-counts") return verify_gadget_counts();
  if (name == "compose") return verify_compose(cfg);
  if (name == "weft1nf") return verify_weft1_normal_form(cfg);
  if (name == "spc-ba") return verify_spc_ba(cfg);
  if (name == "moebius") return verify_moebius(cfg);
  if (name == "cl-spc") return verify_weighted_spc(cfg);
  if (name == "vc") return verify_vertex_cover(cfg);
  if (name == "clique") return verify_clique_identities(cfg);
  if (name == "divfree") return verify_division_elimination(cfg);
  if (name == "cyclecover") return verify_cycle_cover(cfg);
  if (name == "coupling") return verify_coupling(cfg);
  if (name == "reduction-chain") return verify_reduction_chain(cfg);
  SuiteResult r{name};
  r.fail("unknown suite");
  return r;
}

}  // namespace weft

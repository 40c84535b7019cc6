#include "weft/transforms.hpp"

#include <algorithm>
#include <functional>

#include "weft/error.hpp"
#include "weft/poly.hpp"
#include "weft/rng.hpp"

namespace weft {

Circuit to_formula(const Circuit& c, const RunConfig& cfg) {
  if (c.division_bearing) throw Error(Errc::InvalidCircuit, "to_formula requires division-free");
  Circuit out;
  out.n_vars = c.n_vars;
  out.fanin_bound = c.fanin_bound;
  std::function<std::uint32_t(std::uint32_t)> dup = [&](std::uint32_t g) -> std::uint32_t {
    if (out.gates.size() > cfg.cap_size)
      throw Error(Errc::SizeCapExceeded, "formula expansion exceeds gate cap");
    const Gate& gate = c.gates[g];
    Gate copy = gate;
    for (auto& a : copy.args) a = dup(a);
    return out.add_gate(std::move(copy));
  };
  out.output = dup(c.output);
  out.is_formula = true;
  return out;
}

std::optional<std::string> five_layer_report(const FiveLayerFormula& f) {
  const Circuit& c = f.circuit;
  if (auto r = validate_report(c)) return r;
  if (!c.is_formula) return "five-layer circuit must be a formula";
  if (f.layer.size() != c.gates.size()) return "layer annotation size mismatch";
  const std::uint32_t b = c.fanin_bound;
  auto is_leaf = [&](std::uint32_t g) {
    return c.gates[g].kind == GateKind::Input || c.gates[g].kind == GateKind::Const;
  };
  // computes a constant <=> a layer-5 Mul whose only child is its constant
  auto l5_constant = [&](std::uint32_t g) {
    return c.gates[g].args.size() == 1 && c.gates[c.gates[g].args[0]].kind == GateKind::Const;
  };
  if (f.layer[c.output] != 1) return "output gate must be in layer 1";
  for (std::uint32_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    switch (f.layer[g]) {
      case 0:
        if (!is_leaf(g)) return "layer-0 annotation on a computation gate";
        break;
      case 1:
        if (g != c.output) return "layer-1 gate that is not the output";
        if (gate.kind != GateKind::Add) return "layer-1 gate must be Add";
        if (gate.args.size() > b) return "layer-1 fan-in exceeds bound";
        for (auto a : gate.args)
          if (f.layer[a] != 2) return "layer-1 child not in layer 2";
        break;
      case 2:
        if (gate.kind != GateKind::Mul) return "layer-2 gate must be Mul";
        if (gate.args.size() > b) return "layer-2 fan-in exceeds bound";
        for (auto a : gate.args)
          if (f.layer[a] != 3) return "layer-2 child not in layer 3";
        break;
      case 3:
        if (gate.kind != GateKind::Add && gate.kind != GateKind::Mul)
          return "layer-3 gate must be Add or Mul";
        for (auto a : gate.args)
          if (f.layer[a] != 4) return "layer-3 child not in layer 4";
        break;
      case 4: {
        if (gate.kind != GateKind::Add) return "layer-4 gate must be Add";
        if (gate.args.size() > b) return "layer-4 fan-in exceeds bound";
        std::size_t const_children = 0;
        for (auto a : gate.args) {
          if (f.layer[a] != 5) return "layer-4 child not in layer 5";
          if (l5_constant(a)) ++const_children;
        }
        if (const_children > 1) return "layer-4 gate with more than one constant child";
        break;
      }
      case 5: {
        if (gate.kind != GateKind::Mul) return "layer-5 gate must be Mul";
        if (gate.args.size() > b) return "layer-5 fan-in exceeds bound";
        std::size_t consts = 0;
        for (auto a : gate.args) {
          if (!is_leaf(a)) return "layer-5 child must be a leaf";
          if (c.gates[a].kind == GateKind::Const) ++consts;
        }
        if (consts != 1) return "layer-5 gate must have exactly one constant input";
        break;
      }
      default: return "layer annotation out of range";
    }
  }
  return std::nullopt;
}

namespace {

struct NormalFormBuilder {
  Circuit out;
  std::vector<std::uint8_t> layer;
  const Field& F;

  std::uint32_t gate(Gate g, std::uint8_t l) {
    std::uint32_t id = out.add_gate(std::move(g));
    layer.resize(out.gates.size(), 0);
    layer[id] = l;
    return id;
  }
  std::uint32_t leaf_const(Fp v) { return gate({GateKind::Const, 0, v, {}}, 0); }
  std::uint32_t leaf_input(std::uint32_t var) { return gate({GateKind::Input, var, {}, {}}, 0); }

  // layer-5 Mul for one monomial: exactly one constant input plus variables.
  std::uint32_t monomial_l5(Fp coeff, const Exponents& e) {
    std::vector<std::uint32_t> kids{leaf_const(coeff)};
    for (std::uint32_t v = 0; v < e.size(); ++v)
      for (std::uint32_t t = 0; t < e[v]; ++t) kids.push_back(leaf_input(v));
    return gate({GateKind::Mul, 0, {}, std::move(kids)}, 5);
  }

  // layer-4 Add of a polynomial's monomials.
  std::uint32_t poly_l4(const SparsePoly& p) {
    std::vector<std::uint32_t> kids;
    for (const auto& [e, coeff] : p.terms()) kids.push_back(monomial_l5(coeff, e));
    if (kids.empty()) kids.push_back(monomial_l5(F.zero(), Exponents(p.n_vars(), 0)));
    return gate({GateKind::Add, 0, {}, std::move(kids)}, 4);
  }

  // pad chains reaching from layer 3 down to a leaf
  std::uint32_t pad_const_l3(Fp v) {
    std::uint32_t l5 = gate({GateKind::Mul, 0, {}, {leaf_const(v)}}, 5);
    std::uint32_t l4 = gate({GateKind::Add, 0, {}, {l5}}, 4);
    return gate({GateKind::Add, 0, {}, {l4}}, 3);
  }
  std::uint32_t pad_var_l3(std::uint32_t var) {
    std::uint32_t l5 = gate({GateKind::Mul, 0, {}, {leaf_const(F.one()), leaf_input(var)}}, 5);
    std::uint32_t l4 = gate({GateKind::Add, 0, {}, {l5}}, 4);
    return gate({GateKind::Add, 0, {}, {l4}}, 3);
  }
};

}  // namespace

FiveLayerFormula weft1_normal_form(const Circuit& c, const Field& F, const RunConfig& cfg) {
  if (c.division_bearing)
    throw Error(Errc::InvalidCircuit, "weft1_normal_form requires division-free");
  Metrics m = metrics(c);
  if (m.weft > 1) throw Error(Errc::WeftTooHigh, "input weft exceeds 1");
  if (m.depth > cfg.depth_cap) throw Error(Errc::DepthCapExceeded, "input depth beyond cap");
  Circuit f = to_formula(c, cfg);

  const std::uint32_t b = f.fanin_bound;
  std::vector<bool> unbounded(f.gates.size(), false);
  for (std::uint32_t g = 0; g < f.gates.size(); ++g) {
    const Gate& gate = f.gates[g];
    unbounded[g] = (gate.kind == GateKind::Add || gate.kind == GateKind::Mul) &&
                   gate.args.size() > b;
  }

  // D: the bounded region above the unbounded gates, with gate g replaced by
  // a fresh variable Z_g. Subtrees of unbounded gates are cut away.
  std::vector<std::uint32_t> unb_list;
  std::vector<std::uint32_t> zvar(f.gates.size(), UINT32_MAX);
  for (std::uint32_t g = 0; g < f.gates.size(); ++g)
    if (unbounded[g]) {
      zvar[g] = c.n_vars + static_cast<std::uint32_t>(unb_list.size());
      unb_list.push_back(g);
    }
  const std::uint32_t d_vars = c.n_vars + static_cast<std::uint32_t>(unb_list.size());

  Circuit D;
  D.n_vars = d_vars;
  std::function<std::uint32_t(std::uint32_t)> build_d = [&](std::uint32_t g) -> std::uint32_t {
    if (unbounded[g]) return D.input(zvar[g]);
    const Gate& gate = f.gates[g];
    Gate copy = gate;
    for (auto& a : copy.args) a = build_d(a);
    return D.add_gate(std::move(copy));
  };
  D.output = build_d(f.output);
  SparsePoly q = expand(D, F, cfg.cap_size);

  // expand each child of each unbounded gate (bounded, constant-size region)
  auto subformula = [&](std::uint32_t root) {
    Circuit sub;
    sub.n_vars = c.n_vars;
    std::function<std::uint32_t(std::uint32_t)> rec = [&](std::uint32_t g) -> std::uint32_t {
      if (unbounded[g])
        throw Error(Errc::WeftTooHigh, "unbounded gate below another unbounded gate");
      Gate copy = f.gates[g];
      for (auto& a : copy.args) a = rec(a);
      return sub.add_gate(std::move(copy));
    };
    sub.output = rec(root);
    return sub;
  };

  NormalFormBuilder nb{{}, {}, F};
  nb.out.n_vars = c.n_vars;

  // layer-3 block for each unbounded gate: its children become layer-4
  // monomial sums.
  auto emit_unbounded = [&](std::uint32_t g) {
    std::vector<std::uint32_t> kids;
    for (auto child : f.gates[g].args)
      kids.push_back(nb.poly_l4(expand(subformula(child), F, cfg.cap_size)));
    return nb.gate({f.gates[g].kind, 0, {}, std::move(kids)}, 3);
  };

  // layer-2 Mul per monomial of q; layer-1 Add on top.
  std::vector<std::uint32_t> l2;
  for (const auto& [e, coeff] : q.terms()) {
    std::vector<std::uint32_t> kids;
    if (coeff != F.one() || monomial_degree(e) == 0) kids.push_back(nb.pad_const_l3(coeff));
    for (std::uint32_t v = 0; v < e.size(); ++v) {
      for (std::uint32_t t = 0; t < e[v]; ++t) {
        if (v < c.n_vars)
          kids.push_back(nb.pad_var_l3(v));
        else
          kids.push_back(emit_unbounded(unb_list[v - c.n_vars]));
      }
    }
    l2.push_back(nb.gate({GateKind::Mul, 0, {}, std::move(kids)}, 2));
    if (nb.out.gates.size() > cfg.cap_size)
      throw Error(Errc::SizeCapExceeded, "normal form exceeds gate cap");
  }
  if (l2.empty()) {
    // q == 0
    l2.push_back(nb.gate({GateKind::Mul, 0, {}, {nb.pad_const_l3(F.zero())}}, 2));
  }
  nb.out.output = nb.gate({GateKind::Add, 0, {}, std::move(l2)}, 1);
  nb.out.is_formula = true;

  // the bounded layers define the output's fan-in bound; layer 3 stays free
  std::uint32_t bound = 2;
  for (std::uint32_t g = 0; g < nb.out.gates.size(); ++g)
    if (nb.layer[g] != 3 && nb.layer[g] != 0)
      bound = std::max(bound, static_cast<std::uint32_t>(nb.out.gates[g].args.size()));
  nb.out.fanin_bound = bound;

  FiveLayerFormula result{std::move(nb.out), std::move(nb.layer)};
  if (auto r = five_layer_report(result))
    throw Error(Errc::InvalidCircuit, "normal form self-check failed: " + *r);
  return result;
}

Circuit homogeneous_extract(const Circuit& c, std::uint32_t k, const Field& F,
                            std::optional<std::uint64_t> degree_bound_hint) {
  if (c.division_bearing)
    throw Error(Errc::InvalidCircuit, "homogeneous_extract requires division-free");
  std::uint64_t d = degree_bound_hint.value_or(degree_bound(c));
  if (k > d) {
    Circuit z;
    z.n_vars = c.n_vars;
    z.output = z.constant(F.zero());
    return z;
  }
  if (d + 1 >= F.modulus())
    throw Error(Errc::InsufficientFieldPoints, "degree bound too large for the field");
  std::vector<Fp> nodes(d + 1);
  for (std::uint64_t i = 0; i <= d; ++i) nodes[i] = F.from_uint(i + 1);
  std::vector<Fp> beta = lagrange_coeff_weights(nodes, k, F);

  Circuit out;
  out.n_vars = c.n_vars;
  std::vector<std::uint32_t> xin(c.n_vars);
  for (std::uint32_t i = 0; i < c.n_vars; ++i) xin[i] = out.input(i);
  std::vector<std::uint32_t> parts;
  for (std::uint64_t i = 0; i <= d; ++i) {
    std::vector<std::uint32_t> scaled(c.n_vars);
    for (std::uint32_t v = 0; v < c.n_vars; ++v)
      scaled[v] = out.mul({out.constant(nodes[i]), xin[v]});
    std::uint32_t copy = splice(out, c, scaled);
    parts.push_back(out.mul({out.constant(beta[i]), copy}));
  }
  out.output = out.add_chain(parts, F);
  return out;
}

namespace {

// Coefficient of a truncated power series: a known constant or a gate.
struct SeriesCoeff {
  bool is_const = true;
  Fp cval{};
  std::uint32_t gate = 0;
};

struct SeriesCtx {
  Circuit& out;
  const Field& F;
  std::uint64_t deg;

  SeriesCoeff zero() const { return SeriesCoeff{true, Fp{0}, 0}; }

  SeriesCoeff add(const SeriesCoeff& a, const SeriesCoeff& b) {
    if (a.is_const && a.cval.v == 0) return b;
    if (b.is_const && b.cval.v == 0) return a;
    if (a.is_const && b.is_const) return {true, F.add(a.cval, b.cval), 0};
    return {false, {}, out.add({materialize(a), materialize(b)})};
  }
  SeriesCoeff mul(const SeriesCoeff& a, const SeriesCoeff& b) {
    if ((a.is_const && a.cval.v == 0) || (b.is_const && b.cval.v == 0)) return zero();
    if (a.is_const && b.is_const) return {true, F.mul(a.cval, b.cval), 0};
    return {false, {}, out.mul({materialize(a), materialize(b)})};
  }
  std::uint32_t materialize(const SeriesCoeff& a) {
    return a.is_const ? out.constant(a.cval) : a.gate;
  }

  using Series = std::vector<SeriesCoeff>;

  Series convolve(const Series& u, const Series& v) {
    Series r(deg + 1, zero());
    for (std::uint64_t m = 0; m <= deg; ++m)
      for (std::uint64_t i = 0; i <= m; ++i) r[m] = add(r[m], mul(u[i], v[m - i]));
    return r;
  }

  Series inverse(const Series& w) {
    if (!w[0].is_const || w[0].cval.v == 0)
      throw Error(Errc::NoValidShiftFound, "series constant term not invertible");
    Series z(deg + 1, zero());
    Fp z0 = F.inv(w[0].cval);
    z[0] = {true, z0, 0};
    for (std::uint64_t m = 1; m <= deg; ++m) {
      SeriesCoeff acc = zero();
      for (std::uint64_t i = 1; i <= m; ++i) acc = add(acc, mul(w[i], z[m - i]));
      z[m] = mul(SeriesCoeff{true, F.neg(z0), 0}, acc);
    }
    return z;
  }
};

}  // namespace

Circuit eliminate_divisions(const Circuit& c, std::uint64_t d, const Field& F,
                            const RunConfig& cfg) {
  if (!c.division_bearing) {
    Circuit out = c;
    out.division_bearing = false;
    return out;
  }
  // Taylor-shift candidate sweep: all variables at the constant a must make
  // every denominator nonzero.
  std::optional<Fp> shift;
  for (std::uint32_t cand = 0; cand < cfg.shift_candidates; ++cand) {
    Fp a = F.from_uint(cand);
    std::vector<Fp> point(c.n_vars, a);
    bool ok = true;
    std::vector<Fp> val(c.gates.size());
    for (std::size_t i = 0; i < c.gates.size() && ok; ++i) {
      const Gate& g = c.gates[i];
      switch (g.kind) {
        case GateKind::Input: val[i] = a; break;
        case GateKind::Const: val[i] = g.cval; break;
        case GateKind::Add: {
          Fp s = F.zero();
          for (auto x : g.args) s = F.add(s, val[x]);
          val[i] = s;
          break;
        }
        case GateKind::Mul: {
          Fp s = F.one();
          for (auto x : g.args) s = F.mul(s, val[x]);
          val[i] = s;
          break;
        }
        case GateKind::Div:
          if (val[g.args[1]].v == 0) {
            ok = false;
            break;
          }
          val[i] = F.div(val[g.args[0]], val[g.args[1]]);
          break;
      }
    }
    if (ok) {
      shift = a;
      break;
    }
  }
  if (!shift) throw Error(Errc::NoValidShiftFound, "no Taylor shift candidate works");
  Fp a = *shift;

  Circuit out;
  out.n_vars = c.n_vars;
  // inputs enter as Y_i = X_i - a; the series tracks c(a + T*Y).
  std::vector<std::uint32_t> yin(c.n_vars);
  for (std::uint32_t i = 0; i < c.n_vars; ++i)
    yin[i] = out.add({out.input(i), out.constant(F.neg(a))});

  SeriesCtx ctx{out, F, d};
  std::vector<SeriesCtx::Series> series(c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input: {
        SeriesCtx::Series s(d + 1, ctx.zero());
        s[0] = {true, a, 0};
        if (d >= 1) s[1] = {false, {}, yin[g.var]};
        series[i] = std::move(s);
        break;
      }
      case GateKind::Const: {
        SeriesCtx::Series s(d + 1, ctx.zero());
        s[0] = {true, g.cval, 0};
        series[i] = std::move(s);
        break;
      }
      case GateKind::Add: {
        SeriesCtx::Series s(d + 1, ctx.zero());
        for (auto x : g.args)
          for (std::uint64_t m = 0; m <= d; ++m) s[m] = ctx.add(s[m], series[x][m]);
        series[i] = std::move(s);
        break;
      }
      case GateKind::Mul: {
        SeriesCtx::Series s(d + 1, ctx.zero());
        s[0] = {true, F.one(), 0};
        for (auto x : g.args) s = ctx.convolve(s, series[x]);
        series[i] = std::move(s);
        break;
      }
      case GateKind::Div: {
        series[i] = ctx.convolve(series[g.args[0]], ctx.inverse(series[g.args[1]]));
        break;
      }
    }
    if (out.gates.size() > cfg.cap_size)
      throw Error(Errc::SizeCapExceeded, "division elimination exceeds gate cap");
  }
  std::vector<std::uint32_t> parts;
  for (std::uint64_t m = 0; m <= d; ++m) parts.push_back(ctx.materialize(series[c.output][m]));
  out.output = out.add_chain(parts, F);
  out.division_bearing = false;

  // Self-check at seeded random points away from denominator zeros; a
  // mismatch means the true degree exceeds d.
  Rng rng(cfg.seed ^ 0x9e37u);
  std::uint32_t checked = 0, attempts = 0;
  while (checked < 20 && attempts < 400) {
    ++attempts;
    std::vector<Fp> x(c.n_vars);
    for (auto& xi : x) xi = F.from_uint(rng.next());
    Fp want;
    try {
      want = evaluate(c, x, F);
    } catch (const Error& e) {
      if (e.code() == Errc::DenominatorZeroAtPoint) continue;
      throw;
    }
    if (evaluate(out, x, F) != want)
      throw Error(Errc::DegreeBoundViolated, "truncated series disagrees with the input");
    ++checked;
  }
  return out;
}

}  // namespace weft

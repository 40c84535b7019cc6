#include "weft/boolarith.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "weft/error.hpp"

namespace weft {

Fp ba_eval(const BAFormula& ba, std::span<const Fp> x, const Field& F, std::uint64_t visit_cap) {
  if (x.size() != ba.n_x) throw Error(Errc::LayoutMismatch, "x block size mismatch");
  if (ba.coeffs.size() != ba.n_assign)
    throw Error(Errc::LayoutMismatch, "coefficient count != n_assign");
  std::vector<Fp> rv(ba.n_assign);
  for (std::uint32_t i = 0; i < ba.n_assign; ++i) rv[i] = evaluate(ba.coeffs[i], x, F);
  Fp total = F.zero();
  enumerate_weighted_sat(ba.B, ba.weight, visit_cap, [&](const std::vector<std::uint8_t>& e) {
    Fp prod = F.one();
    for (std::uint32_t i = 0; i < ba.n_assign; ++i)
      if (e[i]) prod = F.mul(prod, rv[i]);
    total = F.add(total, prod);
  });
  return total;
}

std::uint32_t RestrictionTable::mask_of(const GateInfo& gi, const std::set<std::uint32_t>& A) {
  std::uint32_t mask = 0;
  for (std::uint32_t b = 0; b < gi.support.size(); ++b)
    if (A.count(gi.support[b])) mask |= 1u << b;
  return mask;
}

RestrictionTable build_restriction_table(const FiveLayerFormula& f5, const Field& F,
                                         const RunConfig& cfg) {
  RestrictionTable t;
  t.n_x = f5.circuit.n_vars;
  for (std::uint32_t g = 0; g < f5.circuit.gates.size(); ++g) {
    if (f5.layer[g] != 4) continue;
    // p_c: sum over the layer-5 monomial children
    SparsePoly p(t.n_x);
    for (auto l5 : f5.circuit.gates[g].args) {
      Fp coeff = F.one();
      Exponents e(t.n_x, 0);
      for (auto leaf : f5.circuit.gates[l5].args) {
        const Gate& lg = f5.circuit.gates[leaf];
        if (lg.kind == GateKind::Const)
          coeff = F.mul(coeff, lg.cval);
        else
          ++e[lg.var];
      }
      p.add_term(e, coeff, F);
    }
    RestrictionTable::GateInfo gi;
    std::set<std::uint32_t> sup;
    for (const auto& [e, coeff] : p.terms())
      for (auto v : monomial_support(e)) sup.insert(v);
    gi.support.assign(sup.begin(), sup.end());
    if (gi.support.size() > cfg.support_cap)
      throw Error(Errc::SizeCapExceeded, "gate support exceeds the pipeline cap");
    const std::uint32_t masks = 1u << gi.support.size();
    gi.restricted.reserve(masks);
    gi.at_ones.reserve(masks);
    for (std::uint32_t m = 0; m < masks; ++m) {
      std::set<std::uint32_t> A;
      for (std::uint32_t b = 0; b < gi.support.size(); ++b)
        if (m & (1u << b)) A.insert(gi.support[b]);
      SparsePoly r = restrict_to(p, A, F);
      gi.at_ones.push_back(r.eval_all_ones(F));
      gi.restricted.push_back(std::move(r));
    }
    t.gates.emplace(g, std::move(gi));
  }
  return t;
}

namespace {

int moebius_sign(std::uint32_t bmask, std::uint32_t cmask) {
  return (std::popcount(bmask) - std::popcount(cmask)) % 2 == 0 ? 1 : -1;
}

const RestrictionTable::GateInfo& gate_info(const RestrictionTable& t, std::uint32_t gate) {
  auto it = t.gates.find(gate);
  if (it == t.gates.end())
    throw Error(Errc::ParameterOutOfRange, "gate has no restriction-table entry");
  return it->second;
}

}  // namespace

MoebiusQ moebius_q(const RestrictionTable& t, std::uint32_t gate, std::uint32_t submask,
                   const Field& F) {
  const auto& gi = gate_info(t, gate);
  MoebiusQ q{SparsePoly::constant(t.n_x, F.one()), SparsePoly::constant(t.n_x, F.one())};
  for (std::uint32_t c = submask;; c = (c - 1) & submask) {
    if (!gi.restricted[c].is_zero()) {
      if (moebius_sign(submask, c) > 0)
        q.num = q.num.times(gi.restricted[c], F, UINT64_MAX);
      else
        q.den = q.den.times(gi.restricted[c], F, UINT64_MAX);
    }
    if (c == 0) break;
  }
  return q;
}

MoebiusQ moebius_q_poly(const SparsePoly& p, const std::set<std::uint32_t>& B, const Field& F) {
  std::vector<std::uint32_t> bvec(B.begin(), B.end());
  const std::uint32_t bits = static_cast<std::uint32_t>(bvec.size());
  MoebiusQ q{SparsePoly::constant(p.n_vars(), F.one()),
             SparsePoly::constant(p.n_vars(), F.one())};
  for (std::uint32_t m = 0; m < (1u << bits); ++m) {
    std::set<std::uint32_t> C;
    for (std::uint32_t b = 0; b < bits; ++b)
      if (m & (1u << b)) C.insert(bvec[b]);
    SparsePoly r = restrict_to(p, C, F);
    if (r.is_zero()) continue;
    if ((bits - C.size()) % 2 == 0)
      q.num = q.num.times(r, F, UINT64_MAX);
    else
      q.den = q.den.times(r, F, UINT64_MAX);
  }
  return q;
}

Fp moebius_q_at_ones(const RestrictionTable& t, std::uint32_t gate, std::uint32_t submask,
                     const Field& F) {
  const auto& gi = gate_info(t, gate);
  Fp num = F.one(), den = F.one();
  for (std::uint32_t c = submask;; c = (c - 1) & submask) {
    Fp v = gi.at_ones[c];
    if (v.v != 0) {
      if (moebius_sign(submask, c) > 0)
        num = F.mul(num, v);
      else
        den = F.mul(den, v);
    }
    if (c == 0) break;
  }
  return F.div(num, den);
}

namespace {

Circuit constant_circuit(std::uint32_t n_x, Fp v) {
  Circuit c;
  c.n_vars = n_x;
  c.output = c.constant(v);
  return c;
}

}  // namespace

Circuit moebius_q_circuit(const RestrictionTable& t, std::uint32_t gate, std::uint32_t submask,
                          const Field& F) {
  MoebiusQ q = moebius_q(t, gate, submask, F);
  Circuit c;
  c.n_vars = t.n_x;
  std::vector<std::uint32_t> id(t.n_x);
  for (std::uint32_t i = 0; i < t.n_x; ++i) id[i] = c.input(i);
  std::uint32_t num = splice(c, poly_to_circuit(q.num, F), id);
  if (q.den.term_count() == 1 && q.den.terms().begin()->second == F.one() &&
      monomial_degree(q.den.terms().begin()->first) == 0) {
    c.output = num;
    return c;
  }
  std::uint32_t den = splice(c, poly_to_circuit(q.den, F), id);
  c.output = c.divide(num, den);
  return c;
}

// ---------------------------------------------------------------------------
// build_spc_ba
// ---------------------------------------------------------------------------

namespace {

// One piece = (layer-2 gate u, restriction size ell). Variables beyond the
// shared selector/y blocks are owned by the piece and zeroed when it is not
// selected.
struct Piece {
  std::uint32_t u = 0;
  std::uint32_t ell = 0;
  Fp outer_coeff{};  // (-1)^{k-ell} C(n-ell, k-ell)

  std::vector<std::uint32_t> mul_children;  // layer-3 Mul gates (v_i)
  std::vector<std::uint32_t> add_children;  // layer-3 Add gates (w_j)

  // x_B variables: one per distinct global subset B (|B| <= ell) appearing in
  // some T_c of a mul child.
  std::vector<std::set<std::uint32_t>> xsubsets;
  std::map<std::set<std::uint32_t>, std::uint32_t> xindex;  // subset -> var id

  // switches and z variables
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> svar;     // (w_j, c) -> var
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> zvar;     // (c, mask) -> var
  std::uint32_t wvar = 0, wpvar = 0;
  std::vector<std::uint32_t> dummies;
  std::vector<std::uint32_t> owned;  // all piece variables, for zeroing
};

std::vector<std::set<std::uint32_t>> submasks_as_sets(const RestrictionTable::GateInfo& gi,
                                                      std::uint32_t max_size) {
  std::vector<std::set<std::uint32_t>> out;
  const std::uint32_t masks = 1u << gi.support.size();
  for (std::uint32_t m = 0; m < masks; ++m) {
    if (static_cast<std::uint32_t>(std::popcount(m)) > max_size) continue;
    std::set<std::uint32_t> s;
    for (std::uint32_t b = 0; b < gi.support.size(); ++b)
      if (m & (1u << b)) s.insert(gi.support[b]);
    out.push_back(std::move(s));
  }
  return out;
}

std::uint32_t set_to_mask(const RestrictionTable::GateInfo& gi, const std::set<std::uint32_t>& s) {
  std::uint32_t mask = 0;
  for (std::uint32_t b = 0; b < gi.support.size(); ++b)
    if (s.count(gi.support[b])) mask |= 1u << b;
  return mask;
}

// at-least-t of the given variables: OR over all t-subsets of AND chains.
std::uint32_t at_least(BooleanFormula& f, const std::vector<std::uint32_t>& vars, std::uint32_t t) {
  if (t == 0) return f.constant(true);
  if (t > vars.size()) return f.constant(false);
  std::vector<std::uint32_t> alts;
  for (const auto& subset : k_subsets(static_cast<std::uint32_t>(vars.size()), t)) {
    std::vector<std::uint32_t> lits;
    for (auto i : subset) lits.push_back(f.var(vars[i]));
    alts.push_back(f.and_tree(std::move(lits)));
  }
  return f.lor(std::move(alts));
}

std::uint32_t membership_conj(BooleanFormula& f, const std::set<std::uint32_t>& B,
                              const std::vector<std::uint32_t>& yvar) {
  std::vector<std::uint32_t> lits;
  for (auto v : B) lits.push_back(f.var(yvar[v]));
  return f.and_tree(std::move(lits));
}

// A cap T_c equals B exactly: the B variables on, the rest of T_c off.
std::uint32_t exact_mask_conj(BooleanFormula& f, const RestrictionTable::GateInfo& gi,
                              std::uint32_t mask, const std::vector<std::uint32_t>& yvar) {
  std::vector<std::uint32_t> lits;
  for (std::uint32_t b = 0; b < gi.support.size(); ++b) {
    std::uint32_t y = yvar[gi.support[b]];
    lits.push_back(mask & (1u << b) ? f.var(y) : f.lnot(f.var(y)));
  }
  return f.and_tree(std::move(lits));
}

}  // namespace

BAFormula build_spc_ba(const FiveLayerFormula& f5, std::uint32_t k, bool at_ones, const Field& F,
                       const RunConfig& cfg, SpcBaReport* report) {
  if (auto r = five_layer_report(f5))
    throw Error(Errc::InvalidCircuit, "build_spc_ba input: " + *r);
  const Circuit& c = f5.circuit;
  const std::uint32_t n = c.n_vars;
  if (k > n) throw Error(Errc::ParameterOutOfRange, "build_spc_ba needs k <= n_vars");
  RestrictionTable table = build_restriction_table(f5, F, cfg);

  auto is_zero = [&](std::uint32_t gate, std::uint32_t mask) {
    const auto& gi = table.gates.at(gate);
    return at_ones ? gi.at_ones[mask].v == 0 : gi.restricted[mask].is_zero();
  };
  auto q_coeff = [&](std::uint32_t gate, std::uint32_t mask) -> Circuit {
    if (at_ones) return constant_circuit(n, moebius_q_at_ones(table, gate, mask, F));
    return moebius_q_circuit(table, gate, mask, F);
  };

  const std::vector<std::uint32_t>& l2_gates = c.gates[c.output].args;
  std::vector<Piece> pieces;
  for (auto u : l2_gates) {
    for (std::uint32_t ell = 0; ell <= k; ++ell) {
      Piece p;
      p.u = u;
      p.ell = ell;
      Fp coeff = F.binomial(n - ell, k - ell);
      if ((k - ell) % 2 == 1) coeff = F.neg(coeff);
      p.outer_coeff = coeff;
      for (auto child : c.gates[u].args) {
        if (c.gates[child].kind == GateKind::Mul)
          p.mul_children.push_back(child);
        else
          p.add_children.push_back(child);
      }
      pieces.push_back(std::move(p));
    }
  }
  const std::uint32_t P = static_cast<std::uint32_t>(pieces.size());

  // global variable layout: selectors | y | per-piece blocks
  std::uint32_t next = 0;
  std::vector<std::uint32_t> selvar(P);
  for (std::uint32_t i = 0; i < P; ++i) selvar[i] = next++;
  std::vector<std::uint32_t> yvar(n);
  for (std::uint32_t i = 0; i < n; ++i) yvar[i] = next++;

  for (auto& p : pieces) {
    for (auto w : p.add_children)
      for (auto cc : c.gates[w].args) {
        p.svar[{w, cc}] = next;
        p.owned.push_back(next++);
      }
    std::set<std::set<std::uint32_t>> xs;
    for (auto v : p.mul_children)
      for (auto cc : c.gates[v].args)
        for (auto& s : submasks_as_sets(table.gates.at(cc), p.ell)) xs.insert(s);
    for (auto& s : xs) {
      p.xindex[s] = next;
      p.xsubsets.push_back(s);
      p.owned.push_back(next++);
    }
    for (auto w : p.add_children)
      for (auto cc : c.gates[w].args) {
        const auto& gi = table.gates.at(cc);
        const std::uint32_t masks = 1u << gi.support.size();
        for (std::uint32_t m = 0; m < masks; ++m) {
          if (static_cast<std::uint32_t>(std::popcount(m)) > p.ell) continue;
          p.zvar[{cc, m}] = next;
          p.owned.push_back(next++);
        }
      }
    p.wvar = next;
    p.owned.push_back(next++);
    p.wpvar = next;
    p.owned.push_back(next++);
  }

  // weight bookkeeping: per piece, bounds on the number of ones beyond the
  // selector; the dummy chain absorbs the per-assignment slack.
  std::vector<std::uint32_t> min_ext(P, 0), max_ext(P, 0);
  for (std::uint32_t i = 0; i < P; ++i) {
    Piece& p = pieces[i];
    std::uint32_t lo = UINT32_MAX, hi = 0;
    for (const auto& A_idx : k_subsets(n, p.ell)) {
      std::set<std::uint32_t> A(A_idx.begin(), A_idx.end());
      std::uint32_t xcnt = 0;
      for (const auto& B : p.xsubsets)
        if (std::includes(A.begin(), A.end(), B.begin(), B.end())) ++xcnt;
      std::uint32_t w = 0;
      for (auto v : p.mul_children)
        for (auto cc : c.gates[v].args)
          if (is_zero(cc, RestrictionTable::mask_of(table.gates.at(cc), A))) w = 1;
      std::uint32_t zmin = 0, zmax = 0, any_zero_choice = 0;
      for (auto wj : p.add_children) {
        std::uint32_t cmin = UINT32_MAX, cmax = 0;
        for (auto cc : c.gates[wj].args) {
          const auto& gi = table.gates.at(cc);
          std::uint32_t cnt = 1u << std::popcount(RestrictionTable::mask_of(gi, A));
          cmin = std::min(cmin, cnt);
          cmax = std::max(cmax, cnt);
          if (is_zero(cc, RestrictionTable::mask_of(gi, A))) any_zero_choice = 1;
        }
        zmin += cmin;
        zmax += cmax;
      }
      std::uint32_t t = static_cast<std::uint32_t>(p.add_children.size());
      std::uint32_t base = p.ell + xcnt + t + w;
      lo = std::min(lo, base + zmin);
      hi = std::max(hi, base + zmax + any_zero_choice);
    }
    if (lo == UINT32_MAX) lo = hi = p.ell;  // no A of that size (cannot happen: ell <= k <= n)
    min_ext[i] = lo;
    max_ext[i] = hi;
  }
  std::uint32_t W = 0;
  for (std::uint32_t i = 0; i < P; ++i) W = std::max(W, 1 + max_ext[i]);
  for (std::uint32_t i = 0; i < P; ++i) {
    Piece& p = pieces[i];
    std::uint32_t D = W - 1 - min_ext[i];
    for (std::uint32_t d = 0; d < D; ++d) {
      p.dummies.push_back(next);
      p.owned.push_back(next++);
    }
  }
  const std::uint32_t n_assign = next;

  // Boolean side: a flat AND over weft-<=1 groups.
  BooleanFormula B;
  B.n_vars = n_assign;
  std::vector<std::uint32_t> groups;

  {  // exactly one selector
    std::vector<std::uint32_t> sels;
    for (std::uint32_t i = 0; i < P; ++i) sels.push_back(B.var(selvar[i]));
    groups.push_back(B.lor(std::move(sels)));
    std::vector<std::uint32_t> excl;
    for (std::uint32_t i = 0; i < P; ++i)
      for (std::uint32_t j = i + 1; j < P; ++j)
        excl.push_back(B.lnot(B.land({B.var(selvar[i]), B.var(selvar[j])})));
    if (!excl.empty()) groups.push_back(B.land(std::move(excl)));
  }

  auto gated = [&](std::uint32_t sel, std::uint32_t item) {
    return B.lor({B.lnot(B.var(sel)), item});
  };

  for (std::uint32_t i = 0; i < P; ++i) {
    Piece& p = pieces[i];
    const std::uint32_t sel = selvar[i];

    // |A| = ell over the shared y block
    groups.push_back(gated(sel, at_least(B, yvar, p.ell)));
    groups.push_back(gated(sel, B.lnot(at_least(B, yvar, p.ell + 1))));

    // B1: x_B <-> (B subseteq A)
    {
      std::vector<std::uint32_t> iffs;
      for (const auto& s : p.xsubsets)
        iffs.push_back(B.iff(B.var(p.xindex[s]), membership_conj(B, s, yvar)));
      if (!iffs.empty()) groups.push_back(gated(sel, B.land(std::move(iffs))));
    }

    // B2: per unbounded Add, exactly one switch
    for (auto wj : p.add_children) {
      std::vector<std::uint32_t> ors, excl;
      const auto& kids = c.gates[wj].args;
      for (auto cc : kids) ors.push_back(B.var(p.svar.at({wj, cc})));
      groups.push_back(gated(sel, B.lor(std::move(ors))));
      for (std::size_t a = 0; a < kids.size(); ++a)
        for (std::size_t b = a + 1; b < kids.size(); ++b)
          excl.push_back(B.lnot(
              B.land({B.var(p.svar.at({wj, kids[a]})), B.var(p.svar.at({wj, kids[b]}))})));
      if (!excl.empty()) groups.push_back(gated(sel, B.land(std::move(excl))));
    }

    // B3: z_{c,B} <-> s_{j,c} & (B subseteq A)
    {
      std::vector<std::uint32_t> iffs;
      for (auto wj : p.add_children)
        for (auto cc : c.gates[wj].args) {
          const auto& gi = table.gates.at(cc);
          const std::uint32_t masks = 1u << gi.support.size();
          for (std::uint32_t m = 0; m < masks; ++m) {
            auto it = p.zvar.find({cc, m});
            if (it == p.zvar.end()) continue;
            std::vector<std::uint32_t> conj{B.var(p.svar.at({wj, cc}))};
            for (std::uint32_t b = 0; b < gi.support.size(); ++b)
              if (m & (1u << b)) conj.push_back(B.var(yvar[gi.support[b]]));
            iffs.push_back(B.iff(B.var(it->second), B.and_tree(std::move(conj))));
          }
        }
      if (!iffs.empty()) groups.push_back(gated(sel, B.land(std::move(iffs))));
    }

    // B4: w <-> some mul-child restriction vanishes on A
    {
      std::vector<std::uint32_t> alts;
      for (auto v : p.mul_children)
        for (auto cc : c.gates[v].args) {
          const auto& gi = table.gates.at(cc);
          const std::uint32_t masks = 1u << gi.support.size();
          for (std::uint32_t m = 0; m < masks; ++m) {
            if (static_cast<std::uint32_t>(std::popcount(m)) > p.ell) continue;
            if (!is_zero(cc, m)) continue;
            alts.push_back(exact_mask_conj(B, gi, m, yvar));
          }
        }
      std::uint32_t rhs = alts.empty() ? B.constant(false) : B.lor(std::move(alts));
      groups.push_back(gated(sel, B.iff(B.var(p.wvar), rhs)));
    }

    // B5: w' <-> some chosen add-child restriction vanishes on A
    {
      std::vector<std::uint32_t> alts;
      for (auto wj : p.add_children)
        for (auto cc : c.gates[wj].args) {
          const auto& gi = table.gates.at(cc);
          const std::uint32_t masks = 1u << gi.support.size();
          for (std::uint32_t m = 0; m < masks; ++m) {
            if (static_cast<std::uint32_t>(std::popcount(m)) > p.ell) continue;
            if (!is_zero(cc, m)) continue;
            auto it = p.zvar.find({cc, m});
            if (it == p.zvar.end()) continue;
            alts.push_back(
                B.land({B.var(it->second), exact_mask_conj(B, gi, m, yvar)}));
          }
        }
      std::uint32_t rhs = alts.empty() ? B.constant(false) : B.lor(std::move(alts));
      groups.push_back(gated(sel, B.iff(B.var(p.wpvar), rhs)));
    }

    // dummy chain d_{i+1} -> d_i
    {
      std::vector<std::uint32_t> chain;
      for (std::size_t d = 0; d + 1 < p.dummies.size(); ++d)
        chain.push_back(B.implies(B.var(p.dummies[d + 1]), B.var(p.dummies[d])));
      if (!chain.empty()) groups.push_back(gated(sel, B.land(std::move(chain))));
    }

    // mutual zeroing: unselected pieces keep all owned variables at 0
    {
      std::vector<std::uint32_t> zeros;
      for (auto v : p.owned) zeros.push_back(B.lnot(B.var(v)));
      groups.push_back(B.lor({B.var(sel), B.land(std::move(zeros))}));
    }
  }
  B.root = B.and_tree(std::move(groups));

  // coefficient vector
  std::vector<Circuit> R(n_assign, constant_circuit(n, F.one()));
  for (std::uint32_t i = 0; i < P; ++i) {
    Piece& p = pieces[i];
    R[selvar[i]] = constant_circuit(n, p.outer_coeff);
    R[p.wvar] = constant_circuit(n, F.zero());
    R[p.wpvar] = constant_circuit(n, F.zero());
    for (const auto& s : p.xsubsets) {
      // product of Q_{c,B} over mul-grandchildren whose support contains B
      Circuit acc = constant_circuit(n, F.one());
      bool any = false;
      for (auto v : p.mul_children)
        for (auto cc : c.gates[v].args) {
          const auto& gi = table.gates.at(cc);
          bool contained = std::includes(gi.support.begin(), gi.support.end(), s.begin(), s.end());
          if (!contained) continue;
          Circuit q = q_coeff(cc, set_to_mask(gi, s));
          if (!any) {
            acc = std::move(q);
            any = true;
          } else {
            Circuit merged;
            merged.n_vars = n;
            std::vector<std::uint32_t> id(n);
            for (std::uint32_t v2 = 0; v2 < n; ++v2) id[v2] = merged.input(v2);
            std::uint32_t a = splice(merged, acc, id);
            std::uint32_t b = splice(merged, q, id);
            merged.output = merged.mul({a, b});
            acc = std::move(merged);
          }
        }
      R[p.xindex.at(s)] = std::move(acc);
    }
    for (const auto& [key, var] : p.zvar) R[var] = q_coeff(key.first, key.second);
  }

  if (report) {
    report->pieces = P;
    report->weight = W;
    report->n_assign = n_assign;
    report->dummy_vars = 0;
    for (const auto& p : pieces) report->dummy_vars += static_cast<std::uint32_t>(p.dummies.size());
  }
  return BAFormula{std::move(B), std::move(R), n_assign, n, W};
}

namespace {

std::uint32_t shift_formula(BooleanFormula& dst, const BooleanFormula& src, std::uint32_t offset) {
  std::vector<std::uint32_t> remap(src.nodes.size());
  for (std::uint32_t i = 0; i < src.nodes.size(); ++i) {
    BoolNode node = src.nodes[i];
    if (node.op == BoolOp::Var) node.var += offset;
    for (auto& kid : node.kids) kid = remap[kid];
    remap[i] = dst.mk(std::move(node));
  }
  return remap[src.root];
}

}  // namespace

BAFormula ba_add(const BAFormula& f, const BAFormula& g, const Field& F) {
  if (f.n_x != g.n_x) throw Error(Errc::LayoutMismatch, "ba_add: incompatible X layouts");
  const std::uint32_t n_x = f.n_x;
  const std::uint32_t W = 1 + std::max(f.weight, g.weight);
  const std::uint32_t df = W - 1 - f.weight, dg = W - 1 - g.weight;
  // layout: s_f s_g | f block | g block | f dummies | g dummies
  const std::uint32_t f0 = 2, g0 = 2 + f.n_assign;
  const std::uint32_t fd0 = g0 + g.n_assign, gd0 = fd0 + df;
  const std::uint32_t n_assign = gd0 + dg;

  BooleanFormula B;
  B.n_vars = n_assign;
  std::vector<std::uint32_t> groups;
  groups.push_back(B.lor({B.var(0), B.var(1)}));
  groups.push_back(B.lnot(B.land({B.var(0), B.var(1)})));
  groups.push_back(B.lor({B.lnot(B.var(0)), shift_formula(B, f.B, f0)}));
  groups.push_back(B.lor({B.lnot(B.var(1)), shift_formula(B, g.B, g0)}));
  // a block is zeroed unless its own selector is on
  auto zero_block = [&](std::uint32_t owner_sel, std::uint32_t lo, std::uint32_t cnt) {
    if (cnt == 0) return;
    std::vector<std::uint32_t> zeros;
    for (std::uint32_t i = 0; i < cnt; ++i) zeros.push_back(B.lnot(B.var(lo + i)));
    groups.push_back(B.lor({B.var(owner_sel), B.and_tree(std::move(zeros))}));
  };
  zero_block(0, f0, f.n_assign);
  zero_block(0, fd0, df);
  zero_block(1, g0, g.n_assign);
  zero_block(1, gd0, dg);
  // the selected side's pad dummies are all forced on, so the inner block
  // must carry exactly its own weight
  auto force_block = [&](std::uint32_t owner_sel, std::uint32_t lo, std::uint32_t cnt) {
    if (cnt == 0) return;
    std::vector<std::uint32_t> ons;
    for (std::uint32_t i = 0; i < cnt; ++i) ons.push_back(B.var(lo + i));
    groups.push_back(B.lor({B.lnot(B.var(owner_sel)), B.and_tree(std::move(ons))}));
  };
  force_block(0, fd0, df);
  force_block(1, gd0, dg);
  B.root = B.and_tree(std::move(groups));

  std::vector<Circuit> R(n_assign, constant_circuit(n_x, F.one()));
  for (std::uint32_t i = 0; i < f.n_assign; ++i) R[f0 + i] = f.coeffs[i];
  for (std::uint32_t i = 0; i < g.n_assign; ++i) R[g0 + i] = g.coeffs[i];
  return BAFormula{std::move(B), std::move(R), n_assign, n_x, W};
}

Fp weighted_spc_sum(const SparsePoly& g, std::uint32_t k, const Field& F) {
  const std::uint32_t m = g.n_vars();
  if (k > m) throw Error(Errc::ParameterOutOfRange, "weighted_spc_sum needs k <= m");
  Fp lhs = F.zero();
  for (std::uint32_t ell = 0; ell <= k; ++ell)
    lhs = F.add(lhs, F.mul(F.binomial(m - ell, k - ell), spc(g, ell, F).eval_all_ones(F)));
  Fp rhs = F.zero();
  std::vector<Fp> e(m);
  for (const auto& pos : k_subsets(m, k)) {
    std::fill(e.begin(), e.end(), F.zero());
    for (auto i : pos) e[i] = F.one();
    rhs = F.add(rhs, g.eval(e, F));
  }
  if (lhs != rhs)
    throw Error(Errc::IdentityCheckFailed, "binomial-weighted support sum != direct sum");
  return lhs;
}

std::string write_ba(const BAFormula& ba, const Field& F) {
  std::ostringstream os;
  os << "BA vars=" << ba.n_assign << " nx=" << ba.n_x << "\n";
  os << write_bool_formula(ba.B) << "\n";
  for (std::uint32_t i = 0; i < ba.n_assign; ++i) {
    os << "COEFF " << i << "\n";
    os << write_circuit(ba.coeffs[i], F);
  }
  os << "WEIGHT " << ba.weight << "\n";
  return os.str();
}

BAFormula parse_ba(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  std::istringstream hs(header);
  std::string tok, vs, xs;
  hs >> tok >> vs >> xs;
  if (tok != "BA" || vs.rfind("vars=", 0) != 0 || xs.rfind("nx=", 0) != 0)
    throw Error(Errc::ParseError, "bad BA header");
  BAFormula ba;
  ba.n_assign = static_cast<std::uint32_t>(std::stoul(vs.substr(5)));
  ba.n_x = static_cast<std::uint32_t>(std::stoul(xs.substr(3)));
  std::string formula_line;
  std::getline(is, formula_line);
  ba.B = parse_bool_formula(formula_line, ba.n_assign);
  std::string line;
  std::string block;
  std::int64_t current = -1;
  auto flush = [&]() {
    if (current < 0) return;
    ba.coeffs.push_back(parse_circuit(block).circuit);
    block.clear();
  };
  while (std::getline(is, line)) {
    if (line.rfind("COEFF ", 0) == 0) {
      flush();
      current = std::stol(line.substr(6));
      continue;
    }
    if (line.rfind("WEIGHT ", 0) == 0) {
      flush();
      ba.weight = static_cast<std::uint32_t>(std::stoul(line.substr(7)));
      if (ba.coeffs.size() != ba.n_assign)
        throw Error(Errc::ParseError, "coefficient count mismatch");
      return ba;
    }
    block += line;
    block += "\n";
  }
  throw Error(Errc::ParseError, "missing WEIGHT trailer");
}

}  // namespace weft

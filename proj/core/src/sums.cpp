#include "weft/sums.hpp"

#include <algorithm>
#include <sstream>

#include "weft/error.hpp"

namespace weft {

namespace {

// Enumerate ones(q, k) lexicographically as positions of the ones.
void for_each_ones(std::uint32_t q, std::uint32_t k, std::uint64_t cap,
                   const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
  if (k > q) return;
  if (binomial_u64(q, k) > cap)
    throw Error(Errc::EnumerationCapExceeded, "ones(q,k) beyond enumeration cap");
  std::vector<std::uint8_t> e(q, 0);
  for (const auto& pos : k_subsets(q, k)) {
    std::fill(e.begin(), e.end(), 0);
    for (auto i : pos) e[i] = 1;
    fn(e);
  }
}

}  // namespace

Fp bounded_sum_eval(const BoundedSumSpec& spec, std::span<const Fp> x, const Field& F,
                    std::uint64_t enum_cap) {
  if (x.size() != spec.n_x) throw Error(Errc::LayoutMismatch, "x block size mismatch");
  if (spec.body.n_vars != spec.n_x + spec.q)
    throw Error(Errc::LayoutMismatch, "body arity != n_x + q");
  Fp total = F.zero();
  std::vector<Fp> point(spec.body.n_vars);
  std::copy(x.begin(), x.end(), point.begin());
  for_each_ones(spec.q, spec.k, enum_cap, [&](const std::vector<std::uint8_t>& e) {
    for (std::uint32_t i = 0; i < spec.q; ++i) point[spec.n_x + i] = e[i] ? F.one() : F.zero();
    total = F.add(total, evaluate(spec.body, point, F));
  });
  return total;
}

SparsePoly bounded_sum_expand(const BoundedSumSpec& spec, const Field& F, std::uint64_t term_cap,
                              std::uint64_t enum_cap) {
  // substitute each summation vector first, then expand; the substituted
  // bodies collapse to small polynomials even when the symbolic body would not
  SparsePoly total(spec.n_x);
  for_each_ones(spec.q, spec.k, enum_cap, [&](const std::vector<std::uint8_t>& e) {
    Circuit sub = spec.body;
    for (auto& gate : sub.gates) {
      if (gate.kind != GateKind::Input || gate.var < spec.n_x) continue;
      gate.kind = GateKind::Const;
      gate.cval = e[gate.var - spec.n_x] ? F.one() : F.zero();
      gate.var = 0;
    }
    sub.n_vars = spec.n_x;
    total = total.plus(expand(sub, F, term_cap), F);
  });
  return total;
}

Fp composed_sum_eval(const BoundedSumSpec& spec, const BooleanFormula& gadget,
                     std::span<const Fp> x, const Field& F, std::uint64_t visit_cap) {
  if (gadget.n_vars != spec.q) throw Error(Errc::LayoutMismatch, "gadget arity != q");
  Fp total = F.zero();
  std::vector<Fp> point(spec.body.n_vars);
  std::copy(x.begin(), x.end(), point.begin());
  enumerate_weighted_sat(gadget, spec.k, visit_cap, [&](const std::vector<std::uint8_t>& e) {
    for (std::uint32_t i = 0; i < spec.q; ++i) point[spec.n_x + i] = e[i] ? F.one() : F.zero();
    total = F.add(total, evaluate(spec.body, point, F));
  });
  return total;
}

Circuit exact_ones_indicator(std::uint32_t p, std::uint32_t q, std::uint32_t k, const Field& F) {
  if (F.modulus() <= k)
    throw Error(Errc::CharacteristicTooSmall, "k! not invertible in this field");
  Circuit c;
  c.n_vars = p + q;
  auto block_sum = [&](std::uint32_t lo, std::uint32_t cnt) {
    std::vector<std::uint32_t> ins;
    for (std::uint32_t i = 0; i < cnt; ++i) ins.push_back(c.input(lo + i));
    if (ins.empty()) return c.constant(F.zero());
    return ins.size() == 1 ? ins[0] : c.add(std::move(ins));
  };
  std::uint32_t s1 = block_sum(0, p), s2 = block_sum(p, q);
  std::vector<std::uint32_t> factors;
  // alpha = (k!)^{-2}
  Fp kf = F.factorial(k);
  factors.push_back(c.constant(F.inv(F.mul(kf, kf))));
  for (std::uint32_t blk = 0; blk < 2; ++blk) {
    std::uint32_t s = blk == 0 ? s1 : s2;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint32_t negs = c.mul({c.constant(F.neg(F.one())), s});
      factors.push_back(c.add({c.constant(F.from_uint(i)), negs}));
    }
  }
  c.output = c.mul(std::move(factors));
  return c;
}

namespace {

// Variable blocks for the bipartite gadgets: X_1..X_m, Y_1..Y_m, Z_{i,j}.
struct GadgetLayout {
  std::uint32_t m;
  std::uint32_t x(std::uint32_t i) const { return i; }
  std::uint32_t y(std::uint32_t j) const { return m + j; }
  std::uint32_t z(std::uint32_t i, std::uint32_t j) const { return 2 * m + i * m + j; }
  std::uint32_t total() const { return m * m + 2 * m; }
};

// Z_{ij} <-> X_i & Y_j for all pairs (one unbounded AND), plus the covering
// ORs, combined by a binary tree so the weft stays 1.
std::uint32_t build_bipartite_core(BooleanFormula& f, const GadgetLayout& L) {
  std::vector<std::uint32_t> iffs;
  for (std::uint32_t i = 0; i < L.m; ++i)
    for (std::uint32_t j = 0; j < L.m; ++j)
      iffs.push_back(f.iff(f.var(L.z(i, j)), f.land({f.var(L.x(i)), f.var(L.y(j))})));
  std::vector<std::uint32_t> xs, ys;
  for (std::uint32_t i = 0; i < L.m; ++i) {
    xs.push_back(f.var(L.x(i)));
    ys.push_back(f.var(L.y(i)));
  }
  return f.and_tree({f.land(std::move(iffs)), f.lor(std::move(xs)), f.lor(std::move(ys))});
}

}  // namespace

std::uint32_t next_prime_at_least(std::uint32_t n) {
  std::uint32_t p = std::max<std::uint32_t>(n, 2);
  while (!is_prime_u64(p)) ++p;
  return p;
}

BooleanFormula gadget_bipartite(std::uint32_t n, std::uint32_t k) {
  if (n < k || k < 1) throw Error(Errc::ParameterOutOfRange, "need n >= k >= 1");
  if (!is_prime_u64(k + 1)) throw Error(Errc::KPlusOneNotPrime, "k + 1 must be prime");
  GadgetLayout L{n};
  BooleanFormula f;
  f.n_vars = L.total();
  f.root = build_bipartite_core(f, L);
  return f;
}

GeneralGadget gadget_general(std::uint32_t n1, std::uint32_t n2, std::uint32_t k,
                             std::uint32_t s_of_k) {
  if (k < 1 || s_of_k < k || s_of_k > n2 || k > n1)
    throw Error(Errc::ParameterOutOfRange, "need 1 <= k <= n1 and k <= s_of_k <= n2");
  // ell + 1 must be prime for the weight split to be forced; the smallest
  // such ell >= s_of_k stays below 2 s_of_k + 1.
  std::uint32_t ell = next_prime_at_least(s_of_k + 1) - 1;
  std::uint32_t n = std::max(n1, n2);
  std::uint32_t m = n + ell - k;
  GadgetLayout L{m};
  BooleanFormula f;
  f.n_vars = L.total();
  std::vector<std::uint32_t> parts{build_bipartite_core(f, L)};
  // forced / forbidden padding: exactly ell - k forced X pads, ell - s(k)
  // forced Y pads, everything beyond them off.
  std::vector<std::uint32_t> forced, forbidden;
  for (std::uint32_t i = n1; i < n1 + (ell - k); ++i) forced.push_back(f.var(L.x(i)));
  for (std::uint32_t i = n1 + (ell - k); i < m; ++i) forbidden.push_back(f.lnot(f.var(L.x(i))));
  for (std::uint32_t i = n2; i < n2 + (ell - s_of_k); ++i) forced.push_back(f.var(L.y(i)));
  for (std::uint32_t i = n2 + (ell - s_of_k); i < m; ++i) forbidden.push_back(f.lnot(f.var(L.y(i))));
  if (!forced.empty()) parts.push_back(f.land(std::move(forced)));
  if (!forbidden.empty()) parts.push_back(f.land(std::move(forbidden)));
  f.root = f.and_tree(std::move(parts));
  return GeneralGadget{ell, m, std::move(f)};
}

BoundedSumSpec compose_double_sum(const Circuit& f, std::uint32_t n_x, std::uint32_t p,
                                  std::uint32_t q, std::uint32_t k, std::uint32_t s_of_k,
                                  const Field& F) {
  if (f.n_vars != n_x + p + q) throw Error(Errc::LayoutMismatch, "body arity != n_x + p + q");
  GeneralGadget gg = gadget_general(p, q, k, s_of_k);
  GadgetLayout L{gg.m};
  Circuit body;
  body.n_vars = n_x + gg.formula.n_vars;
  // gadget over the summation block
  Circuit garith = arithmetize(gg.formula, F);
  std::vector<std::uint32_t> gmap(gg.formula.n_vars);
  for (std::uint32_t i = 0; i < gg.formula.n_vars; ++i) gmap[i] = body.input(n_x + i);
  std::uint32_t gout = splice(body, garith, gmap);
  // f with d_i read from the gadget X block and e_j from the Y block
  std::vector<std::uint32_t> fmap(f.n_vars);
  for (std::uint32_t i = 0; i < n_x; ++i) fmap[i] = body.input(i);
  for (std::uint32_t i = 0; i < p; ++i) fmap[n_x + i] = body.input(n_x + L.x(i));
  for (std::uint32_t j = 0; j < q; ++j) fmap[n_x + p + j] = body.input(n_x + L.y(j));
  std::uint32_t fout = splice(body, f, fmap);
  body.output = body.mul({gout, fout});
  return BoundedSumSpec{std::move(body), n_x, gg.formula.n_vars, gg.ell * gg.ell + 2 * gg.ell};
}

Fp double_sum_eval(const Circuit& f, std::uint32_t n_x, std::uint32_t p, std::uint32_t q,
                   std::uint32_t k, std::uint32_t s_of_k, std::span<const Fp> x, const Field& F,
                   std::uint64_t enum_cap) {
  if (f.n_vars != n_x + p + q) throw Error(Errc::LayoutMismatch, "body arity != n_x + p + q");
  Fp total = F.zero();
  std::vector<Fp> point(f.n_vars);
  std::copy(x.begin(), x.end(), point.begin());
  for_each_ones(p, k, enum_cap, [&](const std::vector<std::uint8_t>& d) {
    for (std::uint32_t i = 0; i < p; ++i) point[n_x + i] = d[i] ? F.one() : F.zero();
    for_each_ones(q, s_of_k, enum_cap, [&](const std::vector<std::uint8_t>& e) {
      for (std::uint32_t j = 0; j < q; ++j) point[n_x + p + j] = e[j] ? F.one() : F.zero();
      total = F.add(total, evaluate(f, point, F));
    });
  });
  return total;
}

std::string write_bounded_sum(const BoundedSumSpec& spec, const Field& F) {
  std::ostringstream os;
  os << write_circuit(spec.body, F);
  os << "SUM q=" << spec.q << " k=" << spec.k << "\n";
  return os.str();
}

BoundedSumSpec parse_bounded_sum(const std::string& text) {
  auto trailer = text.rfind("SUM ");
  if (trailer == std::string::npos) throw Error(Errc::ParseError, "missing SUM trailer");
  ParsedCircuit pc = parse_circuit(text.substr(0, trailer));
  std::istringstream ls(text.substr(trailer));
  std::string tok, qs, ks;
  ls >> tok >> qs >> ks;
  if (tok != "SUM" || qs.rfind("q=", 0) != 0 || ks.rfind("k=", 0) != 0)
    throw Error(Errc::ParseError, "bad SUM trailer");
  BoundedSumSpec spec;
  spec.body = std::move(pc.circuit);
  spec.q = static_cast<std::uint32_t>(std::stoul(qs.substr(2)));
  spec.k = static_cast<std::uint32_t>(std::stoul(ks.substr(2)));
  if (spec.q > spec.body.n_vars) throw Error(Errc::ParseError, "q exceeds body arity");
  spec.n_x = spec.body.n_vars - spec.q;
  return spec;
}

}  // namespace weft

#include "weft/poly.hpp"

#include <algorithm>
#include <sstream>

#include "weft/error.hpp"

namespace weft {

std::uint32_t monomial_degree(const Exponents& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

std::set<std::uint32_t> monomial_support(const Exponents& e) {
  std::set<std::uint32_t> s;
  for (std::uint32_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) s.insert(i);
  return s;
}

SparsePoly SparsePoly::constant(std::uint32_t n_vars, Fp c) {
  SparsePoly p(n_vars);
  if (c.v != 0) p.terms_[Exponents(n_vars, 0)] = c;
  return p;
}

SparsePoly SparsePoly::variable(std::uint32_t n_vars, std::uint32_t i) {
  SparsePoly p(n_vars);
  Exponents e(n_vars, 0);
  e.at(i) = 1;
  p.terms_[e] = Fp{1};
  return p;
}

std::uint32_t SparsePoly::degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, monomial_degree(e));
  return d;
}

void SparsePoly::add_term(const Exponents& e, Fp coeff, const Field& F) {
  if (coeff.v == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, coeff);
    return;
  }
  it->second = F.add(it->second, coeff);
  if (it->second.v == 0) terms_.erase(it);
}

SparsePoly SparsePoly::plus(const SparsePoly& o, const Field& F) const {
  if (n_vars_ != o.n_vars_) throw Error(Errc::LayoutMismatch, "poly arity mismatch in plus");
  SparsePoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c, F);
  return r;
}

SparsePoly SparsePoly::minus(const SparsePoly& o, const Field& F) const {
  if (n_vars_ != o.n_vars_) throw Error(Errc::LayoutMismatch, "poly arity mismatch in minus");
  SparsePoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, F.neg(c), F);
  return r;
}

SparsePoly SparsePoly::times(const SparsePoly& o, const Field& F, std::uint64_t term_cap) const {
  if (n_vars_ != o.n_vars_) throw Error(Errc::LayoutMismatch, "poly arity mismatch in times");
  SparsePoly r(n_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(n_vars_);
      for (std::uint32_t i = 0; i < n_vars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, F.mul(ca, cb), F);
      if (r.terms_.size() > term_cap)
        throw Error(Errc::TermCapExceeded, "product exceeds term cap");
    }
  }
  return r;
}

SparsePoly SparsePoly::scaled(Fp c, const Field& F) const {
  SparsePoly r(n_vars_);
  if (c.v == 0) return r;
  for (const auto& [e, coeff] : terms_) r.terms_[e] = F.mul(coeff, c);
  return r;
}

Fp SparsePoly::eval(std::span<const Fp> point, const Field& F) const {
  if (point.size() != n_vars_) throw Error(Errc::LayoutMismatch, "point arity mismatch");
  Fp total = F.zero();
  for (const auto& [e, c] : terms_) {
    Fp t = c;
    for (std::uint32_t i = 0; i < n_vars_; ++i)
      if (e[i] > 0) t = F.mul(t, F.pow(point[i], e[i]));
    total = F.add(total, t);
  }
  return total;
}

Fp SparsePoly::eval_all_ones(const Field& F) const {
  Fp total = F.zero();
  for (const auto& [e, c] : terms_) total = F.add(total, c);
  return total;
}

SparsePoly SparsePoly::eval_suffix(std::uint32_t n_keep, std::span<const Fp> suffix,
                                   const Field& F) const {
  if (n_keep + suffix.size() != n_vars_)
    throw Error(Errc::LayoutMismatch, "eval_suffix arity mismatch");
  SparsePoly r(n_keep);
  for (const auto& [e, c] : terms_) {
    Fp coeff = c;
    for (std::uint32_t i = n_keep; i < n_vars_; ++i)
      if (e[i] > 0) coeff = F.mul(coeff, F.pow(suffix[i - n_keep], e[i]));
    if (coeff.v == 0) continue;
    Exponents kept(e.begin(), e.begin() + n_keep);
    r.add_term(kept, coeff, F);
  }
  return r;
}

SparsePoly expand(const Circuit& c, const Field& F, std::uint64_t term_cap) {
  if (c.division_bearing) throw Error(Errc::InvalidCircuit, "expand requires division-free");
  std::vector<SparsePoly> val(c.gates.size(), SparsePoly(c.n_vars));
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input: val[i] = SparsePoly::variable(c.n_vars, g.var); break;
      case GateKind::Const: val[i] = SparsePoly::constant(c.n_vars, g.cval); break;
      case GateKind::Add: {
        SparsePoly s(c.n_vars);
        for (std::uint32_t a : g.args) s = s.plus(val[a], F);
        if (s.term_count() > term_cap) throw Error(Errc::TermCapExceeded, "expand add");
        val[i] = std::move(s);
        break;
      }
      case GateKind::Mul: {
        SparsePoly s = SparsePoly::constant(c.n_vars, F.one());
        for (std::uint32_t a : g.args) s = s.times(val[a], F, term_cap);
        val[i] = std::move(s);
        break;
      }
      case GateKind::Div: break;  // unreachable
    }
  }
  return val[c.output];
}

Circuit poly_to_circuit(const SparsePoly& p, const Field& F) {
  Circuit c;
  c.n_vars = p.n_vars();
  std::vector<std::uint32_t> terms;
  for (const auto& [e, coeff] : p.terms()) {
    std::vector<std::uint32_t> factors{c.constant(coeff)};
    for (std::uint32_t v = 0; v < e.size(); ++v)
      for (std::uint32_t i = 0; i < e[v]; ++i) factors.push_back(c.input(v));
    terms.push_back(c.mul_chain(factors, F));
  }
  c.output = c.add_chain(terms, F);
  return c;
}

SparsePoly hp(const SparsePoly& f, std::uint32_t k, const Field& F) {
  SparsePoly r(f.n_vars());
  for (const auto& [e, c] : f.terms())
    if (monomial_degree(e) == k) r.add_term(e, c, F);
  return r;
}

SparsePoly spc(const SparsePoly& f, std::uint32_t k, const Field& F) {
  SparsePoly r(f.n_vars());
  for (const auto& [e, c] : f.terms()) {
    std::uint32_t support = 0;
    for (auto x : e)
      if (x > 0) ++support;
    if (support == k) r.add_term(e, c, F);
  }
  return r;
}

SparsePoly restrict_to(const SparsePoly& f, const std::set<std::uint32_t>& A, const Field& F) {
  SparsePoly r(f.n_vars());
  for (const auto& [e, c] : f.terms()) {
    bool keep = true;
    for (std::uint32_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0 && !A.count(i)) {
        keep = false;
        break;
      }
    }
    if (keep) r.add_term(e, c, F);
  }
  return r;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::vector<std::uint32_t>> k_subsets(std::uint32_t n, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  if (k > n) return out;
  std::vector<std::uint32_t> cur(k);
  for (std::uint32_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    // advance
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

SparsePoly spc_by_inclusion_exclusion(const SparsePoly& f, std::uint32_t k, const Field& F,
                                      std::uint64_t subset_cap) {
  const std::uint32_t n = f.n_vars();
  if (k > n) return SparsePoly(n);
  std::uint64_t total = 0;
  for (std::uint32_t l = 0; l <= k; ++l) {
    std::uint64_t c = binomial_u64(n, l);
    if (c > subset_cap - total) throw Error(Errc::SubsetBlowup, "too many subsets");
    total += c;
  }
  SparsePoly acc(n);
  for (std::uint32_t l = 0; l <= k; ++l) {
    Fp coeff = F.binomial(n - l, k - l);
    if ((k - l) % 2 == 1) coeff = F.neg(coeff);
    SparsePoly level(n);
    for (const auto& subset : k_subsets(n, l)) {
      std::set<std::uint32_t> A(subset.begin(), subset.end());
      level = level.plus(restrict_to(f, A, F), F);
    }
    acc = acc.plus(level.scaled(coeff, F), F);
  }
  return acc;
}

SparsePoly spc_of_restriction_incl_excl(const SparsePoly& f, const std::set<std::uint32_t>& A,
                                        const Field& F) {
  std::vector<std::uint32_t> avec(A.begin(), A.end());
  const std::uint32_t k = static_cast<std::uint32_t>(avec.size());
  SparsePoly acc(f.n_vars());
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::set<std::uint32_t> B;
    for (std::uint32_t i = 0; i < k; ++i)
      if (mask & (1u << i)) B.insert(avec[i]);
    SparsePoly part = restrict_to(f, B, F);
    if ((k - B.size()) % 2 == 1) part = part.scaled(F.neg(F.one()), F);
    acc = acc.plus(part, F);
  }
  return acc;
}

std::vector<Fp> interpolate_univariate(std::span<const std::pair<Fp, Fp>> points, const Field& F) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  if (n > F.modulus())
    throw Error(Errc::InsufficientFieldPoints, "more nodes than field elements");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i].first == points[j].first)
        throw Error(Errc::DuplicateNodes, "repeated interpolation node");
  // Newton form, then convert to monomial coefficients.
  std::vector<Fp> coef(n), divided(n);
  for (std::size_t i = 0; i < n; ++i) divided[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      Fp num = F.sub(divided[i], divided[i - 1]);
      Fp den = F.sub(points[i].first, points[i - level].first);
      divided[i] = F.div(num, den);
      if (i == level) break;
    }
  }
  // Horner-style accumulation of Newton basis into monomial basis.
  std::vector<Fp> acc(n, F.zero());
  for (std::size_t i = n; i-- > 0;) {
    // acc = acc * (x - x_i) + divided[i]
    std::vector<Fp> next(n, F.zero());
    for (std::size_t d = 0; d + 1 < n; ++d) {
      if (acc[d].v == 0) continue;
      next[d + 1] = F.add(next[d + 1], acc[d]);
      next[d] = F.sub(next[d], F.mul(acc[d], points[i].first));
    }
    next[0] = F.add(next[0], divided[i]);
    acc = std::move(next);
  }
  return acc;
}

std::vector<Fp> lagrange_coeff_weights(std::span<const Fp> nodes, std::uint32_t k, const Field& F) {
  const std::size_t n = nodes.size();
  if (k >= n) throw Error(Errc::ParameterOutOfRange, "coefficient index beyond node count");
  // full(x) = prod (x - nodes[j]) as coefficient vector of degree n.
  std::vector<Fp> full(n + 1, F.zero());
  full[0] = F.one();
  std::size_t deg = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t d = deg + 2; d-- > 0;) {
      Fp up = d > 0 ? full[d - 1] : F.zero();
      full[d] = F.sub(up, F.mul(full[d], nodes[j]));
    }
    ++deg;
  }
  std::vector<Fp> beta(n);
  for (std::size_t i = 0; i < n; ++i) {
    // li = full / (x - nodes[i]) via synthetic division.
    std::vector<Fp> li(n, F.zero());
    Fp carry = F.zero();
    for (std::size_t d = n; d-- > 0;) {
      // full has degree n; li degree n-1
      Fp c = F.add(full[d + 1], carry);
      li[d] = c;
      carry = F.mul(c, nodes[i]);
    }
    Fp denom = F.one();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) denom = F.mul(denom, F.sub(nodes[i], nodes[j]));
    beta[i] = F.div(li[k], denom);
  }
  return beta;
}

std::string write_poly(const SparsePoly& f, const Field& F) {
  (void)F;
  std::ostringstream os;
  for (const auto& [e, c] : f.terms()) {
    os << c.v;
    for (auto x : e) os << ' ' << x;
    os << "\n";
  }
  return os.str();
}

SparsePoly parse_poly(const std::string& text, std::uint32_t n_vars, const Field& F) {
  SparsePoly p(n_vars);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Fp c;
    ls >> c.v;
    Exponents e(n_vars);
    for (std::uint32_t i = 0; i < n_vars; ++i) ls >> e[i];
    if (ls.fail()) throw Error(Errc::ParseError, "bad term line: " + line);
    p.add_term(e, F.from_uint(c.v), F);
  }
  return p;
}

}  // namespace weft

#include "weft/boolformula.hpp"

#include <algorithm>
#include <sstream>

#include "weft/error.hpp"

namespace weft {

std::uint32_t BooleanFormula::and_tree(std::vector<std::uint32_t> kids) {
  if (kids.empty()) return constant(true);
  while (kids.size() > 1) {
    std::vector<std::uint32_t> next;
    for (std::size_t i = 0; i + 1 < kids.size(); i += 2) next.push_back(land({kids[i], kids[i + 1]}));
    if (kids.size() % 2 == 1) next.push_back(kids.back());
    kids = std::move(next);
  }
  return kids[0];
}

std::uint32_t BooleanFormula::or_tree(std::vector<std::uint32_t> kids) {
  if (kids.empty()) return constant(false);
  while (kids.size() > 1) {
    std::vector<std::uint32_t> next;
    for (std::size_t i = 0; i + 1 < kids.size(); i += 2) next.push_back(lor({kids[i], kids[i + 1]}));
    if (kids.size() % 2 == 1) next.push_back(kids.back());
    kids = std::move(next);
  }
  return kids[0];
}

std::uint32_t BooleanFormula::iff(std::uint32_t a, std::uint32_t b) {
  // Tree-shaped: duplicate the operand subtrees so the formula stays a tree.
  // Callers pass freshly built nodes; a and b must not be reused elsewhere.
  std::function<std::uint32_t(std::uint32_t)> clone = [&](std::uint32_t id) {
    BoolNode n = nodes[id];
    for (auto& k : n.kids) k = clone(k);
    return mk(std::move(n));
  };
  std::uint32_t a2 = clone(a), b2 = clone(b);
  return lor({land({a, b}), land({lnot(a2), lnot(b2)})});
}

std::uint32_t BooleanFormula::implies(std::uint32_t a, std::uint32_t b) {
  return lor({lnot(a), b});
}

bool eval_bool(const BooleanFormula& f, const std::vector<std::uint8_t>& assignment) {
  std::vector<std::uint8_t> val(f.nodes.size(), 0);
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const BoolNode& n = f.nodes[i];
    switch (n.op) {
      case BoolOp::Var: val[i] = assignment.at(n.var); break;
      case BoolOp::Const: val[i] = n.cval ? 1 : 0; break;
      case BoolOp::Not: val[i] = !val[n.kids[0]]; break;
      case BoolOp::And: {
        std::uint8_t v = 1;
        for (auto k : n.kids) v = v && val[k];
        val[i] = v;
        break;
      }
      case BoolOp::Or: {
        std::uint8_t v = 0;
        for (auto k : n.kids) v = v || val[k];
        val[i] = v;
        break;
      }
    }
  }
  return val[f.root] != 0;
}

BoolMetrics bool_metrics(const BooleanFormula& f, std::uint32_t fanin_bound) {
  BoolMetrics m;
  std::vector<std::size_t> depth(f.nodes.size(), 0), weft(f.nodes.size(), 0);
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const BoolNode& n = f.nodes[i];
    m.size += n.kids.size();
    std::size_t d = 0, w = 0;
    for (auto k : n.kids) {
      d = std::max(d, depth[k]);
      w = std::max(w, weft[k]);
    }
    bool unbounded = (n.op == BoolOp::And || n.op == BoolOp::Or) && n.kids.size() > fanin_bound;
    depth[i] = n.kids.empty() ? 0 : d + 1;
    weft[i] = w + (unbounded ? 1 : 0);
  }
  m.depth = depth[f.root];
  m.weft = weft[f.root];
  return m;
}

Circuit arithmetize(const BooleanFormula& f, const Field& F) {
  Circuit c;
  std::uint32_t max_var = 0;
  for (const auto& n : f.nodes)
    if (n.op == BoolOp::Var) max_var = std::max(max_var, n.var + 1);
  c.n_vars = std::max(max_var, f.n_vars);
  std::vector<std::uint32_t> out(f.nodes.size());
  auto one_minus = [&](std::uint32_t g) {
    std::uint32_t neg = c.mul({c.constant(F.neg(F.one())), g});
    return c.add({c.constant(F.one()), neg});
  };
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const BoolNode& n = f.nodes[i];
    switch (n.op) {
      case BoolOp::Var: out[i] = c.input(n.var); break;
      case BoolOp::Const: out[i] = c.constant(n.cval ? F.one() : F.zero()); break;
      case BoolOp::Not: out[i] = one_minus(out[n.kids[0]]); break;
      case BoolOp::And: {
        std::vector<std::uint32_t> kids;
        for (auto k : n.kids) kids.push_back(out[k]);
        out[i] = c.mul(std::move(kids));
        break;
      }
      case BoolOp::Or: {
        // 1 - prod(1 - x_i); the wide gate keeps the Or's fan-in, the rest is binary.
        std::vector<std::uint32_t> kids;
        for (auto k : n.kids) kids.push_back(one_minus(out[k]));
        out[i] = one_minus(c.mul(std::move(kids)));
        break;
      }
    }
  }
  c.output = out[f.root];
  return c;
}

std::string write_bool_formula(const BooleanFormula& f) {
  std::ostringstream os;
  std::function<void(std::uint32_t)> emit = [&](std::uint32_t id) {
    const BoolNode& n = f.nodes[id];
    switch (n.op) {
      case BoolOp::Var: os << 'y' << n.var; break;
      case BoolOp::Const: os << (n.cval ? '1' : '0'); break;
      case BoolOp::Not:
        os << "(not ";
        emit(n.kids[0]);
        os << ')';
        break;
      case BoolOp::And:
      case BoolOp::Or:
        os << '(' << (n.op == BoolOp::And ? "and" : "or");
        for (auto k : n.kids) {
          os << ' ';
          emit(k);
        }
        os << ')';
        break;
    }
  };
  emit(f.root);
  return os.str();
}

namespace {

struct PrefixParser {
  const std::string& s;
  std::size_t pos = 0;
  BooleanFormula& f;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\n' || s[pos] == '\t')) ++pos;
  }

  std::uint32_t parse() {
    skip_ws();
    if (pos >= s.size()) throw Error(Errc::ParseError, "truncated formula");
    if (s[pos] == '(') {
      ++pos;
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() && isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string op = s.substr(start, pos - start);
      std::vector<std::uint32_t> kids;
      skip_ws();
      while (pos < s.size() && s[pos] != ')') {
        kids.push_back(parse());
        skip_ws();
      }
      if (pos >= s.size()) throw Error(Errc::ParseError, "missing ')'");
      ++pos;
      if (op == "not") {
        if (kids.size() != 1) throw Error(Errc::ParseError, "not takes one operand");
        return f.lnot(kids[0]);
      }
      if (op == "and") return f.land(std::move(kids));
      if (op == "or") return f.lor(std::move(kids));
      throw Error(Errc::ParseError, "unknown operator '" + op + "'");
    }
    if (s[pos] == 'y') {
      ++pos;
      std::size_t start = pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw Error(Errc::ParseError, "bad variable");
      return f.var(static_cast<std::uint32_t>(std::stoul(s.substr(start, pos - start))));
    }
    if (s[pos] == '0' || s[pos] == '1') {
      bool b = s[pos] == '1';
      ++pos;
      return f.constant(b);
    }
    throw Error(Errc::ParseError, std::string("unexpected character '") + s[pos] + "'");
  }
};

}  // namespace

BooleanFormula parse_bool_formula(const std::string& text, std::uint32_t n_vars) {
  BooleanFormula f;
  f.n_vars = n_vars;
  PrefixParser p{text, 0, f};
  f.root = p.parse();
  return f;
}

namespace {

// Incremental three-valued evaluator. Values: 0 false, 1 true, 2 unknown.
// And nodes track (#false, #unknown) children; Or nodes (#true, #unknown).
class Eval3 {
 public:
  explicit Eval3(const BooleanFormula& f) : f_(f) {
    const std::size_t n = f.nodes.size();
    parent_.assign(n, UINT32_MAX);
    val_.assign(n, 2);
    cnt_a_.assign(n, 0);
    cnt_b_.assign(n, 0);
    occ_.clear();
    for (std::size_t i = 0; i < n; ++i) {
      for (auto k : f.nodes[i].kids) parent_[k] = static_cast<std::uint32_t>(i);
      if (f.nodes[i].op == BoolOp::Var) {
        if (f.nodes[i].var >= occ_.size()) occ_.resize(f.nodes[i].var + 1);
        occ_[f.nodes[i].var].push_back(static_cast<std::uint32_t>(i));
      }
    }
    // initialize from constants upward
    for (std::size_t i = 0; i < n; ++i) {
      const BoolNode& nd = f.nodes[i];
      switch (nd.op) {
        case BoolOp::Const: val_[i] = nd.cval ? 1 : 0; break;
        case BoolOp::Var: val_[i] = 2; break;
        case BoolOp::Not: val_[i] = flip(val_[nd.kids[0]]); break;
        case BoolOp::And: {
          for (auto k : nd.kids) {
            if (val_[k] == 0) ++cnt_a_[i];
            if (val_[k] == 2) ++cnt_b_[i];
          }
          val_[i] = cnt_a_[i] ? 0 : (cnt_b_[i] ? 2 : 1);
          break;
        }
        case BoolOp::Or: {
          for (auto k : nd.kids) {
            if (val_[k] == 1) ++cnt_a_[i];
            if (val_[k] == 2) ++cnt_b_[i];
          }
          val_[i] = cnt_a_[i] ? 1 : (cnt_b_[i] ? 2 : 0);
          break;
        }
      }
    }
  }

  std::uint8_t root() const { return val_[f_.root]; }

  void set_var(std::uint32_t v, std::uint8_t b) { change_var(v, b); }
  void unset_var(std::uint32_t v) { change_var(v, 2); }

 private:
  static std::uint8_t flip(std::uint8_t x) { return x == 2 ? 2 : (x ? 0 : 1); }

  void change_var(std::uint32_t v, std::uint8_t nv) {
    if (v >= occ_.size()) return;  // variable never occurs
    for (auto leaf : occ_[v]) {
      std::uint8_t old = val_[leaf];
      if (old == nv) continue;
      val_[leaf] = nv;
      bubble(leaf, old, nv);
    }
  }

  void bubble(std::uint32_t node, std::uint8_t oldv, std::uint8_t newv) {
    std::uint32_t p = parent_[node];
    while (p != UINT32_MAX) {
      const BoolNode& nd = f_.nodes[p];
      std::uint8_t before = val_[p];
      switch (nd.op) {
        case BoolOp::Not: val_[p] = flip(newv); break;
        case BoolOp::And:
          if (oldv == 0) --cnt_a_[p];
          if (oldv == 2) --cnt_b_[p];
          if (newv == 0) ++cnt_a_[p];
          if (newv == 2) ++cnt_b_[p];
          val_[p] = cnt_a_[p] ? 0 : (cnt_b_[p] ? 2 : 1);
          break;
        case BoolOp::Or:
          if (oldv == 1) --cnt_a_[p];
          if (oldv == 2) --cnt_b_[p];
          if (newv == 1) ++cnt_a_[p];
          if (newv == 2) ++cnt_b_[p];
          val_[p] = cnt_a_[p] ? 1 : (cnt_b_[p] ? 2 : 0);
          break;
        default: return;
      }
      if (val_[p] == before) return;
      oldv = before;
      newv = val_[p];
      node = p;
      p = parent_[p];
    }
  }

  const BooleanFormula& f_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> val_;
  std::vector<std::uint32_t> cnt_a_, cnt_b_;
  std::vector<std::vector<std::uint32_t>> occ_;
};

}  // namespace

void enumerate_weighted_sat(const BooleanFormula& f, std::uint32_t weight, std::uint64_t visit_cap,
                            const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
  // The engine requires a tree (single parent per node).
  {
    std::vector<std::uint32_t> indeg(f.nodes.size(), 0);
    for (const auto& n : f.nodes)
      for (auto k : n.kids) {
        if (++indeg[k] > 1)
          throw Error(Errc::InvalidCircuit, "weighted-sat enumeration requires a tree formula");
      }
  }
  const std::uint32_t n = f.n_vars;
  if (weight > n) return;
  Eval3 engine(f);
  std::vector<std::uint8_t> a(n, 0);
  std::uint64_t visits = 0;
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t idx,
                                                              std::uint32_t ones) {
    if (++visits > visit_cap)
      throw Error(Errc::EnumerationCapExceeded, "weighted-sat visit cap exceeded");
    if (engine.root() == 0) return;
    if (ones > weight || ones + (n - idx) < weight) return;
    if (idx == n) {
      if (ones == weight && engine.root() == 1) fn(a);
      return;
    }
    for (std::uint8_t bit : {std::uint8_t{1}, std::uint8_t{0}}) {
      engine.set_var(idx, bit);
      a[idx] = bit;
      rec(idx + 1, ones + bit);
      engine.unset_var(idx);
    }
  };
  rec(0, 0);
}

std::uint64_t count_weighted_sat(const BooleanFormula& f, std::uint32_t weight,
                                 std::uint64_t visit_cap) {
  std::uint64_t count = 0;
  enumerate_weighted_sat(f, weight, visit_cap, [&](const std::vector<std::uint8_t>&) { ++count; });
  return count;
}

std::uint64_t count_weighted_sat_exhaustive(const BooleanFormula& f, std::uint32_t weight) {
  const std::uint32_t n = f.n_vars;
  if (n > 26) throw Error(Errc::EnumerationCapExceeded, "exhaustive oracle limited to 26 vars");
  std::uint64_t count = 0;
  std::vector<std::uint8_t> a(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint32_t ones = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      a[i] = (mask >> i) & 1;
      ones += a[i];
    }
    if (ones != weight) continue;
    if (eval_bool(f, a)) ++count;
  }
  return count;
}

}  // namespace weft

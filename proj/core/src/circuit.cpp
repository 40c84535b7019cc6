#include "weft/circuit.hpp"

#include <algorithm>
#include <sstream>

#include "weft/error.hpp"

namespace weft {

std::uint32_t Circuit::add_chain(const std::vector<std::uint32_t>& xs, const Field& F) {
  if (xs.empty()) return constant(F.zero());
  std::uint32_t acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = add({acc, xs[i]});
  return acc;
}

std::uint32_t Circuit::mul_chain(const std::vector<std::uint32_t>& xs, const Field& F) {
  if (xs.empty()) return constant(F.one());
  std::uint32_t acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = mul({acc, xs[i]});
  return acc;
}

std::optional<std::string> validate_report(const Circuit& c) {
  const std::size_t n = c.gates.size();
  if (n == 0) return "empty circuit";
  if (c.output >= n) return "output id out of range";
  std::vector<std::uint32_t> outdeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        if (g.var >= c.n_vars) return "input references variable beyond n_vars";
        if (!g.args.empty()) return "input gate with children";
        break;
      case GateKind::Const:
        if (!g.args.empty()) return "const gate with children";
        break;
      case GateKind::Div:
        if (!c.division_bearing) return "div gate in circuit not flagged division_bearing";
        if (g.args.size() != 2) return "div gate must have exactly two children";
        break;
      case GateKind::Add:
      case GateKind::Mul:
        if (g.args.empty()) return "computation gate with no children";
        break;
    }
    for (std::uint32_t a : g.args) {
      if (a >= n) return "DanglingChild: child id out of range";
      if (a >= i) return "CycleDetected: child does not precede gate";
      ++outdeg[a];
    }
  }
  std::size_t sinks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (outdeg[i] == 0) {
      ++sinks;
      if (i != c.output) return "MultipleOutputs: out-degree-0 gate is not the output";
    }
    if (c.is_formula && outdeg[i] > 1) return "formula flag set but gate has out-degree > 1";
  }
  if (sinks != 1) return "MultipleOutputs: expected exactly one sink";
  return std::nullopt;
}

void validate(const Circuit& c) {
  auto r = validate_report(c);
  if (!r) return;
  const std::string& m = *r;
  if (m.rfind("CycleDetected", 0) == 0) throw Error(Errc::CycleDetected, m);
  if (m.rfind("DanglingChild", 0) == 0) throw Error(Errc::DanglingChild, m);
  if (m.rfind("MultipleOutputs", 0) == 0) throw Error(Errc::MultipleOutputs, m);
  throw Error(Errc::InvalidCircuit, m);
}

std::vector<Fp> evaluate_all(const Circuit& c, std::span<const Fp> assignment, const Field& F) {
  if (assignment.size() != c.n_vars)
    throw Error(Errc::InvalidCircuit, "assignment length != n_vars");
  std::vector<Fp> val(c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input: val[i] = assignment[g.var]; break;
      case GateKind::Const: val[i] = g.cval; break;
      case GateKind::Add: {
        Fp s = F.zero();
        for (std::uint32_t a : g.args) s = F.add(s, val[a]);
        val[i] = s;
        break;
      }
      case GateKind::Mul: {
        Fp s = F.one();
        for (std::uint32_t a : g.args) s = F.mul(s, val[a]);
        val[i] = s;
        break;
      }
      case GateKind::Div: {
        Fp den = val[g.args[1]];
        if (den.v == 0) throw Error(Errc::DenominatorZeroAtPoint, "div gate denominator is 0");
        val[i] = F.div(val[g.args[0]], den);
        break;
      }
    }
  }
  return val;
}

Fp evaluate(const Circuit& c, std::span<const Fp> assignment, const Field& F) {
  return evaluate_all(c, assignment, F)[c.output];
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  std::vector<std::size_t> depth(c.gates.size(), 0), weft(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    m.size += g.args.size();
    std::size_t d = 0, w = 0;
    for (std::uint32_t a : g.args) {
      d = std::max(d, depth[a]);
      w = std::max(w, weft[a]);
    }
    bool unbounded = (g.kind == GateKind::Add || g.kind == GateKind::Mul) &&
                     g.args.size() > c.fanin_bound;
    depth[i] = g.args.empty() ? 0 : d + 1;
    weft[i] = w + (unbounded ? 1 : 0);
  }
  m.depth = depth[c.output];
  m.weft = weft[c.output];
  return m;
}

std::uint64_t degree_bound(const Circuit& c) {
  std::vector<std::uint64_t> deg(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input: deg[i] = 1; break;
      case GateKind::Const: deg[i] = 0; break;
      case GateKind::Add:
        for (std::uint32_t a : g.args) deg[i] = std::max(deg[i], deg[a]);
        break;
      case GateKind::Mul:
        for (std::uint32_t a : g.args) deg[i] += deg[a];
        break;
      case GateKind::Div:
        throw Error(Errc::InvalidCircuit, "degree_bound on division-bearing circuit");
    }
  }
  return deg[c.output];
}

namespace {

// Expand the pending list depth-first; a pending entry is a gate that must be
// included with all constraints of its kind.
void parse_trees_rec(const Circuit& c, std::vector<std::uint32_t> pending, std::size_t idx,
                     std::map<std::uint32_t, std::uint32_t>& choice,
                     std::vector<std::uint32_t>& selected, std::vector<ParseTree>& out,
                     std::uint64_t cap) {
  if (out.size() > cap) throw Error(Errc::EnumerationCapExceeded, "too many parse trees");
  if (idx == pending.size()) {
    ParseTree t;
    t.selected = selected;
    std::sort(t.selected.begin(), t.selected.end());
    t.choice = choice;
    out.push_back(std::move(t));
    return;
  }
  std::uint32_t g = pending[idx];
  selected.push_back(g);
  const Gate& gate = c.gates[g];
  if (gate.kind == GateKind::Add) {
    for (std::uint32_t child : gate.args) {
      choice[g] = child;
      auto next = pending;
      next.push_back(child);
      parse_trees_rec(c, std::move(next), idx + 1, choice, selected, out, cap);
      choice.erase(g);
    }
  } else if (gate.kind == GateKind::Mul) {
    auto next = pending;
    for (std::uint32_t child : gate.args) next.push_back(child);
    parse_trees_rec(c, std::move(next), idx + 1, choice, selected, out, cap);
  } else {
    parse_trees_rec(c, std::move(pending), idx + 1, choice, selected, out, cap);
  }
  selected.pop_back();
}

}  // namespace

std::vector<ParseTree> parse_trees(const Circuit& c, std::uint64_t cap) {
  if (!c.is_formula) throw Error(Errc::InvalidCircuit, "parse_trees requires a formula");
  if (c.division_bearing) throw Error(Errc::InvalidCircuit, "parse_trees requires division-free");
  std::vector<ParseTree> out;
  std::map<std::uint32_t, std::uint32_t> choice;
  std::vector<std::uint32_t> selected;
  parse_trees_rec(c, {c.output}, 0, choice, selected, out, cap);
  return out;
}

Fp parse_tree_weight(const Circuit& c, const ParseTree& t, std::span<const Fp> assignment,
                     const Field& F) {
  Fp w = F.one();
  for (std::uint32_t g : t.selected) {
    const Gate& gate = c.gates[g];
    if (gate.kind == GateKind::Input) w = F.mul(w, assignment[gate.var]);
    if (gate.kind == GateKind::Const) w = F.mul(w, gate.cval);
  }
  return w;
}

std::uint32_t splice(Circuit& dst, const Circuit& src, std::span<const std::uint32_t> input_map) {
  std::vector<std::uint32_t> remap(src.gates.size());
  for (std::size_t i = 0; i < src.gates.size(); ++i) {
    const Gate& g = src.gates[i];
    if (g.kind == GateKind::Input) {
      if (g.var >= input_map.size())
        throw Error(Errc::LayoutMismatch, "splice input map too short");
      remap[i] = input_map[g.var];
      continue;
    }
    Gate copy = g;
    for (std::uint32_t& a : copy.args) a = remap[a];
    if (copy.kind == GateKind::Div) dst.division_bearing = true;
    remap[i] = dst.add_gate(std::move(copy));
  }
  return remap[src.output];
}

std::string write_circuit(const Circuit& c, const Field& F) {
  std::ostringstream os;
  os << "VARS " << c.n_vars << " FANIN " << c.fanin_bound << " MODULUS " << F.modulus() << "\n";
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    os << i;
    switch (g.kind) {
      case GateKind::Input: os << " INPUT " << g.var; break;
      case GateKind::Const: os << " CONST " << g.cval.v; break;
      case GateKind::Add:
        os << " ADD";
        for (std::uint32_t a : g.args) os << ' ' << a;
        break;
      case GateKind::Mul:
        os << " MUL";
        for (std::uint32_t a : g.args) os << ' ' << a;
        break;
      case GateKind::Div: os << " DIV " << g.args[0] << ' ' << g.args[1]; break;
    }
    os << "\n";
  }
  os << "OUTPUT " << c.output << "\n";
  return os.str();
}

ParsedCircuit parse_circuit(std::istream& in) {
  ParsedCircuit result;
  Circuit& c = result.circuit;
  std::string line;
  bool have_header = false, have_output = false;
  std::map<std::uint64_t, std::uint32_t> ids;  // file id -> gate index
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (!have_header) {
      if (tok != "VARS") throw Error(Errc::ParseError, "expected VARS header");
      std::string t2, t3;
      std::uint64_t n = 0, b = 0, p = 0;
      ls >> n >> t2 >> b >> t3 >> p;
      if (t2 != "FANIN" || t3 != "MODULUS" || ls.fail())
        throw Error(Errc::ParseError, "malformed header");
      c.n_vars = static_cast<std::uint32_t>(n);
      c.fanin_bound = static_cast<std::uint32_t>(b);
      result.modulus = p;
      have_header = true;
      continue;
    }
    if (tok == "OUTPUT") {
      std::uint64_t id = 0;
      ls >> id;
      auto it = ids.find(id);
      if (ls.fail() || it == ids.end()) throw Error(Errc::ParseError, "bad OUTPUT line");
      c.output = it->second;
      have_output = true;
      continue;
    }
    std::uint64_t id = 0;
    try {
      id = std::stoull(tok);
    } catch (...) {
      throw Error(Errc::ParseError, "expected gate id, got '" + tok + "'");
    }
    if (ids.count(id)) throw Error(Errc::ParseError, "duplicate gate id");
    std::string kind;
    ls >> kind;
    Gate g;
    if (kind == "INPUT") {
      g.kind = GateKind::Input;
      ls >> g.var;
      if (ls.fail()) throw Error(Errc::ParseError, "bad INPUT line");
    } else if (kind == "CONST") {
      g.kind = GateKind::Const;
      ls >> g.cval.v;
      if (ls.fail()) throw Error(Errc::ParseError, "bad CONST line");
    } else if (kind == "ADD" || kind == "MUL" || kind == "DIV") {
      g.kind = kind == "ADD" ? GateKind::Add : kind == "MUL" ? GateKind::Mul : GateKind::Div;
      std::uint64_t a;
      while (ls >> a) {
        auto it = ids.find(a);
        if (it == ids.end()) throw Error(Errc::ParseError, "child id used before definition");
        g.args.push_back(it->second);
      }
      if (g.kind == GateKind::Div) {
        if (g.args.size() != 2) throw Error(Errc::ParseError, "DIV needs two children");
        c.division_bearing = true;
      }
    } else {
      throw Error(Errc::ParseError, "unknown gate kind '" + kind + "'");
    }
    ids[id] = c.add_gate(std::move(g));
  }
  if (!have_header || !have_output) throw Error(Errc::ParseError, "truncated circuit file");
  return result;
}

ParsedCircuit parse_circuit(const std::string& text) {
  std::istringstream is(text);
  return parse_circuit(is);
}

}  // namespace weft

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weft/config.hpp"
#include "weft/field.hpp"

namespace weft {

enum class GateKind : std::uint8_t { Input, Const, Add, Mul, Div };

struct Gate {
  GateKind kind = GateKind::Const;
  std::uint32_t var = 0;           // Input only
  Fp cval{};                       // Const only
  std::vector<std::uint32_t> args; // Add/Mul: children; Div: {num, den}
};

/// Acyclic gate list in topological order (children precede their gate),
/// single output. size() is the edge count. Immutable once validated.
struct Circuit {
  std::vector<Gate> gates;
  std::uint32_t output = 0;
  std::uint32_t n_vars = 0;
  std::uint32_t fanin_bound = 2;
  bool is_formula = false;
  bool division_bearing = false;

  std::uint32_t add_gate(Gate g) {
    gates.push_back(std::move(g));
    return static_cast<std::uint32_t>(gates.size() - 1);
  }
  std::uint32_t input(std::uint32_t var) { return add_gate({GateKind::Input, var, {}, {}}); }
  std::uint32_t constant(Fp c) { return add_gate({GateKind::Const, 0, c, {}}); }
  std::uint32_t add(std::vector<std::uint32_t> args) {
    return add_gate({GateKind::Add, 0, {}, std::move(args)});
  }
  std::uint32_t mul(std::vector<std::uint32_t> args) {
    return add_gate({GateKind::Mul, 0, {}, std::move(args)});
  }
  std::uint32_t divide(std::uint32_t num, std::uint32_t den) {
    division_bearing = true;
    return add_gate({GateKind::Div, 0, {}, {num, den}});
  }
  /// Left-fold binary chain; empty -> Const(id_of_empty).
  std::uint32_t add_chain(const std::vector<std::uint32_t>& xs, const Field& F);
  std::uint32_t mul_chain(const std::vector<std::uint32_t>& xs, const Field& F);
};

struct Metrics {
  std::size_t size = 0;   // edges
  std::size_t depth = 0;  // longest leaf-to-output path
  std::size_t weft = 0;   // max gates with fan-in > bound on any such path
};

/// Throws CycleDetected / DanglingChild / MultipleOutputs / InvalidCircuit.
void validate(const Circuit& c);
/// Same checks, but reports the first violation instead of throwing.
std::optional<std::string> validate_report(const Circuit& c);

Fp evaluate(const Circuit& c, std::span<const Fp> assignment, const Field& F);
/// Per-gate forward values; used by passes that need intermediate results.
std::vector<Fp> evaluate_all(const Circuit& c, std::span<const Fp> assignment, const Field& F);

Metrics metrics(const Circuit& c);

/// Syntactic degree bound: Input 1, Const 0, Add max, Mul sum. Division-free only.
std::uint64_t degree_bound(const Circuit& c);

/// One chosen child per selected Add gate; all children of selected Mul gates.
struct ParseTree {
  std::vector<std::uint32_t> selected;            // gate ids, sorted
  std::map<std::uint32_t, std::uint32_t> choice;  // Add gate -> chosen child
};

std::vector<ParseTree> parse_trees(const Circuit& c, std::uint64_t cap);
Fp parse_tree_weight(const Circuit& c, const ParseTree& t, std::span<const Fp> assignment,
                     const Field& F);

/// Appends a copy of `src` into `dst`, wiring src input i to dst gate
/// `input_map[i]`; returns the id of the copied output gate.
std::uint32_t splice(Circuit& dst, const Circuit& src, std::span<const std::uint32_t> input_map);

// Line-based text format; bit-exact round trip for writer output.
std::string write_circuit(const Circuit& c, const Field& F);
struct ParsedCircuit {
  Circuit circuit;
  std::uint64_t modulus = 0;
};
ParsedCircuit parse_circuit(std::istream& in);
ParsedCircuit parse_circuit(const std::string& text);

}  // namespace weft

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "weft/circuit.hpp"
#include "weft/field.hpp"

namespace weft {

enum class BoolOp : std::uint8_t { Var, Const, Not, And, Or };

struct BoolNode {
  BoolOp op = BoolOp::Const;
  std::uint32_t var = 0;  // Var only
  bool cval = false;      // Const only
  std::vector<std::uint32_t> kids;
};

/// Boolean formula tree over indexed variables; weft/depth are computed the
/// same way as for circuits (fan-in above the bound counts as unbounded).
struct BooleanFormula {
  std::vector<BoolNode> nodes;
  std::uint32_t root = 0;
  std::uint32_t n_vars = 0;

  std::uint32_t mk(BoolNode n) {
    nodes.push_back(std::move(n));
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }
  std::uint32_t var(std::uint32_t v) { return mk({BoolOp::Var, v, false, {}}); }
  std::uint32_t constant(bool b) { return mk({BoolOp::Const, 0, b, {}}); }
  std::uint32_t lnot(std::uint32_t a) { return mk({BoolOp::Not, 0, false, {a}}); }
  std::uint32_t land(std::vector<std::uint32_t> kids) {
    return mk({BoolOp::And, 0, false, std::move(kids)});
  }
  std::uint32_t lor(std::vector<std::uint32_t> kids) {
    return mk({BoolOp::Or, 0, false, std::move(kids)});
  }
  /// Binary trees keep the combiner out of the weft count.
  std::uint32_t and_tree(std::vector<std::uint32_t> kids);
  std::uint32_t or_tree(std::vector<std::uint32_t> kids);
  std::uint32_t iff(std::uint32_t a, std::uint32_t b);      // (a&b) | (!a&!b)
  std::uint32_t implies(std::uint32_t a, std::uint32_t b);  // !a | b
};

bool eval_bool(const BooleanFormula& f, const std::vector<std::uint8_t>& assignment);

struct BoolMetrics {
  std::size_t size = 0;
  std::size_t depth = 0;
  std::size_t weft = 0;
};
BoolMetrics bool_metrics(const BooleanFormula& f, std::uint32_t fanin_bound);

/// AND -> * , NOT x -> 1-x, OR via de Morgan. On {0,1} inputs the circuit
/// agrees with the formula and its weft does not exceed the formula's.
Circuit arithmetize(const BooleanFormula& f, const Field& F);

// Prefix serialization: (and (or y0 (not y1)) 1) etc.
std::string write_bool_formula(const BooleanFormula& f);
BooleanFormula parse_bool_formula(const std::string& text, std::uint32_t n_vars);

/// Enumerates assignments with exactly `weight` ones satisfying `f`, via
/// backtracking with incremental three-valued evaluation; `visit_cap` bounds
/// search-tree nodes (EnumerationCapExceeded).
void enumerate_weighted_sat(const BooleanFormula& f, std::uint32_t weight, std::uint64_t visit_cap,
                            const std::function<void(const std::vector<std::uint8_t>&)>& fn);

std::uint64_t count_weighted_sat(const BooleanFormula& f, std::uint32_t weight,
                                 std::uint64_t visit_cap);

/// Exhaustive oracle over all 2^n assignments; independent of the engine above.
std::uint64_t count_weighted_sat_exhaustive(const BooleanFormula& f, std::uint32_t weight);

}  // namespace weft

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weft/circuit.hpp"
#include "weft/config.hpp"

namespace weft {

/// Five-layer weft-1 normal form. Layer 1 is the output Add gate; layer 3 is
/// the only layer whose gates may exceed the fan-in bound; every leaf sits at
/// depth exactly 5. layer[g] is 0 for Input/Const leaves.
struct FiveLayerFormula {
  Circuit circuit;
  std::vector<std::uint8_t> layer;
};

/// Structural invariant check; returns the first violation, if any.
std::optional<std::string> five_layer_report(const FiveLayerFormula& f);

/// Gate duplication until every gate has out-degree <= 1. Depth and weft are
/// preserved; throws SizeCapExceeded past cfg.cap_size gates.
Circuit to_formula(const Circuit& c, const RunConfig& cfg);

/// Lowers a constant-depth weft-<=1, division-free circuit to the five-layer
/// form. Bounded subformulas hanging off the unbounded layer are expanded to
/// explicit monomial sums. Throws WeftTooHigh / DepthCapExceeded.
FiveLayerFormula weft1_normal_form(const Circuit& c, const Field& F, const RunConfig& cfg);

/// Circuit computing the degree-k homogeneous part of c's polynomial, as
/// sum_i beta_i * c(alpha_i * X) with deterministic nodes 1, 2, 3, ...
Circuit homogeneous_extract(const Circuit& c, std::uint32_t k, const Field& F,
                            std::optional<std::uint64_t> degree_bound_hint = std::nullopt);

/// Division elimination for a circuit whose rational function is a polynomial
/// of degree <= d: Taylor-shift to make denominators invertible at the
/// origin, truncated power-series arithmetic per gate, then shift back.
/// Throws NoValidShiftFound / DegreeBoundViolated.
Circuit eliminate_divisions(const Circuit& c, std::uint64_t d, const Field& F,
                            const RunConfig& cfg);

}  // namespace weft

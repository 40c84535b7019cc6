#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "weft/boolformula.hpp"
#include "weft/circuit.hpp"
#include "weft/config.hpp"
#include "weft/poly.hpp"
#include "weft/transforms.hpp"

namespace weft {

/// Boolean-arithmetic formula: a weight-restricted sum over the satisfying
/// assignments of B of the switched coefficient product
///   sum_{|e| = weight, B(e)=1} prod_i (R_i(x) e_i + 1 - e_i).
struct BAFormula {
  BooleanFormula B;             // over n_assign variables
  std::vector<Circuit> coeffs;  // R_i over the X variables; may carry Div gates
  std::uint32_t n_assign = 0;
  std::uint32_t n_x = 0;
  std::uint32_t weight = 0;
};

Fp ba_eval(const BAFormula& ba, std::span<const Fp> x, const Field& F, std::uint64_t visit_cap);

/// Restriction data for the layer-4 gates of a five-layer formula: for every
/// gate c and every subset of its support T_c, the restricted polynomial and
/// its value at all-ones. Zero flags are compile-time facts for the pipeline.
struct RestrictionTable {
  struct GateInfo {
    std::vector<std::uint32_t> support;  // sorted T_c (global variable ids)
    std::vector<SparsePoly> restricted;  // indexed by submask of `support`
    std::vector<Fp> at_ones;
  };
  std::uint32_t n_x = 0;
  std::map<std::uint32_t, GateInfo> gates;  // layer-4 gate id -> info

  /// Mask of support positions for A-intersection; A holds global var ids.
  static std::uint32_t mask_of(const GateInfo& gi, const std::set<std::uint32_t>& A);
};

RestrictionTable build_restriction_table(const FiveLayerFormula& f5, const Field& F,
                                         const RunConfig& cfg);

/// Q_{c,B} = prod over C subseteq B of (p_c|_C)^{(-1)^{|B|-|C|}} with zero
/// factors omitted, as a numerator/denominator pair of exact polynomials.
struct MoebiusQ {
  SparsePoly num;
  SparsePoly den;
};
MoebiusQ moebius_q(const RestrictionTable& t, std::uint32_t gate, std::uint32_t submask,
                   const Field& F);
/// Same product for a free-standing polynomial and an explicit subset B.
MoebiusQ moebius_q_poly(const SparsePoly& p, const std::set<std::uint32_t>& B, const Field& F);
/// Value form at all-ones, with the omission rule driven by the at-ones zeros.
Fp moebius_q_at_ones(const RestrictionTable& t, std::uint32_t gate, std::uint32_t submask,
                     const Field& F);
/// Division-bearing circuit over the X variables (omission by polynomial zero).
Circuit moebius_q_circuit(const RestrictionTable& t, std::uint32_t gate, std::uint32_t submask,
                          const Field& F);

struct SpcBaReport {
  std::uint32_t pieces = 0;
  std::uint32_t dummy_vars = 0;
  std::uint32_t weight = 0;
  std::uint32_t n_assign = 0;
};

/// spc_k of the five-layer formula's polynomial as one Boolean-arithmetic
/// formula: per-gate restriction expressions, switch variables, zero
/// sentinels, dummy padding, and the signed binomial outer sum, merged by a
/// one-hot piece selector block. With at_ones the R_i are constants and the
/// value is spc_k(f)(1,...,1).
BAFormula build_spc_ba(const FiveLayerFormula& f5, std::uint32_t k, bool at_ones, const Field& F,
                       const RunConfig& cfg, SpcBaReport* report = nullptr);

/// f + g as a single BAFormula via a two-way selector with mutual zeroing and
/// dummy equalization. Weft stays at the max of the inputs.
BAFormula ba_add(const BAFormula& f, const BAFormula& g, const Field& F);

/// sum_{e in ones(m,k)} g(e) computed two ways (direct, and the binomial-
/// weighted support-component sum); throws IdentityCheckFailed on mismatch.
Fp weighted_spc_sum(const SparsePoly& g, std::uint32_t k, const Field& F);

// Serialization: prefix Boolean formula, one circuit block per R_i, WEIGHT.
std::string write_ba(const BAFormula& ba, const Field& F);
BAFormula parse_ba(const std::string& text);

}  // namespace weft

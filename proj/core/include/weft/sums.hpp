#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "weft/boolformula.hpp"
#include "weft/circuit.hpp"
#include "weft/poly.hpp"
#include "weft/sums_types.hpp"

namespace weft {

/// Sum of body(x, e) over e in ones(q, k); the oracle for all compositions.
Fp bounded_sum_eval(const BoundedSumSpec& spec, std::span<const Fp> x, const Field& F,
                    std::uint64_t enum_cap);

/// Symbolic form: expands the body once and substitutes every weight-k vector,
/// returning a polynomial over the leading X block.
SparsePoly bounded_sum_expand(const BoundedSumSpec& spec, const Field& F, std::uint64_t term_cap,
                              std::uint64_t enum_cap);

/// alpha * prod_{i<k} (i - sum of first p inputs) * prod_{i<k} (i - sum of
/// last q inputs), alpha = (k!)^{-2}; equals 1 on weight-2k vectors split k|k
/// and 0 on every other weight-2k vector. Weft 2 for p, q above the bound.
Circuit exact_ones_indicator(std::uint32_t p, std::uint32_t q, std::uint32_t k, const Field& F);

/// Complete-bipartite selection gadget (k+1 prime): n^2 + 2n variables
/// X | Y | Z with Z_{ij} <-> X_i & Y_j plus the two covering ORs.
BooleanFormula gadget_bipartite(std::uint32_t n, std::uint32_t k);

struct GeneralGadget {
  std::uint32_t ell = 0;  // padded selection size; ell + 1 is prime
  std::uint32_t m = 0;    // padded side size
  BooleanFormula formula; // m^2 + 2m variables, X | Y | Z blocks
};

/// Lemma-style padding gadget: weight-(ell^2+2ell) satisfying assignments
/// select exactly k of X_1..X_{n1} and s_of_k of Y_1..Y_{n2}, each such pair
/// extending uniquely.
GeneralGadget gadget_general(std::uint32_t n1, std::uint32_t n2, std::uint32_t k,
                             std::uint32_t s_of_k);

/// Collapses the double sum over ones(p,k) x ones(q,s_of_k) of a body f over
/// (X | d-block | e-block) into a single BoundedSumSpec via gadget_general.
BoundedSumSpec compose_double_sum(const Circuit& f, std::uint32_t n_x, std::uint32_t p,
                                  std::uint32_t q, std::uint32_t k, std::uint32_t s_of_k,
                                  const Field& F);

/// Oracle for the double sum, by direct enumeration.
Fp double_sum_eval(const Circuit& f, std::uint32_t n_x, std::uint32_t p, std::uint32_t q,
                   std::uint32_t k, std::uint32_t s_of_k, std::span<const Fp> x, const Field& F,
                   std::uint64_t enum_cap);

/// Exact evaluation of a composed spec through the gadget's satisfying
/// assignments; the arithmetized factor vanishes on every other vector, so
/// this equals bounded_sum_eval without sweeping the full ones(q, k) space.
Fp composed_sum_eval(const BoundedSumSpec& spec, const BooleanFormula& gadget,
                     std::span<const Fp> x, const Field& F, std::uint64_t visit_cap);

// BoundedSumSpec serialization: circuit file plus a SUM trailer line.
std::string write_bounded_sum(const BoundedSumSpec& spec, const Field& F);
BoundedSumSpec parse_bounded_sum(const std::string& text);

std::uint32_t next_prime_at_least(std::uint32_t n);

}  // namespace weft

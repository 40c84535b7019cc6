#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "weft/circuit.hpp"
#include "weft/field.hpp"

namespace weft {

using Exponents = std::vector<std::uint32_t>;

std::uint32_t monomial_degree(const Exponents& e);
std::set<std::uint32_t> monomial_support(const Exponents& e);

/// Exact multivariate polynomial: exponent vector -> nonzero coefficient.
/// The brute-force ground truth for every identity in the library.
class SparsePoly {
 public:
  explicit SparsePoly(std::uint32_t n_vars = 0) : n_vars_(n_vars) {}

  static SparsePoly constant(std::uint32_t n_vars, Fp c);
  static SparsePoly variable(std::uint32_t n_vars, std::uint32_t i);

  std::uint32_t n_vars() const { return n_vars_; }
  const std::map<Exponents, Fp>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t degree() const;  // max total degree; 0 for the zero polynomial

  void add_term(const Exponents& e, Fp coeff, const Field& F);

  SparsePoly plus(const SparsePoly& o, const Field& F) const;
  SparsePoly minus(const SparsePoly& o, const Field& F) const;
  SparsePoly times(const SparsePoly& o, const Field& F, std::uint64_t term_cap) const;
  SparsePoly scaled(Fp c, const Field& F) const;

  Fp eval(std::span<const Fp> point, const Field& F) const;
  Fp eval_all_ones(const Field& F) const;

  /// Substitutes point values for the trailing `suffix.size()` variables,
  /// producing a polynomial over the leading block.
  SparsePoly eval_suffix(std::uint32_t n_keep, std::span<const Fp> suffix, const Field& F) const;

  bool operator==(const SparsePoly& o) const {
    return n_vars_ == o.n_vars_ && terms_ == o.terms_;
  }

 private:
  std::uint32_t n_vars_;
  std::map<Exponents, Fp> terms_;
};

/// Exact expansion of a division-free circuit; throws TermCapExceeded.
SparsePoly expand(const Circuit& c, const Field& F, std::uint64_t term_cap);

/// Term-sum circuit for an explicit polynomial (binary chains throughout).
Circuit poly_to_circuit(const SparsePoly& p, const Field& F);

/// Homogeneous part of degree k: all degree-k monomials with coefficients.
SparsePoly hp(const SparsePoly& f, std::uint32_t k, const Field& F);

/// Support component: all monomials depending on exactly k variables.
SparsePoly spc(const SparsePoly& f, std::uint32_t k, const Field& F);

/// f with every variable outside A set to 0.
SparsePoly restrict_to(const SparsePoly& f, const std::set<std::uint32_t>& A, const Field& F);

/// spc_k(f) as the signed binomial sum of restrictions over subsets of size
/// <= k; throws SubsetBlowup past the cap.
SparsePoly spc_by_inclusion_exclusion(const SparsePoly& f, std::uint32_t k, const Field& F,
                                      std::uint64_t subset_cap);

/// spc_{|A|}(f|_A) = sum_{B subseteq A} (-1)^{|A|-|B|} f|_B.
SparsePoly spc_of_restriction_incl_excl(const SparsePoly& f, const std::set<std::uint32_t>& A,
                                        const Field& F);

/// Lagrange interpolation; x-values must be pairwise distinct (DuplicateNodes)
/// and the node count must not exceed the field size.
std::vector<Fp> interpolate_univariate(std::span<const std::pair<Fp, Fp>> points, const Field& F);

/// Coefficient-extraction weights: beta[i] such that for any poly P of degree
/// < nodes.size(), coeff_k(P) = sum_i beta[i] * P(nodes[i]).
std::vector<Fp> lagrange_coeff_weights(std::span<const Fp> nodes, std::uint32_t k, const Field& F);

// Term-list text format, lexicographically sorted by exponents.
std::string write_poly(const SparsePoly& f, const Field& F);
SparsePoly parse_poly(const std::string& text, std::uint32_t n_vars, const Field& F);

// Subset enumeration helpers shared by the oracle modules.
std::vector<std::vector<std::uint32_t>> k_subsets(std::uint32_t n, std::uint32_t k);
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);  // saturates at UINT64_MAX

}  // namespace weft

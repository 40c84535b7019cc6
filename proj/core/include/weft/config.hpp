#pragma once

#include <cstdint>

namespace weft {

inline constexpr std::uint64_t kDefaultModulus = (std::uint64_t{1} << 61) - 1;

/// Run-wide knobs. All library entry points that enumerate or expand take the
/// relevant cap from here; two runs with equal RunConfig and inputs must
/// produce byte-identical output.
struct RunConfig {
  std::uint64_t modulus = kDefaultModulus;
  std::uint64_t seed = 1;
  std::uint64_t cap_terms = 1'000'000;       // sparse-polynomial term cap
  std::uint64_t cap_enum = 5'000'000;        // enumeration visit cap
  std::uint64_t cap_subsets = 100'000;       // subset-sum cap (inclusion-exclusion)
  std::uint64_t cap_size = 1'000'000;        // gate-count cap for circuit passes
  std::uint32_t fanin_bound = 2;
  std::uint32_t depth_cap = 12;              // "constant depth" guard for passes
  std::uint32_t support_cap = 8;             // |T_c| cap in the spc pipeline
  std::uint32_t shift_candidates = 64;       // Taylor-shift sweep length
  std::uint32_t cc_vertex_cap = 10;          // cycle-cover enumeration default
};

}  // namespace weft

#pragma once

#include <cstdint>

#include "weft/circuit.hpp"

namespace weft {

/// Bounded exponential sum: the body circuit reads the X block first, then q
/// summation variables; the sum ranges over {0,1}-vectors with exactly k ones.
struct BoundedSumSpec {
  Circuit body;
  std::uint32_t n_x = 0;  // leading non-summed variables
  std::uint32_t q = 0;    // summation variables
  std::uint32_t k = 0;    // required ones
};

}  // namespace weft

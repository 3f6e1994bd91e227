#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace v2x {

using Bits = std::vector<std::uint8_t>;
// Log-likelihood ratios, log P(b=0)/P(b=1): positive means bit 0 is more likely.
using Llrs = std::vector<double>;
using cf64 = std::complex<double>;
using CVec = std::vector<cf64>;

}  // namespace v2x

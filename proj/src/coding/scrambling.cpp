#include "v2xsim/coding.hpp"

namespace v2x {

Bits gold_sequence(std::uint32_t c_init, std::size_t length) {
  constexpr std::size_t kNc = 1600;
  const std::size_t total = kNc + length;
  Bits x1(total + 31, 0), x2(total + 31, 0);
  x1[0] = 1;
  for (int i = 0; i < 31; ++i) x2[static_cast<std::size_t>(i)] = (c_init >> i) & 1u;
  for (std::size_t n = 0; n < total; ++n) {
    x1[n + 31] = x1[n + 3] ^ x1[n];
    x2[n + 31] = x2[n + 3] ^ x2[n + 2] ^ x2[n + 1] ^ x2[n];
  }
  Bits c(length);
  for (std::size_t n = 0; n < length; ++n) c[n] = x1[n + kNc] ^ x2[n + kNc];
  return c;
}

Bits scramble(std::span<const std::uint8_t> bits, std::uint32_t c_init) {
  const Bits c = gold_sequence(c_init, bits.size());
  Bits out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = (bits[i] ^ c[i]) & 1u;
  return out;
}

Llrs scramble(std::span<const double> llrs, std::uint32_t c_init) {
  const Bits c = gold_sequence(c_init, llrs.size());
  Llrs out(llrs.size());
  for (std::size_t i = 0; i < llrs.size(); ++i) out[i] = c[i] ? -llrs[i] : llrs[i];
  return out;
}

}  // namespace v2x

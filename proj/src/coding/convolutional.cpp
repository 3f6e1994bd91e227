#include <algorithm>
#include <array>
#include <bit>

#include "v2xsim/coding.hpp"
#include "v2xsim/error.hpp"

namespace v2x {

namespace {

// Generator taps as 7-bit words; bit 6 multiplies the current input bit.
constexpr std::array<unsigned, 3> kGenerators = {0133, 0171, 0165};
constexpr int kMemory = 6;
constexpr int kStates = 1 << kMemory;

// Output bits (d0,d1,d2 packed into bits 2..0) for register window w.
constexpr std::array<std::uint8_t, 128> make_output_table() {
  std::array<std::uint8_t, 128> t{};
  for (unsigned w = 0; w < 128; ++w) {
    unsigned out = 0;
    for (unsigned g : kGenerators) out = (out << 1) | (std::popcount(w & g) & 1);
    t[w] = static_cast<std::uint8_t>(out);
  }
  return t;
}
constexpr auto kOutputs = make_output_table();

}  // namespace

Bits conv_encode(std::span<const std::uint8_t> bits) {
  const std::size_t k = bits.size();
  if (k == 0) throw DomainError("conv_encode: empty input");
  // Tail-biting: register starts with the last six input bits, newest first.
  unsigned state = 0;
  for (int i = 0; i < kMemory; ++i) {
    const std::size_t idx = (k + k * kMemory - 1 - static_cast<std::size_t>(i)) % k;
    state |= static_cast<unsigned>(bits[idx] & 1u) << (kMemory - 1 - i);
  }
  Bits out(3 * k);
  for (std::size_t n = 0; n < k; ++n) {
    const unsigned w = (static_cast<unsigned>(bits[n] & 1u) << kMemory) | state;
    const unsigned o = kOutputs[w];
    out[n] = static_cast<std::uint8_t>((o >> 2) & 1u);
    out[k + n] = static_cast<std::uint8_t>((o >> 1) & 1u);
    out[2 * k + n] = static_cast<std::uint8_t>(o & 1u);
    state = w >> 1;
  }
  return out;
}

Bits viterbi_decode(std::span<const double> llrs) {
  if (llrs.empty() || llrs.size() % 3 != 0)
    throw DomainError("viterbi_decode: soft length must be a positive multiple of 3");
  const std::size_t k = llrs.size() / 3;
  const std::size_t steps = 2 * k;

  std::array<double, kStates> metric{};
  std::array<double, kStates> next{};
  std::vector<std::uint64_t> decisions(steps, 0);

  for (std::size_t t = 0; t < steps; ++t) {
    const std::size_t n = t % k;
    const double l0 = 0.5 * llrs[n], l1 = 0.5 * llrs[k + n], l2 = 0.5 * llrs[2 * k + n];
    // Correlation metric for each of the 8 output patterns.
    std::array<double, 8> bm{};
    for (unsigned o = 0; o < 8; ++o)
      bm[o] = ((o & 4) ? -l0 : l0) + ((o & 2) ? -l1 : l1) + ((o & 1) ? -l2 : l2);

    std::uint64_t dec = 0;
    for (unsigned ns = 0; ns < kStates; ++ns) {
      const unsigned b = ns >> (kMemory - 1);
      const unsigned p0 = (ns << 1) & (kStates - 1);
      const unsigned p1 = p0 | 1u;
      const double m0 = metric[p0] + bm[kOutputs[(b << kMemory) | p0]];
      const double m1 = metric[p1] + bm[kOutputs[(b << kMemory) | p1]];
      if (m1 > m0) {
        next[ns] = m1;
        dec |= std::uint64_t{1} << ns;
      } else {
        next[ns] = m0;
      }
    }
    decisions[t] = dec;
    const double top = *std::max_element(next.begin(), next.end());
    for (unsigned s = 0; s < kStates; ++s) metric[s] = next[s] - top;
  }

  unsigned state = static_cast<unsigned>(std::max_element(metric.begin(), metric.end()) - metric.begin());
  Bits out(k);
  for (std::size_t t = steps; t-- > 0;) {
    if (t >= k) out[t - k] = static_cast<std::uint8_t>(state >> (kMemory - 1));
    const unsigned x = static_cast<unsigned>((decisions[t] >> state) & 1u);
    state = ((state << 1) & (kStates - 1)) | x;
  }
  return out;
}

}  // namespace v2x

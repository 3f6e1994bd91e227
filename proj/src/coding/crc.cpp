#include "v2xsim/coding.hpp"

namespace v2x {

int crc_length(CrcKind kind) { return kind == CrcKind::Crc16 ? 16 : 24; }

std::uint32_t crc_generator(CrcKind kind) {
  // gCRC16   = D^16 + D^12 + D^5 + 1
  // gCRC24A  = D^24 + D^23 + D^18 + D^17 + D^14 + D^11 + D^10 + D^7 + D^6 +
  //            D^5 + D^4 + D^3 + D + 1
  return kind == CrcKind::Crc16 ? 0x1021u : 0x864CFBu;
}

std::uint32_t crc_remainder(std::span<const std::uint8_t> bits, CrcKind kind) {
  const int len = crc_length(kind);
  const std::uint32_t poly = crc_generator(kind);
  const std::uint32_t top = 1u << (len - 1);
  const std::uint32_t mask = (len == 32) ? ~0u : ((1u << len) - 1u);
  std::uint32_t reg = 0;
  for (std::uint8_t b : bits) {
    const bool feedback = ((reg & top) != 0) != (b != 0);
    reg = (reg << 1) & mask;
    if (feedback) reg ^= poly;
  }
  return reg;
}

Bits crc_attach(std::span<const std::uint8_t> bits, CrcKind kind) {
  const int len = crc_length(kind);
  const std::uint32_t r = crc_remainder(bits, kind);
  Bits out(bits.begin(), bits.end());
  out.reserve(bits.size() + static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((r >> i) & 1u));
  return out;
}

bool crc_check(std::span<const std::uint8_t> bits, CrcKind kind) {
  if (bits.size() <= static_cast<std::size_t>(crc_length(kind))) return false;
  // Appending the remainder makes the whole word divisible by the generator.
  const auto payload = bits.first(bits.size() - static_cast<std::size_t>(crc_length(kind)));
  const auto parity = bits.last(static_cast<std::size_t>(crc_length(kind)));
  std::uint32_t expected = crc_remainder(payload, kind);
  std::uint32_t got = 0;
  for (std::uint8_t b : parity) got = (got << 1) | (b & 1u);
  return expected == got;
}

}  // namespace v2x

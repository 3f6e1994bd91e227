#include "v2xsim/coding.hpp"
#include "v2xsim/error.hpp"

namespace v2x {

namespace {

constexpr int kMcsBits = 5;
constexpr int kRivBits = 13;
constexpr int kGroupBits = 8;

void put(Bits& out, int value, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((value >> i) & 1));
}

int get(std::span<const std::uint8_t> bits, std::size_t& pos, int width) {
  int v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | (bits[pos++] & 1);
  return v;
}

}  // namespace

Bits SciMessage::serialize() const {
  if (mcs < 0 || mcs >= (1 << kMcsBits) || riv < 0 || riv >= (1 << kRivBits) || group_id < 0 ||
      group_id >= (1 << kGroupBits))
    throw DomainError("SCI field out of range");
  Bits out;
  out.reserve(kBits);
  put(out, mcs, kMcsBits);
  put(out, riv, kRivBits);
  put(out, group_id, kGroupBits);
  out.resize(kBits, 0);
  return out;
}

SciMessage SciMessage::parse(std::span<const std::uint8_t> bits) {
  if (bits.size() != kBits) throw DomainError("SCI must be exactly 32 bits");
  std::size_t pos = 0;
  SciMessage m;
  m.mcs = get(bits, pos, kMcsBits);
  m.riv = get(bits, pos, kRivBits);
  m.group_id = get(bits, pos, kGroupBits);
  return m;
}

int encode_riv(int start_prb, int length, int n_prb) {
  if (length < 1 || start_prb < 0 || start_prb + length > n_prb)
    throw DomainError("RIV: allocation outside the carrier");
  if (length - 1 <= n_prb / 2) return n_prb * (length - 1) + start_prb;
  return n_prb * (n_prb - length + 1) + (n_prb - 1 - start_prb);
}

PrbRange decode_riv(int riv, int n_prb) {
  if (riv < 0) throw DomainError("RIV: negative value");
  int length = riv / n_prb + 1;
  int start = riv % n_prb;
  if (start + length > n_prb) {
    length = n_prb - length + 2;
    start = n_prb - 1 - start;
  }
  if (length < 1 || start < 0 || start + length > n_prb)
    throw DomainError("RIV: does not describe an allocation on this carrier");
  return {start, length};
}

}  // namespace v2x

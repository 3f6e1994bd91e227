#include <array>

#include "v2xsim/coding.hpp"
#include "v2xsim/error.hpp"

namespace v2x {

namespace {

constexpr int kColumns = 32;

constexpr std::array<int, kColumns> kTurboPermutation = {
    0, 16, 8, 24, 4, 20, 12, 28, 2, 18, 10, 26, 6, 22, 14, 30,
    1, 17, 9, 25, 5, 21, 13, 29, 3, 19, 11, 27, 7, 23, 15, 31};
constexpr std::array<int, kColumns> kConvPermutation = {
    1, 17, 9, 25, 5, 21, 13, 29, 3, 19, 11, 27, 7, 23, 15, 31,
    0, 16, 8, 24, 4, 20, 12, 28, 2, 18, 10, 26, 6, 22, 14, 30};

// Sub-block interleaver output for one stream of length d: entry i holds the
// index into the stream, or -1 for a dummy (null) position.
std::vector<int> subblock_interleave(int d, const std::array<int, kColumns>& perm) {
  const int rows = (d + kColumns - 1) / kColumns;
  const int nulls = rows * kColumns - d;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(rows * kColumns));
  for (int c = 0; c < kColumns; ++c) {
    for (int r = 0; r < rows; ++r) {
      const int pos = r * kColumns + perm[static_cast<std::size_t>(c)];
      out.push_back(pos < nulls ? -1 : pos - nulls);
    }
  }
  return out;
}

// Interleaver for the second parity stream: column permutation offset by one.
std::vector<int> subblock_interleave_turbo_parity2(int d) {
  const int rows = (d + kColumns - 1) / kColumns;
  const int kpi = rows * kColumns;
  const int nulls = kpi - d;
  std::vector<int> out(static_cast<std::size_t>(kpi));
  for (int k = 0; k < kpi; ++k) {
    const int pos = (kTurboPermutation[static_cast<std::size_t>(k / rows)] + kColumns * (k % rows) + 1) % kpi;
    out[static_cast<std::size_t>(k)] = pos < nulls ? -1 : pos - nulls;
  }
  return out;
}

// Circular buffer as coded-bit indices (or -1 for nulls), plus the start
// offset k0.
struct CircularBuffer {
  std::vector<int> entries;
  std::size_t start = 0;
};

CircularBuffer build_buffer(int source_len, CodeKind kind) {
  if (source_len <= 0 || source_len % 3 != 0)
    throw DomainError("rate matching: coded length must be a positive multiple of 3");
  const int d = source_len / 3;
  CircularBuffer buf;
  if (kind == CodeKind::Convolutional) {
    const auto v = subblock_interleave(d, kConvPermutation);
    for (int s = 0; s < 3; ++s)
      for (int idx : v) buf.entries.push_back(idx < 0 ? -1 : s * d + idx);
    buf.start = 0;
  } else {
    const auto v0 = subblock_interleave(d, kTurboPermutation);
    const auto v2 = subblock_interleave_turbo_parity2(d);
    const std::size_t kpi = v0.size();
    buf.entries.reserve(3 * kpi);
    for (int idx : v0) buf.entries.push_back(idx);
    for (std::size_t i = 0; i < kpi; ++i) {
      buf.entries.push_back(v0[i] < 0 ? -1 : d + v0[i]);
      buf.entries.push_back(v2[i] < 0 ? -1 : 2 * d + v2[i]);
    }
    const std::size_t rows = kpi / kColumns;
    buf.start = 2 * rows;  // redundancy version 0
  }
  return buf;
}

}  // namespace

std::vector<int> rate_match_pattern(int source_len, int target_len, CodeKind kind) {
  if (target_len <= 0) throw DomainError("rate matching: target length must be positive");
  const CircularBuffer buf = build_buffer(source_len, kind);
  std::vector<int> pattern;
  pattern.reserve(static_cast<std::size_t>(target_len));
  std::size_t j = buf.start;
  const std::size_t n = buf.entries.size();
  while (pattern.size() < static_cast<std::size_t>(target_len)) {
    const int idx = buf.entries[j % n];
    if (idx >= 0) pattern.push_back(idx);
    ++j;
  }
  return pattern;
}

Bits rate_match(std::span<const std::uint8_t> coded, int target_len, CodeKind kind) {
  const auto pattern = rate_match_pattern(static_cast<int>(coded.size()), target_len, kind);
  Bits out(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i)
    out[i] = coded[static_cast<std::size_t>(pattern[i])];
  return out;
}

Llrs rate_recover(std::span<const double> llrs, int source_len, CodeKind kind) {
  if (llrs.empty()) throw DomainError("rate_recover: empty input");
  const auto pattern = rate_match_pattern(source_len, static_cast<int>(llrs.size()), kind);
  Llrs out(static_cast<std::size_t>(source_len), 0.0);
  for (std::size_t i = 0; i < pattern.size(); ++i)
    out[static_cast<std::size_t>(pattern[i])] += llrs[i];
  return out;
}

}  // namespace v2x

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "v2xsim/types.hpp"

namespace v2x {

// ---------------------------------------------------------------- CRC

enum class CrcKind { Crc16, Crc24A };

int crc_length(CrcKind kind);
std::uint32_t crc_generator(CrcKind kind);  // without the leading x^L term
std::uint32_t crc_remainder(std::span<const std::uint8_t> bits, CrcKind kind);
Bits crc_attach(std::span<const std::uint8_t> bits, CrcKind kind);
bool crc_check(std::span<const std::uint8_t> bits, CrcKind kind);

// ---------------------------------------------------------------- convolutional

// Rate-1/3 tail-biting code, constraint length 7, generators 133/171/165.
// Output is the three streams back to back: d0 | d1 | d2, each K bits.
Bits conv_encode(std::span<const std::uint8_t> bits);

// Wrap-around Viterbi over two passes of the received block.
Bits viterbi_decode(std::span<const double> llrs);

// ---------------------------------------------------------------- turbo

bool turbo_block_size_supported(int k);
// Smallest supported code-block size >= k, or nullopt if k > 6144.
std::optional<int> turbo_block_size_at_least(int k);
const std::vector<int>& turbo_block_sizes();
// Quadratic permutation polynomial interleaver: pi(i) = (f1*i + f2*i^2) mod K.
std::vector<int> qpp_interleaver(int k);

// Output is d0 | d1 | d2, each K+4 bits (including trellis termination).
Bits turbo_encode(std::span<const std::uint8_t> bits);

struct TurboDecodeResult {
  Bits bits;
  int iterations = 0;
};

// Max-log-MAP. If `stop_crc` is set the decoder exits early once the hard
// decision passes that CRC.
TurboDecodeResult turbo_decode(std::span<const double> llrs, int max_iterations = 8,
                               std::optional<CrcKind> stop_crc = std::nullopt,
                               double extrinsic_scale = 0.75);

// ---------------------------------------------------------------- rate matching

enum class CodeKind { Convolutional, Turbo };

// `coded` is the output of conv_encode/turbo_encode (three equal streams).
Bits rate_match(std::span<const std::uint8_t> coded, int target_len, CodeKind kind);
// Inverse of rate_match on soft values. Repeated positions add, punctured
// positions come back as zero. `source_len` is the coded length (3 streams).
Llrs rate_recover(std::span<const double> llrs, int source_len, CodeKind kind);

// Circular-buffer read order: entry i is the coded-bit index carried by the
// i-th rate-matched bit.
std::vector<int> rate_match_pattern(int source_len, int target_len, CodeKind kind);

// ---------------------------------------------------------------- scrambling

// Length-31 Gold sequence c(n) with Nc = 1600, initialized from c_init.
Bits gold_sequence(std::uint32_t c_init, std::size_t length);
Bits scramble(std::span<const std::uint8_t> bits, std::uint32_t c_init);
Llrs scramble(std::span<const double> llrs, std::uint32_t c_init);

// ---------------------------------------------------------------- transport blocks

inline constexpr int kMaxTransportBlockBits = 6144 - 24;

struct CodeBlock {
  Bits bits;         // filler bits (zeros) + transport block + CRC-24A
  int filler = 0;    // number of leading filler bits
};

// Single code block per transport block; throws DomainError above
// kMaxTransportBlockBits.
std::vector<CodeBlock> segment_tb(std::span<const std::uint8_t> tb);
// Strips filler and CRC; returns nullopt if the CRC does not pass.
std::optional<Bits> concatenate(const std::vector<CodeBlock>& blocks);

// ---------------------------------------------------------------- SCI

// Fixed 32-bit control message: MCS (5) | RIV (13) | group destination (8) |
// zero padding (6).
struct SciMessage {
  int mcs = 0;
  int riv = 0;
  int group_id = 0;

  static constexpr int kBits = 32;
  Bits serialize() const;
  static SciMessage parse(std::span<const std::uint8_t> bits);
  friend bool operator==(const SciMessage&, const SciMessage&) = default;
};

// Resource indication value for a contiguous allocation over n_prb PRBs.
int encode_riv(int start_prb, int length, int n_prb);
struct PrbRange {
  int start = 0;
  int length = 0;
  friend bool operator==(const PrbRange&, const PrbRange&) = default;
};
PrbRange decode_riv(int riv, int n_prb);

}  // namespace v2x

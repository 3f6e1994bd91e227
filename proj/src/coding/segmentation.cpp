#include "v2xsim/coding.hpp"
#include "v2xsim/error.hpp"

namespace v2x {

std::vector<CodeBlock> segment_tb(std::span<const std::uint8_t> tb) {
  if (tb.empty()) throw DomainError("segment_tb: empty transport block");
  if (tb.size() > static_cast<std::size_t>(kMaxTransportBlockBits))
    throw DomainError("segment_tb: transport blocks above " +
                      std::to_string(kMaxTransportBlockBits) + " bits need multiple code blocks");
  const Bits with_crc = crc_attach(tb, CrcKind::Crc24A);
  const int k = *turbo_block_size_at_least(static_cast<int>(with_crc.size()));
  CodeBlock cb;
  cb.filler = k - static_cast<int>(with_crc.size());
  cb.bits.assign(static_cast<std::size_t>(cb.filler), 0);
  cb.bits.insert(cb.bits.end(), with_crc.begin(), with_crc.end());
  return {std::move(cb)};
}

std::optional<Bits> concatenate(const std::vector<CodeBlock>& blocks) {
  if (blocks.size() != 1) throw DomainError("concatenate: expected a single code block");
  const CodeBlock& cb = blocks.front();
  std::span<const std::uint8_t> payload(cb.bits);
  payload = payload.subspan(static_cast<std::size_t>(cb.filler));
  if (!crc_check(payload, CrcKind::Crc24A)) return std::nullopt;
  return Bits(payload.begin(), payload.end() - crc_length(CrcKind::Crc24A));
}

}  // namespace v2x

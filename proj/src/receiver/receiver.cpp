#include <algorithm>

#include "v2xsim/error.hpp"
#include "v2xsim/receiver.hpp"

namespace v2x {

namespace {

// Saturation for known filler bits.
constexpr double kKnownBitLlr = 1e3;

ChannelEstimate estimate_region(std::span<const ResourceGrid> grids, int prb_start, int n_prb,
                                int shift, const LinkParams& p, const ReceiverOptions& opts) {
  if (opts.genie)
    return genie_estimate(*opts.genie, prb_start, n_prb, p.geometry.symbols_per_slot);
  const CVec dmrs = dmrs_generate(n_prb, shift);
  return estimate_channel(grids, prb_start, n_prb, dmrs, p.layout.dmrs_symbols, opts.estimator);
}

Llrs soft_bits(std::span<const ResourceGrid> grids, const ChannelEstimate& est,
               const LinkParams& p, Modulation m) {
  const Equalized eq = equalize(grids, est, p.layout.data_symbols);
  const Detected det = detect(eq, est.width(), p.transform_precoding);
  return llr_demap(det.symbols, det.noise_var, m);
}

bool sci_consistent(const SciMessage& sci, const LinkParams& p) {
  if (sci.mcs > 20) return false;
  try {
    const PrbRange r = decode_riv(sci.riv, p.geometry.n_prb);
    return r.length == p.layout.pssch_n_prb;
  } catch (const DomainError&) {
    return false;
  }
}

}  // namespace

std::vector<PscchCandidate> default_candidates(const LinkParams& p) {
  std::vector<PscchCandidate> out;
  for (int s : kCyclicShifts) out.push_back({p.layout.pscch_prb_start, s});
  return out;
}

std::optional<PscchDecode> decode_pscch(std::span<const ResourceGrid> grids,
                                        std::span<const PscchCandidate> candidates,
                                        const LinkParams& p, const ReceiverOptions& opts) {
  const int n_prb = p.layout.pscch_n_prb;
  const int source_len = 3 * (SciMessage::kBits + crc_length(CrcKind::Crc16));
  for (const PscchCandidate& c : candidates) {
    if (c.prb_start < 0 || c.prb_start + n_prb > p.geometry.n_prb || !valid_cyclic_shift(c.shift))
      continue;
    const ChannelEstimate est = estimate_region(grids, c.prb_start, n_prb, c.shift, p, opts);
    const Llrs llrs = scramble(soft_bits(grids, est, p, Modulation::Qpsk), kPscchScramblingInit);
    const Bits decoded = viterbi_decode(rate_recover(llrs, source_len, CodeKind::Convolutional));
    if (!crc_check(decoded, CrcKind::Crc16)) continue;
    const SciMessage sci = SciMessage::parse(std::span(decoded).first(SciMessage::kBits));
    if (!sci_consistent(sci, p)) continue;
    return PscchDecode{sci, c};
  }
  return std::nullopt;
}

DecodeResult decode_pssch(std::span<const ResourceGrid> grids, const SciMessage& sci,
                          const LinkParams& p, const ReceiverOptions& opts) {
  DecodeResult result;
  result.sci = sci;
  result.control_crc = true;

  const PrbRange range = decode_riv(sci.riv, p.geometry.n_prb);
  const Modulation m = modulation_for_mcs(sci.mcs);
  const ChannelEstimate est =
      estimate_region(grids, range.start, range.length, pssch_dmrs_shift(sci.group_id), p, opts);
  const Llrs llrs = scramble(soft_bits(grids, est, p, m), pssch_scrambling_init(sci.group_id));

  const int with_crc = p.tbs_bits + crc_length(CrcKind::Crc24A);
  const int k = *turbo_block_size_at_least(with_crc);
  const int filler = k - with_crc;
  Llrs coded = rate_recover(llrs, 3 * (k + 4), CodeKind::Turbo);
  for (int i = 0; i < filler; ++i) coded[static_cast<std::size_t>(i)] = kKnownBitLlr;

  TurboDecodeResult dec = turbo_decode(coded, opts.turbo_iterations, CrcKind::Crc24A);
  std::vector<CodeBlock> blocks{CodeBlock{std::move(dec.bits), filler}};
  if (auto tb = concatenate(blocks)) {
    result.data_crc = true;
    result.tb = std::move(*tb);
  }
  return result;
}

DecodeResult receive(std::span<const ResourceGrid> grids, std::span<const PscchCandidate> candidates,
                     const LinkParams& p, const ReceiverOptions& opts) {
  if (candidates.empty()) throw DomainError("receive: empty PSCCH candidate list");
  const auto control = decode_pscch(grids, candidates, p, opts);
  if (!control) return {};
  return decode_pssch(grids, control->sci, p, opts);
}

}  // namespace v2x

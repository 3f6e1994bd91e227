#include "v2xsim/error.hpp"
#include "v2xsim/sidelink.hpp"

namespace v2x {

Modulation modulation_for_mcs(int mcs) {
  if (mcs >= 0 && mcs <= 10) return Modulation::Qpsk;
  if (mcs >= 11 && mcs <= 20) return Modulation::Qam16;
  throw ConfigError("MCS " + std::to_string(mcs) + " is not supported (0-20)");
}

LinkParams make_link_params(const FrameGeometry& g, int data_n_prb, int tbs_bits, int mcs,
                            bool transform_precoding) {
  LinkParams p;
  p.geometry = g;
  p.layout = default_layout(g, data_n_prb);
  p.transform_precoding = transform_precoding;
  p.tbs_bits = tbs_bits;
  p.mcs = mcs;
  modulation_for_mcs(mcs);
  if (tbs_bits < 1 || tbs_bits > kMaxTransportBlockBits)
    throw ConfigError("transport block size must be in [1, " +
                      std::to_string(kMaxTransportBlockBits) + "]");
  return p;
}

int pscch_coded_bits(const LinkParams& p) {
  return p.layout.pscch_re_count() * bits_per_symbol(Modulation::Qpsk);
}

int pssch_coded_bits(const LinkParams& p) {
  return p.layout.pssch_re_count() * bits_per_symbol(modulation_for_mcs(p.mcs));
}

namespace {

CVec precode_if_enabled(CVec symbols, int width, const LinkParams& p) {
  if (!p.transform_precoding) return symbols;
  return dft_precode(symbols, width);
}

}  // namespace

CVec encode_pscch(const SciMessage& sci, const LinkParams& p) {
  const Bits coded = conv_encode(crc_attach(sci.serialize(), CrcKind::Crc16));
  const Bits matched = rate_match(coded, pscch_coded_bits(p), CodeKind::Convolutional);
  const CVec symbols = qam_map(scramble(matched, kPscchScramblingInit), Modulation::Qpsk);
  return precode_if_enabled(symbols, 12 * p.layout.pscch_n_prb, p);
}

CVec encode_pssch(std::span<const std::uint8_t> tb, int group_id, const LinkParams& p) {
  if (static_cast<int>(tb.size()) != p.tbs_bits)
    throw DomainError("encode_pssch: transport block has " + std::to_string(tb.size()) +
                      " bits, configured " + std::to_string(p.tbs_bits));
  const auto blocks = segment_tb(tb);
  const Bits coded = turbo_encode(blocks.front().bits);
  const Bits matched = rate_match(coded, pssch_coded_bits(p), CodeKind::Turbo);
  const CVec symbols =
      qam_map(scramble(matched, pssch_scrambling_init(group_id)), modulation_for_mcs(p.mcs));
  return precode_if_enabled(symbols, 12 * p.layout.pssch_n_prb, p);
}

SciMessage make_sci(const LinkParams& p, int group_id) {
  SciMessage sci;
  sci.mcs = p.mcs;
  sci.riv = encode_riv(p.layout.pssch_prb_start, p.layout.pssch_n_prb, p.geometry.n_prb);
  sci.group_id = group_id;
  return sci;
}

TxSlot transmit(const LinkParams& p, const SciMessage& sci, std::span<const std::uint8_t> tb,
                int pscch_shift) {
  const CVec control = encode_pscch(sci, p);
  const CVec data = encode_pssch(tb, sci.group_id, p);
  const CVec pscch_dmrs = dmrs_generate(p.layout.pscch_n_prb, pscch_shift);
  const CVec pssch_dmrs = dmrs_generate(p.layout.pssch_n_prb, pssch_dmrs_shift(sci.group_id));
  TxSlot tx;
  tx.grid = map_subframe(control, data, pscch_dmrs, pssch_dmrs, p.layout, p.geometry);
  tx.waveform = ofdm_modulate(tx.grid, p.geometry);
  return tx;
}

}  // namespace v2x

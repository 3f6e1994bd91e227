#pragma once

#include <cstdint>

#include "v2xsim/coding.hpp"
#include "v2xsim/modem.hpp"
#include "v2xsim/numerology.hpp"

namespace v2x {

// Scrambling and reference-signal conventions shared by both link ends.
inline constexpr std::uint32_t kPscchScramblingInit = 510;
inline std::uint32_t pssch_scrambling_init(int group_id) {
  return static_cast<std::uint32_t>(group_id) * 16384u + 510u;
}
inline int pssch_dmrs_shift(int group_id) { return kCyclicShifts[group_id % 4]; }

// MCS 0-10 -> QPSK, 11-20 -> 16QAM. Higher indices throw ConfigError.
Modulation modulation_for_mcs(int mcs);

struct LinkParams {
  FrameGeometry geometry;
  SlotLayout layout;
  bool transform_precoding = true;
  int tbs_bits = 1800;
  int mcs = 13;
};

LinkParams make_link_params(const FrameGeometry& g, int data_n_prb, int tbs_bits, int mcs,
                            bool transform_precoding);

// Rate-matched code-bit counts.
int pscch_coded_bits(const LinkParams& p);
int pssch_coded_bits(const LinkParams& p);

// Channel-coded, scrambled, modulated (and optionally DFT-precoded) symbols
// in the order map_subframe consumes them.
CVec encode_pscch(const SciMessage& sci, const LinkParams& p);
CVec encode_pssch(std::span<const std::uint8_t> tb, int group_id, const LinkParams& p);

struct TxSlot {
  ResourceGrid grid;
  Waveform waveform;
};

// Builds the SCI's RIV from the layout; the caller supplies MCS and group.
SciMessage make_sci(const LinkParams& p, int group_id);
TxSlot transmit(const LinkParams& p, const SciMessage& sci, std::span<const std::uint8_t> tb,
                int pscch_shift);

}  // namespace v2x

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "v2xsim/coding.hpp"
#include "v2xsim/modem.hpp"
#include "v2xsim/sidelink.hpp"

namespace v2x {

// Complex gain per (subcarrier, symbol, antenna) over one PRB range of a slot.
struct ChannelEstimate {
  int prb_start = 0;
  int n_prb = 0;
  int n_symbols = 0;
  std::vector<CVec> gains;  // per antenna, symbol-major: [l * width + k]
  double noise_var = 0.0;

  int width() const { return 12 * n_prb; }
  int n_antennas() const { return static_cast<int>(gains.size()); }
  cf64 at(int antenna, int k, int l) const {
    return gains[static_cast<std::size_t>(antenna)]
                [static_cast<std::size_t>(l) * static_cast<std::size_t>(width()) +
                 static_cast<std::size_t>(k)];
  }
};

struct EstimatorOptions {
  int window = 3;
  // Overrides the DMRS-residual noise estimate when set.
  std::optional<double> noise_var_hint;
};

// Least squares at the pilots, frequency averaging over `window`
// subcarriers, linear interpolation/extrapolation across symbols.
ChannelEstimate estimate_channel(std::span<const ResourceGrid> grids, int prb_start, int n_prb,
                                 std::span<const cf64> known_dmrs,
                                 std::span<const int> dmrs_symbols,
                                 const EstimatorOptions& opts = {});

// True channel over the whole slot, e.g. from ChannelState::frequency_response.
struct GenieChannel {
  std::vector<CVec> gains;  // per antenna, symbol-major over all subcarriers
  int n_subcarriers = 0;
  double noise_var = 0.0;
};
ChannelEstimate genie_estimate(const GenieChannel& genie, int prb_start, int n_prb, int n_symbols);

struct Equalized {
  CVec symbols;                 // MMSE output, biased
  std::vector<double> gain;     // sum_a |h_a|^2 / (sum_a |h_a|^2 + noise_var)
  std::vector<double> noise_var;  // noise_var / sum_a |h_a|^2
};

// x = sum_a conj(h_a) y_a / (sum_a |h_a|^2 + noise_var), per cell of the
// estimate's PRB range on `symbols`, in time order.
Equalized equalize(std::span<const ResourceGrid> grids, const ChannelEstimate& est,
                   std::span<const int> symbols);

// Unbiased symbols and their noise variances ready for LLR demapping; with
// transform precoding the per-symbol blocks are de-spread first.
struct Detected {
  CVec symbols;
  std::vector<double> noise_var;
};
Detected detect(const Equalized& eq, int width, bool transform_precoding);

struct PscchCandidate {
  int prb_start = 0;
  int shift = 0;
  friend bool operator==(const PscchCandidate&, const PscchCandidate&) = default;
};

// The configured PSCCH position under each of the four DMRS cyclic shifts.
std::vector<PscchCandidate> default_candidates(const LinkParams& p);

struct ReceiverOptions {
  EstimatorOptions estimator;
  int turbo_iterations = 8;
  const GenieChannel* genie = nullptr;
};

struct PscchDecode {
  SciMessage sci;
  PscchCandidate candidate;
};

struct DecodeResult {
  std::optional<SciMessage> sci;
  std::optional<Bits> tb;
  bool control_crc = false;
  bool data_crc = false;
};

std::optional<PscchDecode> decode_pscch(std::span<const ResourceGrid> grids,
                                        std::span<const PscchCandidate> candidates,
                                        const LinkParams& p, const ReceiverOptions& opts = {});
DecodeResult decode_pssch(std::span<const ResourceGrid> grids, const SciMessage& sci,
                          const LinkParams& p, const ReceiverOptions& opts = {});

// Blind control search followed by data decoding.
DecodeResult receive(std::span<const ResourceGrid> grids, std::span<const PscchCandidate> candidates,
                     const LinkParams& p, const ReceiverOptions& opts = {});

}  // namespace v2x

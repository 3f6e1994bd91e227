#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "v2xsim/channel.hpp"
#include "v2xsim/numerology.hpp"
#include "v2xsim/sidelink.hpp"

namespace v2x {

// Link and campaign configuration. Defaults are the reference setup:
// 5.9 GHz carrier, 20 MHz, 8 data PRBs, TBS 1800, MCS 13 (16QAM), EVA with
// 180 Hz Jakes Doppler, 2 receive antennas, SNR 11..15 dB.
struct SimConfig {
  std::string label;  // empty: derived from mode and SCS
  Mode mode = Mode::Nr;
  int mu = 0;
  CpType cp = CpType::Normal;
  double bandwidth_hz = 20e6;
  double carrier_hz = 5.9e9;
  double ue_speed_kmh = 120.0;
  int n_subframes = 2000;
  std::vector<double> snr_db = {11, 12, 13, 14, 15};
  int mcs = 13;
  int tbs_bits = 1800;
  int data_n_prb = 8;
  bool transform_precoding = true;
  int estimator_window = 3;
  int turbo_iterations = 8;
  ChannelConfig channel;
  std::uint64_t seed = 1;

  std::string curve_label() const;
  Numerology numerology() const { return Numerology(mu, cp); }
  FrameGeometry geometry() const;
  LinkParams link_params() const;
};

// Maximum Doppler implied by speed and carrier: v * fc / c.
double doppler_from_speed(double speed_kmh, double carrier_hz);

// Flat `key = value` text, '#' starts a comment. Throws ConfigError with a
// "line N: ..." message on unknown keys, bad values or invalid combinations.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);
// Validates cross-field invariants; throws ConfigError.
void validate(const SimConfig& cfg);

struct BlerPoint {
  double snr_db = 0.0;
  std::int64_t blocks_tx = 0;
  std::int64_t blocks_err_control = 0;
  std::int64_t blocks_err_data = 0;
  friend bool operator==(const BlerPoint&, const BlerPoint&) = default;
};

struct BlerCurve {
  std::string label;
  std::vector<BlerPoint> points;
  friend bool operator==(const BlerCurve&, const BlerCurve&) = default;
};

enum class BlerKind { Control, Data };
double compute_bler(const BlerPoint& point, BlerKind which);

// Counter-based substream: a pure function of its arguments.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t snr_index,
                             std::uint64_t subframe_index, std::uint64_t purpose = 0);

struct SubframeOutcome {
  bool control_ok = false;
  bool data_ok = false;
};

struct SubframeOptions {
  bool genie_channel = false;
};

// One transport block through transmitter, channel, noise and receiver.
SubframeOutcome simulate_subframe(const SimConfig& cfg, const LinkParams& link, double snr_db,
                                  std::uint64_t stream_seed, const SubframeOptions& opts = {});

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

struct CampaignOptions {
  int workers = 1;
  SubframeOptions subframe;
  ProgressFn progress;
};

BlerCurve run_campaign(const SimConfig& cfg, const CampaignOptions& opts = {});

// CSV: label,snr_db,blocks,ctrl_err,data_err,ctrl_bler,data_bler
std::string format_results(const std::vector<BlerCurve>& curves);
std::vector<BlerCurve> parse_results(const std::string& csv);
void write_results(const std::vector<BlerCurve>& curves, const std::string& csv_path,
                   const std::optional<std::string>& svg_path = std::nullopt);
// Data BLER against SNR on a logarithmic axis.
std::string render_svg(const std::vector<BlerCurve>& curves);

}  // namespace v2x

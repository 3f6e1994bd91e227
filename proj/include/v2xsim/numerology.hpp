#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace v2x {

enum class CpType { Normal, Extended };
enum class Mode { Lte, Nr };

// Basic time units. All durations are kept as integer multiples of the NR
// basic time unit t_c and only converted to seconds for presentation.
struct TimeBase {
  static constexpr std::int64_t kappa = 64;
  static constexpr std::int64_t tc_per_second = 480000LL * 4096LL;
  static constexpr std::int64_t tc_per_ms = tc_per_second / 1000;
  static constexpr double t_c = 1.0 / static_cast<double>(tc_per_second);
  static constexpr double t_s = static_cast<double>(kappa) * t_c;
};

inline constexpr int kMaxMu = 3;

class Numerology {
 public:
  // Throws DomainError for mu outside {0..3} or extended CP with mu != 2.
  Numerology(int mu, CpType cp = CpType::Normal);

  int mu() const { return mu_; }
  CpType cp() const { return cp_; }

  // Table II marks 120 kHz as FR2 only; it is still simulatable.
  bool fr1_applicable() const { return mu_ <= 2; }

  int symbols_per_slot() const { return cp_ == CpType::Normal ? 14 : 12; }
  int slots_per_subframe() const { return 1 << mu_; }
  int symbols_per_subframe() const {
    return symbols_per_slot() * slots_per_subframe();
  }

  friend bool operator==(const Numerology&, const Numerology&) = default;

 private:
  int mu_;
  CpType cp_;
};

struct SlotStructure {
  int slots_per_subframe;
  double slot_duration_ms;
};

int scs_khz(int mu);
SlotStructure slot_structure(int mu);
int prb_width_khz(const Numerology& num);

// Per-subframe symbol indices that carry the long normal CP: {0, 7*2^mu}.
std::vector<int> long_cp_symbol_indices(int mu);

// CP length in units of t_c for symbol index l within the subframe.
std::int64_t cp_samples(const Numerology& num, int l);
// Useful (FFT) part of a symbol in units of t_c: 2048*kappa*2^-mu.
std::int64_t useful_samples(const Numerology& num);
double cp_duration(const Numerology& num, int l);

// Sum of CP and useful parts over one subframe, in t_c. Equals
// TimeBase::tc_per_ms for every valid numerology.
std::int64_t subframe_length_tc(const Numerology& num);

struct FrameGeometry {
  Mode mode = Mode::Nr;
  Numerology numerology{0};
  double bandwidth_hz = 0.0;
  int scs_khz = 0;
  int slots_per_subframe = 0;
  int symbols_per_slot = 0;
  int n_prb = 0;
  int n_subcarriers = 0;
  int fft_size = 0;
  double sample_rate_hz = 0.0;
  std::vector<int> long_cp_symbols;

  // t_c units per waveform sample at this geometry's sample rate.
  std::int64_t tc_per_sample() const;
  // CP length in samples for subframe symbol index l.
  int cp_length(int l) const;
  // Samples in one slot, starting at slot `slot` of the subframe.
  int slot_samples(int slot) const;
  int subframe_samples() const;
};

// Throws ConfigError when the (bandwidth, scs, mode) combination has no
// entry in the transmission-bandwidth table.
FrameGeometry grid_geometry(double bandwidth_hz, const Numerology& num, Mode mode);

std::string to_string(Mode mode);
std::string to_string(CpType cp);

}  // namespace v2x

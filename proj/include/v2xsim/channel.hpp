#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "v2xsim/modem.hpp"
#include "v2xsim/types.hpp"

namespace v2x {

enum class ChannelProfile { Eva, AwgnOnly, SingleTap };

struct ChannelConfig {
  ChannelProfile profile = ChannelProfile::Eva;
  double max_doppler_hz = 180.0;
  int n_rx = 2;
  std::uint64_t seed = 0;
  // SingleTap only: a static tap of this gain and integer delay.
  cf64 single_tap_gain{1.0, 0.0};
  int single_tap_delay = 0;
};

struct TapProfile {
  std::vector<double> delays_s;
  std::vector<double> powers_db;
};

// Extended Vehicular A: 9 taps.
const TapProfile& eva_profile();

// Unit-power Rayleigh fading process realized as a sum of equal-power
// complex sinusoids with randomized arrival angles and phases.
class JakesProcess {
 public:
  static constexpr int kSinusoids = 64;

  JakesProcess() = default;
  JakesProcess(double max_doppler_hz, std::mt19937_64& rng, int n_sinusoids = kSinusoids);

  cf64 gain(double t) const;
  // Evaluates the process at t0, t0+dt, ... (n points).
  void sample(double t0, double dt, std::span<cf64> out) const;

  std::span<const double> doppler_hz() const { return doppler_hz_; }

 private:
  std::vector<double> doppler_hz_;
  std::vector<double> phase_;
};

class ChannelState {
 public:
  // Tap gains are held on a grid of this many samples and linearly
  // interpolated in between.
  static constexpr int kGainStep = 128;

  ChannelState(const ChannelConfig& cfg, double sample_rate_hz);

  int n_rx() const { return cfg_.n_rx; }
  int n_taps() const { return static_cast<int>(delays_.size()); }
  double sample_rate_hz() const { return sample_rate_hz_; }
  const ChannelConfig& config() const { return cfg_; }
  std::span<const int> tap_delays() const { return delays_; }
  std::span<const double> tap_powers() const { return powers_; }
  // Seconds of signal already passed through the channel.
  double time() const { return static_cast<double>(consumed_) / sample_rate_hz_; }

  // Complex gain of one tap (including its power weight) at time t.
  cf64 tap_gain(int antenna, int tap, double t) const;
  const JakesProcess& process(int antenna, int tap) const;

  // Frequency response at time t for the given FFT bins.
  CVec frequency_response(int antenna, double t, std::span<const int> bins, int fft_size) const;

  // Time-varying convolution of one stream; returns one stream per antenna
  // and advances the channel clock. Input before the first call is zero.
  std::vector<CVec> apply(std::span<const cf64> input);

 private:
  ChannelConfig cfg_;
  double sample_rate_hz_;
  std::vector<int> delays_;
  std::vector<double> powers_;
  std::vector<double> amplitudes_;
  std::vector<JakesProcess> processes_;  // [antenna * n_taps + tap]
  CVec history_;                          // last max-delay input samples
  std::int64_t consumed_ = 0;
};

ChannelState channel_create(const ChannelConfig& cfg, double sample_rate_hz);
// Waveform must be single-antenna at the channel's sample rate.
Waveform channel_apply(ChannelState& state, const Waveform& wave);

// Adds complex Gaussian noise of variance signal_power_ref / 10^(snr_db/10),
// independently per antenna. snr_db = +inf leaves the waveform untouched.
Waveform add_awgn(const Waveform& wave, double snr_db, double signal_power_ref,
                  std::mt19937_64& rng);
double noise_variance(double snr_db, double signal_power_ref);

}  // namespace v2x

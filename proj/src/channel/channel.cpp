#include <algorithm>
#include <cmath>
#include <numbers>

#include "v2xsim/channel.hpp"
#include "v2xsim/error.hpp"

namespace v2x {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

const TapProfile& eva_profile() {
  static const TapProfile p{
      {0.0, 30e-9, 150e-9, 310e-9, 370e-9, 710e-9, 1090e-9, 1730e-9, 2510e-9},
      {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9}};
  return p;
}

JakesProcess::JakesProcess(double max_doppler_hz, std::mt19937_64& rng, int n_sinusoids) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double offset = unit(rng);
  doppler_hz_.resize(static_cast<std::size_t>(n_sinusoids));
  phase_.resize(static_cast<std::size_t>(n_sinusoids));
  for (int n = 0; n < n_sinusoids; ++n) {
    const double angle = kTwoPi * (n + offset) / n_sinusoids;
    doppler_hz_[static_cast<std::size_t>(n)] = max_doppler_hz * std::cos(angle);
    phase_[static_cast<std::size_t>(n)] = kTwoPi * unit(rng);
  }
}

cf64 JakesProcess::gain(double t) const {
  cf64 g{};
  for (std::size_t n = 0; n < phase_.size(); ++n)
    g += std::polar(1.0, kTwoPi * doppler_hz_[n] * t + phase_[n]);
  return g / std::sqrt(static_cast<double>(phase_.size()));
}

void JakesProcess::sample(double t0, double dt, std::span<cf64> out) const {
  std::fill(out.begin(), out.end(), cf64{});
  const double norm = 1.0 / std::sqrt(static_cast<double>(phase_.size()));
  for (std::size_t n = 0; n < phase_.size(); ++n) {
    cf64 p = std::polar(norm, kTwoPi * doppler_hz_[n] * t0 + phase_[n]);
    const cf64 rot = std::polar(1.0, kTwoPi * doppler_hz_[n] * dt);
    for (cf64& o : out) {
      o += p;
      p *= rot;
    }
  }
}

ChannelState::ChannelState(const ChannelConfig& cfg, double sample_rate_hz)
    : cfg_(cfg), sample_rate_hz_(sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw DomainError("channel: sample rate must be positive");
  if (cfg.n_rx < 1) throw DomainError("channel: at least one receive antenna required");
  if (!(cfg.max_doppler_hz >= 0.0)) throw DomainError("channel: negative Doppler");
  if (sample_rate_hz <= 2.0 * cfg.max_doppler_hz)
    throw DomainError("channel: sample rate too low for the Doppler bandwidth");

  switch (cfg.profile) {
    case ChannelProfile::Eva: {
      const TapProfile& p = eva_profile();
      double total = 0.0;
      for (double db : p.powers_db) total += std::pow(10.0, db / 10.0);
      for (std::size_t i = 0; i < p.delays_s.size(); ++i) {
        delays_.push_back(static_cast<int>(std::lround(p.delays_s[i] * sample_rate_hz)));
        powers_.push_back(std::pow(10.0, p.powers_db[i] / 10.0) / total);
      }
      break;
    }
    case ChannelProfile::AwgnOnly:
      delays_ = {0};
      powers_ = {1.0};
      break;
    case ChannelProfile::SingleTap:
      if (cfg.single_tap_delay < 0) throw DomainError("channel: negative tap delay");
      delays_ = {cfg.single_tap_delay};
      powers_ = {std::norm(cfg.single_tap_gain)};
      break;
  }
  for (double p : powers_) amplitudes_.push_back(std::sqrt(p));

  if (cfg.profile == ChannelProfile::Eva) {
    std::mt19937_64 rng(cfg.seed);
    for (int a = 0; a < cfg.n_rx; ++a)
      for (std::size_t i = 0; i < delays_.size(); ++i)
        processes_.emplace_back(cfg.max_doppler_hz, rng);
  }
  history_.assign(static_cast<std::size_t>(*std::max_element(delays_.begin(), delays_.end())), cf64{});
}

const JakesProcess& ChannelState::process(int antenna, int tap) const {
  if (processes_.empty()) throw DomainError("channel: profile has no fading processes");
  return processes_[static_cast<std::size_t>(antenna * n_taps() + tap)];
}

cf64 ChannelState::tap_gain(int antenna, int tap, double t) const {
  if (antenna < 0 || antenna >= n_rx() || tap < 0 || tap >= n_taps())
    throw DomainError("channel: tap index out of range");
  switch (cfg_.profile) {
    case ChannelProfile::Eva:
      return amplitudes_[static_cast<std::size_t>(tap)] * process(antenna, tap).gain(t);
    case ChannelProfile::SingleTap:
      return cfg_.single_tap_gain;
    case ChannelProfile::AwgnOnly:
      break;
  }
  return {1.0, 0.0};
}

CVec ChannelState::frequency_response(int antenna, double t, std::span<const int> bins,
                                      int fft_size) const {
  CVec h(bins.size());
  for (int i = 0; i < n_taps(); ++i) {
    const cf64 g = tap_gain(antenna, i, t);
    const double d = delays_[static_cast<std::size_t>(i)];
    for (std::size_t b = 0; b < bins.size(); ++b)
      h[b] += g * std::polar(1.0, -kTwoPi * bins[b] * d / fft_size);
  }
  return h;
}

std::vector<CVec> ChannelState::apply(std::span<const cf64> input) {
  const std::size_t n = input.size();
  const std::size_t hist = history_.size();
  // Extended input: [history | input].
  CVec x(hist + n);
  std::copy(history_.begin(), history_.end(), x.begin());
  std::copy(input.begin(), input.end(), x.begin() + static_cast<std::ptrdiff_t>(hist));

  const std::size_t taps = delays_.size();
  // Gain grid anchored at absolute sample multiples of kGainStep, so the
  // output does not depend on how the input is split across calls.
  const auto step = static_cast<std::int64_t>(kGainStep);
  const std::int64_t first = consumed_ / step;
  const std::int64_t last = n ? (consumed_ + static_cast<std::int64_t>(n) - 1) / step : first;
  const auto points = static_cast<std::size_t>(last - first + 2);
  const double t_first = static_cast<double>(first * step) / sample_rate_hz_;
  const double dt = kGainStep / sample_rate_hz_;

  std::vector<CVec> out(static_cast<std::size_t>(cfg_.n_rx), CVec(n));
  CVec grid(points);
  for (int a = 0; a < cfg_.n_rx; ++a) {
    CVec& y = out[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i < taps; ++i) {
      const std::size_t offset = hist - static_cast<std::size_t>(delays_[i]);
      if (cfg_.profile != ChannelProfile::Eva) {
        const cf64 g = tap_gain(a, static_cast<int>(i), time());
        for (std::size_t s = 0; s < n; ++s) y[s] += g * x[offset + s];
        continue;
      }
      process(a, static_cast<int>(i)).sample(t_first, dt, grid);
      const double amp = amplitudes_[i];
      std::size_t s = 0;
      for (std::size_t p = 0; p + 1 < points && s < n; ++p) {
        const std::int64_t base = (first + static_cast<std::int64_t>(p)) * step;
        const auto end = static_cast<std::size_t>(
            std::min<std::int64_t>(static_cast<std::int64_t>(n), base + step - consumed_));
        const cf64 slope = amp * (grid[p + 1] - grid[p]) / static_cast<double>(kGainStep);
        const cf64 g0 = amp * grid[p];
        for (; s < end; ++s)
          y[s] += (g0 + slope * static_cast<double>(consumed_ + static_cast<std::int64_t>(s) - base)) *
                  x[offset + s];
      }
    }
  }
  std::copy(x.end() - static_cast<std::ptrdiff_t>(hist), x.end(), history_.begin());
  consumed_ += static_cast<std::int64_t>(n);
  return out;
}

ChannelState channel_create(const ChannelConfig& cfg, double sample_rate_hz) {
  return ChannelState(cfg, sample_rate_hz);
}

Waveform channel_apply(ChannelState& state, const Waveform& wave) {
  if (wave.antennas.size() != 1) throw DomainError("channel_apply: expected a single transmit stream");
  if (std::abs(wave.sample_rate_hz - state.sample_rate_hz()) > 1e-6 * state.sample_rate_hz())
    throw DomainError("channel_apply: waveform sample rate does not match the channel");
  Waveform out;
  out.sample_rate_hz = wave.sample_rate_hz;
  out.antennas = state.apply(wave.antennas.front());
  return out;
}

double noise_variance(double snr_db, double signal_power_ref) {
  if (!(signal_power_ref > 0.0)) throw DomainError("add_awgn: reference power must be positive");
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return signal_power_ref / std::pow(10.0, snr_db / 10.0);
}

Waveform add_awgn(const Waveform& wave, double snr_db, double signal_power_ref,
                  std::mt19937_64& rng) {
  const double var = noise_variance(snr_db, signal_power_ref);
  Waveform out = wave;
  if (var == 0.0) return out;
  std::normal_distribution<double> normal(0.0, std::sqrt(var / 2.0));
  for (CVec& ant : out.antennas)
    for (cf64& s : ant) s += cf64{normal(rng), normal(rng)};
  return out;
}

}  // namespace v2x

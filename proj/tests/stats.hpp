#pragma once

// Statistics shared by the channel unit tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "v2xsim/channel.hpp"

namespace stats {

struct AutocorrResult {
  double max_deviation = 0.0;  // over lags with fd*tau < 0.5
  int lags = 0;
};

// Normalized autocorrelation of Jakes processes against J0(2 pi fd tau),
// pooled over the taps and antennas of `realizations` EVA channels.
inline AutocorrResult jakes_autocorrelation(double fd, int realizations, int samples,
                                            std::uint64_t seed) {
  const double dt = 0.01 / fd;
  const int max_lag = 50;
  std::vector<std::complex<double>> acc(max_lag, 0.0);
  double power = 0.0;
  std::vector<std::complex<double>> g(static_cast<std::size_t>(samples));
  for (int r = 0; r < realizations; ++r) {
    v2x::ChannelConfig cfg;
    cfg.max_doppler_hz = fd;
    cfg.seed = seed + static_cast<std::uint64_t>(r);
    const v2x::ChannelState ch(cfg, 30.72e6);
    for (int a = 0; a < ch.n_rx(); ++a)
      for (int t = 0; t < ch.n_taps(); ++t) {
        ch.process(a, t).sample(0.0, dt, g);
        for (int lag = 0; lag < max_lag; ++lag) {
          std::complex<double> s = 0.0;
          for (int n = 0; n + lag < samples; ++n)
            s += g[static_cast<std::size_t>(n + lag)] * std::conj(g[static_cast<std::size_t>(n)]);
          acc[static_cast<std::size_t>(lag)] += s / static_cast<double>(samples - lag);
        }
      }
  }
  power = acc[0].real();
  AutocorrResult res;
  for (int lag = 0; lag < max_lag; ++lag) {
    const double x = 2.0 * M_PI * fd * lag * dt;
    const double rho = acc[static_cast<std::size_t>(lag)].real() / power;
    res.max_deviation = std::max(res.max_deviation, std::abs(rho - std::cyl_bessel_j(0.0, x)));
    ++res.lags;
  }
  return res;
}

// Time-averaged sum of tap powers per antenna, pooled over realizations.
// Gains are sampled every 0.1/fd seconds so one realization spans many
// coherence times.
inline double eva_energy(int realizations, int samples, std::uint64_t seed) {
  v2x::ChannelConfig cfg;
  const double dt = 0.1 / cfg.max_doppler_hz;
  std::vector<std::complex<double>> g(static_cast<std::size_t>(samples));
  double total = 0.0;
  long count = 0;
  for (int r = 0; r < realizations; ++r) {
    cfg.seed = seed + static_cast<std::uint64_t>(r);
    const v2x::ChannelState ch(cfg, 30.72e6);
    for (int a = 0; a < ch.n_rx(); ++a) {
      for (int k = 0; k < ch.n_taps(); ++k) {
        ch.process(a, k).sample(0.0, dt, g);
        double e = 0.0;
        for (const auto& x : g) e += std::norm(x);
        total += ch.tap_powers()[static_cast<std::size_t>(k)] * e;
      }
      count += samples;
    }
  }
  return total / static_cast<double>(count);
}

struct NoiseResult {
  double power = 0.0;
  double cross = 0.0;  // |rho| between the two antennas
};

inline NoiseResult awgn_calibration(double snr_db, std::size_t samples, std::uint64_t seed) {
  v2x::Waveform w;
  w.sample_rate_hz = 30.72e6;
  w.antennas.assign(2, v2x::CVec(samples, 0.0));
  std::mt19937_64 rng(seed);
  const v2x::Waveform n = v2x::add_awgn(w, snr_db, 1.0, rng);
  double p0 = 0.0, p1 = 0.0;
  std::complex<double> c = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    p0 += std::norm(n.antennas[0][i]);
    p1 += std::norm(n.antennas[1][i]);
    c += n.antennas[0][i] * std::conj(n.antennas[1][i]);
  }
  return {p0 / static_cast<double>(samples), std::abs(c) / std::sqrt(p0 * p1)};
}

// One-sided two-proportion z statistic for H1: p_a > p_b.
inline double z_greater(long err_a, long n_a, long err_b, long n_b) {
  const double pa = static_cast<double>(err_a) / static_cast<double>(n_a);
  const double pb = static_cast<double>(err_b) / static_cast<double>(n_b);
  const double pool = static_cast<double>(err_a + err_b) / static_cast<double>(n_a + n_b);
  const double se = std::sqrt(pool * (1.0 - pool) * (1.0 / static_cast<double>(n_a) + 1.0 / static_cast<double>(n_b)));
  if (se == 0.0) return 0.0;
  return (pa - pb) / se;
}

inline constexpr double kZ95 = 1.6448536269514722;

}  // namespace stats

#include <algorithm>
#include <cmath>

#include "v2xsim/error.hpp"
#include "v2xsim/receiver.hpp"

namespace v2x {

namespace {

constexpr double kMinNoiseVar = 1e-12;

// Linear interpolation weights of symbol l between the two pilot symbols
// that bracket it (or the nearest two, when extrapolating).
void time_weights(std::span<const int> pilots, int l, std::size_t& i0, std::size_t& i1, double& w1) {
  std::size_t hi = 1;
  while (hi + 1 < pilots.size() && pilots[hi] < l) ++hi;
  i0 = hi - 1;
  i1 = hi;
  w1 = static_cast<double>(l - pilots[i0]) / static_cast<double>(pilots[i1] - pilots[i0]);
}

}  // namespace

ChannelEstimate estimate_channel(std::span<const ResourceGrid> grids, int prb_start, int n_prb,
                                 std::span<const cf64> known_dmrs,
                                 std::span<const int> dmrs_symbols, const EstimatorOptions& opts) {
  if (grids.empty()) throw DomainError("estimate_channel: no receive antennas");
  if (dmrs_symbols.empty()) throw DomainError("estimate_channel: no pilot symbols");
  const int width = 12 * n_prb;
  if (static_cast<int>(known_dmrs.size()) != width)
    throw DomainError("estimate_channel: DMRS length does not match the allocation");
  if (prb_start < 0 || 12 * (prb_start + n_prb) > grids.front().n_subcarriers())
    throw DomainError("estimate_channel: allocation outside the grid");
  const int k0 = 12 * prb_start;
  const int n_symbols = grids.front().n_symbols();
  const int half = std::max(0, opts.window / 2);

  ChannelEstimate est;
  est.prb_start = prb_start;
  est.n_prb = n_prb;
  est.n_symbols = n_symbols;

  double residual = 0.0;
  std::size_t residual_count = 0;
  const std::size_t n_pilots = dmrs_symbols.size();
  CVec ls(static_cast<std::size_t>(width));
  for (const ResourceGrid& grid : grids) {
    std::vector<CVec> smoothed(n_pilots, CVec(static_cast<std::size_t>(width)));
    for (std::size_t p = 0; p < n_pilots; ++p) {
      const int l = dmrs_symbols[p];
      for (int k = 0; k < width; ++k)
        ls[static_cast<std::size_t>(k)] = grid.at(k0 + k, l) / known_dmrs[static_cast<std::size_t>(k)];
      for (int k = 0; k < width; ++k) {
        const int lo = std::max(0, k - half), hi = std::min(width - 1, k + half);
        cf64 acc{};
        for (int j = lo; j <= hi; ++j) acc += ls[static_cast<std::size_t>(j)];
        const int n = hi - lo + 1;
        const cf64 avg = acc / static_cast<double>(n);
        smoothed[p][static_cast<std::size_t>(k)] = avg;
        if (n > 1) {
          // The average includes the cell itself, leaving (1 - 1/n) of the
          // noise power in the residual.
          residual += std::norm(ls[static_cast<std::size_t>(k)] - avg) / (1.0 - 1.0 / n);
          ++residual_count;
        }
      }
    }

    CVec& h = est.gains.emplace_back(static_cast<std::size_t>(width * n_symbols));
    for (int l = 0; l < n_symbols; ++l) {
      CVec::iterator row = h.begin() + static_cast<std::ptrdiff_t>(l) * width;
      if (n_pilots == 1) {
        std::copy(smoothed[0].begin(), smoothed[0].end(), row);
        continue;
      }
      std::size_t i0, i1;
      double w1;
      time_weights(dmrs_symbols, l, i0, i1, w1);
      for (int k = 0; k < width; ++k)
        row[k] = (1.0 - w1) * smoothed[i0][static_cast<std::size_t>(k)] +
                 w1 * smoothed[i1][static_cast<std::size_t>(k)];
    }
  }

  if (opts.noise_var_hint)
    est.noise_var = *opts.noise_var_hint;
  else
    est.noise_var = residual_count ? residual / static_cast<double>(residual_count) : 0.0;
  est.noise_var = std::max(est.noise_var, kMinNoiseVar);
  return est;
}

ChannelEstimate genie_estimate(const GenieChannel& genie, int prb_start, int n_prb, int n_symbols) {
  ChannelEstimate est;
  est.prb_start = prb_start;
  est.n_prb = n_prb;
  est.n_symbols = n_symbols;
  est.noise_var = std::max(genie.noise_var, kMinNoiseVar);
  const int width = 12 * n_prb;
  for (const CVec& full : genie.gains) {
    CVec& h = est.gains.emplace_back(static_cast<std::size_t>(width * n_symbols));
    for (int l = 0; l < n_symbols; ++l)
      for (int k = 0; k < width; ++k)
        h[static_cast<std::size_t>(l * width + k)] =
            full[static_cast<std::size_t>(l * genie.n_subcarriers + 12 * prb_start + k)];
  }
  return est;
}

Equalized equalize(std::span<const ResourceGrid> grids, const ChannelEstimate& est,
                   std::span<const int> symbols) {
  if (static_cast<int>(grids.size()) != est.n_antennas())
    throw DomainError("equalize: antenna count differs from the estimate");
  const int width = est.width();
  const int k0 = 12 * est.prb_start;
  Equalized eq;
  const std::size_t n = symbols.size() * static_cast<std::size_t>(width);
  eq.symbols.reserve(n);
  eq.gain.reserve(n);
  eq.noise_var.reserve(n);
  for (int l : symbols) {
    for (int k = 0; k < width; ++k) {
      double g = 0.0;
      cf64 num{};
      for (std::size_t a = 0; a < grids.size(); ++a) {
        const cf64 h = est.at(static_cast<int>(a), k, l);
        g += std::norm(h);
        num += std::conj(h) * grids[a].at(k0 + k, l);
      }
      eq.symbols.push_back(num / (g + est.noise_var));
      eq.gain.push_back(g / (g + est.noise_var));
      eq.noise_var.push_back(g > 0.0 ? est.noise_var / g : 1e12);
    }
  }
  return eq;
}

Detected detect(const Equalized& eq, int width, bool transform_precoding) {
  Detected out;
  const std::size_t n = eq.symbols.size();
  out.symbols.resize(n);
  out.noise_var.resize(n);
  if (!transform_precoding) {
    for (std::size_t i = 0; i < n; ++i) {
      const double mu = std::max(eq.gain[i], 1e-12);
      out.symbols[i] = eq.symbols[i] / mu;
      out.noise_var[i] = std::max(eq.noise_var[i], kMinNoiseVar);
    }
    return out;
  }
  out.symbols = dft_deprecode(eq.symbols, width);
  for (std::size_t off = 0; off < n; off += static_cast<std::size_t>(width)) {
    double mu = 0.0;
    for (int k = 0; k < width; ++k) mu += eq.gain[off + static_cast<std::size_t>(k)];
    mu = std::clamp(mu / width, 1e-12, 1.0);
    const double nv = std::max((1.0 - mu) / mu, kMinNoiseVar);
    for (int k = 0; k < width; ++k) {
      out.symbols[off + static_cast<std::size_t>(k)] /= mu;
      out.noise_var[off + static_cast<std::size_t>(k)] = nv;
    }
  }
  return out;
}

}  // namespace v2x

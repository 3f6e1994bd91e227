#include <algorithm>

#include "v2xsim/error.hpp"
#include "v2xsim/modem.hpp"

namespace v2x {

int subcarrier_to_bin(int k, const FrameGeometry& g) {
  const int half = g.n_subcarriers / 2;
  if (g.mode == Mode::Lte)
    return k < half ? g.fft_size - half + k : k - half + 1;
  return (k - half + g.fft_size) % g.fft_size;
}

Waveform ofdm_modulate(const ResourceGrid& grid, const FrameGeometry& g) {
  if (grid.n_subcarriers() != g.n_subcarriers || grid.n_symbols() != g.symbols_per_slot)
    throw DomainError("ofdm_modulate: grid does not match the frame geometry");
  Waveform wave;
  wave.sample_rate_hz = g.sample_rate_hz;
  CVec& out = wave.antennas.emplace_back();
  out.reserve(static_cast<std::size_t>(g.slot_samples(grid.slot())));

  const std::size_t n = static_cast<std::size_t>(g.fft_size);
  CVec bins(n);
  for (int l = 0; l < grid.n_symbols(); ++l) {
    std::fill(bins.begin(), bins.end(), cf64{});
    for (int k = 0; k < g.n_subcarriers; ++k)
      bins[static_cast<std::size_t>(subcarrier_to_bin(k, g))] = grid.at(k, l);
    fft_inplace(bins, true);
    const int cp = g.cp_length(grid.slot() * g.symbols_per_slot + l);
    out.insert(out.end(), bins.end() - cp, bins.end());
    out.insert(out.end(), bins.begin(), bins.end());
  }
  return wave;
}

ResourceGrid ofdm_demodulate(std::span<const cf64> samples, const FrameGeometry& g, int slot) {
  const int expected = g.slot_samples(slot);
  if (static_cast<int>(samples.size()) != expected)
    throw DomainError("ofdm_demodulate: expected " + std::to_string(expected) + " samples, got " +
                      std::to_string(samples.size()));
  ResourceGrid grid(g.n_subcarriers, g.symbols_per_slot, slot);
  const std::size_t n = static_cast<std::size_t>(g.fft_size);
  CVec bins(n);
  std::size_t pos = 0;
  for (int l = 0; l < g.symbols_per_slot; ++l) {
    pos += static_cast<std::size_t>(g.cp_length(slot * g.symbols_per_slot + l));
    std::copy_n(samples.begin() + static_cast<std::ptrdiff_t>(pos), n, bins.begin());
    pos += n;
    fft_inplace(bins, false);
    for (int k = 0; k < g.n_subcarriers; ++k)
      grid.at(k, l) = bins[static_cast<std::size_t>(subcarrier_to_bin(k, g))];
  }
  return grid;
}

}  // namespace v2x

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "v2xsim/numerology.hpp"
#include "v2xsim/types.hpp"

namespace v2x {

// ---------------------------------------------------------------- constellations

enum class Modulation { Qpsk = 2, Qam16 = 4 };

inline int bits_per_symbol(Modulation m) { return static_cast<int>(m); }
std::string to_string(Modulation m);

// Gray-mapped, unit average power.
CVec qam_map(std::span<const std::uint8_t> bits, Modulation m);
// Max-log LLRs scaled by 1/noise_var, one noise variance per symbol.
Llrs llr_demap(std::span<const cf64> symbols, std::span<const double> noise_var, Modulation m);
Llrs llr_demap(std::span<const cf64> symbols, double noise_var, Modulation m);
// All constellation points, indexed by the integer formed from the bits
// (first bit most significant).
const CVec& constellation(Modulation m);

// ---------------------------------------------------------------- DFT

// Blockwise unitary m-point DFT (transform precoding) and its inverse.
CVec dft_precode(std::span<const cf64> symbols, int m);
CVec dft_deprecode(std::span<const cf64> symbols, int m);

// Unitary FFT/IFFT of arbitrary length.
void fft_inplace(std::span<cf64> data, bool inverse);

// ---------------------------------------------------------------- DMRS

inline constexpr int kCyclicShifts[4] = {0, 3, 6, 9};
bool valid_cyclic_shift(int shift);

// Constant-amplitude reference sequence for an allocation of n_prb PRBs:
// cyclically extended Zadoff-Chu base, phase-ramped by exp(j*2*pi*shift*k/12).
CVec dmrs_generate(int n_prb, int shift);

// ---------------------------------------------------------------- resource grid

// Placement of control and shared channels in one slot.
struct SlotLayout {
  int pscch_prb_start = 0;
  int pscch_n_prb = 2;
  int pssch_prb_start = 2;
  int pssch_n_prb = 8;
  std::vector<int> dmrs_symbols;  // slot-relative
  std::vector<int> data_symbols;  // slot-relative, complement of dmrs_symbols

  int pscch_re_count() const;
  int pssch_re_count() const;
};

// Default layout: PSCCH and PSSCH adjacent, centred in the carrier, DMRS on
// symbols {2,5,8,11} (normal CP) or {1,4,7,10} (extended CP).
SlotLayout default_layout(const FrameGeometry& g, int pssch_n_prb = 8);

// One slot of resource elements, subcarrier-major: cell(k, l).
class ResourceGrid {
 public:
  ResourceGrid() = default;
  ResourceGrid(int n_subcarriers, int n_symbols, int slot = 0);

  int n_subcarriers() const { return n_subcarriers_; }
  int n_symbols() const { return n_symbols_; }
  // Slot index within the subframe, used to select CP lengths.
  int slot() const { return slot_; }

  cf64& at(int k, int l) { return cells_[index(k, l)]; }
  const cf64& at(int k, int l) const { return cells_[index(k, l)]; }
  std::span<const cf64> cells() const { return cells_; }
  std::span<cf64> cells() { return cells_; }
  double energy() const;

 private:
  std::size_t index(int k, int l) const {
    return static_cast<std::size_t>(l) * static_cast<std::size_t>(n_subcarriers_) +
           static_cast<std::size_t>(k);
  }
  int n_subcarriers_ = 0;
  int n_symbols_ = 0;
  int slot_ = 0;
  CVec cells_;
};

// `control` carries pscch_re_count() symbols and `data` pssch_re_count(),
// both in time order (symbol by symbol, subcarrier within symbol).
ResourceGrid map_subframe(std::span<const cf64> control, std::span<const cf64> data,
                          std::span<const cf64> pscch_dmrs, std::span<const cf64> pssch_dmrs,
                          const SlotLayout& layout, const FrameGeometry& g, int slot = 0);

// Data cells of a PRB range, in the same order map_subframe consumes them.
CVec extract_region(const ResourceGrid& grid, int prb_start, int n_prb,
                    std::span<const int> symbols);

// ---------------------------------------------------------------- OFDM

struct Waveform {
  double sample_rate_hz = 0.0;
  std::vector<CVec> antennas;  // one sample stream per antenna

  std::size_t n_samples() const { return antennas.empty() ? 0 : antennas.front().size(); }
};

// Maps subcarrier k of the grid to an FFT bin (centred; LTE skips DC).
int subcarrier_to_bin(int k, const FrameGeometry& g);

// Unitary IFFT per symbol with CP prepended. Single-antenna output.
Waveform ofdm_modulate(const ResourceGrid& grid, const FrameGeometry& g);
// Inverse for one antenna stream; throws DomainError on a length mismatch.
ResourceGrid ofdm_demodulate(std::span<const cf64> samples, const FrameGeometry& g, int slot = 0);

// ---------------------------------------------------------------- debug dumps

// Little-endian layout:
//   magic "V2XG" | u32 version=1 | u32 n_subcarriers | u32 n_symbols |
//   f64 sample_rate_hz | n_subcarriers*n_symbols * (f64 re, f64 im)
//   (symbol-major; sample_rate_hz is that of the matching waveform)
//   magic "V2XW" | u32 version=1 | u32 n_antennas | u32 n_samples |
//   f64 sample_rate_hz | n_antennas*n_samples * (f64 re, f64 im)
void write_grid_dump(const std::string& path, const ResourceGrid& grid, double sample_rate_hz);
void write_waveform_dump(const std::string& path, const Waveform& wave);
ResourceGrid read_grid_dump(const std::string& path, double* sample_rate_hz = nullptr);
Waveform read_waveform_dump(const std::string& path);

}  // namespace v2x

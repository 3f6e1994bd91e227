#include "v2xsim/numerology.hpp"

#include <array>
#include <cmath>
#include <bit>
#include <map>
#include <utility>

#include "v2xsim/error.hpp"

namespace v2x {

namespace {

void check_mu(int mu) {
  if (mu < 0 || mu > kMaxMu)
    throw DomainError("numerology mu must be in {0,1,2,3}, got " + std::to_string(mu));
}

// Transmission bandwidth configuration (PRB count) per channel bandwidth in
// MHz. NR columns are indexed by mu; 0 marks an unsupported combination.
const std::map<int, std::array<int, 4>>& nr_prb_table() {
  static const std::map<int, std::array<int, 4>> table = {
      {5, {25, 11, 0, 0}},
      {10, {52, 24, 11, 0}},
      {20, {106, 51, 24, 11}},
  };
  return table;
}

const std::map<int, int>& lte_prb_table() {
  static const std::map<int, int> table = {{5, 25}, {10, 50}, {15, 75}, {20, 100}};
  return table;
}

}  // namespace

Numerology::Numerology(int mu, CpType cp) : mu_(mu), cp_(cp) {
  check_mu(mu);
  if (cp == CpType::Extended && mu != 2)
    throw DomainError("extended CP is only defined for mu = 2 (60 kHz)");
}

int scs_khz(int mu) {
  check_mu(mu);
  return 15 << mu;
}

SlotStructure slot_structure(int mu) {
  check_mu(mu);
  return {1 << mu, 1.0 / static_cast<double>(1 << mu)};
}

int prb_width_khz(const Numerology& num) { return 12 * scs_khz(num.mu()); }

std::vector<int> long_cp_symbol_indices(int mu) {
  check_mu(mu);
  return {0, 7 << mu};
}

std::int64_t cp_samples(const Numerology& num, int l) {
  const int mu = num.mu();
  const std::int64_t k = TimeBase::kappa;
  if (l < 0 || l >= num.symbols_per_subframe())
    throw DomainError("symbol index " + std::to_string(l) + " outside the subframe");
  if (num.cp() == CpType::Extended) return (512 * k) >> mu;
  const std::int64_t base = (144 * k) >> mu;
  if (l == 0 || l == (7 << mu)) return base + 16 * k;
  return base;
}

std::int64_t useful_samples(const Numerology& num) {
  return (2048 * TimeBase::kappa) >> num.mu();
}

double cp_duration(const Numerology& num, int l) {
  return static_cast<double>(cp_samples(num, l)) * TimeBase::t_c;
}

std::int64_t subframe_length_tc(const Numerology& num) {
  std::int64_t total = 0;
  for (int l = 0; l < num.symbols_per_subframe(); ++l)
    total += cp_samples(num, l) + useful_samples(num);
  return total;
}

std::int64_t FrameGeometry::tc_per_sample() const {
  return useful_samples(numerology) / fft_size;
}

int FrameGeometry::cp_length(int l) const {
  return static_cast<int>(cp_samples(numerology, l) / tc_per_sample());
}

int FrameGeometry::slot_samples(int slot) const {
  int total = 0;
  for (int s = 0; s < symbols_per_slot; ++s)
    total += cp_length(slot * symbols_per_slot + s) + fft_size;
  return total;
}

int FrameGeometry::subframe_samples() const {
  int total = 0;
  for (int slot = 0; slot < slots_per_subframe; ++slot) total += slot_samples(slot);
  return total;
}

FrameGeometry grid_geometry(double bandwidth_hz, const Numerology& num, Mode mode) {
  const int bw_mhz = static_cast<int>(bandwidth_hz / 1e6 + 0.5);
  if (std::abs(bandwidth_hz - bw_mhz * 1e6) > 1.0)
    throw ConfigError("unsupported channel bandwidth " + std::to_string(bandwidth_hz) + " Hz");

  int n_prb = 0;
  if (mode == Mode::Lte) {
    if (num.mu() != 0 || num.cp() != CpType::Normal)
      throw ConfigError("LTE mode supports only 15 kHz with normal CP");
    auto it = lte_prb_table().find(bw_mhz);
    if (it != lte_prb_table().end()) n_prb = it->second;
  } else {
    auto it = nr_prb_table().find(bw_mhz);
    if (it != nr_prb_table().end()) n_prb = it->second[static_cast<std::size_t>(num.mu())];
  }
  if (n_prb == 0)
    throw ConfigError("no PRB configuration for " + std::to_string(bw_mhz) + " MHz at " +
                      std::to_string(scs_khz(num.mu())) + " kHz in " + to_string(mode) + " mode");

  FrameGeometry g;
  g.mode = mode;
  g.numerology = num;
  g.bandwidth_hz = bandwidth_hz;
  g.scs_khz = scs_khz(num.mu());
  g.slots_per_subframe = num.slots_per_subframe();
  g.symbols_per_slot = num.symbols_per_slot();
  g.n_prb = n_prb;
  g.n_subcarriers = 12 * n_prb;
  // LTE leaves the DC bin empty, so it needs one extra bin.
  const int bins = g.n_subcarriers + (mode == Mode::Lte ? 1 : 0);
  g.fft_size = static_cast<int>(std::bit_ceil(static_cast<unsigned>(bins)));
  g.sample_rate_hz = static_cast<double>(g.fft_size) * g.scs_khz * 1e3;
  if (num.cp() == CpType::Normal) g.long_cp_symbols = long_cp_symbol_indices(num.mu());
  // CP lengths must be whole samples; holds for fft_size >= 128.
  if (useful_samples(num) % g.fft_size != 0 ||
      (16 * TimeBase::kappa) % g.tc_per_sample() != 0)
    throw ConfigError("FFT size too small for integer CP lengths");
  return g;
}

std::string to_string(Mode mode) { return mode == Mode::Lte ? "LTE" : "NR"; }
std::string to_string(CpType cp) { return cp == CpType::Normal ? "normal" : "extended"; }

}  // namespace v2x

#include <bit>
#include <cstring>
#include <fstream>

#include "v2xsim/error.hpp"
#include "v2xsim/modem.hpp"

namespace v2x {

namespace {

constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  os.write(b, 4);
}

void put_f64(std::ostream& os, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  os.write(b, 8);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw IoError("dump: truncated file");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw IoError("dump: truncated file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return std::bit_cast<double>(v);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path, const char* magic) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  char m[4];
  if (!is.read(m, 4) || std::memcmp(m, magic, 4) != 0) throw IoError(path + ": bad magic");
  if (get_u32(is) != kVersion) throw IoError(path + ": unsupported version");
  return is;
}

}  // namespace

void write_grid_dump(const std::string& path, const ResourceGrid& grid, double sample_rate_hz) {
  auto os = open_out(path);
  os.write("V2XG", 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(grid.n_subcarriers()));
  put_u32(os, static_cast<std::uint32_t>(grid.n_symbols()));
  put_f64(os, sample_rate_hz);
  for (const cf64& c : grid.cells()) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
  if (!os) throw IoError("write failed: " + path);
}

void write_waveform_dump(const std::string& path, const Waveform& wave) {
  auto os = open_out(path);
  os.write("V2XW", 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(wave.antennas.size()));
  put_u32(os, static_cast<std::uint32_t>(wave.n_samples()));
  put_f64(os, wave.sample_rate_hz);
  for (const CVec& ant : wave.antennas)
    for (const cf64& s : ant) {
      put_f64(os, s.real());
      put_f64(os, s.imag());
    }
  if (!os) throw IoError("write failed: " + path);
}

ResourceGrid read_grid_dump(const std::string& path, double* sample_rate_hz) {
  auto is = open_in(path, "V2XG");
  const int n_sc = static_cast<int>(get_u32(is));
  const int n_sym = static_cast<int>(get_u32(is));
  const double rate = get_f64(is);
  if (sample_rate_hz) *sample_rate_hz = rate;
  ResourceGrid grid(n_sc, n_sym);
  for (cf64& c : grid.cells()) {
    const double re = get_f64(is);
    c = {re, get_f64(is)};
  }
  return grid;
}

Waveform read_waveform_dump(const std::string& path) {
  auto is = open_in(path, "V2XW");
  const std::size_t n_ant = get_u32(is);
  const std::size_t n = get_u32(is);
  Waveform wave;
  wave.sample_rate_hz = get_f64(is);
  wave.antennas.assign(n_ant, CVec(n));
  for (CVec& ant : wave.antennas)
    for (cf64& s : ant) {
      const double re = get_f64(is);
      s = {re, get_f64(is)};
    }
  return wave;
}

}  // namespace v2x

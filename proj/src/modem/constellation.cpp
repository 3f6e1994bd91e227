#include <cmath>
#include <limits>

#include "v2xsim/error.hpp"
#include "v2xsim/modem.hpp"

namespace v2x {

std::string to_string(Modulation m) { return m == Modulation::Qpsk ? "QPSK" : "16QAM"; }

const CVec& constellation(Modulation m) {
  static const CVec qpsk = [] {
    CVec pts(4);
    const double a = 1.0 / std::sqrt(2.0);
    for (unsigned i = 0; i < 4; ++i)
      pts[i] = {(i & 2u) ? -a : a, (i & 1u) ? -a : a};
    return pts;
  }();
  // b0: I sign, b1: Q sign, b2: I amplitude, b3: Q amplitude.
  static const CVec qam16 = [] {
    CVec pts(16);
    const double s = 1.0 / std::sqrt(10.0);
    for (unsigned i = 0; i < 16; ++i) {
      const double re = ((i & 8u) ? -1.0 : 1.0) * ((i & 2u) ? 3.0 : 1.0);
      const double im = ((i & 4u) ? -1.0 : 1.0) * ((i & 1u) ? 3.0 : 1.0);
      pts[i] = {re * s, im * s};
    }
    return pts;
  }();
  return m == Modulation::Qpsk ? qpsk : qam16;
}

CVec qam_map(std::span<const std::uint8_t> bits, Modulation m) {
  const std::size_t q = static_cast<std::size_t>(bits_per_symbol(m));
  if (bits.size() % q != 0)
    throw DomainError("qam_map: bit count " + std::to_string(bits.size()) +
                      " is not a multiple of " + std::to_string(q));
  const CVec& pts = constellation(m);
  CVec out(bits.size() / q);
  for (std::size_t n = 0; n < out.size(); ++n) {
    unsigned idx = 0;
    for (std::size_t b = 0; b < q; ++b) idx = (idx << 1) | (bits[n * q + b] & 1u);
    out[n] = pts[idx];
  }
  return out;
}

Llrs llr_demap(std::span<const cf64> symbols, std::span<const double> noise_var, Modulation m) {
  if (noise_var.size() != symbols.size())
    throw DomainError("llr_demap: one noise variance per symbol required");
  const int q = bits_per_symbol(m);
  const CVec& pts = constellation(m);
  Llrs out(symbols.size() * static_cast<std::size_t>(q));
  for (std::size_t n = 0; n < symbols.size(); ++n) {
    double d0[4], d1[4];
    for (int b = 0; b < q; ++b) d0[b] = d1[b] = std::numeric_limits<double>::infinity();
    for (unsigned idx = 0; idx < pts.size(); ++idx) {
      const double d = std::norm(symbols[n] - pts[idx]);
      for (int b = 0; b < q; ++b) {
        if ((idx >> (q - 1 - b)) & 1u)
          d1[b] = std::min(d1[b], d);
        else
          d0[b] = std::min(d0[b], d);
      }
    }
    const double inv = 1.0 / noise_var[n];
    for (int b = 0; b < q; ++b) out[n * static_cast<std::size_t>(q) + static_cast<std::size_t>(b)] = (d1[b] - d0[b]) * inv;
  }
  return out;
}

Llrs llr_demap(std::span<const cf64> symbols, double noise_var, Modulation m) {
  if (!(noise_var > 0.0)) throw DomainError("llr_demap: noise variance must be positive");
  const std::vector<double> nv(symbols.size(), noise_var);
  return llr_demap(symbols, nv, m);
}

}  // namespace v2x

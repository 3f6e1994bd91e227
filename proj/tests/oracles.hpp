#pragma once

// Independent reference implementations used to cross-check the library.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "v2xsim/coding.hpp"

namespace oracle {

using Bits = std::vector<std::uint8_t>;

inline Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1U);
  return b;
}

// Generator coefficients from x^L down to x^0.
inline Bits crc_poly(v2x::CrcKind kind) {
  if (kind == v2x::CrcKind::Crc16) return {1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  // x^24+x^23+x^18+x^17+x^14+x^11+x^10+x^7+x^6+x^5+x^4+x^3+x+1
  Bits g(25, 0);
  for (int e : {24, 23, 18, 17, 14, 11, 10, 7, 6, 5, 4, 3, 1, 0}) g[static_cast<std::size_t>(24 - e)] = 1;
  return g;
}

// Remainder of bits(x)*x^L divided by g(x), by schoolbook long division.
inline Bits crc_long_division(const Bits& bits, v2x::CrcKind kind) {
  const Bits g = crc_poly(kind);
  const std::size_t l = g.size() - 1;
  Bits work = bits;
  work.resize(bits.size() + l, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (work[i])
      for (std::size_t j = 0; j < g.size(); ++j) work[i + j] ^= g[j];
  return Bits(work.end() - static_cast<std::ptrdiff_t>(l), work.end());
}

// Tail-biting K=7 encoder as an explicit shift register loaded with the
// last six input bits. Octal generators 133, 171, 165.
inline Bits conv_shift_register(const Bits& in) {
  const int taps[3][7] = {{1, 0, 1, 1, 0, 1, 1}, {1, 1, 1, 1, 0, 0, 1}, {1, 1, 1, 0, 1, 0, 1}};
  const std::size_t k = in.size();
  int reg[6];
  for (int i = 0; i < 6; ++i) reg[i] = in[(k - 1 - static_cast<std::size_t>(i)) % k];
  Bits d[3];
  for (std::size_t n = 0; n < k; ++n) {
    for (int s = 0; s < 3; ++s) {
      int acc = taps[s][0] * in[n];
      for (int i = 0; i < 6; ++i) acc ^= taps[s][i + 1] * reg[i];
      d[s].push_back(static_cast<std::uint8_t>(acc & 1));
    }
    for (int i = 5; i > 0; --i) reg[i] = reg[i - 1];
    reg[0] = in[n];
  }
  Bits out;
  for (auto& s : d) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// One recursive systematic constituent: feedback 1+D^2+D^3, parity 1+D+D^3.
// Returns systematic and parity streams including three termination steps.
struct RscOut {
  Bits x, z;
};

inline RscOut rsc(const Bits& in) {
  int s1 = 0, s2 = 0, s3 = 0;
  RscOut o;
  for (std::uint8_t u : in) {
    const int a = u ^ s2 ^ s3;
    o.x.push_back(u);
    o.z.push_back(static_cast<std::uint8_t>(a ^ s1 ^ s3));
    s3 = s2;
    s2 = s1;
    s1 = a;
  }
  for (int t = 0; t < 3; ++t) {
    const int u = s2 ^ s3;  // drives the feedback node to zero
    o.x.push_back(static_cast<std::uint8_t>(u));
    o.z.push_back(static_cast<std::uint8_t>(s1 ^ s3));
    s3 = s2;
    s2 = s1;
    s1 = 0;
  }
  return o;
}

// Parallel concatenation with termination bits multiplexed as in the LTE
// layout: d0|d1|d2, K+4 bits each.
inline Bits turbo_straight_line(const Bits& in, const std::vector<int>& pi) {
  const std::size_t k = in.size();
  Bits inter(k);
  for (std::size_t i = 0; i < k; ++i) inter[i] = in[static_cast<std::size_t>(pi[i])];
  const RscOut a = rsc(in), b = rsc(inter);
  Bits d0(in), d1(a.z.begin(), a.z.begin() + static_cast<std::ptrdiff_t>(k)),
      d2(b.z.begin(), b.z.begin() + static_cast<std::ptrdiff_t>(k));
  d0.insert(d0.end(), {a.x[k], a.z[k + 1], b.x[k], b.z[k + 1]});
  d1.insert(d1.end(), {a.z[k], a.x[k + 2], b.z[k], b.x[k + 2]});
  d2.insert(d2.end(), {a.x[k + 1], a.z[k + 2], b.x[k + 1], b.z[k + 2]});
  Bits out = d0;
  out.insert(out.end(), d1.begin(), d1.end());
  out.insert(out.end(), d2.begin(), d2.end());
  return out;
}

inline std::vector<double> bpsk_llrs(const Bits& bits, double magnitude = 10.0) {
  std::vector<double> l(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) l[i] = bits[i] ? -magnitude : magnitude;
  return l;
}

}  // namespace oracle

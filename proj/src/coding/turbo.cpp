#include <algorithm>
#include <array>
#include <limits>

#include "v2xsim/coding.hpp"
#include "v2xsim/error.hpp"

namespace v2x {

namespace {

struct QppEntry {
  int k, f1, f2;
};

// Code-block sizes and QPP interleaver coefficients.
constexpr std::array<QppEntry, 188> kQpp = {{
    {40, 3, 10},      {48, 7, 12},      {56, 19, 42},     {64, 7, 16},      {72, 7, 18},
    {80, 11, 20},     {88, 5, 22},      {96, 11, 24},     {104, 7, 26},     {112, 41, 84},
    {120, 103, 90},   {128, 15, 32},    {136, 9, 34},     {144, 17, 108},   {152, 9, 38},
    {160, 21, 120},   {168, 101, 84},   {176, 21, 44},    {184, 57, 46},    {192, 23, 48},
    {200, 13, 50},    {208, 27, 52},    {216, 11, 36},    {224, 27, 56},    {232, 85, 58},
    {240, 29, 60},    {248, 33, 62},    {256, 15, 32},    {264, 17, 198},   {272, 33, 68},
    {280, 103, 210},  {288, 19, 36},    {296, 19, 74},    {304, 37, 76},    {312, 19, 78},
    {320, 21, 120},   {328, 21, 82},    {336, 115, 84},   {344, 193, 86},   {352, 21, 44},
    {360, 133, 90},   {368, 81, 46},    {376, 45, 94},    {384, 23, 48},    {392, 243, 98},
    {400, 151, 40},   {408, 155, 102},  {416, 25, 52},    {424, 51, 106},   {432, 47, 72},
    {440, 91, 110},   {448, 29, 168},   {456, 29, 114},   {464, 247, 58},   {472, 29, 118},
    {480, 89, 180},   {488, 91, 122},   {496, 157, 62},   {504, 55, 84},    {512, 31, 64},
    {528, 17, 66},    {544, 35, 68},    {560, 227, 420},  {576, 65, 96},    {592, 19, 74},
    {608, 37, 76},    {624, 41, 234},   {640, 39, 80},    {656, 185, 82},   {672, 43, 252},
    {688, 21, 86},    {704, 155, 44},   {720, 79, 120},   {736, 139, 92},   {752, 23, 94},
    {768, 217, 48},   {784, 25, 98},    {800, 17, 80},    {816, 127, 102},  {832, 25, 52},
    {848, 239, 106},  {864, 17, 48},    {880, 137, 110},  {896, 215, 112},  {912, 29, 114},
    {928, 15, 58},    {944, 147, 118},  {960, 29, 60},    {976, 59, 122},   {992, 65, 124},
    {1008, 55, 84},   {1024, 31, 64},   {1056, 17, 66},   {1088, 171, 204}, {1120, 67, 140},
    {1152, 35, 72},   {1184, 19, 74},   {1216, 39, 76},   {1248, 19, 78},   {1280, 199, 240},
    {1312, 21, 82},   {1344, 211, 252}, {1376, 21, 86},   {1408, 43, 88},   {1440, 149, 60},
    {1472, 45, 92},   {1504, 49, 846},  {1536, 71, 48},   {1568, 13, 28},   {1600, 17, 80},
    {1632, 25, 102},  {1664, 183, 104}, {1696, 55, 954},  {1728, 127, 96},  {1760, 27, 110},
    {1792, 29, 112},  {1824, 29, 114},  {1856, 57, 116},  {1888, 45, 354},  {1920, 31, 120},
    {1952, 59, 610},  {1984, 185, 124}, {2016, 113, 420}, {2048, 31, 64},   {2112, 17, 66},
    {2176, 171, 136}, {2240, 209, 420}, {2304, 253, 216}, {2368, 367, 444}, {2432, 265, 456},
    {2496, 181, 468}, {2560, 39, 80},   {2624, 27, 164},  {2688, 127, 504}, {2752, 143, 172},
    {2816, 43, 88},   {2880, 29, 300},  {2944, 45, 92},   {3008, 157, 188}, {3072, 47, 96},
    {3136, 13, 28},   {3200, 111, 240}, {3264, 443, 204}, {3328, 51, 104},  {3392, 51, 212},
    {3456, 451, 192}, {3520, 257, 220}, {3584, 57, 336},  {3648, 313, 228}, {3712, 271, 232},
    {3776, 179, 236}, {3840, 331, 120}, {3904, 363, 244}, {3968, 375, 248}, {4032, 127, 168},
    {4096, 31, 64},   {4160, 33, 130},  {4224, 43, 264},  {4288, 33, 134},  {4352, 477, 408},
    {4416, 35, 138},  {4480, 233, 280}, {4544, 357, 142}, {4608, 337, 480}, {4672, 37, 146},
    {4736, 71, 444},  {4800, 71, 120},  {4864, 37, 152},  {4928, 39, 462},  {4992, 127, 234},
    {5056, 39, 158},  {5120, 39, 80},   {5184, 31, 96},   {5248, 113, 902}, {5312, 41, 166},
    {5376, 251, 336}, {5440, 43, 170},  {5504, 21, 86},   {5568, 43, 174},  {5632, 45, 176},
    {5696, 45, 178},  {5760, 161, 120}, {5824, 89, 182},  {5888, 323, 184}, {5952, 47, 186},
    {6016, 23, 94},   {6080, 47, 190},  {6144, 263, 480},
}};

const QppEntry* find_entry(int k) {
  auto it = std::lower_bound(kQpp.begin(), kQpp.end(), k,
                             [](const QppEntry& e, int v) { return e.k < v; });
  return (it != kQpp.end() && it->k == k) ? &*it : nullptr;
}

// Constituent RSC: feedback 1 + D^2 + D^3, parity 1 + D + D^3.
// State bits: s1 (bit 2), s2 (bit 1), s3 (bit 0).
struct Trellis {
  std::array<std::array<std::uint8_t, 2>, 8> next{};    // [state][input]
  std::array<std::array<std::uint8_t, 2>, 8> parity{};  // [state][input]
  std::array<std::uint8_t, 8> tail_input{};             // input that zeroes the feedback

  Trellis() {
    for (unsigned s = 0; s < 8; ++s) {
      const unsigned s1 = (s >> 2) & 1u, s2 = (s >> 1) & 1u, s3 = s & 1u;
      for (unsigned u = 0; u < 2; ++u) {
        const unsigned a = u ^ s2 ^ s3;
        parity[s][u] = static_cast<std::uint8_t>(a ^ s1 ^ s3);
        next[s][u] = static_cast<std::uint8_t>((a << 2) | (s1 << 1) | s2);
      }
      tail_input[s] = static_cast<std::uint8_t>(s2 ^ s3);
    }
  }
};

const Trellis& trellis() {
  static const Trellis t;
  return t;
}

struct RscOutput {
  Bits parity;              // K parity bits
  std::array<std::uint8_t, 3> tail_x{};
  std::array<std::uint8_t, 3> tail_z{};
};

RscOutput rsc_encode(std::span<const std::uint8_t> bits) {
  const Trellis& t = trellis();
  RscOutput out;
  out.parity.resize(bits.size());
  unsigned s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const unsigned u = bits[i] & 1u;
    out.parity[i] = t.parity[s][u];
    s = t.next[s][u];
  }
  for (int i = 0; i < 3; ++i) {
    const unsigned u = t.tail_input[s];
    out.tail_x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(u);
    out.tail_z[static_cast<std::size_t>(i)] = t.parity[s][u];
    s = t.next[s][u];
  }
  return out;
}

constexpr double kNegInf = -1e300;

// Max-log-MAP soft-in soft-out decoder for one constituent code. `sys` and
// `par` have K+3 entries (the last three are trellis termination), `apriori`
// has K. Writes the extrinsic LLRs for the K information bits.
void siso_decode(std::span<const double> sys, std::span<const double> par,
                 std::span<const double> apriori, std::span<double> extrinsic,
                 std::vector<std::array<double, 8>>& alpha) {
  const Trellis& t = trellis();
  const std::size_t k = apriori.size();
  const std::size_t steps = k + 3;
  alpha.resize(steps + 1);

  auto gamma = [&](std::size_t i, unsigned s, unsigned u) {
    const double ls = sys[i] + (i < k ? apriori[i] : 0.0);
    const double x = u ? -0.5 : 0.5;
    const double z = t.parity[s][u] ? -0.5 : 0.5;
    return x * ls + z * par[i];
  };

  alpha[0].fill(kNegInf);
  alpha[0][0] = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    auto& a = alpha[i + 1];
    a.fill(kNegInf);
    for (unsigned s = 0; s < 8; ++s) {
      const double as = alpha[i][s];
      if (as <= kNegInf) continue;
      for (unsigned u = 0; u < 2; ++u) {
        if (i >= k && u != t.tail_input[s]) continue;
        const unsigned ns = t.next[s][u];
        a[ns] = std::max(a[ns], as + gamma(i, s, u));
      }
    }
    const double top = *std::max_element(a.begin(), a.end());
    for (double& v : a) v -= top;
  }

  std::array<double, 8> beta;
  beta.fill(kNegInf);
  beta[0] = 0.0;
  for (std::size_t i = steps; i-- > 0;) {
    std::array<double, 8> prev;
    prev.fill(kNegInf);
    double best0 = kNegInf, best1 = kNegInf;
    for (unsigned s = 0; s < 8; ++s) {
      for (unsigned u = 0; u < 2; ++u) {
        if (i >= k && u != t.tail_input[s]) continue;
        const unsigned ns = t.next[s][u];
        if (beta[ns] <= kNegInf) continue;
        const double g = gamma(i, s, u);
        prev[s] = std::max(prev[s], g + beta[ns]);
        if (i < k) {
          const double m = alpha[i][s] + g + beta[ns];
          if (u == 0)
            best0 = std::max(best0, m);
          else
            best1 = std::max(best1, m);
        }
      }
    }
    if (i < k) extrinsic[i] = (best0 - best1) - sys[i] - apriori[i];
    const double top = *std::max_element(prev.begin(), prev.end());
    for (unsigned s = 0; s < 8; ++s) beta[s] = prev[s] - top;
  }
}

}  // namespace

const std::vector<int>& turbo_block_sizes() {
  static const std::vector<int> sizes = [] {
    std::vector<int> v;
    for (const auto& e : kQpp) v.push_back(e.k);
    return v;
  }();
  return sizes;
}

bool turbo_block_size_supported(int k) { return find_entry(k) != nullptr; }

std::optional<int> turbo_block_size_at_least(int k) {
  auto it = std::lower_bound(kQpp.begin(), kQpp.end(), k,
                             [](const QppEntry& e, int v) { return e.k < v; });
  if (it == kQpp.end()) return std::nullopt;
  return it->k;
}

std::vector<int> qpp_interleaver(int k) {
  const QppEntry* e = find_entry(k);
  if (!e) throw DomainError("unsupported turbo code-block size " + std::to_string(k));
  std::vector<int> pi(static_cast<std::size_t>(k));
  const std::int64_t kk = k;
  for (std::int64_t i = 0; i < kk; ++i)
    pi[static_cast<std::size_t>(i)] =
        static_cast<int>((e->f1 * i + ((e->f2 * i) % kk) * i) % kk);
  return pi;
}

Bits turbo_encode(std::span<const std::uint8_t> bits) {
  const int k = static_cast<int>(bits.size());
  const auto pi = qpp_interleaver(k);
  Bits interleaved(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    interleaved[i] = bits[static_cast<std::size_t>(pi[i])];

  const RscOutput e1 = rsc_encode(bits);
  const RscOutput e2 = rsc_encode(interleaved);

  const std::size_t d = bits.size() + 4;
  Bits out(3 * d);
  std::uint8_t* d0 = out.data();
  std::uint8_t* d1 = d0 + d;
  std::uint8_t* d2 = d1 + d;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    d0[i] = bits[i] & 1u;
    d1[i] = e1.parity[i];
    d2[i] = e2.parity[i];
  }
  const std::size_t K = bits.size();
  d0[K] = e1.tail_x[0];     d1[K] = e1.tail_z[0];     d2[K] = e1.tail_x[1];
  d0[K + 1] = e1.tail_z[1]; d1[K + 1] = e1.tail_x[2]; d2[K + 1] = e1.tail_z[2];
  d0[K + 2] = e2.tail_x[0]; d1[K + 2] = e2.tail_z[0]; d2[K + 2] = e2.tail_x[1];
  d0[K + 3] = e2.tail_z[1]; d1[K + 3] = e2.tail_x[2]; d2[K + 3] = e2.tail_z[2];
  return out;
}

TurboDecodeResult turbo_decode(std::span<const double> llrs, int max_iterations,
                               std::optional<CrcKind> stop_crc, double extrinsic_scale) {
  if (llrs.size() < 3 * 44 || llrs.size() % 3 != 0)
    throw DomainError("turbo_decode: soft length must be 3*K+12");
  const std::size_t d = llrs.size() / 3;
  const std::size_t k = d - 4;
  const auto pi = qpp_interleaver(static_cast<int>(k));

  const double* d0 = llrs.data();
  const double* d1 = d0 + d;
  const double* d2 = d1 + d;

  std::vector<double> sys1(k + 3), par1(k + 3), sys2(k + 3), par2(k + 3);
  for (std::size_t i = 0; i < k; ++i) {
    sys1[i] = d0[i];
    par1[i] = d1[i];
    sys2[i] = d0[pi[i]];
    par2[i] = d2[i];
  }
  sys1[k] = d0[k];     par1[k] = d1[k];
  sys1[k + 1] = d2[k]; par1[k + 1] = d0[k + 1];
  sys1[k + 2] = d1[k + 1]; par1[k + 2] = d2[k + 1];
  sys2[k] = d0[k + 2]; par2[k] = d1[k + 2];
  sys2[k + 1] = d2[k + 2]; par2[k + 1] = d0[k + 3];
  sys2[k + 2] = d1[k + 3]; par2[k + 2] = d2[k + 3];

  std::vector<double> apriori1(k, 0.0), extr1(k), apriori2(k), extr2(k);
  std::vector<std::array<double, 8>> alpha;
  TurboDecodeResult result;
  result.bits.assign(k, 0);

  const int iterations = std::max(1, max_iterations);
  for (int it = 1; it <= iterations; ++it) {
    siso_decode(sys1, par1, apriori1, extr1, alpha);
    for (std::size_t i = 0; i < k; ++i) apriori2[i] = extrinsic_scale * extr1[pi[i]];
    siso_decode(sys2, par2, apriori2, extr2, alpha);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = static_cast<std::size_t>(pi[i]);
      apriori1[j] = extrinsic_scale * extr2[i];
      const double total = sys2[i] + apriori2[i] + extr2[i];
      result.bits[j] = total < 0.0 ? 1 : 0;
    }
    result.iterations = it;
    if (stop_crc && crc_check(result.bits, *stop_crc)) break;
  }
  return result;
}

}  // namespace v2x

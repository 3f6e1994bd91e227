#include <cmath>
#include <numbers>

#include "v2xsim/error.hpp"
#include "v2xsim/modem.hpp"

namespace v2x {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool valid_cyclic_shift(int shift) {
  for (int s : kCyclicShifts)
    if (s == shift) return true;
  return false;
}

CVec dmrs_generate(int n_prb, int shift) {
  if (!valid_cyclic_shift(shift))
    throw DomainError("DMRS cyclic shift must be one of {0,3,6,9}, got " + std::to_string(shift));
  if (n_prb < 1) throw DomainError("DMRS allocation must span at least one PRB");
  const int m_sc = 12 * n_prb;
  int n_zc = m_sc - 1;
  while (!is_prime(n_zc)) --n_zc;
  const int q = std::max(1, static_cast<int>(std::lround(static_cast<double>(n_zc) / 31.0)));

  CVec out(static_cast<std::size_t>(m_sc));
  const double pi = std::numbers::pi;
  for (int n = 0; n < m_sc; ++n) {
    const long long m = n % n_zc;
    // m(m+1) reduced modulo 2*n_zc keeps the phase argument small.
    const long long arg = (static_cast<long long>(q) * m * (m + 1)) % (2LL * n_zc);
    const double base = -pi * static_cast<double>(arg) / n_zc;
    const double ramp = 2.0 * pi * shift * n / 12.0;
    out[static_cast<std::size_t>(n)] = std::polar(1.0, base + ramp);
  }
  return out;
}

}  // namespace v2x

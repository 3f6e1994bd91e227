#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "v2xsim/error.hpp"
#include "v2xsim/modem.hpp"

namespace v2x {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, bool inverse) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, inverse);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    CVec scratch(static_cast<std::size_t>(n));
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(n, p, p, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, bool>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft_inplace(std::span<cf64> data, bool inverse) {
  if (data.empty()) return;
  const int n = static_cast<int>(data.size());
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_cache().get(n, inverse), p, p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (cf64& v : data) v *= scale;
}

namespace {

CVec blockwise(std::span<const cf64> symbols, int m, bool inverse) {
  if (m <= 0 || symbols.size() % static_cast<std::size_t>(m) != 0)
    throw DomainError("DFT precoding: " + std::to_string(symbols.size()) +
                      " symbols not divisible into blocks of " + std::to_string(m));
  CVec out(symbols.begin(), symbols.end());
  for (std::size_t off = 0; off < out.size(); off += static_cast<std::size_t>(m))
    fft_inplace(std::span<cf64>(out).subspan(off, static_cast<std::size_t>(m)), inverse);
  return out;
}

}  // namespace

CVec dft_precode(std::span<const cf64> symbols, int m) { return blockwise(symbols, m, false); }
CVec dft_deprecode(std::span<const cf64> symbols, int m) { return blockwise(symbols, m, true); }

}  // namespace v2x

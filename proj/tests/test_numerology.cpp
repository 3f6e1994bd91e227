#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "v2xsim/error.hpp"
#include "v2xsim/numerology.hpp"

using namespace v2x;

TEST_CASE("subcarrier spacing") {
  CHECK(scs_khz(0) == 15);
  CHECK(scs_khz(1) == 30);
  CHECK(scs_khz(2) == 60);
  CHECK(scs_khz(3) == 120);
  CHECK_THROWS_AS(scs_khz(4), DomainError);
  CHECK_THROWS_AS(scs_khz(-1), DomainError);
}

TEST_CASE("slot structure follows the numerology table") {
  const int slots[] = {1, 2, 4, 8};
  const double dur[] = {1.0, 0.5, 0.25, 0.125};
  for (int mu = 0; mu <= 3; ++mu) {
    const SlotStructure s = slot_structure(mu);
    CHECK(s.slots_per_subframe == slots[mu]);
    CHECK(s.slot_duration_ms == dur[mu]);
    CHECK(Numerology(mu).symbols_per_slot() == 14);
  }
  CHECK(Numerology(2, CpType::Extended).symbols_per_slot() == 12);
  CHECK_THROWS_AS(slot_structure(4), DomainError);
}

TEST_CASE("scs doubles and slot halves per mu step") {
  for (int mu = 0; mu < 3; ++mu) {
    CHECK(scs_khz(mu + 1) == 2 * scs_khz(mu));
    CHECK(slot_structure(mu + 1).slot_duration_ms * 2 == slot_structure(mu).slot_duration_ms);
    CHECK(useful_samples(Numerology(mu)) == 2 * useful_samples(Numerology(mu + 1)));
  }
}

TEST_CASE("numerology validation") {
  CHECK_NOTHROW(Numerology(2, CpType::Extended));
  CHECK_THROWS_AS(Numerology(0, CpType::Extended), DomainError);
  CHECK_THROWS_AS(Numerology(1, CpType::Extended), DomainError);
  CHECK_THROWS_AS(Numerology(5), DomainError);
  CHECK(Numerology(2).fr1_applicable());
  CHECK_FALSE(Numerology(3).fr1_applicable());
}

TEST_CASE("time base") {
  CHECK(TimeBase::kappa == 64);
  CHECK(TimeBase::tc_per_ms == 1966080);
  CHECK(TimeBase::t_s / TimeBase::t_c == doctest::Approx(64.0).epsilon(1e-15));
}

TEST_CASE("long cp symbols") {
  CHECK(long_cp_symbol_indices(0) == std::vector<int>{0, 7});
  CHECK(long_cp_symbol_indices(1) == std::vector<int>{0, 14});
  CHECK(long_cp_symbol_indices(2) == std::vector<int>{0, 28});
  CHECK(long_cp_symbol_indices(3) == std::vector<int>{0, 56});
}

TEST_CASE("cp lengths in tc") {
  CHECK(cp_samples(Numerology(0), 0) == 10240);
  CHECK(cp_samples(Numerology(0), 3) == 9216);
  CHECK(cp_samples(Numerology(0), 7) == 10240);
  CHECK(cp_samples(Numerology(1), 0) == 144 * 64 / 2 + 16 * 64);
  CHECK(cp_samples(Numerology(1), 7) == 144 * 64 / 2);
  CHECK(cp_samples(Numerology(1), 14) == 144 * 64 / 2 + 16 * 64);
  for (int l = 0; l < 48; ++l) CHECK(cp_samples(Numerology(2, CpType::Extended), l) == 8192);
  CHECK_THROWS_AS(cp_samples(Numerology(0), 14), DomainError);
  CHECK_THROWS_AS(cp_samples(Numerology(0), -1), DomainError);
}

TEST_CASE("cp durations") {
  CHECK(cp_duration(Numerology(0), 0) * 1e6 == doctest::Approx(5.2083).epsilon(1e-4));
  CHECK(cp_duration(Numerology(0), 5) * 1e6 == doctest::Approx(4.6875).epsilon(1e-6));
  CHECK(cp_duration(Numerology(1), 0) * 1e6 == doctest::Approx(2.8646).epsilon(1e-4));
  // classical LTE values: 160 and 144 samples at 30.72 MHz
  CHECK(cp_duration(Numerology(0), 0) == doctest::Approx(160 / 30.72e6));
  CHECK(cp_duration(Numerology(0), 1) == doctest::Approx(144 / 30.72e6));
}

TEST_CASE("subframe closure is exact") {
  for (int mu = 0; mu <= 3; ++mu) {
    const Numerology num(mu);
    std::int64_t sum = 0;
    for (int l = 0; l < num.symbols_per_subframe(); ++l)
      sum += cp_samples(num, l) + 2048 * 64 / (1 << mu);
    CHECK(sum == TimeBase::tc_per_ms);
    CHECK(subframe_length_tc(num) == TimeBase::tc_per_ms);
  }
  CHECK(subframe_length_tc(Numerology(2, CpType::Extended)) == TimeBase::tc_per_ms);
}

TEST_CASE("cp is periodic across subframes") {
  for (int mu = 0; mu <= 3; ++mu) {
    const Numerology num(mu);
    const int n = num.symbols_per_subframe();
    for (int l = 0; l < n; ++l) CHECK(cp_samples(num, l) == cp_samples(num, l % n));
  }
}

TEST_CASE("prb width") {
  CHECK(prb_width_khz(Numerology(0)) == 180);
  CHECK(prb_width_khz(Numerology(1)) == 360);
  CHECK(prb_width_khz(Numerology(2)) == 720);
}

TEST_CASE("grid geometry at 20 MHz") {
  const FrameGeometry nr0 = grid_geometry(20e6, Numerology(0), Mode::Nr);
  CHECK(nr0.n_prb == 106);
  CHECK(nr0.n_subcarriers == 1272);
  CHECK(nr0.fft_size == 2048);
  CHECK(nr0.sample_rate_hz == 30.72e6);
  const FrameGeometry lte = grid_geometry(20e6, Numerology(0), Mode::Lte);
  CHECK(lte.n_prb == 100);
  CHECK(lte.fft_size == 2048);
  const int prbs[] = {106, 51, 24, 11};
  for (int mu = 0; mu <= 3; ++mu) {
    const FrameGeometry g = grid_geometry(20e6, Numerology(mu), Mode::Nr);
    CHECK(g.n_prb == prbs[mu]);
    CHECK(g.n_subcarriers == 12 * g.n_prb);
    CHECK(g.fft_size >= g.n_subcarriers);
    CHECK((g.fft_size & (g.fft_size - 1)) == 0);
    CHECK(g.fft_size / 2 < g.n_subcarriers);
    CHECK(g.sample_rate_hz == g.fft_size * g.scs_khz * 1e3);
    // guard band stays positive
    CHECK(20e6 - g.n_prb * prb_width_khz(Numerology(mu)) * 1e3 > 0);
    CHECK(g.slots_per_subframe == (1 << mu));
  }
}

TEST_CASE("grid geometry rejects unsupported combinations") {
  CHECK_THROWS_AS(grid_geometry(20e6, Numerology(1), Mode::Lte), ConfigError);
  CHECK_THROWS_AS(grid_geometry(7e6, Numerology(0), Mode::Nr), ConfigError);
  CHECK_THROWS_AS(grid_geometry(5e6, Numerology(2), Mode::Nr), ConfigError);
}

TEST_CASE("sample-level subframe length") {
  for (int mu = 0; mu <= 3; ++mu) {
    const FrameGeometry g = grid_geometry(20e6, Numerology(mu), Mode::Nr);
    CHECK(g.subframe_samples() == 30720);
    CHECK(g.subframe_samples() * g.tc_per_sample() == TimeBase::tc_per_ms);
    int sum = 0;
    for (int s = 0; s < g.slots_per_subframe; ++s) sum += g.slot_samples(s);
    CHECK(sum == 30720);
  }
  const FrameGeometry e = grid_geometry(20e6, Numerology(2, CpType::Extended), Mode::Nr);
  CHECK(e.cp_length(0) == 128);
  CHECK(e.subframe_samples() == 30720);
  const FrameGeometry g0 = grid_geometry(20e6, Numerology(0), Mode::Nr);
  CHECK(g0.cp_length(0) == 160);
  CHECK(g0.cp_length(1) == 144);
}

#include "v2xsim/v2xsim.h"

#include <cstring>
#include <exception>
#include <random>
#include <string>
#include <vector>

#include "v2xsim/error.hpp"
#include "v2xsim/harness.hpp"
#include "v2xsim/modem.hpp"

struct v2x_config {
  v2x::SimConfig cfg;
  std::string label;
};

struct v2x_results {
  std::vector<v2x::BlerCurve> curves;
};

namespace {

thread_local std::string g_last_error;

v2x_status fail(v2x_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Maps exceptions escaping the core onto status codes.
template <class F>
v2x_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return V2X_OK;
  } catch (const v2x::ConfigError& e) {
    return fail(V2X_ERR_CONFIG, e.what());
  } catch (const v2x::DomainError& e) {
    return fail(V2X_ERR_DOMAIN, e.what());
  } catch (const v2x::IoError& e) {
    return fail(V2X_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(V2X_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(V2X_ERR_INTERNAL, "unknown error");
  }
}

bool curve_ok(const v2x_results* res, size_t curve) {
  return res && curve < res->curves.size();
}

}  // namespace

extern "C" {

const char* v2x_last_error(void) { return g_last_error.c_str(); }

const char* v2x_version(void) { return "0.1.0"; }

const char* v2x_status_name(v2x_status status) {
  switch (status) {
    case V2X_OK: return "ok";
    case V2X_ERR_ARGUMENT: return "invalid argument";
    case V2X_ERR_CONFIG: return "configuration error";
    case V2X_ERR_DOMAIN: return "domain error";
    case V2X_ERR_IO: return "i/o error";
    case V2X_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

v2x_status v2x_config_parse(const char* text, v2x_config** out) {
  if (!text || !out) return fail(V2X_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* h = new v2x_config{v2x::parse_config(text), {}};
    h->label = h->cfg.curve_label();
    *out = h;
  });
}

v2x_status v2x_config_load(const char* path, v2x_config** out) {
  if (!path || !out) return fail(V2X_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* h = new v2x_config{v2x::load_config(path), {}};
    h->label = h->cfg.curve_label();
    *out = h;
  });
}

void v2x_config_free(v2x_config* cfg) { delete cfg; }

v2x_status v2x_config_set_seed(v2x_config* cfg, uint64_t seed) {
  if (!cfg) return fail(V2X_ERR_ARGUMENT, "null config");
  cfg->cfg.seed = seed;
  return V2X_OK;
}

v2x_status v2x_config_set_subframes(v2x_config* cfg, int n_subframes) {
  if (!cfg) return fail(V2X_ERR_ARGUMENT, "null config");
  if (n_subframes < 1) return fail(V2X_ERR_CONFIG, "subframes must be >= 1");
  cfg->cfg.n_subframes = n_subframes;
  return V2X_OK;
}

const char* v2x_config_label(const v2x_config* cfg) { return cfg ? cfg->label.c_str() : ""; }

v2x_status v2x_results_create(v2x_results** out) {
  if (!out) return fail(V2X_ERR_ARGUMENT, "null argument");
  *out = new v2x_results{};
  return V2X_OK;
}

void v2x_results_free(v2x_results* res) { delete res; }

v2x_status v2x_run(const v2x_config* cfg, int workers, v2x_progress_fn progress, void* user,
                   v2x_results* res) {
  if (!cfg || !res) return fail(V2X_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    v2x::CampaignOptions opts;
    opts.workers = workers < 1 ? 1 : workers;
    if (progress)
      opts.progress = [progress, user](std::size_t done, std::size_t total) {
        progress(done, total, user);
      };
    res->curves.push_back(v2x::run_campaign(cfg->cfg, opts));
  });
}

size_t v2x_results_curve_count(const v2x_results* res) { return res ? res->curves.size() : 0; }

const char* v2x_results_label(const v2x_results* res, size_t curve) {
  return curve_ok(res, curve) ? res->curves[curve].label.c_str() : nullptr;
}

size_t v2x_results_point_count(const v2x_results* res, size_t curve) {
  return curve_ok(res, curve) ? res->curves[curve].points.size() : 0;
}

v2x_status v2x_results_point(const v2x_results* res, size_t curve, size_t index, v2x_point* out) {
  if (!out || !curve_ok(res, curve) || index >= res->curves[curve].points.size())
    return fail(V2X_ERR_ARGUMENT, "point index out of range");
  const v2x::BlerPoint& p = res->curves[curve].points[index];
  *out = {p.snr_db,
          p.blocks_tx,
          p.blocks_err_control,
          p.blocks_err_data,
          v2x::compute_bler(p, v2x::BlerKind::Control),
          v2x::compute_bler(p, v2x::BlerKind::Data)};
  return V2X_OK;
}

v2x_status v2x_results_csv(const v2x_results* res, char* buf, size_t cap, size_t* needed) {
  if (!res) return fail(V2X_ERR_ARGUMENT, "null results");
  std::string text;
  const v2x_status s = guarded([&] { text = v2x::format_results(res->curves); });
  if (s != V2X_OK) return s;
  if (needed) *needed = text.size() + 1;
  if (!buf) return V2X_OK;
  if (cap < text.size() + 1) return fail(V2X_ERR_ARGUMENT, "buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return V2X_OK;
}

v2x_status v2x_results_write(const v2x_results* res, const char* csv_path, const char* svg_path) {
  if (!res || !csv_path) return fail(V2X_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::optional<std::string> svg;
    if (svg_path) svg = svg_path;
    v2x::write_results(res->curves, csv_path, svg);
  });
}

v2x_status v2x_geometry_query(int lte, int mu, int extended_cp, double bandwidth_hz,
                              v2x_geometry* out) {
  if (!out) return fail(V2X_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const v2x::Numerology num(mu, extended_cp ? v2x::CpType::Extended : v2x::CpType::Normal);
    const v2x::FrameGeometry g =
        v2x::grid_geometry(bandwidth_hz, num, lte ? v2x::Mode::Lte : v2x::Mode::Nr);
    const v2x::SlotStructure slots = v2x::slot_structure(mu);
    const int short_l = 1;
    const int long_l = 0;
    v2x_geometry r{};
    r.lte = lte ? 1 : 0;
    r.mu = mu;
    r.extended_cp = extended_cp ? 1 : 0;
    r.bandwidth_hz = bandwidth_hz;
    r.scs_khz = g.scs_khz;
    r.prb_khz = v2x::prb_width_khz(num);
    r.subframes_per_frame = 10;
    r.slots_per_subframe = slots.slots_per_subframe;
    r.slot_duration_ms = slots.slot_duration_ms;
    r.symbols_per_slot = g.symbols_per_slot;
    r.fr1 = num.fr1_applicable() ? 1 : 0;
    r.fr2 = mu >= 2 ? 1 : 0;
    r.n_prb = g.n_prb;
    r.n_subcarriers = g.n_subcarriers;
    r.fft_size = g.fft_size;
    r.sample_rate_hz = g.sample_rate_hz;
    r.cp_long_tc = v2x::cp_samples(num, long_l);
    r.cp_short_tc = v2x::cp_samples(num, short_l);
    r.cp_long_samples = g.cp_length(long_l);
    r.cp_short_samples = g.cp_length(short_l);
    r.cp_long_us = v2x::cp_duration(num, long_l) * 1e6;
    r.cp_short_us = v2x::cp_duration(num, short_l) * 1e6;
    r.subframe_tc = v2x::subframe_length_tc(num);
    r.subframe_samples = g.subframe_samples();
    *out = r;
  });
}

v2x_status v2x_dump_subframe(const v2x_config* cfg, const char* grid_path,
                             const char* waveform_path) {
  if (!cfg || !grid_path || !waveform_path) return fail(V2X_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const v2x::LinkParams link = cfg->cfg.link_params();
    std::mt19937_64 rng(cfg->cfg.seed);
    v2x::Bits tb(static_cast<std::size_t>(link.tbs_bits));
    for (auto& b : tb) b = static_cast<std::uint8_t>(rng() & 1U);
    const int group = static_cast<int>(rng() % 256);
    const v2x::TxSlot tx = v2x::transmit(link, v2x::make_sci(link, group), tb,
                                         v2x::kCyclicShifts[rng() % 4]);
    v2x::write_grid_dump(grid_path, tx.grid, tx.waveform.sample_rate_hz);
    v2x::write_waveform_dump(waveform_path, tx.waveform);
  });
}

}  // extern "C"

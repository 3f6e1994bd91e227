#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "v2xsim/v2xsim.h"

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string frequency_range(const v2x_geometry& g) {
  if (g.fr1 && g.fr2) return "FR1 and FR2";
  return g.fr1 ? "FR1" : "FR2";
}

using Rows = std::vector<std::pair<std::string, std::string>>;

Rows geometry_rows(const v2x_geometry& g) {
  return {
      {"mode", g.lte ? "LTE" : "NR"},
      {"mu", std::to_string(g.mu)},
      {"CP", g.extended_cp ? "extended" : "normal"},
      {"SCS [kHz]", std::to_string(g.scs_khz)},
      {"#subframes per radio frame", std::to_string(g.subframes_per_frame)},
      {"#slots per subframes", std::to_string(g.slots_per_subframe)},
      {"slot duration(ms)", num(g.slot_duration_ms)},
      {"#OFDM symbols per slot", std::to_string(g.symbols_per_slot)},
      {"Applicable frequency range", frequency_range(g)},
      {"bandwidth [Hz]", num(g.bandwidth_hz)},
      {"PRB width [kHz]", std::to_string(g.prb_khz)},
      {"#PRB", std::to_string(g.n_prb)},
      {"#subcarriers", std::to_string(g.n_subcarriers)},
      {"FFT size", std::to_string(g.fft_size)},
      {"sample rate [Hz]", num(g.sample_rate_hz)},
      {"long CP [Tc]", std::to_string(g.cp_long_tc)},
      {"short CP [Tc]", std::to_string(g.cp_short_tc)},
      {"long CP [samples]", std::to_string(g.cp_long_samples)},
      {"short CP [samples]", std::to_string(g.cp_short_samples)},
      {"long CP [us]", num(g.cp_long_us)},
      {"short CP [us]", num(g.cp_short_us)},
      {"subframe [Tc]", std::to_string(g.subframe_tc)},
      {"subframe [samples]", std::to_string(g.subframe_samples)},
  };
}

void print_text(const Rows& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& r : rows)
    std::cout << r.first << std::string(w - r.first.size() + 2, ' ') << r.second << "\n";
}

std::string csv_field(const std::string& s) {
  return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
}

void print_csv(const Rows& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::cout << (i ? "," : "") << csv_field(rows[i].first);
  std::cout << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::cout << (i ? "," : "") << csv_field(rows[i].second);
  std::cout << "\n";
}

int report(v2x_status s) {
  std::cerr << "error: " << v2x_last_error() << "\n";
  return static_cast<int>(s);
}

void progress(size_t done, size_t total, void* user) {
  const auto* label = static_cast<const char*>(user);
  if (done == total || done % 500 == 0)
    std::fprintf(stderr, "\r%s: %zu/%zu%s", label, done, total, done == total ? "\n" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sidelink V2X link-level BLER simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run BLER campaigns");
  std::vector<std::string> configs;
  std::string out = "results.csv";
  std::string plot;
  std::uint64_t seed = 0;
  int workers = 1;
  int subframes = 0;
  bool quiet = false;
  sim->add_option("--config", configs, "Config file, one curve each")->required()->check(
      CLI::ExistingFile);
  sim->add_option("--out", out, "CSV output path")->capture_default_str();
  auto* plot_opt = sim->add_option("--plot", plot, "SVG plot of data BLER");
  auto* seed_opt = sim->add_option("--seed", seed, "Override the config seed");
  sim->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sim->add_option("--subframes", subframes, "Override subframes per SNR point")
      ->check(CLI::PositiveNumber);
  sim->add_flag("-q,--quiet", quiet, "No progress output");

  auto* geo = app.add_subcommand("geometry", "Print frame geometry for a numerology");
  int mu = 0;
  double bw = 20e6;
  std::string cp = "normal";
  std::string mode = "nr";
  std::string format = "both";
  geo->add_option("--mu", mu, "Numerology 0..3")->required();
  geo->add_option("--bw", bw, "Channel bandwidth in Hz")->required();
  geo->add_option("--cp", cp)->check(CLI::IsMember({"normal", "extended"}))->capture_default_str();
  geo->add_option("--mode", mode)->check(CLI::IsMember({"nr", "lte"}))->capture_default_str();
  geo->add_option("--format", format)
      ->check(CLI::IsMember({"text", "csv", "both"}))
      ->capture_default_str();

  auto* dump = app.add_subcommand("dump", "Write one transmitted subframe as binary dumps");
  std::string dump_config, grid_path = "grid.bin", wave_path = "waveform.bin";
  dump->add_option("--config", dump_config)->required()->check(CLI::ExistingFile);
  dump->add_option("--grid", grid_path)->capture_default_str();
  dump->add_option("--waveform", wave_path)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*geo) {
    v2x_geometry g{};
    if (v2x_status s = v2x_geometry_query(mode == "lte", mu, cp == "extended", bw, &g))
      return report(s);
    const Rows rows = geometry_rows(g);
    if (format != "csv") print_text(rows);
    if (format == "both") std::cout << "\n";
    if (format != "text") print_csv(rows);
    return 0;
  }

  if (*dump) {
    v2x_config* cfg = nullptr;
    if (v2x_status s = v2x_config_load(dump_config.c_str(), &cfg)) return report(s);
    const v2x_status s = v2x_dump_subframe(cfg, grid_path.c_str(), wave_path.c_str());
    v2x_config_free(cfg);
    return s ? report(s) : 0;
  }

  // All configs are validated before any simulation starts.
  std::vector<v2x_config*> loaded;
  auto release = [&] {
    for (v2x_config* c : loaded) v2x_config_free(c);
  };
  for (const std::string& path : configs) {
    v2x_config* cfg = nullptr;
    if (v2x_status s = v2x_config_load(path.c_str(), &cfg)) {
      std::cerr << path << ": ";
      release();
      return report(s);
    }
    loaded.push_back(cfg);
    if (*seed_opt) v2x_config_set_seed(cfg, seed);
    if (subframes > 0) v2x_config_set_subframes(cfg, subframes);
  }

  v2x_results* res = nullptr;
  v2x_results_create(&res);
  v2x_status status = V2X_OK;
  for (v2x_config* cfg : loaded) {
    status = v2x_run(cfg, workers, quiet ? nullptr : progress,
                     const_cast<char*>(v2x_config_label(cfg)), res);
    if (status) break;
  }
  if (!status) status = v2x_results_write(res, out.c_str(), *plot_opt ? plot.c_str() : nullptr);
  int rc = 0;
  if (status) {
    rc = report(status);
  } else if (!quiet) {
    for (size_t c = 0; c < v2x_results_curve_count(res); ++c)
      for (size_t i = 0; i < v2x_results_point_count(res, c); ++i) {
        v2x_point p{};
        v2x_results_point(res, c, i, &p);
        std::printf("%-10s %6s dB  ctrl %.4f  data %.4f\n", v2x_results_label(res, c),
                    num(p.snr_db).c_str(), p.control_bler, p.data_bler);
      }
  }
  v2x_results_free(res);
  release();
  return rc;
}

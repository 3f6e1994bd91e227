#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "v2xsim/error.hpp"
#include "v2xsim/harness.hpp"

namespace v2x {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line, const std::string& key) {
  double d = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(d))
    fail(line, "'" + key + "' expects a number, got '" + v + "'");
  return d;
}

long long to_int(const std::string& v, int line, const std::string& key) {
  long long i = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), i);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(line, "'" + key + "' expects an integer, got '" + v + "'");
  return i;
}

bool to_bool(const std::string& v, int line, const std::string& key) {
  const std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  fail(line, "'" + key + "' expects true/false, got '" + v + "'");
}

}  // namespace

double doppler_from_speed(double speed_kmh, double carrier_hz) {
  constexpr double kSpeedOfLight = 299792458.0;
  return speed_kmh / 3.6 * carrier_hz / kSpeedOfLight;
}

std::string SimConfig::curve_label() const {
  if (!label.empty()) return label;
  std::string l = to_string(mode) + "-" + std::to_string(scs_khz(mu)) + "kHz";
  if (cp == CpType::Extended) l += "-ECP";
  return l;
}

FrameGeometry SimConfig::geometry() const {
  return grid_geometry(bandwidth_hz, numerology(), mode);
}

LinkParams SimConfig::link_params() const {
  return make_link_params(geometry(), data_n_prb, tbs_bits, mcs, transform_precoding);
}

namespace {

// Key -> line, for anchoring cross-field validation errors.
using LineMap = std::map<std::string, int>;

void validate_with_lines(const SimConfig& cfg, const LineMap& lines) {
  auto line_of = [&](std::initializer_list<const char*> keys) {
    int best = 0;
    for (const char* k : keys) {
      auto it = lines.find(k);
      if (it != lines.end()) best = std::max(best, it->second);
    }
    return best;
  };
  auto check = [&](bool ok, std::initializer_list<const char*> keys, const std::string& msg) {
    if (ok) return;
    const int line = line_of(keys);
    if (line == 0) throw ConfigError(msg);
    fail(line, msg);
  };

  check(cfg.mu >= 0 && cfg.mu <= kMaxMu, {"mu"}, "mu must be in {0,1,2,3}");
  check(cfg.cp == CpType::Normal || cfg.mu == 2, {"cp", "mu"},
        "extended CP is only available at mu = 2 (60 kHz)");
  check(cfg.mode == Mode::Nr || (cfg.mu == 0 && cfg.cp == CpType::Normal), {"mode", "mu", "cp"},
        "LTE mode requires mu = 0 with normal CP");
  check(cfg.n_subframes >= 1, {"subframes"}, "subframes must be at least 1");
  check(!cfg.snr_db.empty(), {"snr_db"}, "snr_db must not be empty");
  check(std::adjacent_find(cfg.snr_db.begin(), cfg.snr_db.end(),
                           [](double a, double b) { return b <= a; }) == cfg.snr_db.end(),
        {"snr_db"}, "snr_db must be strictly increasing");
  check(cfg.channel.n_rx >= 1, {"n_rx"}, "n_rx must be at least 1");
  check(cfg.channel.max_doppler_hz >= 0.0, {"max_doppler_hz", "doppler_from_speed"},
        "max Doppler must be non-negative");
  check(cfg.estimator_window >= 1, {"estimator_window"}, "estimator_window must be >= 1");
  check(cfg.turbo_iterations >= 1, {"turbo_iterations"}, "turbo_iterations must be >= 1");
  check(cfg.carrier_hz > 0.0, {"carrier_hz"}, "carrier_hz must be positive");
  check(cfg.curve_label().find_first_of(",\n\"") == std::string::npos, {"label"},
        "label must not contain commas, quotes or newlines");
  try {
    cfg.link_params();
  } catch (const std::exception& e) {
    check(false, {"bandwidth_hz", "mu", "mode", "mcs", "tbs_bits", "data_n_prb", "cp"}, e.what());
  }
}

}  // namespace

void validate(const SimConfig& cfg) { validate_with_lines(cfg, {}); }

SimConfig parse_config(const std::string& text) {
  SimConfig cfg;
  LineMap lines;
  std::optional<std::string> modulation;
  std::optional<int> modulation_line;
  bool from_speed = false;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (trim(raw).empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = lower(trim(std::string_view(raw).substr(0, eq)));
    const std::string value = trim(std::string_view(raw).substr(eq + 1));
    if (value.empty()) fail(line, "missing value for '" + key + "'");
    if (lines.contains(key)) fail(line, "duplicate key '" + key + "'");
    lines[key] = line;

    if (key == "label") {
      cfg.label = value;
    } else if (key == "mode") {
      const std::string v = lower(value);
      if (v == "lte") cfg.mode = Mode::Lte;
      else if (v == "nr") cfg.mode = Mode::Nr;
      else fail(line, "mode must be 'lte' or 'nr'");
    } else if (key == "mu") {
      cfg.mu = static_cast<int>(to_int(value, line, key));
      if (cfg.mu < 0 || cfg.mu > kMaxMu) fail(line, "mu must be in {0,1,2,3}, got " + value);
    } else if (key == "cp") {
      const std::string v = lower(value);
      if (v == "normal") cfg.cp = CpType::Normal;
      else if (v == "extended") cfg.cp = CpType::Extended;
      else fail(line, "cp must be 'normal' or 'extended'");
    } else if (key == "bandwidth_hz") {
      cfg.bandwidth_hz = to_double(value, line, key);
    } else if (key == "carrier_hz") {
      cfg.carrier_hz = to_double(value, line, key);
    } else if (key == "ue_speed_kmh") {
      cfg.ue_speed_kmh = to_double(value, line, key);
    } else if (key == "subframes") {
      cfg.n_subframes = static_cast<int>(to_int(value, line, key));
    } else if (key == "snr_db") {
      cfg.snr_db.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.snr_db.push_back(to_double(trim(item), line, key));
    } else if (key == "mcs") {
      cfg.mcs = static_cast<int>(to_int(value, line, key));
    } else if (key == "tbs_bits") {
      cfg.tbs_bits = static_cast<int>(to_int(value, line, key));
    } else if (key == "data_n_prb") {
      cfg.data_n_prb = static_cast<int>(to_int(value, line, key));
    } else if (key == "modulation") {
      modulation = lower(value);
      modulation_line = line;
      if (*modulation != "qpsk" && *modulation != "16qam")
        fail(line, "modulation must be 'qpsk' or '16qam'");
    } else if (key == "transform_precoding") {
      cfg.transform_precoding = to_bool(value, line, key);
    } else if (key == "estimator_window") {
      cfg.estimator_window = static_cast<int>(to_int(value, line, key));
    } else if (key == "turbo_iterations") {
      cfg.turbo_iterations = static_cast<int>(to_int(value, line, key));
    } else if (key == "channel") {
      const std::string v = lower(value);
      if (v == "eva") cfg.channel.profile = ChannelProfile::Eva;
      else if (v == "awgn") cfg.channel.profile = ChannelProfile::AwgnOnly;
      else if (v == "single_tap") cfg.channel.profile = ChannelProfile::SingleTap;
      else fail(line, "channel must be 'eva', 'awgn' or 'single_tap'");
    } else if (key == "max_doppler_hz") {
      cfg.channel.max_doppler_hz = to_double(value, line, key);
    } else if (key == "doppler_from_speed") {
      from_speed = to_bool(value, line, key);
    } else if (key == "n_rx") {
      cfg.channel.n_rx = static_cast<int>(to_int(value, line, key));
    } else if (key == "seed") {
      const long long s = to_int(value, line, key);
      if (s < 0) fail(line, "seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  if (from_speed) {
    if (lines.contains("max_doppler_hz"))
      fail(lines["doppler_from_speed"], "doppler_from_speed conflicts with max_doppler_hz");
    cfg.channel.max_doppler_hz = doppler_from_speed(cfg.ue_speed_kmh, cfg.carrier_hz);
  }
  validate_with_lines(cfg, lines);
  if (modulation) {
    const std::string derived = to_string(modulation_for_mcs(cfg.mcs)) == "QPSK" ? "qpsk" : "16qam";
    if (*modulation != derived)
      fail(*modulation_line, "modulation '" + *modulation + "' does not match MCS " +
                                 std::to_string(cfg.mcs) + " (" + derived + ")");
  }
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace v2x

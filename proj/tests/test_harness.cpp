#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "v2xsim/error.hpp"
#include "v2xsim/harness.hpp"

using namespace v2x;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty config gives the reference setup") {
  const SimConfig c = parse_config("");
  CHECK(c.carrier_hz == 5.9e9);
  CHECK(c.bandwidth_hz == 20e6);
  CHECK(c.snr_db == std::vector<double>{11, 12, 13, 14, 15});
  CHECK(c.mcs == 13);
  CHECK(c.tbs_bits == 1800);
  CHECK(c.data_n_prb == 8);
  CHECK(c.channel.profile == ChannelProfile::Eva);
  CHECK(c.channel.n_rx == 2);
  CHECK(c.channel.max_doppler_hz == 180.0);
  CHECK(c.n_subframes == 2000);
  CHECK(c.mode == Mode::Nr);
  CHECK(modulation_for_mcs(c.mcs) == Modulation::Qam16);
  CHECK(c.curve_label() == "NR-15kHz");
}

TEST_CASE("config keys") {
  const SimConfig c = parse_config(
      "# comment\n"
      "mode = lte\n"
      "subframes = 50   # trailing\n"
      "snr_db = 1, 2.5, 4\n"
      "channel = awgn\n"
      "n_rx = 1\n"
      "seed = 99\n"
      "label = ref\n"
      "modulation = 16qam\n");
  CHECK(c.mode == Mode::Lte);
  CHECK(c.n_subframes == 50);
  CHECK(c.snr_db == std::vector<double>{1, 2.5, 4});
  CHECK(c.channel.profile == ChannelProfile::AwgnOnly);
  CHECK(c.channel.n_rx == 1);
  CHECK(c.seed == 99);
  CHECK(c.curve_label() == "ref");
  CHECK(parse_config("mu = 1").curve_label() == "NR-30kHz");
  CHECK(parse_config("doppler_from_speed = true").channel.max_doppler_hz ==
        doctest::Approx(doppler_from_speed(120, 5.9e9)));
  CHECK(doppler_from_speed(120, 5.9e9) == doctest::Approx(655.9).epsilon(1e-3));
  const SimConfig e = parse_config("mu = 2\ncp = extended\n");
  CHECK(e.cp == CpType::Extended);
}

TEST_CASE("config errors are line anchored") {
  CHECK(error_of("mu = 5").rfind("line 1:", 0) == 0);
  CHECK(error_of("\ncp = extended\nmu = 0\n").rfind("line 3:", 0) == 0);
  CHECK(error_of("cp = extended").rfind("line 1:", 0) == 0);
  CHECK(error_of("\n\nbogus = 1").rfind("line 3:", 0) == 0);
  CHECK(error_of("mcs = abc").rfind("line 1:", 0) == 0);
  CHECK(error_of("snr_db = 3, 2").rfind("line 1:", 0) == 0);
  CHECK(error_of("snr_db = ").rfind("line 1:", 0) == 0);
  CHECK(error_of("subframes = 0").rfind("line 1:", 0) == 0);
  CHECK(error_of("mu = 1\nmu = 2").rfind("line 2:", 0) == 0);
  CHECK(error_of("mcs = 13\nmodulation = qpsk").rfind("line 2:", 0) == 0);
  CHECK(error_of("mode = lte\nmu = 1").rfind("line 2:", 0) == 0);
  CHECK(error_of("mcs = 28").rfind("line 1:", 0) == 0);
  CHECK(error_of("no equals sign").rfind("line 1:", 0) == 0);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.txt"), IoError);
}

TEST_CASE("bler arithmetic") {
  CHECK(compute_bler({0, 50, 0, 5}, BlerKind::Data) == doctest::Approx(0.1));
  CHECK(compute_bler({0, 1000, 0, 0}, BlerKind::Data) == 0.0);
  CHECK(compute_bler({0, 1000, 1000, 1000}, BlerKind::Control) == 1.0);
  CHECK_THROWS_AS(compute_bler({0, 0, 0, 0}, BlerKind::Data), DomainError);
}

TEST_CASE("substreams are pure and distinct") {
  CHECK(substream_seed(1, 2, 3) == substream_seed(1, 2, 3));
  CHECK(substream_seed(1, 2, 3) != substream_seed(1, 3, 2));
  CHECK(substream_seed(1, 0, 0) != substream_seed(2, 0, 0));
}

TEST_CASE("results csv") {
  const std::vector<BlerCurve> one{{"NR-30kHz", {{13.0, 2000, 3, 201}}}};
  const std::string csv = format_results(one);
  CHECK(csv ==
        "label,snr_db,blocks,ctrl_err,data_err,ctrl_bler,data_bler\n"
        "NR-30kHz,13,2000,3,201,0.001500,0.100500\n");

  const std::vector<BlerCurve> many{{"LTE-15kHz", {{11, 10, 0, 3}, {12.5, 10, 1, 1}}},
                                    {"NR-15kHz", {{11, 7, 7, 7}}}};
  CHECK(parse_results(format_results(many)) == many);
  CHECK_THROWS_AS(parse_results("nope\n"), IoError);

  const auto dir = std::filesystem::temp_directory_path();
  const std::string csv_path = (dir / "v2x_results.csv").string();
  const std::string svg_path = (dir / "v2x_results.svg").string();
  std::filesystem::remove(svg_path);
  write_results(many, csv_path);
  CHECK(slurp(csv_path) == format_results(many));
  CHECK_FALSE(std::filesystem::exists(svg_path));
  write_results(many, csv_path, svg_path);
  const std::string svg = slurp(svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("LTE-15kHz") != std::string::npos);
  CHECK_THROWS_AS(write_results(many, "/nonexistent/dir/x.csv"), IoError);
  CHECK_THROWS_AS(write_results({}, csv_path), DomainError);
  std::filesystem::remove(csv_path);
  std::filesystem::remove(svg_path);
}

TEST_CASE("noiseless loopback campaign") {
  for (int mu = 0; mu <= 3; ++mu) {
    SimConfig cfg;
    cfg.mu = mu;
    cfg.channel.profile = ChannelProfile::AwgnOnly;
    cfg.snr_db = {40.0};
    cfg.n_subframes = 25;
    const BlerPoint p = run_campaign(cfg).points[0];
    CHECK(p.blocks_tx == 25);
    CHECK(p.blocks_err_data == 0);
    CHECK(p.blocks_err_control == 0);
  }
}

TEST_CASE("campaign is independent of worker count") {
  SimConfig cfg;
  cfg.mu = 2;
  cfg.snr_db = {4.0, 8.0};
  cfg.n_subframes = 40;
  CampaignOptions one, eight;
  eight.workers = 8;
  std::size_t last = 0;
  eight.progress = [&](std::size_t done, std::size_t total) {
    CHECK(total == 80);
    last = std::max(last, done);
  };
  const BlerCurve a = run_campaign(cfg, one);
  CHECK(run_campaign(cfg, eight) == a);
  CHECK(last == 80);
  CHECK(a.label == "NR-60kHz");
  CHECK(a.points.size() == 2);
  CHECK(a.points[0].snr_db < a.points[1].snr_db);
  cfg.seed = 2;
  CHECK_FALSE(run_campaign(cfg, one) == a);
}

TEST_CASE("invalid configurations fail before simulating") {
  SimConfig cfg;
  cfg.snr_db = {};
  CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
  cfg = SimConfig{};
  cfg.mcs = 27;
  CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
}

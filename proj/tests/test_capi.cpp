#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "v2xsim/v2xsim.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int rc;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(V2XSIM_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, p)) out += buf;
  const int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "v2x_capi_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("config handles and errors") {
  v2x_config* cfg = nullptr;
  CHECK(v2x_config_parse("mu = 7\n", &cfg) == V2X_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(v2x_last_error()).find("line 1") != std::string::npos);
  CHECK(v2x_config_parse(nullptr, &cfg) == V2X_ERR_ARGUMENT);
  CHECK(v2x_config_load("/nonexistent.cfg", &cfg) == V2X_ERR_IO);

  REQUIRE(v2x_config_parse("mu = 1\nchannel = awgn\nsnr_db = 30\nsubframes = 5\n", &cfg) == V2X_OK);
  CHECK(std::string(v2x_config_label(cfg)) == "NR-30kHz");
  CHECK(v2x_config_set_subframes(cfg, 0) == V2X_ERR_CONFIG);
  CHECK(v2x_config_set_seed(cfg, 5) == V2X_OK);

  v2x_results* res = nullptr;
  REQUIRE(v2x_results_create(&res) == V2X_OK);
  REQUIRE(v2x_run(cfg, 2, nullptr, nullptr, res) == V2X_OK);
  CHECK(v2x_results_curve_count(res) == 1);
  CHECK(std::string(v2x_results_label(res, 0)) == "NR-30kHz");
  REQUIRE(v2x_results_point_count(res, 0) == 1);
  v2x_point p{};
  REQUIRE(v2x_results_point(res, 0, 0, &p) == V2X_OK);
  CHECK(p.blocks == 5);
  CHECK(p.data_bler == 0.0);
  CHECK(v2x_results_point(res, 0, 1, &p) == V2X_ERR_ARGUMENT);
  CHECK(v2x_results_label(res, 3) == nullptr);

  size_t need = 0;
  REQUIRE(v2x_results_csv(res, nullptr, 0, &need) == V2X_OK);
  std::string buf(need, '\0');
  CHECK(v2x_results_csv(res, buf.data(), 4, &need) == V2X_ERR_ARGUMENT);
  REQUIRE(v2x_results_csv(res, buf.data(), buf.size(), &need) == V2X_OK);
  CHECK(std::string(buf.c_str()) ==
        "label,snr_db,blocks,ctrl_err,data_err,ctrl_bler,data_bler\nNR-30kHz,30,5,0,0,0.000000,0.000000\n");
  CHECK(v2x_results_write(res, "/nonexistent/x.csv", nullptr) == V2X_ERR_IO);

  v2x_results_free(res);
  v2x_config_free(cfg);
  CHECK(std::string(v2x_status_name(V2X_ERR_IO)) == "i/o error");
}

TEST_CASE("geometry query") {
  v2x_geometry g{};
  REQUIRE(v2x_geometry_query(0, 0, 0, 20e6, &g) == V2X_OK);
  CHECK(g.n_prb == 106);
  CHECK(g.cp_long_tc == 10240);
  CHECK(g.cp_short_tc == 9216);
  CHECK(g.subframe_tc == 1966080);
  REQUIRE(v2x_geometry_query(1, 0, 0, 20e6, &g) == V2X_OK);
  CHECK(g.n_prb == 100);
  CHECK(v2x_geometry_query(0, 0, 1, 20e6, &g) == V2X_ERR_DOMAIN);
  CHECK(v2x_geometry_query(0, 9, 0, 20e6, &g) == V2X_ERR_DOMAIN);
  CHECK(v2x_geometry_query(0, 0, 0, 3e6, &g) == V2X_ERR_CONFIG);
}

TEST_CASE("cli geometry") {
  const Run r = cli("geometry --mu 2 --bw 20e6 --format csv");
  CHECK(r.rc == 0);
  CHECK(r.out.find("normal,60,10,4,0.25,14,FR1 and FR2") != std::string::npos);
  const Run t = cli("geometry --mu 3 --bw 20000000");
  CHECK(t.rc == 0);
  CHECK(t.out.find("slot duration(ms)") != std::string::npos);
  CHECK(t.out.find("0.125") != std::string::npos);
  CHECK(cli("geometry --mu 0 --bw 20e6 --cp extended").rc != 0);
  CHECK(cli("geometry --mu 5 --bw 20e6").rc != 0);
  CHECK(cli("geometry --bw 20e6").rc != 0);
}

TEST_CASE("cli simulate") {
  const fs::path d = scratch();
  {
    std::ofstream(d / "a.cfg") << "mu = 1\nchannel = awgn\nsnr_db = 30, 31\nsubframes = 4\n";
    std::ofstream(d / "bad.cfg") << "mu = 1\ncp = extended\n";
  }
  fs::remove(d / "out.csv");
  fs::remove(d / "out.svg");
  const std::string base = "simulate -q --config " + (d / "a.cfg").string() + " --out " + (d / "out.csv").string();
  Run r = cli(base);
  CHECK(r.rc == 0);
  CHECK(fs::exists(d / "out.csv"));
  CHECK_FALSE(fs::exists(d / "out.svg"));
  CHECK(slurp(d / "out.csv").find("NR-30kHz,31,4,0,0,") != std::string::npos);
  r = cli(base + " --plot " + (d / "out.svg").string() + " --seed 3 --workers 2");
  CHECK(r.rc == 0);
  CHECK(fs::exists(d / "out.svg"));

  r = cli("simulate --config " + (d / "bad.cfg").string() + " --out " + (d / "x.csv").string());
  CHECK(r.rc != 0);
  CHECK(r.out.find("line 2") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "x.csv"));
  CHECK(cli("simulate --config /nonexistent.cfg").rc != 0);

  r = cli("dump --config " + (d / "a.cfg").string() + " --grid " + (d / "g.bin").string() +
          " --waveform " + (d / "w.bin").string());
  CHECK(r.rc == 0);
  CHECK(fs::file_size(d / "w.bin") == 24 + 16 * 15360);
  fs::remove_all(d);
}

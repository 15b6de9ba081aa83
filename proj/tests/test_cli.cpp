// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line surface: golden files for one
// ideal-state run per command, byte-identical reruns, config-file
// precedence, emitted-verdict self-consistency and exit codes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef DEMONWORK_CLI
#error "DEMONWORK_CLI must point at the built binary"
#endif

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run(const std::string& args, const std::string& out_path = "") {
  std::string cmd = std::string(DEMONWORK_CLI) + " " + args;
  if (!out_path.empty()) cmd += " --out " + out_path;
  cmd += " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_") + name + ".out";
}

struct GoldenCase {
  std::string name;
  std::string args;
};

const std::vector<GoldenCase> kGolden{
    {"work2", "work2 --mu 1 --phi 0.7854"},
    {"work3", "work3 --base w --mode adaptive-v"},
    {"bell", "bell --mu 0.98 --phi 0.91"},
    {"tangle", "tangle --mu 0.98 --phi 0.91"},
    {"svetlichny", "svetlichny --base ghzc"},
    {"table1", "table1"},
    {"tables23", "tables23"},
    {"fig2", "fig2 --phi 0.7854 --points 9"},
    {"fig3", "fig3 --points 7"},
    {"fig5", "fig5 --base ghzc --points 7"},
    {"fig6", "fig6 --base w --points 5"},
    {"simulate-counts", "simulate-counts --mu 0.98 --phi 0.91 --settings 0,0 --rate 200 --duration 40 --seed 7"},
    {"tomography", "tomography --base ghzc --rate 200 --duration 30 --seed 7"},
};

}  // namespace

TEST_CASE("golden files") {
  for (const GoldenCase& g : kGolden) {
    DYNAMIC_SECTION(g.name) {
      const std::string out = tmp_path(g.name);
      REQUIRE(run(g.args, out) == 0);
      const std::string golden = std::string(DEMONWORK_GOLDEN_DIR) + "/" + g.name + ".golden";
      REQUIRE(read_file(out) == read_file(golden));
      std::remove(out.c_str());
    }
  }
}

TEST_CASE("stochastic commands are byte-identical across reruns") {
  const std::string a = tmp_path("rerun_a"), b = tmp_path("rerun_b");
  const std::string args = "simulate-counts --mu 0.9 --phi 0.7 --settings 0.3,0.3 --rate 150 --duration 30 --seed 99";
  REQUIRE(run(args, a) == 0);
  REQUIRE(run(args, b) == 0);
  REQUIRE(read_file(a) == read_file(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("config file supplies defaults and the command line wins") {
  {
    std::ofstream f("cli_cfg.json");
    f << R"({"mu": 0.5, "phi": 0.7854})" << "\n";
  }
  const std::string a = tmp_path("cfg_a"), b = tmp_path("cfg_b"), c = tmp_path("cfg_c");
  REQUIRE(run("tangle --config cli_cfg.json", a) == 0);
  REQUIRE(run("tangle --mu 0.5 --phi 0.7854", b) == 0);
  REQUIRE(read_file(a) == read_file(b));
  // explicit flag overrides the config value
  REQUIRE(run("tangle --config cli_cfg.json --mu 1.0", c) == 0);
  const std::string direct = tmp_path("cfg_d");
  REQUIRE(run("tangle --mu 1.0 --phi 0.7854", direct) == 0);
  REQUIRE(read_file(c) == read_file(direct));
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(c.c_str());
  std::remove(direct.c_str());
  std::remove("cli_cfg.json");
}

TEST_CASE("exit codes") {
  REQUIRE(run("work2 --no-such-flag") == 2);
  REQUIRE(run("no-such-command") == 2);
  // stochastic command without a seed
  REQUIRE(run("simulate-counts --mu 1 --phi 0.7854 --settings 0,0 --rate 10 --duration 1") == 2);
  // invalid domain value
  REQUIRE(run("work2 --mu 1.5 --phi 0") == 2);
  // degrees flag converts inputs
  const std::string a = tmp_path("deg_a"), b = tmp_path("deg_b");
  REQUIRE(run("tangle --mu 0.9 --phi 45 --degrees", a) == 0);
  REQUIRE(run("tangle --mu 0.9 --phi 0.785398163", b) == 0);
  REQUIRE(read_file(a) == read_file(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("emitted verdicts recompute from emitted values") {
  const std::string out = tmp_path("verdicts");
  REQUIRE(run("table1", out) == 0);
  std::ifstream f(out);
  std::string line;
  std::getline(f, line);  // schema comment
  std::getline(f, line);  // header
  int rows = 0;
  while (std::getline(f, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 17);
    const double w_model = std::stod(cells[2]);
    const double s_model = std::stod(cells[3]);
    const bool w_bold = cells[11] == "1";
    const bool s_bold = cells[14] == "1";
    REQUIRE(w_bold == (w_model > 0.442695));
    REQUIRE(s_bold == (s_model > 2.0));
    ++rows;
  }
  REQUIRE(rows == 16);
  std::remove(out.c_str());
}

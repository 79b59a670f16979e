// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "coopmux/cli.hpp"
#include "coopmux/csv.hpp"

using namespace coopmux;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("coopmux_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { write_file_atomic(p, text); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("dmt queries") {
    CHECK(run({"dmt", "mimo", "2", "2"}).out == "(0,4) (1,1) (2,0)\n");
    CHECK(run({"dmt", "stc", "K=2", "Mt=2", "N=4"}).out.find("(1,6)") != std::string::npos);
    CHECK(run({"dmt", "direct_hd", "K=1", "N=1"}).out == "(0,1) (0.5,0)\n");
    CHECK(run({"dmt", "mimo", "2"}).code == kExitUsage);
    CHECK(run({"dmt", "mimo", "2", "0"}).code == kExitUsage);
    CHECK(run({"dmt", "cube", "2", "2"}).code == kExitUsage);
    const auto dir = scratch("dmt");
    CHECK(run({"dmt", "mimo", "1", "1", "--out", (dir / "d.csv").string()}).code == kExitOk);
    CHECK(read_file(dir / "d.csv").find("mimo,1,0\n") != std::string::npos);
  }

  TEST_CASE("effectiveness queries") {
    CHECK(run({"effectiveness", "fixed", "2", "2", "4", "2"}).out.rfind("omega=1 effective=yes G<=2", 0) == 0);
    CHECK(run({"effectiveness", "stc", "1", "2", "2", "2"}).out.rfind("omega=0.5 effective=no", 0) == 0);
    CHECK(run({"effectiveness", "fixed", "2", "1", "4", "1"}).out.find("effective=no") != std::string::npos);
    CHECK(run({"effectiveness", "dblast", "1", "2", "1"}).out.rfind("omega=1 effective=yes", 0) == 0);
    CHECK(run({"effectiveness", "fixed", "2", "2", "4"}).code == kExitUsage);
    CHECK(run({"effectiveness", "fixed", "2", "2", "4", "3"}).code == kExitUsage);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"bogus"}).code == kExitUsage);
    CHECK(run({"figure", "9"}).code == kExitUsage);
    CHECK(run({"figure", "1"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("sweep writes a self-describing csv") {
    const auto dir = scratch("sweep");
    write(dir / "direct.cfg", "scheme = direct\nK = 1\nN = 1\nr = 0.5\neta_start_db = 0\neta_stop_db = 10\n"
                              "eta_step_db = 5\ntrials = 2000\nseed = 4\n");
    const auto out = dir / "direct.csv";
    REQUIRE(run({"sweep", (dir / "direct.cfg").string(), "--out", out.string()}).code == kExitOk);
    const std::string text = read_file(out);
    const auto doc = parse_csv(text);
    CHECK(doc.series_names() == std::vector<std::string>{"direct"});
    CHECK(doc.rows.size() == 3);
    for (const char* key : {"version", "scheme", "topology", "rate", "seed", "trials"}) {
      bool found = false;
      for (const auto& [k, v] : doc.meta) found = found || k == key;
      CHECK_MESSAGE(found, key);
    }
    CHECK(render_csv(doc) == text);

    // Same config, different worker counts: identical bytes.
    const auto out2 = dir / "direct2.csv";
    REQUIRE(run({"sweep", (dir / "direct.cfg").string(), "--out", out2.string(), "--workers", "3"}).code == kExitOk);
    CHECK(read_file(out2) == text);

    // Flag overrides.
    const auto out3 = dir / "direct3.csv";
    REQUIRE(run({"sweep", (dir / "direct.cfg").string(), "--out", out3.string(), "--seed", "5"}).code == kExitOk);
    CHECK(read_file(out3) != text);
  }

  TEST_CASE("sweep to stdout and config errors") {
    const auto dir = scratch("sweep_err");
    write(dir / "ok.cfg", "scheme = direct\nK = 1\nN = 1\nr = 0.5\neta_start_db = 0\neta_stop_db = 0\ntrials = 10\n");
    const auto r = run({"sweep", (dir / "ok.cfg").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("series,eta_db,value,ci_low,ci_high\ndirect,0,") != std::string::npos);

    write(dir / "bad.cfg", "scheme = fixed_adaptive\nK = 2\nN = 4\nM = 2\nM_t = 2\nphi = 20\n");
    const auto bad = run({"sweep", (dir / "bad.cfg").string(), "--out", (dir / "bad.csv").string()});
    CHECK(bad.code == kExitConfig);
    CHECK(bad.err.find("'phi'") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "bad.csv"));
    CHECK(run({"sweep", (dir / "missing.cfg").string()}).code == kExitConfig);
  }

  TEST_CASE("figure output directory from the environment") {
    const auto dir = scratch("figure");
    ::setenv(kOutDirEnv, dir.string().c_str(), 1);
    const auto r = run({"figure", "5", "--trials", "200", "--eta-start", "0", "--eta-stop", "20", "--eta-step", "10"});
    ::unsetenv(kOutDirEnv);
    REQUIRE(r.code == kExitOk);
    const auto doc = parse_csv(read_file(dir / "figure5.csv"));
    CHECK(doc.series_names() == std::vector<std::string>{"pc_ors_2relay", "pc_1relay"});
    CHECK(doc.rows.size() == 6);
  }
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "coopmux/config.hpp"
#include "coopmux/errors.hpp"

using namespace coopmux;

TEST_SUITE("config") {
  TEST_CASE("full relay config") {
    const auto cfg = parse_config(R"(# two relays
scheme = multi_adaptive
K = 2
N = 4
relays = 2
M = 3
M_t = 1
M_r = 3, 2
phi_db = 20, 10   # per relay
r = 2.3
eta_start_db = 0
eta_stop_db = 10
eta_step_db = 5
trials = 500
seed = 7
output = out.csv
)");
    CHECK(cfg.scheme == Scheme::MultiAdaptive);
    REQUIRE(cfg.topology.relays.size() == 2);
    CHECK(cfg.topology.relays[1].receive_antennas == 2);
    CHECK(cfg.topology.relays[1].path_gain_db == 10.0);
    CHECK(cfg.topology.relays[0].antennas == 3);
    CHECK(cfg.rate().array_gain == 8.0);
    CHECK(cfg.grid().size() == 3);
    CHECK(cfg.trials == 500);
    CHECK(cfg.seed == 7);
    CHECK(cfg.output == "out.csv");
  }

  TEST_CASE("defaults") {
    const auto cfg = parse_config("scheme = direct\nK = 1\nN = 1\n");
    CHECK(cfg.topology.relays.empty());
    CHECK(cfg.trials == 100000);
    CHECK(cfg.grid().size() == 26);
    CHECK(cfg.rate().array_gain == 1.0);
  }

  TEST_CASE("distance sets the path gain") {
    const auto cfg = parse_config("scheme = fixed_adaptive\nK=2\nN=4\nM=2\nM_t=2\ndistance=0.1\ngamma=2\ng=3\n");
    CHECK(cfg.topology.relays[0].path_gain_db == doctest::Approx(20.0));
    CHECK(cfg.rate().array_gain == 3.0);
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_WITH_AS(parse_config("scheme = fixed_adaptive\nK=2\nN=4\nM=2\nM_t=2\nphi = 20\n"),
                         doctest::Contains("unknown key 'phi'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("scheme = fixed_adaptive\nK=2\nN=4\nM=2\nM_t=2\nphi = 20\n"),
                         doctest::Contains("line 6"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = nope\nK=1\nN=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("K=1\nN=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = direct\nK=1\nK=2\nN=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = direct\nK=x\nN=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = direct\nK=1\nN=1\nM=2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = fixed_adaptive\nK=2\nN=4\nM=2\nM_t=2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = fixed_adaptive\nK=2\nN=4\nM=2\nM_t=3\nphi_db=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = fixed_adaptive\nK=2\nN=4\nrelays=2\nM=2\nM_t=2\nphi_db=1\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = cyclic_adaptive\nK=2\nN=4\nM=2\nM_t=2\nphi_db=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = multicast\nK=2\nN=4\nrelays=3\nM=2,2\nM_t=2\nphi_db=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = direct\nK=1\nN=1\ntrials=0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = direct\nK=1\nN=1\neta_step_db=0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = direct\nK=1\nN=1\nnot a pair\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = fixed_adaptive\nK=2\nN=4\nM=2\nM_t=2\ndistance=2\ngamma=2\n"),
                    ConfigError);
  }
}

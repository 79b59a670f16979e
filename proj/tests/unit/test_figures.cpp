// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "coopmux/errors.hpp"
#include "coopmux/figures.hpp"

using namespace coopmux;

namespace {

FigureOptions quick() {
  FigureOptions o;
  o.trials = 300;
  o.eta_start_db = 0;
  o.eta_stop_db = 20;
  o.eta_step_db = 10;
  return o;
}

using Names = std::vector<std::string>;

}  // namespace

TEST_SUITE("figures") {
  TEST_CASE("series per figure") {
    CHECK(make_figure(2, quick()).series_names() ==
          Names{"pc_phi10", "pnu_phi10", "pc_phi20", "pnu_phi20", "pc_phi30", "pnu_phi30"});
    CHECK(make_figure(3, quick()).series_names() ==
          Names{"pc_phi10", "pnu_phi10", "pc_phi20", "pnu_phi20", "pc_phi30", "pnu_phi30"});
    CHECK(make_figure(4, quick()).series_names() ==
          Names{"direct", "mimo_4x4", "adaptive_phi20", "bound_phi20", "adaptive_phi30", "bound_phi30"});
    CHECK(make_figure(5, quick()).series_names() == Names{"pc_ors_2relay", "pc_1relay"});
    CHECK(make_figure(6, quick()).series_names() == Names{"selection_1relay", "selection_2relay"});
    CHECK(make_figure(7, quick()).series_names() == Names{"pc_1", "pc_2"});
    CHECK(make_figure(8, quick()).series_names() == Names{"multi_adaptive_2relay", "adaptive_1relay"});
    CHECK_THROWS_AS(make_figure(1, quick()), ContractError);
  }

  TEST_CASE("figures are pure functions of id and seed") {
    CHECK(render_csv(make_figure(6, quick())) == render_csv(make_figure(6, quick())));
    FigureOptions other = quick();
    other.seed = 2;
    CHECK(render_csv(make_figure(6, quick())) != render_csv(make_figure(6, other)));
    other = quick();
    other.workers = 1;
    CHECK(render_csv(make_figure(6, quick())) == render_csv(make_figure(6, other)));
  }

  TEST_CASE("overrides") {
    FigureOptions o = quick();
    o.phi_db = std::vector<double>{15};
    CHECK(make_figure(2, o).series_names() == Names{"pc_phi15", "pnu_phi15"});
    o.r = 1.0;
    const auto doc = make_figure(8, o);
    bool found = false;
    for (const auto& [k, v] : doc.meta) found = found || (k == "run1_rate" && v == "r=1 g=8");
    CHECK(found);
  }
}

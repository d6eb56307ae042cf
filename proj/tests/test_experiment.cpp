#include <cmath>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "wl1/error.hpp"
#include "wl1/experiment.hpp"

using namespace wl1;

namespace {

PhaseGrid grid_from_rates(const std::vector<std::size_t>& ms,
                          const std::vector<std::vector<std::size_t>>& successes,
                          std::size_t trials) {
  PhaseGrid g;
  g.method = "weighted";
  g.alpha = 0.5;
  g.weight = 0.5;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    PhaseColumn col{ms[i], {}};
    for (std::size_t j = 0; j < successes[i].size(); ++j) {
      PhaseCell c;
      c.k = j + 1;
      c.trials = trials;
      c.successes = successes[i][j];
      col.cells.push_back(c);
    }
    g.columns.push_back(col);
  }
  return g;
}

ExperimentConfig tiny() {
  ExperimentConfig c;
  c.N = 30;
  c.m_values = {10, 15};
  c.k_lo = 0.1;
  c.k_hi = 0.5;
  c.alphas = {0.5, 1.0};
  c.trials = 3;
  return c;
}

}  // namespace

TEST_CASE("k grid") {
  ExperimentConfig c;
  CHECK(c.step_for(50) == 1);
  CHECK(c.step_for(60) == 2);
  CHECK(c.step_for(250) == 5);
  CHECK(c.k_values(20) == std::vector<std::size_t>{2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(c.k_values(60).front() == 6);
  CHECK(c.k_values(60).back() == 30);
  CHECK(c.k_values(60).size() == 13);
  c.k_step = 3;
  CHECK(c.k_values(20) == std::vector<std::size_t>{2, 5, 8});
  c.k_lo = 0.0;
  CHECK(c.k_values(20).front() == 1);
}

TEST_CASE("presets and validation") {
  const auto desk = ExperimentConfig::preset("desk");
  CHECK(desk.N == 100);
  CHECK(desk.trials == 25);
  CHECK(desk.m_values == std::vector<std::size_t>{20, 30, 40, 50, 60});
  const auto full = ExperimentConfig::preset("full");
  CHECK(full.N == 500);
  CHECK(full.trials == 50);
  CHECK(full.m_values.front() == 50);
  CHECK(full.m_values.back() == 250);
  CHECK(full.m_values.size() == 9);
  CHECK(full.alphas == std::vector<double>{0.1, 0.3, 0.7, 1.0});
  CHECK(full.weight_for(0.3) == doctest::Approx(0.7));
  CHECK_THROWS_AS(ExperimentConfig::preset("huge"), ArgumentError);

  ExperimentConfig bad;
  bad.m_values = {30, 20};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = ExperimentConfig{};
  bad.threshold = 1.0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = ExperimentConfig{};
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  CHECK_NOTHROW(ExperimentConfig{}.validate());
}

TEST_CASE("threshold curves") {
  const auto ones = grid_from_rates({10, 20}, {{4, 4, 4}, {4, 4, 4, 4}}, 4);
  auto curve = threshold_curve(ones, 0.85);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].k == 3);
  CHECK(curve[1].k == 4);
  const auto zeros = grid_from_rates({10, 20}, {{0, 0}, {0, 0}}, 4);
  CHECK(threshold_curve(zeros, 0.85).empty());
  // An isolated good cell above a failure does not extend the envelope.
  const auto holes = grid_from_rates({10, 20}, {{20, 17, 10, 20}, {10, 20}}, 20);
  curve = threshold_curve(holes, 0.85);
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].m == 10);
  CHECK(curve[0].k == 2);
  CHECK(threshold_at(curve, 10) == 2);
  CHECK(threshold_at(curve, 20) == 0);
}

TEST_CASE("reference line") {
  CHECK(reference_line(500, 10, 1.0, 1.0) == 11.0);
  CHECK(reference_line(500, 50, 0.3, 1.0) == doctest::Approx(50 + 70 * std::log(500.0 / 70.0)));
  CHECK(reference_line(500, 50, 0.3, 1.0) == doctest::Approx(187.6).epsilon(1e-3));
  CHECK(reference_line(500, 20, 0.5, 1.0) == doctest::Approx(20 + 20 * std::log(25.0)));
}

TEST_CASE("csv output and round trip") {
  std::ostringstream empty;
  write_csv({}, empty);
  CHECK(empty.str() == "method,alpha,w,m,k,trials,successes,degenerate,rate\n");

  PhaseGrid base = grid_from_rates({10, 20}, {{3, 1}, {7}}, 7);
  base.method = "l1";
  base.alpha.reset();
  base.weight = 1.0;
  PhaseGrid w = grid_from_rates({10}, {{2, 0, 5}}, 7);
  w.alpha = 0.3;
  w.weight = 0.7;
  w.columns[0].cells[1].degenerate = 2;
  std::ostringstream out;
  write_csv({base, w}, out);
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find("l1,,1,10,1,7,3,0,0.42857142857142855\n") != std::string::npos);
  CHECK(text.find("weighted,0.29999999999999999,0.69999999999999996,10,2,7,0,2,0\n") !=
        std::string::npos);

  std::istringstream in(text);
  const auto back = read_csv(in);
  REQUIRE(back.size() == 2);
  CHECK_FALSE(back[0].alpha.has_value());
  CHECK(*back[1].alpha == 0.3);
  CHECK(back[1].weight == 0.7);
  for (std::size_t g = 0; g < 2; ++g) {
    const PhaseGrid& orig = g == 0 ? base : w;
    REQUIRE(back[g].columns.size() == orig.columns.size());
    for (std::size_t c = 0; c < orig.columns.size(); ++c) {
      REQUIRE(back[g].columns[c].cells.size() == orig.columns[c].cells.size());
      for (std::size_t j = 0; j < orig.columns[c].cells.size(); ++j) {
        const auto& a = back[g].columns[c].cells[j];
        const auto& b = orig.columns[c].cells[j];
        CHECK(std::abs(a.rate() - b.rate()) <= 1e-15);
        CHECK(a.degenerate == b.degenerate);
        CHECK(a.k == b.k);
      }
    }
  }
}

TEST_CASE("malformed csv") {
  std::istringstream bad_header("method,alpha\n");
  CHECK_THROWS_AS(read_csv(bad_header), ParseError);
  std::istringstream bad_row(
      "method,alpha,w,m,k,trials,successes,degenerate,rate\n"
      "l1,,1,10,1,7,3,0,0.42857142857142855\n"
      "l1,,1,10,x,7,3,0,0.5\n");
  try {
    read_csv(bad_row);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream bad_rate(
      "method,alpha,w,m,k,trials,successes,degenerate,rate\n"
      "l1,,1,10,1,4,3,0,0.5\n");
  CHECK_THROWS_AS(read_csv(bad_rate), ParseError);
}

TEST_CASE("svg color endpoints") {
  CHECK(gray_hex(0.0) == "#000000");
  CHECK(gray_hex(1.0) == "#FFFFFF");
  CHECK(gray_hex(0.5) == "#808080");
  const auto g = grid_from_rates({10, 20}, {{0, 1}, {1, 0}}, 1);
  std::ostringstream out;
  write_svg({g}, {threshold_curve(g, 0.85)}, out, SvgOptions{100.0, 1.0});
  const std::string svg = out.str();
  const std::regex rect("<rect [^>]*fill=\"(#[0-9A-F]{6})\"");
  std::size_t black = 0, white = 0, total = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), rect); it != std::sregex_iterator();
       ++it) {
    ++total;
    black += (*it)[1] == "#000000";
    white += (*it)[1] == "#FFFFFF";
  }
  CHECK(total == 4);
  CHECK(black == 2);
  CHECK(white == 2);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("stroke=\"#FF0000\"") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("phase runs are deterministic and thread independent") {
  const ExperimentConfig c = tiny();
  const auto a = run_phase(c, 1);
  const auto b = run_phase(c, 1);
  const auto d = run_phase(c, 3);
  REQUIRE(a.size() == 3);
  CHECK(a[0].method == "l1");
  CHECK(*a[2].alpha == 1.0);
  CHECK(a[2].weight == 0.0);
  std::ostringstream sa, sb, sd;
  write_csv(a, sa);
  write_csv(b, sb);
  write_csv(d, sd);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str() == sd.str());
  for (std::size_t g = 0; g < a.size(); ++g) {
    for (std::size_t c2 = 0; c2 < a[g].columns.size(); ++c2) {
      for (std::size_t j = 0; j < a[g].columns[c2].cells.size(); ++j) {
        const auto& x = a[g].columns[c2].cells[j];
        CHECK(x.outcomes == d[g].columns[c2].cells[j].outcomes);
        CHECK(x.successes + x.degenerate <= x.trials);
        CHECK(x.rate() >= 0.0);
        CHECK(x.rate() <= 1.0);
      }
    }
  }
}

TEST_CASE("perfect estimates at zero weight succeed with m = 3k") {
  ExperimentConfig c;
  c.N = 60;
  c.m_values = {15};
  c.k_lo = 5.0 / 15.0;
  c.k_hi = 5.0 / 15.0;
  c.alphas = {1.0};
  c.trials = 6;
  const auto grids = run_phase(c);
  REQUIRE(grids[1].columns[0].cells.size() == 1);
  CHECK(grids[1].columns[0].cells[0].k == 5);
  CHECK(grids[1].columns[0].cells[0].rate() == 1.0);
}

TEST_CASE("unit weights reproduce the baseline cell for cell") {
  ExperimentConfig c = tiny();
  c.weight_rule = WeightRule::fixed;
  c.fixed_weight = 1.0;
  const auto grids = run_phase(c);
  for (std::size_t g = 1; g < grids.size(); ++g) {
    for (std::size_t i = 0; i < grids[0].columns.size(); ++i) {
      for (std::size_t j = 0; j < grids[0].columns[i].cells.size(); ++j) {
        CHECK(grids[g].columns[i].cells[j].outcomes == grids[0].columns[i].cells[j].outcomes);
      }
    }
  }
}

TEST_CASE("progress reaches the total") {
  std::size_t last = 0, total = 0;
  run_phase(tiny(), 2, [&](std::size_t d, std::size_t t) {
    last = std::max(last, d);
    total = t;
  });
  CHECK(last == total);
  CHECK(total > 0);
}

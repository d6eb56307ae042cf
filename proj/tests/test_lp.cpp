#include <cmath>

#include "doctest.h"
#include "lp_gen.hpp"
#include "oracles.hpp"
#include "wl1/error.hpp"
#include "wl1/lp.hpp"

using namespace wl1;

namespace {

StandardLp beale() {
  StandardLp lp;
  lp.eq_matrix = DenseMatrix{{1, 0, 0, 0.25, -8, -1, 9},
                             {0, 1, 0, 0.5, -12, -0.5, 3},
                             {0, 0, 1, 0, 0, 1, 0}};
  lp.eq_rhs = {0, 0, 1};
  lp.objective = {0, 0, 0, -0.75, 20, -0.5, 6};
  return lp;
}

StandardLp kuhn() {
  StandardLp lp;
  lp.eq_matrix = DenseMatrix{{1, 0, 0, -2, -9, 1, 9},
                             {0, 1, 0, 1.0 / 3.0, 1, -1.0 / 3.0, -2},
                             {0, 0, 1, 2, 3, -1, -12}};
  lp.eq_rhs = {0, 0, 2};
  lp.objective = {0, 0, 0, -2, -3, 1, 12};
  return lp;
}

void check_certificate(const StandardLp& lp, const LpSolution& sol) {
  REQUIRE(sol.status == LpStatus::optimal);
  const auto ex = oracle::matvec(lp.eq_matrix, sol.point);
  for (std::size_t i = 0; i < ex.size(); ++i) {
    CHECK(std::abs(ex[i] - lp.eq_rhs[i]) <= 1e-8 * (1.0 + oracle::max_abs(lp.eq_rhs)));
  }
  for (double x : sol.point) CHECK(x >= -1e-9);
  for (double d : sol.reduced_costs) CHECK(d >= -1e-8);
  CHECK(sol.dual_objective(lp) == doctest::Approx(sol.objective_value).epsilon(1e-8));
  double comp = 0.0;
  for (std::size_t j = 0; j < sol.point.size(); ++j) {
    comp += std::abs(sol.point[j] * sol.reduced_costs[j]);
  }
  CHECK(comp <= 1e-7);
}

}  // namespace

TEST_CASE("cycling examples terminate at the optimum under both pricings") {
  for (Pricing p : {Pricing::steepest_edge, Pricing::bland}) {
    LpOptions opt;
    opt.pricing = p;
    const auto b = solve_lp(beale(), opt);
    check_certificate(beale(), b);
    CHECK(b.objective_value == doctest::Approx(-1.25).epsilon(1e-12));
    const auto k = solve_lp(kuhn(), opt);
    check_certificate(kuhn(), k);
    CHECK(k.objective_value == doctest::Approx(-2.0).epsilon(1e-12));
  }
}

TEST_CASE("a run of degenerate pivots triggers the Bland fallback without cycling") {
  LpOptions opt;
  opt.degenerate_switch = 1;
  const auto b = solve_lp(beale(), opt);
  CHECK(b.objective_value == doctest::Approx(-1.25));
}

TEST_CASE("hand-sized problems") {
  // min −x − y s.t. x + y + s = 1 → −1.
  StandardLp lp;
  lp.eq_matrix = DenseMatrix{{1, 1, 1}};
  lp.eq_rhs = {1};
  lp.objective = {-1, -1, 0};
  auto sol = solve_lp(lp);
  check_certificate(lp, sol);
  CHECK(sol.objective_value == doctest::Approx(-1));

  // Negative right-hand side: −x = −2 → x = 2.
  lp.eq_matrix = DenseMatrix{{-1, 0}};
  lp.eq_rhs = {-2};
  lp.objective = {1, 1};
  sol = solve_lp(lp);
  check_certificate(lp, sol);
  CHECK(sol.point[0] == doctest::Approx(2));
}

TEST_CASE("infeasible and unbounded problems") {
  StandardLp lp;
  lp.eq_matrix = DenseMatrix{{1, 1}};
  lp.eq_rhs = {-1};
  lp.objective = {1, 1};
  auto sol = solve_lp(lp);
  CHECK(sol.status == LpStatus::infeasible);
  CHECK(sol.infeasibility > 0.5);

  lp.eq_matrix = DenseMatrix{{1, -1}};
  lp.eq_rhs = {1};
  lp.objective = {-1, 0};
  sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::unbounded);
  REQUIRE(sol.ray.size() == 2);
  for (double r : sol.ray) CHECK(r >= -1e-12);
  CHECK(std::abs(oracle::matvec(lp.eq_matrix, sol.ray)[0]) <= 1e-12);
  CHECK(lp.objective[0] * sol.ray[0] + lp.objective[1] * sol.ray[1] < 0.0);
}

TEST_CASE("redundant equality rows") {
  StandardLp lp;
  lp.eq_matrix = DenseMatrix{{1, 1, 1}, {2, 2, 2}, {1, 0, 0}};
  lp.eq_rhs = {1, 2, 0.25};
  lp.objective = {0, 1, 2};
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(0.75));
  CHECK(sol.point[1] == doctest::Approx(0.75));
}

TEST_CASE("malformed input and the iteration limit") {
  StandardLp lp;
  lp.eq_matrix = DenseMatrix{{1, 1}};
  lp.eq_rhs = {1, 2};
  lp.objective = {1, 1};
  CHECK_THROWS_AS(solve_lp(lp), ArgumentError);

  Rng rng(99);
  const StandardLp big = random_bounded_lp(8, 20, rng);
  LpOptions opt;
  opt.max_iters = 1;
  CHECK_THROWS_AS(solve_lp(big, opt), IterationLimitError);
}

TEST_CASE("random bounded LPs match vertex enumeration") {
  Rng rng(5);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 2 + rng.below(4);
    const std::size_t n = m + 2 + rng.below(6);
    const StandardLp lp = random_bounded_lp(m, n, rng);
    for (Pricing p : {Pricing::steepest_edge, Pricing::bland}) {
      LpOptions opt;
      opt.pricing = p;
      const auto sol = solve_lp(lp, opt);
      check_certificate(lp, sol);
      oracle::VertexEnumerator ve(lp.eq_matrix, lp.eq_rhs, lp.objective);
      const auto best = ve.solve();
      REQUIRE(best.has_value());
      CHECK(sol.objective_value == doctest::Approx(*best).epsilon(1e-8));
    }
  }
}

TEST_CASE("solution is reproducible") {
  Rng rng(8);
  const StandardLp lp = random_bounded_lp(6, 15, rng);
  const auto a = solve_lp(lp);
  const auto b = solve_lp(lp);
  CHECK(a.point == b.point);
  CHECK(a.iterations == b.iterations);
}

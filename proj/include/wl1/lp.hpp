#pragma once

#include <vector>

#include "wl1/linalg.hpp"

namespace wl1 {

// minimize cᵀv subject to E·v = f, v ≥ 0.
struct StandardLp {
  std::vector<double> objective;
  DenseMatrix eq_matrix;
  std::vector<double> eq_rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus status);

enum class Pricing {
  // Steepest-edge pricing, dropping to Bland's rule after a run of
  // degenerate pivots and returning once the objective moves again.
  steepest_edge,
  // Bland's smallest-index rule throughout.
  bland,
};

struct LpOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  int max_iters = 200000;
  int refactor_interval = 64;
  int degenerate_switch = 25;
  Pricing pricing = Pricing::steepest_edge;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  // Present iff optimal.
  std::vector<double> point;
  double objective_value = 0.0;
  int iterations = 0;
  // Optimal only: dual vector y and reduced costs c − Eᵀy.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  // Unbounded only: ray ≥ 0 with E·ray = 0 and cᵀray < 0.
  std::vector<double> ray;
  // Phase-one residual (sum of artificials) at the end of phase one.
  double infeasibility = 0.0;

  double dual_objective(const StandardLp& lp) const;
};

// Two-phase revised simplex on a dense explicit basis inverse, refactored
// every `refactor_interval` pivots. Throws IterationLimitError after
// `max_iters` pivots and ArgumentError on malformed input.
LpSolution solve_lp(const StandardLp& lp, const LpOptions& options = {});
LpSolution solve_lp(const StandardLp& lp, double feas_tol, int max_iters);

}  // namespace wl1

#include "wl1/recovery.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wl1/error.hpp"

namespace wl1 {

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw ArgumentError("WeightVector: weights must lie in [0,1]");
    }
  }
}

WeightVector WeightVector::uniform(std::size_t n, double value) {
  return WeightVector(std::vector<double>(n, value));
}

WeightVector WeightVector::from_estimate(std::size_t n, const SupportEstimate& est) {
  if (est.estimate.bound() > n) {
    throw ArgumentError("WeightVector: estimate index out of range");
  }
  std::vector<double> w(n, 1.0);
  for (std::size_t i : est.estimate) w[i] = est.weight;
  return WeightVector(std::move(w));
}

double WeightVector::weighted_norm(std::span<const double> z) const {
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += weights_[i] * std::abs(z[i]);
  return s;
}

namespace {

void check_shapes(const DenseMatrix& a, std::span<const double> y,
                  const WeightVector& weights) {
  if (y.size() != a.rows()) {
    throw ArgumentError("recovery: y has " + std::to_string(y.size()) +
                        " entries for " + std::to_string(a.rows()) + " rows");
  }
  if (weights.size() != a.cols()) {
    throw ArgumentError("recovery: weight vector length mismatch");
  }
}

// E = [A, −A] over the split z = u − v.
DenseMatrix split_matrix(const DenseMatrix& a, std::size_t extra_rows,
                         std::size_t extra_cols) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  DenseMatrix e(m + extra_rows, 2 * n + extra_cols);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      e(i, j) = r[j];
      e(i, n + j) = -r[j];
    }
  }
  return e;
}

// The minimizer set is unbounded iff A has a kernel vector supported on the
// zero-weight coordinates.
void check_zero_weight_block(const DenseMatrix& a, const WeightVector& weights) {
  std::vector<std::size_t> zero;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) zero.push_back(i);
  }
  if (zero.empty()) return;
  if (zero.size() > a.rows() ||
      numerical_rank(a.select_columns(zero)) < zero.size()) {
    throw DegenerateRecoveryError(
        "weighted l1: a kernel vector is supported on the zero-weight set; "
        "the minimum is not attained at a unique bounded point");
  }
}

double residual_scale(std::span<const double> y) { return 1.0 + norm_inf(y); }

}  // namespace

double relative_error(std::span<const double> recovered,
                      std::span<const double> truth) {
  if (recovered.size() != truth.size()) {
    throw ArgumentError("relative_error: length mismatch");
  }
  std::vector<double> diff(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) diff[i] = recovered[i] - truth[i];
  return norm2(diff) / std::max(norm2(truth), 1e-300);
}

bool check_exact(std::span<const double> recovered,
                 std::span<const double> truth, double success_tol) {
  return relative_error(recovered, truth) <= success_tol;
}

RecoveryResult solve_weighted_l1(const DenseMatrix& a, std::span<const double> y,
                                 const WeightVector& weights,
                                 std::optional<std::span<const double>> truth,
                                 const RecoveryOptions& options) {
  check_shapes(a, y, weights);
  if (truth && truth->size() != a.cols()) {
    throw ArgumentError("recovery: ground truth length mismatch");
  }
  check_zero_weight_block(a, weights);

  const std::size_t n = a.cols();
  StandardLp lp;
  lp.eq_matrix = split_matrix(a, 0, 0);
  lp.eq_rhs.assign(y.begin(), y.end());
  lp.objective.resize(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    lp.objective[j] = weights[j];
    lp.objective[n + j] = weights[j];
  }
  const LpSolution sol = solve_lp(lp, options.lp);
  if (sol.status == LpStatus::infeasible) {
    throw RecoveryInfeasibleError("weighted l1: y is not in the range of A");
  }
  if (sol.status == LpStatus::unbounded) {
    throw DegenerateRecoveryError("weighted l1: LP reported unbounded");
  }

  RecoveryResult result;
  result.recovered.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    result.recovered[j] = sol.point[j] - sol.point[n + j];
  }
  result.weighted_norm = weights.weighted_norm(result.recovered);
  result.lp_iterations = sol.iterations;
  if (truth) {
    result.relative_error = relative_error(result.recovered, *truth);
    result.exact = result.relative_error <= options.success_tol;
  } else {
    result.relative_error = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

RecoveryResult solve_l1(const DenseMatrix& a, std::span<const double> y,
                        std::optional<std::span<const double>> truth,
                        const RecoveryOptions& options) {
  return solve_weighted_l1(a, y, WeightVector::uniform(a.cols()), truth, options);
}

bool is_unique_minimizer(const DenseMatrix& a, std::span<const double> y,
                         const WeightVector& weights,
                         std::span<const double> candidate,
                         const UniquenessOptions& options) {
  check_shapes(a, y, weights);
  if (candidate.size() != a.cols()) {
    throw ArgumentError("is_unique_minimizer: candidate length mismatch");
  }
  const auto ax = multiply(a, candidate);
  double residual = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    residual = std::max(residual, std::abs(ax[i] - y[i]));
  }
  if (residual > options.lp.feas_tol * residual_scale(y)) {
    throw ArgumentError("is_unique_minimizer: candidate is not feasible (residual " +
                        std::to_string(residual) + ")");
  }

  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double norm = weights.weighted_norm(candidate);
  const double budget = norm + options.budget_slack * (1.0 + norm);

  // Rows: A(u − v) = y, then Σ w(u + v) + slack = budget.
  StandardLp lp;
  lp.eq_matrix = split_matrix(a, 1, 1);
  for (std::size_t j = 0; j < n; ++j) {
    lp.eq_matrix(m, j) = weights[j];
    lp.eq_matrix(m, n + j) = weights[j];
  }
  lp.eq_matrix(m, 2 * n) = 1.0;
  lp.eq_rhs.assign(y.begin(), y.end());
  lp.eq_rhs.push_back(budget);
  lp.objective.assign(2 * n + 1, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    for (double direction : {1.0, -1.0}) {
      // minimize −direction·z_j
      lp.objective[j] = -direction;
      lp.objective[n + j] = direction;
      const LpSolution sol = solve_lp(lp, options.lp);
      lp.objective[j] = 0.0;
      lp.objective[n + j] = 0.0;
      if (sol.status == LpStatus::unbounded) return false;
      if (sol.status == LpStatus::infeasible) {
        throw DegeneracyError(
            "is_unique_minimizer: optimal face LP reported infeasible");
      }
      const double zj = sol.point[j] - sol.point[n + j];
      if (direction * (zj - candidate[j]) > options.uniq_tol) return false;
    }
  }
  return true;
}

}  // namespace wl1

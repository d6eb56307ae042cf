#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wl1/error.hpp"
#include "wl1/index_set.hpp"
#include "wl1/linalg.hpp"
#include "wl1/lp.hpp"
#include "wl1/problem.hpp"

namespace wl1 {

inline constexpr double kDefaultSuccessTol = 1e-4;
inline constexpr double kDefaultUniquenessTol = 1e-7;

// Per-coordinate weights in [0,1].
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> weights);

  static WeightVector uniform(std::size_t n, double value = 1.0);
  // w on the estimate, 1 elsewhere.
  static WeightVector from_estimate(std::size_t n, const SupportEstimate& est);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const { return weights_; }

  double weighted_norm(std::span<const double> z) const;

 private:
  std::vector<double> weights_;
};

struct RecoveryOptions {
  LpOptions lp;
  double success_tol = kDefaultSuccessTol;
};

struct RecoveryResult {
  std::vector<double> recovered;
  double weighted_norm = 0.0;
  // Both only meaningful when a ground truth was supplied; relative_error is
  // NaN otherwise.
  bool exact = false;
  double relative_error = 0.0;
  int lp_iterations = 0;
};

// Raised when the weighted problem is unbounded below, which can only
// happen through a kernel vector supported on zero-weight coordinates.
class DegenerateRecoveryError : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

// min Σ w_i|z_i| s.t. A·z = y through the split z = u − v, u, v ≥ 0.
// Throws RecoveryInfeasibleError when y is outside the range of A and
// DegenerateRecoveryError when the minimum is not attained.
RecoveryResult solve_weighted_l1(const DenseMatrix& a, std::span<const double> y,
                                 const WeightVector& weights,
                                 std::optional<std::span<const double>> truth = {},
                                 const RecoveryOptions& options = {});

RecoveryResult solve_l1(const DenseMatrix& a, std::span<const double> y,
                        std::optional<std::span<const double>> truth = {},
                        const RecoveryOptions& options = {});

// ‖recovered − truth‖₂ / max(‖truth‖₂, 1e−300).
double relative_error(std::span<const double> recovered,
                      std::span<const double> truth);

bool check_exact(std::span<const double> recovered,
                 std::span<const double> truth, double success_tol);

struct UniquenessOptions {
  LpOptions lp;
  double uniq_tol = kDefaultUniquenessTol;
  // Slack on the weighted-norm budget that defines the optimal face,
  // relative to 1 + weighted_norm(candidate).
  double budget_slack = 1e-12;
};

// True iff every feasible z with weighted norm at most that of the
// candidate (plus slack) stays within uniq_tol of it in ℓ∞; decided by
// maximizing and minimizing each coordinate over that set.
// Throws ArgumentError when the candidate is not feasible.
bool is_unique_minimizer(const DenseMatrix& a, std::span<const double> y,
                         const WeightVector& weights,
                         std::span<const double> candidate,
                         const UniquenessOptions& options = {});

}  // namespace wl1

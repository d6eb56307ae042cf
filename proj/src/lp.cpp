#include "wl1/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wl1/error.hpp"

namespace wl1 {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

double LpSolution::dual_objective(const StandardLp& lp) const {
  return dot(duals, lp.eq_rhs);
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kDegenerateStep = 1e-12;

// Columns 0..q-1 are the structural variables; columns q..q+p-1 are the
// phase-one artificials, one per row. Rows are sign-normalized so the
// right-hand side is nonnegative and the artificial basis is feasible.
class Simplex {
 public:
  Simplex(const StandardLp& lp, const LpOptions& opt)
      : opt_(opt),
        p_(lp.eq_matrix.rows()),
        q_(lp.eq_matrix.cols()),
        e_(lp.eq_matrix),
        f_(lp.eq_rhs),
        row_sign_(p_, 1.0),
        cost_(lp.objective),
        basis_(p_),
        position_(q_ + p_, kNone),
        x_basic_(p_),
        binv_(DenseMatrix::identity(p_)),
        gamma_(q_, 1.0),
        y_(p_),
        d_(q_),
        alpha_(p_),
        pivot_row_(q_),
        edge_dot_(q_),
        v_(p_),
        redundant_(p_, false) {
    for (std::size_t i = 0; i < p_; ++i) {
      if (f_[i] < 0.0) {
        row_sign_[i] = -1.0;
        f_[i] = -f_[i];
        for (double& v : e_.row(i)) v = -v;
      }
      basis_[i] = q_ + i;
      position_[q_ + i] = i;
      x_basic_[i] = f_[i];
    }
    for (std::size_t i = 0; i < p_; ++i) {
      const auto r = e_.row(i);
      for (std::size_t j = 0; j < q_; ++j) gamma_[j] += r[j] * r[j];
    }
  }

  LpSolution run() {
    LpSolution sol;
    // Phase one: minimize the sum of artificials.
    std::vector<double> phase1(q_ + p_, 0.0);
    for (std::size_t i = 0; i < p_; ++i) phase1[q_ + i] = 1.0;
    const Outcome first = iterate(phase1, /*phase_two=*/false);
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < p_; ++i) {
      if (basis_[i] >= q_) infeasibility += std::max(x_basic_[i], 0.0);
    }
    sol.infeasibility = infeasibility;
    const double fscale = std::max(1.0, norm_inf(f_));
    if (first != Outcome::optimal || infeasibility > opt_.feas_tol * fscale) {
      sol.status = LpStatus::infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    drive_out_artificials();

    std::vector<double> phase2(q_ + p_, 0.0);
    std::copy(cost_.begin(), cost_.end(), phase2.begin());
    const Outcome second = iterate(phase2, /*phase_two=*/true);
    sol.iterations = iterations_;
    if (second == Outcome::unbounded) {
      sol.status = LpStatus::unbounded;
      sol.ray.assign(q_, 0.0);
      sol.ray[entering_] = 1.0;
      for (std::size_t i = 0; i < p_; ++i) {
        if (basis_[i] < q_) sol.ray[basis_[i]] = -alpha_[i];
      }
      for (double& r : sol.ray) r = std::max(r, 0.0);
      return sol;
    }

    sol.status = LpStatus::optimal;
    sol.point.assign(q_, 0.0);
    for (std::size_t i = 0; i < p_; ++i) {
      if (basis_[i] < q_) sol.point[basis_[i]] = std::max(x_basic_[i], 0.0);
    }
    sol.objective_value = dot(cost_, sol.point);
    sol.duals.resize(p_);
    for (std::size_t i = 0; i < p_; ++i) sol.duals[i] = row_sign_[i] * y_[i];
    sol.reduced_costs = d_;
    for (std::size_t i = 0; i < p_; ++i) {
      if (basis_[i] < q_) sol.reduced_costs[basis_[i]] = 0.0;
    }
    return sol;
  }

 private:
  enum class Outcome { optimal, unbounded };

  double column_entry(std::size_t i, std::size_t j) const {
    return j < q_ ? e_(i, j) : (j - q_ == i ? 1.0 : 0.0);
  }

  void refactor() {
    DenseMatrix b(p_, p_);
    for (std::size_t c = 0; c < p_; ++c) {
      for (std::size_t i = 0; i < p_; ++i) b(i, c) = column_entry(i, basis_[c]);
    }
    binv_ = inverse(b);
    for (std::size_t i = 0; i < p_; ++i) x_basic_[i] = dot(binv_.row(i), f_);
    since_refactor_ = 0;
  }

  void compute_duals(const std::vector<double>& c) {
    std::fill(y_.begin(), y_.end(), 0.0);
    for (std::size_t r = 0; r < p_; ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      const auto br = binv_.row(r);
      for (std::size_t i = 0; i < p_; ++i) y_[i] += cb * br[i];
    }
  }

  void compute_reduced_costs(const std::vector<double>& c) {
    for (std::size_t j = 0; j < q_; ++j) d_[j] = c[j];
    for (std::size_t i = 0; i < p_; ++i) {
      const double yi = y_[i];
      if (yi == 0.0) continue;
      const auto r = e_.row(i);
      for (std::size_t j = 0; j < q_; ++j) d_[j] -= yi * r[j];
    }
  }

  bool bland_mode() const {
    return opt_.pricing == Pricing::bland ||
           degenerate_run_ >= opt_.degenerate_switch;
  }

  std::size_t choose_entering() const {
    const bool bland = bland_mode();
    std::size_t best = kNone;
    double best_score = 0.0;
    for (std::size_t j = 0; j < q_; ++j) {
      if (position_[j] != kNone) continue;
      const double dj = d_[j];
      if (dj >= -opt_.opt_tol) continue;
      if (bland) return j;
      const double score = dj * dj / gamma_[j];
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  void compute_direction(std::size_t j) {
    for (std::size_t i = 0; i < p_; ++i) {
      const auto br = binv_.row(i);
      double s = 0.0;
      for (std::size_t k = 0; k < p_; ++k) s += br[k] * e_(k, j);
      alpha_[i] = s;
    }
  }

  // Leaving row, or kNone when the direction is unblocked.
  std::size_t ratio_test(bool phase_two) const {
    const bool bland = bland_mode();
    double theta_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p_; ++i) {
      const double a = alpha_[i];
      double theta;
      if (phase_two && basis_[i] >= q_) {
        // Artificials left in the basis must stay at zero.
        if (std::abs(a) <= opt_.pivot_tol) continue;
        theta = 0.0;
      } else {
        if (a <= opt_.pivot_tol) continue;
        theta = std::max(x_basic_[i], 0.0) / a;
      }
      theta_min = std::min(theta_min, theta);
    }
    if (!std::isfinite(theta_min)) return kNone;

    const double tie = 1e-12 * (1.0 + theta_min);
    std::size_t leave = kNone;
    for (std::size_t i = 0; i < p_; ++i) {
      const double a = alpha_[i];
      double theta;
      if (phase_two && basis_[i] >= q_) {
        if (std::abs(a) <= opt_.pivot_tol) continue;
        theta = 0.0;
      } else {
        if (a <= opt_.pivot_tol) continue;
        theta = std::max(x_basic_[i], 0.0) / a;
      }
      if (theta > theta_min + tie) continue;
      if (leave == kNone) {
        leave = i;
      } else if (bland) {
        if (basis_[i] < basis_[leave]) leave = i;
      } else if (std::abs(a) > std::abs(alpha_[leave])) {
        leave = i;
      }
    }
    return leave;
  }

  // Goldfarb-Reid recurrence for the reference weights ‖B⁻¹a_j‖² + 1, plus
  // the pivot row needed by the update. Uses B⁻¹ before the pivot.
  void update_edge_weights(std::size_t r, std::size_t entering) {
    const double gamma_q = 1.0 + dot(alpha_, alpha_);
    for (std::size_t i = 0; i < p_; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < p_; ++k) s += binv_(k, i) * alpha_[k];
      v_[i] = s;
    }
    std::fill(pivot_row_.begin(), pivot_row_.end(), 0.0);
    std::fill(edge_dot_.begin(), edge_dot_.end(), 0.0);
    const auto br = binv_.row(r);
    for (std::size_t i = 0; i < p_; ++i) {
      const double b = br[i];
      const double v = v_[i];
      const auto row = e_.row(i);
      for (std::size_t j = 0; j < q_; ++j) {
        pivot_row_[j] += b * row[j];
        edge_dot_[j] += v * row[j];
      }
    }
    const double ar = alpha_[r];
    for (std::size_t j = 0; j < q_; ++j) {
      if (position_[j] != kNone || j == entering) continue;
      const double ratio = pivot_row_[j] / ar;
      if (ratio == 0.0) continue;
      gamma_[j] = std::max(gamma_[j] - 2.0 * ratio * edge_dot_[j] +
                               ratio * ratio * gamma_q,
                           1.0 + ratio * ratio);
    }
    const std::size_t leaving = basis_[r];
    if (leaving < q_) gamma_[leaving] = std::max(gamma_q / (ar * ar), 1.0);
  }

  void pivot(std::size_t r, std::size_t entering, double theta) {
    for (std::size_t i = 0; i < p_; ++i) {
      if (i != r) x_basic_[i] -= theta * alpha_[i];
    }
    x_basic_[r] = theta;

    const double ar = alpha_[r];
    auto prow = binv_.row(r);
    for (double& v : prow) v /= ar;
    for (std::size_t i = 0; i < p_; ++i) {
      if (i == r) continue;
      const double a = alpha_[i];
      if (a == 0.0) continue;
      auto row = binv_.row(i);
      for (std::size_t k = 0; k < p_; ++k) row[k] -= a * prow[k];
    }

    position_[basis_[r]] = kNone;
    basis_[r] = entering;
    position_[entering] = r;
    ++since_refactor_;
    ++iterations_;
  }

  Outcome iterate(const std::vector<double>& c, bool phase_two) {
    degenerate_run_ = 0;
    while (true) {
      if (since_refactor_ >= opt_.refactor_interval) refactor();
      compute_duals(c);
      compute_reduced_costs(c);
      const std::size_t entering = choose_entering();
      if (entering == kNone) {
        if (since_refactor_ > 0) {
          // Confirm optimality against a fresh factorization.
          refactor();
          continue;
        }
        return Outcome::optimal;
      }
      if (iterations_ >= opt_.max_iters) {
        throw IterationLimitError("solve_lp: iteration limit of " +
                                  std::to_string(opt_.max_iters) + " reached");
      }
      compute_direction(entering);
      const std::size_t r = ratio_test(phase_two);
      if (r == kNone) {
        entering_ = entering;
        return Outcome::unbounded;
      }
      const double theta =
          (phase_two && basis_[r] >= q_) ? 0.0
                                         : std::max(x_basic_[r], 0.0) / alpha_[r];
      if (theta <= kDegenerateStep) {
        ++degenerate_run_;
      } else {
        degenerate_run_ = 0;
      }
      update_edge_weights(r, entering);
      pivot(r, entering, theta);
    }
  }

  // Pivot zero-valued artificials out of the basis where some structural
  // column has a usable entry in their row; rows with none are redundant.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < p_; ++r) {
      if (basis_[r] < q_) continue;
      const auto br = binv_.row(r);
      std::size_t best = kNone;
      double best_abs = opt_.pivot_tol;
      for (std::size_t j = 0; j < q_; ++j) {
        if (position_[j] != kNone) continue;
        double s = 0.0;
        for (std::size_t i = 0; i < p_; ++i) s += br[i] * e_(i, j);
        if (std::abs(s) > best_abs) {
          best_abs = std::abs(s);
          best = j;
        }
      }
      if (best == kNone) {
        redundant_[r] = true;
        continue;
      }
      compute_direction(best);
      update_edge_weights(r, best);
      pivot(r, best, x_basic_[r] / alpha_[r]);
    }
    refactor();
  }

  const LpOptions& opt_;
  std::size_t p_;
  std::size_t q_;
  DenseMatrix e_;
  std::vector<double> f_;
  std::vector<double> row_sign_;
  std::vector<double> cost_;

  std::vector<std::size_t> basis_;
  std::vector<std::size_t> position_;
  std::vector<double> x_basic_;
  DenseMatrix binv_;
  std::vector<double> gamma_;

  std::vector<double> y_;
  std::vector<double> d_;
  std::vector<double> alpha_;
  std::vector<double> pivot_row_;
  std::vector<double> edge_dot_;
  std::vector<double> v_;
  std::vector<bool> redundant_;

  std::size_t entering_ = kNone;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int degenerate_run_ = 0;
};

void validate(const StandardLp& lp) {
  const auto& e = lp.eq_matrix;
  if (lp.objective.size() != e.cols()) {
    throw ArgumentError("solve_lp: objective has " +
                        std::to_string(lp.objective.size()) +
                        " entries for " + std::to_string(e.cols()) + " columns");
  }
  if (lp.eq_rhs.size() != e.rows()) {
    throw ArgumentError("solve_lp: right-hand side length mismatch");
  }
  for (double v : lp.objective) {
    if (!std::isfinite(v)) throw ArgumentError("solve_lp: non-finite objective");
  }
  for (double v : lp.eq_rhs) {
    if (!std::isfinite(v)) throw ArgumentError("solve_lp: non-finite rhs");
  }
}

}  // namespace

LpSolution solve_lp(const StandardLp& lp, const LpOptions& options) {
  validate(lp);
  if (lp.eq_matrix.cols() == 0) {
    LpSolution sol;
    sol.status = norm_inf(lp.eq_rhs) <= options.feas_tol ? LpStatus::optimal
                                                         : LpStatus::infeasible;
    sol.duals.assign(lp.eq_rhs.size(), 0.0);
    return sol;
  }
  Simplex simplex(lp, options);
  return simplex.run();
}

LpSolution solve_lp(const StandardLp& lp, double feas_tol, int max_iters) {
  LpOptions opt;
  opt.feas_tol = feas_tol;
  opt.max_iters = max_iters;
  return solve_lp(lp, opt);
}

}  // namespace wl1

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wl1 {

inline constexpr std::uint64_t kDefaultBaseSeed = 20170611ULL;

enum class WeightRule { one_minus_alpha, fixed };

struct ExperimentConfig {
  std::size_t N = 100;
  std::vector<std::size_t> m_values{20, 30, 40, 50, 60};
  // k runs over ⌊k_lo·m⌋ … ⌊k_hi·m⌋ in steps of k_step (0 picks ⌈m/50⌉).
  double k_lo = 0.1;
  double k_hi = 0.5;
  std::size_t k_step = 0;
  std::vector<double> alphas{0.1, 0.3, 0.7, 1.0};
  double rho = 1.0;
  WeightRule weight_rule = WeightRule::one_minus_alpha;
  double fixed_weight = 1.0;
  std::size_t trials = 25;
  std::uint64_t base_seed = kDefaultBaseSeed;
  double threshold = 0.85;
  double success_tol = 1e-4;

  // Throws ArgumentError on an invalid configuration.
  void validate() const;
  double weight_for(double alpha) const;
  std::size_t step_for(std::size_t m) const;
  std::vector<std::size_t> k_values(std::size_t m) const;

  static ExperimentConfig desk();
  static ExperimentConfig full();
  // "desk" or "full".
  static ExperimentConfig preset(const std::string& name);
};

enum class TrialOutcome : std::uint8_t { success, failure, degenerate };

struct PhaseCell {
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t degenerate = 0;
  // Per-trial outcomes in trial order; empty for grids read back from CSV.
  std::vector<TrialOutcome> outcomes;

  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

struct PhaseColumn {
  std::size_t m = 0;
  std::vector<PhaseCell> cells;  // increasing k
};

struct PhaseGrid {
  std::string method;           // "l1" or "weighted"
  std::optional<double> alpha;  // empty for the ℓ1 baseline
  double weight = 1.0;
  std::vector<PhaseColumn> columns;  // increasing m

  const PhaseCell* find(std::size_t m, std::size_t k) const;
};

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

// The ℓ1 baseline first, then one weighted grid per alpha. Trial t of cell
// (m, k) draws A and x from hash(base_seed, m, k, t) and the estimate for
// alpha index i from hash(base_seed, m, k, t, i + 1), so every method sees
// the same instances. The result does not depend on `threads`.
std::vector<PhaseGrid> run_phase(const ExperimentConfig& config, unsigned threads = 1,
                                 const ProgressCallback& progress = {});

struct ThresholdPoint {
  std::size_t m = 0;
  std::size_t k = 0;
};

// Per column, the largest k such that it and every smaller grid k reach the
// threshold rate. Columns whose first cell misses it are omitted.
std::vector<ThresholdPoint> threshold_curve(const PhaseGrid& grid, double threshold);

// k*(m) looked up in a curve, 0 when the column is absent.
std::size_t threshold_at(const std::vector<ThresholdPoint>& curve, std::size_t m);

// k + s·ln(N/s) with s = (1 + ρ − 2αρ)k; k + 1 when s < 1.
double reference_line(double N, double k, double alpha, double rho);

void write_csv(const std::vector<PhaseGrid>& grids, std::ostream& out);
void emit_csv(const std::vector<PhaseGrid>& grids, const std::string& path);
std::vector<PhaseGrid> read_csv(std::istream& in);
std::vector<PhaseGrid> load_csv(const std::string& path);

struct SvgOptions {
  // Reference lines are drawn when N > 0.
  double N = 0.0;
  double rho = 1.0;
  double cell_px = 12.0;
};

// Stacked heatmap panels, one per grid, with the matching curve (if any)
// as a red polyline and the reference line in green.
void write_svg(const std::vector<PhaseGrid>& grids,
               const std::vector<std::vector<ThresholdPoint>>& curves,
               std::ostream& out, const SvgOptions& options = {});
void emit_svg(const std::vector<PhaseGrid>& grids,
              const std::vector<std::vector<ThresholdPoint>>& curves,
              const std::string& path, const SvgOptions& options = {});

// "#RRGGBB" gray level for a rate in [0,1].
std::string gray_hex(double rate);

}  // namespace wl1

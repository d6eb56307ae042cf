#include "wl1/problem.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "wl1/error.hpp"

namespace wl1 {

namespace {

// First `count` entries of a partial Fisher-Yates shuffle of `pool`.
std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool,
                                                    std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

EstimateQuality estimate_quality(const IndexSet& support,
                                 const IndexSet& estimate) {
  EstimateQuality q;
  const std::size_t hits = set_intersection(support, estimate).size();
  if (!estimate.empty()) {
    q.alpha = static_cast<double>(hits) / static_cast<double>(estimate.size());
  }
  if (!support.empty()) {
    q.rho = static_cast<double>(estimate.size()) /
            static_cast<double>(support.size());
  }
  q.error_size = symmetric_difference(support, estimate).size();
  return q;
}

std::size_t round_count(double value) {
  if (!(value >= 0.0)) throw ArgumentError("round_count: negative count");
  return static_cast<std::size_t>(std::floor(value + 0.5 + 1e-9));
}

DenseMatrix gen_gaussian_matrix(std::size_t m, std::size_t n, Rng& rng) {
  if (m == 0 || n == 0) throw ArgumentError("gen_gaussian_matrix: empty size");
  DenseMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (double& v : a.row(i)) v = rng.normal();
  }
  return a;
}

ProblemInstance gen_sparse_signal(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) {
    throw ArgumentError("gen_sparse_signal: k = " + std::to_string(k) +
                        " exceeds n = " + std::to_string(n));
  }
  ProblemInstance inst;
  inst.seed = rng.seed();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  // Draw positions first, then values, in position-draw order.
  const auto picked = sample_without_replacement(std::move(all), k, rng);
  inst.signal.assign(n, 0.0);
  for (std::size_t idx : picked) inst.signal[idx] = rng.normal();
  inst.support = IndexSet(picked);
  return inst;
}

void measure(const DenseMatrix& a, ProblemInstance& instance) {
  instance.measurements = multiply(a, instance.signal);
}

SupportEstimate gen_support_estimate(const ProblemInstance& instance,
                                     double alpha, double rho, double weight,
                                     Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ArgumentError("gen_support_estimate: alpha must lie in [0,1]");
  }
  if (!(rho > 0.0)) throw ArgumentError("gen_support_estimate: rho must be positive");
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw ArgumentError("gen_support_estimate: weight must lie in [0,1]");
  }
  const std::size_t n = instance.dimension();
  const std::size_t k = instance.sparsity();
  const std::size_t size = round_count(rho * static_cast<double>(k));
  const std::size_t inside = round_count(alpha * rho * static_cast<double>(k));
  if (inside > k || inside > size || size - inside > n - k) {
    throw ArgumentError("gen_support_estimate: infeasible cardinalities (|T~| = " +
                        std::to_string(size) + ", |T~ ∩ T| = " +
                        std::to_string(inside) + ", k = " + std::to_string(k) +
                        ", N = " + std::to_string(n) + ")");
  }

  const IndexSet outside_pool = complement(instance.support, n);
  std::vector<std::size_t> in_pool(instance.support.begin(), instance.support.end());
  std::vector<std::size_t> out_pool(outside_pool.begin(), outside_pool.end());

  auto chosen = sample_without_replacement(std::move(in_pool), inside, rng);
  auto extra = sample_without_replacement(std::move(out_pool), size - inside, rng);
  chosen.insert(chosen.end(), extra.begin(), extra.end());
  return SupportEstimate{IndexSet(std::move(chosen)), weight};
}

double implied_error_size(double k, double alpha, double rho) {
  return (1.0 + rho - 2.0 * alpha * rho) * k;
}

}  // namespace wl1

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wl1/index_set.hpp"
#include "wl1/linalg.hpp"
#include "wl1/random.hpp"

namespace wl1 {

// A k-sparse signal x with support T and, once measured, y = A·x.
struct ProblemInstance {
  std::vector<double> signal;
  IndexSet support;
  std::vector<double> measurements;
  std::uint64_t seed = 0;

  std::size_t dimension() const { return signal.size(); }
  std::size_t sparsity() const { return support.size(); }
};

// Support estimate T̃ and the weight applied on it.
struct SupportEstimate {
  IndexSet estimate;
  double weight = 1.0;
};

// Accuracy, size ratio and error size of an estimate relative to a support.
struct EstimateQuality {
  double alpha = 0.0;  // |T̃ ∩ T| / |T̃|, 0 when T̃ is empty
  double rho = 0.0;    // |T̃| / |T|, 0 when T is empty
  std::size_t error_size = 0;  // |T Δ T̃|
};

EstimateQuality estimate_quality(const IndexSet& support,
                                 const IndexSet& estimate);

// Round half up with a small guard so that products such as 0.7·5 land on
// the larger integer.
std::size_t round_count(double value);

// i.i.d. standard normal m×n matrix.
DenseMatrix gen_gaussian_matrix(std::size_t m, std::size_t n, Rng& rng);

// Support uniform without replacement, nonzeros i.i.d. standard normal.
// The returned instance has no measurements yet.
ProblemInstance gen_sparse_signal(std::size_t n, std::size_t k, Rng& rng);

// Fills instance.measurements = A·signal.
void measure(const DenseMatrix& a, ProblemInstance& instance);

// |T̃| = round(ρk) with round(αρk) members drawn uniformly from T and the rest
// uniformly from the complement.
SupportEstimate gen_support_estimate(const ProblemInstance& instance,
                                     double alpha, double rho, double weight,
                                     Rng& rng);

// (1 + ρ − 2αρ)k: the error size implied by accuracy α and size ratio ρ.
double implied_error_size(double k, double alpha, double rho);

}  // namespace wl1

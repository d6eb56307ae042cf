#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wl1/index_set.hpp"
#include "wl1/linalg.hpp"
#include "wl1/lp.hpp"
#include "wl1/problem.hpp"

namespace wl1 {

// Which null space property a certificate answers.
//   standard      ‖h_T‖₁ ≤ C‖h_{T^c}‖₁ for all |T| ≤ k
//   nonuniform    fixed T and T̃, S = T Δ T̃
//   uniform       all |T| ≤ k, |S| ≤ s
//   uniform_star  |T| = k, S ⊂ T, |S| = s
// The left-hand side of the weighted forms is w‖h_T‖₁ + (1 − w)‖h_S‖₁.
enum class NspMode { standard, nonuniform, uniform, uniform_star };

const char* to_string(NspMode mode);
NspMode parse_nsp_mode(const std::string& text);

struct NspOptions {
  // Largest N for which the 2^(N−1) sign patterns are enumerated.
  std::size_t orthant_cap = 18;
  // Upper bound on (T, S) pairs × feasible orthants for one query.
  unsigned long long lp_budget = 400'000'000ULL;
  // For s ≤ k, search only S ⊂ T with |T| = k. This restriction is lossless;
  // disable it to run the full (T, S) double enumeration.
  bool prune_uniform = true;
  unsigned threads = 1;
  LpOptions lp;
};

// Optimal constant C* (possibly +infinity) and a maximizing null-space vector
// with the sets at which the ratio
//   (w‖h_T‖₁ + (1 − w)‖h_S‖₁) / ‖h_{T^c}‖₁
// attains it.
struct NspCertificate {
  NspMode mode = NspMode::standard;
  std::size_t k = 0;
  std::size_t s = 0;
  double weight = 1.0;
  double optimal_constant = 0.0;
  std::vector<double> witness;
  IndexSet witness_T;
  IndexSet witness_S;
  unsigned long long lp_solves = 0;

  bool infinite() const;
};

// The defining ratio at (h, T, S); +infinity when the denominator vanishes
// and the numerator does not, 0 when both vanish.
double nsp_ratio(std::span<const double> h, const IndexSet& t, const IndexSet& s,
                 double weight);

// The sign orthants whose intersection with ker(A) is full-dimensional in
// ker(A). Coordinates that vanish on all of ker(A) keep sign +, and the first
// remaining coordinate is fixed positive (C* is invariant under h → −h). Orthants are kept in lexicographic order of their sign pattern
// (+ before −, coordinate 0 first), which is also the tie-break order.
class NullSpaceOrthants {
 public:
  explicit NullSpaceOrthants(const DenseMatrix& a, const NspOptions& options = {});

  const DenseMatrix& matrix() const { return a_; }
  const DenseMatrix& basis() const { return basis_; }
  std::size_t dimension() const { return a_.cols(); }
  std::size_t count() const { return patterns_.size(); }
  // Sign of coordinate i in orthant `o`: +1 or −1.
  int sign(std::size_t o, std::size_t i) const {
    return (patterns_[o] >> i) & 1u ? -1 : 1;
  }
  unsigned long long screening_solves() const { return screening_solves_; }

 private:
  DenseMatrix a_;
  DenseMatrix basis_;
  std::vector<std::uint32_t> patterns_;  // bit i set ⇔ σ_i = −1
  unsigned long long screening_solves_ = 0;
};

NspCertificate nsp_constant_nonuniform(const DenseMatrix& a, const IndexSet& t,
                                       const IndexSet& t_est, double weight,
                                       const NspOptions& options = {});
NspCertificate nsp_constant_nonuniform(const NullSpaceOrthants& orthants,
                                       const IndexSet& t, const IndexSet& t_est,
                                       double weight, const NspOptions& options = {});

NspCertificate nsp_constant_standard(const DenseMatrix& a, std::size_t k,
                                     const NspOptions& options = {});
NspCertificate nsp_constant_standard(const NullSpaceOrthants& orthants,
                                     std::size_t k, const NspOptions& options = {});

NspCertificate nsp_constant_uniform(const DenseMatrix& a, std::size_t k,
                                    std::size_t s, double weight,
                                    const NspOptions& options = {});
NspCertificate nsp_constant_uniform(const NullSpaceOrthants& orthants,
                                    std::size_t k, std::size_t s, double weight,
                                    const NspOptions& options = {});

// Requires s ≤ k.
NspCertificate nsp_constant_uniform_star(const DenseMatrix& a, std::size_t k,
                                         std::size_t s, double weight,
                                         const NspOptions& options = {});
NspCertificate nsp_constant_uniform_star(const NullSpaceOrthants& orthants,
                                         std::size_t k, std::size_t s,
                                         double weight,
                                         const NspOptions& options = {});

// Upper bound on the weighted constant from the standard constants of
// orders s and k − s:
//   ((1 + w)·C_s·C_{k−s} + C_s + w·C_{k−s}) / (1 − C_s·C_{k−s}).
// Throws DomainError unless C_s·C_{k−s} < 1.
double composed_constant(double c_s, double c_ks, double weight);

// Largest weight keeping the composed constant below one,
//   (1 − 2·C_s·C_{k−s} − C_s) / (C_{k−s}·(C_s + 1)), clamped to [0, 1].
// Requires C_s < 1 / (2·C_{k−s} + 1); throws DomainError otherwise.
double max_weight_for_recovery(double c_s, double c_ks);

// An instance on which weighted ℓ1 cannot have the planted signal as its
// unique minimizer, built from a certificate with C* ≥ 1: x = h_T,
// T̃ = T Δ S, and the competitor −h_{T^c} satisfies A(−h_{T^c}) = A·x with
// weighted norm no larger than that of x.
struct FailureInstance {
  ProblemInstance instance;
  SupportEstimate estimate;
  std::vector<double> competitor;
};

FailureInstance failure_instance_from_witness(const DenseMatrix& a,
                                              const NspCertificate& cert);

}  // namespace wl1

#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace wl1 {

// Parameters of the Gaussian measurement conditions. Counts are carried as
// reals so that fractional error sizes such as (1 + ρ − 2αρ)k can be used
// directly; callers wanting integer semantics pass integral values.
struct BoundInputs {
  double N = 0.0;
  double k = 0.0;
  double s = 0.0;
  double alpha = 1.0;
  double rho = 1.0;
  double w = 1.0;
  double C = 0.5;
  double epsilon = 0.01;
};

enum class BoundKind { thm2, thm3, cor5, cor6 };

const char* to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& text);

// (1/(2πe³))^{1/4}
double gaussian_width_constant();

// Summands of a right-hand side, in the order they are written. Bounds with
// three summands leave the last entry at zero.
struct BoundTerms {
  std::array<double, 4> terms{};
  double total() const { return terms[0] + terms[1] + terms[2] + terms[3]; }
};

// √(s + αρk) + C⁻¹√(2((w² − 2w(1−α))ρk + s)·ln(eN/k))
//   + c₀√(k/ln(eN/k)) + √(2 ln ε⁻¹)
// Requires αρ ≤ 1. A negative radicand raises DomainError naming the term.
BoundTerms terms_thm3(const BoundInputs& in);
double rhs_thm3(const BoundInputs& in);

// √(k + s) + C⁻¹√(2(w²k + s)·ln(eN/k)) + c₀√(k/ln(eN/k)) + √(2 ln ε⁻¹)
// (alpha and rho are ignored).
BoundTerms terms_thm2(const BoundInputs& in);
double rhs_thm2(const BoundInputs& in);

// (1 + c₀/√ln(eN/k))·√(k + s) + C⁻¹√(2(w²k + s)·ln(eN/k))
//   + √(2 ln ε⁻¹ + (s + 1)·ln(eN/s) + k)
// Requires k ≤ N/2 and s ≤ k. At s = 0 the condition degenerates to m > k;
// the returned value is (k + 1)/√(k + 2) so that min_measurements gives k + 1.
BoundTerms terms_cor5(const BoundInputs& in);
double rhs_cor5(const BoundInputs& in);

// First two summands of cor5, tail √(2 ln ε⁻¹ + 2k·ln(eN/k)).
BoundTerms terms_cor6(const BoundInputs& in);
double rhs_cor6(const BoundInputs& in);

BoundTerms bound_terms(BoundKind kind, const BoundInputs& in);
double bound_rhs(BoundKind kind, const BoundInputs& in);

// m/√(m + 1), the common left-hand side.
double measurement_lhs(double m);

// Smallest integer m ≥ 1 with m/√(m + 1) ≥ rhs.
std::int64_t min_measurements_for(double rhs);
std::int64_t min_measurements(BoundKind kind, const BoundInputs& in);

struct WeightChoice {
  double weight;        // 1 − α
  double interval_lo;   // 1 − 2α, may be negative
  double interval_hi;   // 1
};

// The weight minimizing w² − 2w(1 − α), and the open interval of weights
// for which the weighted radicand is below the unweighted one.
WeightChoice optimal_weight(double alpha);

}  // namespace wl1

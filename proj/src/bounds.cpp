#include "wl1/bounds.hpp"

#include <cmath>
#include <numbers>

#include "wl1/error.hpp"

namespace wl1 {

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::thm2:
      return "thm2";
    case BoundKind::thm3:
      return "thm3";
    case BoundKind::cor5:
      return "cor5";
    case BoundKind::cor6:
      return "cor6";
  }
  return "unknown";
}

BoundKind parse_bound_kind(const std::string& text) {
  if (text == "thm2") return BoundKind::thm2;
  if (text == "thm3") return BoundKind::thm3;
  if (text == "cor5") return BoundKind::cor5;
  if (text == "cor6") return BoundKind::cor6;
  throw ArgumentError("unknown bound '" + text + "'");
}

double gaussian_width_constant() {
  using std::numbers::e;
  using std::numbers::pi;
  return std::pow(1.0 / (2.0 * pi * e * e * e), 0.25);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("bound: " + what);
}

void check_common(const BoundInputs& in) {
  require(in.N >= 1.0, "N must be at least 1");
  require(in.k >= 1.0, "k must be at least 1");
  require(in.k <= in.N, "k must not exceed N");
  require(in.s >= 0.0, "s must be nonnegative");
  require(in.w >= 0.0 && in.w <= 1.0, "w must lie in [0,1]");
  require(in.C > 0.0 && in.C < 1.0, "C must lie in (0,1)");
  require(in.epsilon > 0.0 && in.epsilon < 1.0, "epsilon must lie in (0,1)");
}

void check_corollary(const BoundInputs& in) {
  require(in.k <= in.N / 2.0, "k must not exceed N/2");
  require(in.s <= in.k, "s must not exceed k");
}

double root(double radicand, const char* term) {
  if (radicand < 0.0) {
    throw DomainError(std::string("bound: negative radicand in ") + term + " (" +
                      std::to_string(radicand) + ")");
  }
  return std::sqrt(radicand);
}

double log_ratio(const BoundInputs& in, double count) {
  return std::log(std::numbers::e * in.N / count);
}

double confidence_term(const BoundInputs& in) {
  return root(2.0 * std::log(1.0 / in.epsilon), "the confidence term");
}

}  // namespace

BoundTerms terms_thm3(const BoundInputs& in) {
  check_common(in);
  require(in.alpha >= 0.0 && in.alpha <= 1.0, "alpha must lie in [0,1]");
  require(in.rho > 0.0, "rho must be positive");
  require(in.alpha * in.rho <= 1.0 + 1e-12, "alpha*rho must not exceed 1");
  const double lk = log_ratio(in, in.k);
  const double weighted =
      (in.w * in.w - 2.0 * in.w * (1.0 - in.alpha)) * in.rho * in.k + in.s;
  BoundTerms t;
  t.terms[0] = root(in.s + in.alpha * in.rho * in.k, "the first term");
  t.terms[1] = root(2.0 * weighted * lk, "the weighted width term") / in.C;
  t.terms[2] = gaussian_width_constant() * root(in.k / lk, "the third term");
  t.terms[3] = confidence_term(in);
  return t;
}

BoundTerms terms_thm2(const BoundInputs& in) {
  check_common(in);
  const double lk = log_ratio(in, in.k);
  BoundTerms t;
  t.terms[0] = std::sqrt(in.k + in.s);
  t.terms[1] = root(2.0 * (in.w * in.w * in.k + in.s) * lk, "the width term") / in.C;
  t.terms[2] = gaussian_width_constant() * std::sqrt(in.k / lk);
  t.terms[3] = confidence_term(in);
  return t;
}

namespace {

BoundTerms corollary_head(const BoundInputs& in) {
  check_common(in);
  check_corollary(in);
  const double lk = log_ratio(in, in.k);
  BoundTerms t;
  t.terms[0] = (1.0 + gaussian_width_constant() / std::sqrt(lk)) * std::sqrt(in.k + in.s);
  t.terms[1] = std::sqrt(2.0 * (in.w * in.w * in.k + in.s) * lk) / in.C;
  return t;
}

}  // namespace

BoundTerms terms_cor5(const BoundInputs& in) {
  check_common(in);
  check_corollary(in);
  if (in.s == 0.0) {
    BoundTerms t;
    t.terms[0] = (in.k + 1.0) / std::sqrt(in.k + 2.0);
    return t;
  }
  BoundTerms t = corollary_head(in);
  t.terms[2] = root(2.0 * std::log(1.0 / in.epsilon) +
                        (in.s + 1.0) * log_ratio(in, in.s) + in.k,
                    "the union tail");
  return t;
}

BoundTerms terms_cor6(const BoundInputs& in) {
  BoundTerms t = corollary_head(in);
  t.terms[2] = root(2.0 * std::log(1.0 / in.epsilon) + 2.0 * in.k * log_ratio(in, in.k),
                    "the uniform tail");
  return t;
}

double rhs_thm3(const BoundInputs& in) { return terms_thm3(in).total(); }
double rhs_thm2(const BoundInputs& in) { return terms_thm2(in).total(); }
double rhs_cor5(const BoundInputs& in) { return terms_cor5(in).total(); }
double rhs_cor6(const BoundInputs& in) { return terms_cor6(in).total(); }

BoundTerms bound_terms(BoundKind kind, const BoundInputs& in) {
  switch (kind) {
    case BoundKind::thm2:
      return terms_thm2(in);
    case BoundKind::thm3:
      return terms_thm3(in);
    case BoundKind::cor5:
      return terms_cor5(in);
    case BoundKind::cor6:
      return terms_cor6(in);
  }
  throw ArgumentError("unknown bound kind");
}

double bound_rhs(BoundKind kind, const BoundInputs& in) {
  return bound_terms(kind, in).total();
}

double measurement_lhs(double m) { return m / std::sqrt(m + 1.0); }

std::int64_t min_measurements_for(double rhs) {
  if (!std::isfinite(rhs)) throw DomainError("min_measurements: right-hand side is not finite");
  if (measurement_lhs(1.0) >= rhs) return 1;
  std::int64_t lo = 1;  // lhs(lo) < rhs
  auto hi = static_cast<std::int64_t>(std::ceil(4.0 * (rhs + 1.0) * (rhs + 1.0)));
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (measurement_lhs(static_cast<double>(mid)) >= rhs) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::int64_t min_measurements(BoundKind kind, const BoundInputs& in) {
  return min_measurements_for(bound_rhs(kind, in));
}

WeightChoice optimal_weight(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("optimal_weight: alpha must lie in [0,1]");
  }
  return {1.0 - alpha, 1.0 - 2.0 * alpha, 1.0};
}

}  // namespace wl1

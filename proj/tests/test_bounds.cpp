#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "wl1/bounds.hpp"
#include "wl1/error.hpp"
#include "wl1/random.hpp"

using namespace wl1;

namespace {

const double c0 = std::pow(2.0 * std::numbers::pi * std::exp(3.0), -0.25);

BoundInputs base() {
  BoundInputs in;
  in.N = 500;
  in.k = 10;
  in.s = 2;
  in.alpha = 0.7;
  in.rho = 1.0;
  in.w = 0.3;
  in.C = 0.9;
  in.epsilon = 0.01;
  return in;
}

// Draws satisfying every precondition: k ≤ N/2, αρ ≤ 1 and s no smaller
// than the implied error size, so all radicands are nonnegative.
BoundInputs random_inputs(Rng& rng) {
  BoundInputs in;
  in.N = static_cast<double>(20 + rng.below(2000));
  in.k = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(in.N / 2)));
  in.rho = 0.1 + 1.9 * rng.uniform();
  in.alpha = rng.uniform() * std::min(1.0, 1.0 / in.rho);
  const double implied = (1.0 + in.rho - 2.0 * in.alpha * in.rho) * in.k;
  in.s = std::ceil(implied) + static_cast<double>(rng.below(5));
  in.w = rng.uniform();
  in.C = 0.05 + 0.9 * rng.uniform();
  in.epsilon = 1e-6 + 0.5 * rng.uniform();
  return in;
}

}  // namespace

TEST_CASE("width constant") { CHECK(gaussian_width_constant() == doctest::Approx(c0)); }

TEST_CASE("theorem-three terms by hand") {
  BoundInputs in;
  in.N = std::numbers::e;  // ln(eN/k) = 2 at k = 1
  in.k = 1;
  in.s = 1;
  in.alpha = 0.5;
  in.rho = 1.0;
  in.w = 0.5;
  in.C = 0.5;
  in.epsilon = 0.1;
  const auto t = terms_thm3(in);
  CHECK(t.terms[0] == doctest::Approx(std::sqrt(1.5)));
  // (0.25 − 0.5)·1 + 1 = 0.75
  CHECK(t.terms[1] == doctest::Approx(2.0 * std::sqrt(2.0 * 0.75 * 2.0)));
  CHECK(t.terms[2] == doctest::Approx(c0 * std::sqrt(0.5)));
  CHECK(t.terms[3] == doctest::Approx(std::sqrt(2.0 * std::log(10.0))));
  CHECK(rhs_thm3(in) == doctest::Approx(t.terms[0] + t.terms[1] + t.terms[2] + t.terms[3]));
}

TEST_CASE("theorem-three width term at the weight endpoints") {
  BoundInputs in = base();
  const double lk = std::log(std::numbers::e * in.N / in.k);
  in.w = 0.0;
  CHECK(terms_thm3(in).terms[1] == doctest::Approx(std::sqrt(2.0 * in.s * lk) / in.C));
  in.w = 1.0;
  in.rho = 1.0;
  in.alpha = 0.8;
  in.s = (2.0 - 2.0 * in.alpha) * in.k;
  CHECK(terms_thm3(in).terms[1] == doctest::Approx(std::sqrt(2.0 * in.k * lk) / in.C));
}

TEST_CASE("theorem-two terms") {
  BoundInputs in = base();
  const double lk = std::log(std::numbers::e * in.N / in.k);
  in.w = 0.0;
  CHECK(terms_thm2(in).terms[1] == doctest::Approx(std::sqrt(2.0 * in.s * lk) / in.C));
  in.w = 1.0;
  in.s = in.k;
  CHECK(terms_thm2(in).terms[1] == doctest::Approx(std::sqrt(2.0 * 2.0 * in.k * lk) / in.C));
  const auto t = terms_thm2(in);
  CHECK(t.terms[0] == doctest::Approx(std::sqrt(in.k + in.s)));
  CHECK(t.terms[2] == doctest::Approx(c0 * std::sqrt(in.k / lk)));
}

TEST_CASE("negative radicand names the term") {
  BoundInputs in = base();
  in.alpha = 0.0;
  in.w = 0.5;
  in.s = 0.0;
  try {
    rhs_thm3(in);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("weighted width term") != std::string::npos);
  }
}

TEST_CASE("domain checks") {
  BoundInputs in = base();
  in.C = 1.0;
  CHECK_THROWS_AS(rhs_thm2(in), DomainError);
  in = base();
  in.alpha = 1.0;
  in.rho = 1.5;
  CHECK_THROWS_AS(rhs_thm3(in), DomainError);
  in = base();
  in.k = 300;
  CHECK_THROWS_AS(rhs_cor5(in), DomainError);
  in = base();
  in.s = 11;
  CHECK_THROWS_AS(rhs_cor6(in), DomainError);
  in = base();
  in.epsilon = 0.0;
  CHECK_THROWS_AS(rhs_thm2(in), DomainError);
}

TEST_CASE("corollary forms") {
  BoundInputs in = base();
  const double lk = std::log(std::numbers::e * in.N / in.k);
  const double ls = std::log(std::numbers::e * in.N / in.s);
  const auto t5 = terms_cor5(in);
  CHECK(t5.terms[0] == doctest::Approx((1.0 + c0 / std::sqrt(lk)) * std::sqrt(in.k + in.s)));
  CHECK(t5.terms[2] ==
        doctest::Approx(std::sqrt(2.0 * std::log(100.0) + (in.s + 1.0) * ls + in.k)));
  CHECK(t5.terms[3] == 0.0);
  const auto t6 = terms_cor6(in);
  CHECK(t6.terms[0] == t5.terms[0]);
  CHECK(t6.terms[1] == t5.terms[1]);
  CHECK(t6.terms[2] == doctest::Approx(std::sqrt(2.0 * std::log(100.0) + 2.0 * in.k * lk)));

  in.s = 0;
  CHECK(min_measurements(BoundKind::cor5, in) == 11);
}

TEST_CASE("corollary tails compare as their radicands do") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    BoundInputs in = random_inputs(rng);
    in.s = std::min(in.k, std::max(1.0, std::floor(in.k * rng.uniform())));
    const double lk = std::log(std::numbers::e * in.N / in.k);
    const double ls = std::log(std::numbers::e * in.N / in.s);
    const bool bigger = 2.0 * in.k * lk > (in.s + 1.0) * ls + in.k;
    CHECK((terms_cor6(in).terms[2] > terms_cor5(in).terms[2]) == bigger);
  }
}

TEST_CASE("pointwise orderings on random draws") {
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    const BoundInputs in = random_inputs(rng);
    CHECK(rhs_thm2(in) >= rhs_thm3(in) - 1e-12);
    CHECK(min_measurements(BoundKind::thm2, in) >= min_measurements(BoundKind::thm3, in));
    if (in.s <= in.k) CHECK(rhs_cor5(in) >= rhs_thm2(in));
  }
}

TEST_CASE("optimal weight") {
  CHECK(optimal_weight(1.0).weight == 0.0);
  const auto half = optimal_weight(0.5);
  CHECK(half.weight == 0.5);
  CHECK(half.interval_lo == 0.0);
  CHECK(half.interval_hi == 1.0);
  CHECK_THROWS_AS(optimal_weight(1.5), DomainError);

  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    BoundInputs in = random_inputs(rng);
    double best_w = 0.0, best = rhs_thm3(in);
    for (int j = 0; j <= 1000; ++j) {
      in.w = j * 1e-3;
      const double v = rhs_thm3(in);
      if (v < best) {
        best = v;
        best_w = in.w;
      }
    }
    CHECK(std::abs(best_w - optimal_weight(in.alpha).weight) <= 1e-3 + 1e-12);
    // Nondecreasing on [1 − α, 1].
    double prev = -1.0;
    for (double w = 1.0 - in.alpha; w <= 1.0; w += 0.01) {
      in.w = w;
      const double v = rhs_thm3(in);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
    // Inside the improvement interval the radicand beats the unweighted one.
    const auto choice = optimal_weight(in.alpha);
    const double w = std::max(0.0, choice.interval_lo) +
                     0.5 * (choice.interval_hi - std::max(0.0, choice.interval_lo));
    if (w > choice.interval_lo && w < 1.0) {
      CHECK((w * w - 2.0 * w * (1.0 - in.alpha)) * in.rho * in.k + in.s <
            (1.0 - 2.0 * (1.0 - in.alpha)) * in.rho * in.k + in.s);
    }
  }
}

TEST_CASE("inversion of the left side") {
  CHECK(min_measurements_for(0.0) == 1);
  CHECK(min_measurements_for(-3.0) == 1);
  CHECK_THROWS_AS(min_measurements_for(INFINITY), DomainError);
  Rng rng(44);
  for (int i = 0; i < 2000; ++i) {
    const double r = 100.0 * rng.uniform();
    const auto m = min_measurements_for(r);
    CHECK(measurement_lhs(static_cast<double>(m)) >= r);
    if (m > 1) CHECK(measurement_lhs(static_cast<double>(m - 1)) < r);
    const double root = (r * r + r * std::sqrt(r * r + 4.0)) / 2.0;
    CHECK(std::abs(static_cast<double>(m) - std::ceil(root)) <= 1.0);
  }
}

TEST_CASE("min measurements is monotone in C and s") {
  Rng rng(45);
  for (int i = 0; i < 100; ++i) {
    BoundInputs in = random_inputs(rng);
    for (BoundKind kind : {BoundKind::thm2, BoundKind::thm3}) {
      BoundInputs lo = in, hi = in;
      lo.C = in.C * 0.9;
      CHECK(min_measurements(kind, lo) >= min_measurements(kind, in));
      hi.s = in.s + 1.0;
      CHECK(min_measurements(kind, hi) >= min_measurements(kind, in));
    }
  }
}

TEST_CASE("the width term scales like 1/C") {
  BoundInputs in = base();
  in.w = 0.0;
  const double t1 = terms_cor6(in).terms[1];
  in.C = in.C / 2.0;
  CHECK(terms_cor6(in).terms[1] == doctest::Approx(2.0 * t1));
}

TEST_CASE("bound names") {
  for (BoundKind k : {BoundKind::thm2, BoundKind::thm3, BoundKind::cor5, BoundKind::cor6}) {
    CHECK(parse_bound_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_bound_kind("thm4"), ArgumentError);
}

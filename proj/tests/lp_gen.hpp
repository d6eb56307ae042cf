#pragma once

// Random standard-form LPs that are feasible with a bounded feasible set:
// row 0 has strictly positive entries, so 1ᵀ-style weighting caps every x_j.

#include "wl1/lp.hpp"
#include "wl1/problem.hpp"
#include "wl1/random.hpp"

inline wl1::StandardLp random_bounded_lp(std::size_t m, std::size_t n, wl1::Rng& rng) {
  wl1::StandardLp lp;
  lp.eq_matrix = wl1::gen_gaussian_matrix(m, n, rng);
  for (std::size_t j = 0; j < n; ++j) lp.eq_matrix(0, j) = 0.5 + rng.uniform();
  std::vector<double> x0(n);
  for (auto& v : x0) v = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
  lp.eq_rhs = wl1::multiply(lp.eq_matrix, x0);
  lp.objective.resize(n);
  for (auto& v : lp.objective) v = rng.normal();
  return lp;
}

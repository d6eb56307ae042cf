#include "wl1/nsp.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "wl1/error.hpp"
#include "wl1/parallel.hpp"

namespace wl1 {

const char* to_string(NspMode mode) {
  switch (mode) {
    case NspMode::standard:
      return "standard";
    case NspMode::nonuniform:
      return "nonuniform";
    case NspMode::uniform:
      return "uniform";
    case NspMode::uniform_star:
      return "uniform_star";
  }
  return "unknown";
}

NspMode parse_nsp_mode(const std::string& text) {
  if (text == "standard") return NspMode::standard;
  if (text == "nonuniform") return NspMode::nonuniform;
  if (text == "uniform") return NspMode::uniform;
  if (text == "uniform_star") return NspMode::uniform_star;
  throw ArgumentError("unknown NSP mode '" + text + "'");
}

bool NspCertificate::infinite() const { return std::isinf(optimal_constant); }

double nsp_ratio(std::span<const double> h, const IndexSet& t, const IndexSet& s,
                 double weight) {
  const double numerator =
      weight * restricted_norm1(h, t) + (1.0 - weight) * restricted_norm1(h, s);
  double denominator = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!t.contains(i)) denominator += std::abs(h[i]);
  }
  if (denominator == 0.0) {
    return numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return numerator / denominator;
}

namespace {

constexpr double kInteriorTol = 1e-10;
constexpr double kInfiniteTol = 1e-9;
constexpr double kTieTol = 1e-12;
// Basis rows below this norm mark coordinates that vanish on all of ker(A).
constexpr double kVanishTol = 1e-10;

// Coordinate free[i], i ≥ 1, is negative iff bit (F − 1 − i) of the code is
// set, so ascending codes walk the patterns in lexicographic order.
std::uint32_t pattern_from_code(std::uint32_t code, const std::vector<std::size_t>& free) {
  const std::size_t f = free.size();
  std::uint32_t mask = 0;
  for (std::size_t i = 1; i < f; ++i) {
    if ((code >> (f - 1 - i)) & 1u) mask |= 1u << free[i];
  }
  return mask;
}

double orthant_sign(std::uint32_t mask, std::size_t i) {
  return (mask >> i) & 1u ? -1.0 : 1.0;
}

bool has_interior(const DenseMatrix& a, std::uint32_t mask, const std::vector<bool>& is_free,
                  const LpOptions& lp_opt) {
  // g = t·1_F + r with r ≥ 0 and A·diag(σ)·g = 0, normalized by Σg = 1,
  // where F holds the coordinates not identically zero on ker(A). The cone
  // ker(A) ∩ orthant is full-dimensional iff max t > 0.
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  StandardLp lp;
  lp.eq_matrix = DenseMatrix(m + 1, n + 1);
  double free_count = 0.0;
  for (std::size_t j = 0; j < n; ++j) free_count += is_free[j] ? 1.0 : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a(i, j) * orthant_sign(mask, j);
      lp.eq_matrix(i, j + 1) = v;
      if (is_free[j]) row_sum += v;
    }
    lp.eq_matrix(i, 0) = row_sum;
  }
  lp.eq_matrix(m, 0) = free_count;
  for (std::size_t j = 0; j < n; ++j) lp.eq_matrix(m, j + 1) = 1.0;
  lp.eq_rhs.assign(m + 1, 0.0);
  lp.eq_rhs[m] = 1.0;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[0] = -1.0;
  const LpSolution sol = solve_lp(lp, lp_opt);
  return sol.status == LpStatus::optimal && sol.point[0] > kInteriorTol;
}

// One (T, S) pair, with its numerator coefficients precomputed.
struct PairQuery {
  IndexSet t;
  IndexSet s;
  std::vector<double> numerator;  // w·[j∈T] + (1−w)·[j∈S]
};

PairQuery make_pair_query(std::size_t n, IndexSet t, IndexSet s, double w) {
  PairQuery q{std::move(t), std::move(s), std::vector<double>(n, 0.0)};
  for (std::size_t j : q.t) q.numerator[j] += w;
  for (std::size_t j : q.s) q.numerator[j] += 1.0 - w;
  return q;
}

struct PairResult {
  double value = -1.0;  // C* over the pair; negative means no feasible orthant
  bool infinite = false;
  std::vector<double> h;
  unsigned long long solves = 0;
};

// max Σ c_j g_j s.t. A·diag(σ)·g = 0, Σ_{T^c} g = 1, g ≥ 0.
struct OrthantOutcome {
  enum class Kind { skipped, finite, infinite } kind = Kind::skipped;
  double value = 0.0;
  std::vector<double> h;
};

OrthantOutcome solve_orthant(const DenseMatrix& a, std::uint32_t mask,
                             const PairQuery& q, const LpOptions& lp_opt,
                             unsigned long long& solves) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  StandardLp lp;
  lp.eq_matrix = DenseMatrix(m + 1, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lp.eq_matrix(i, j) = a(i, j) * orthant_sign(mask, j);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp.eq_matrix(m, j) = q.t.contains(j) ? 0.0 : 1.0;
  }
  lp.eq_rhs.assign(m + 1, 0.0);
  lp.eq_rhs[m] = 1.0;
  lp.objective.resize(n);
  for (std::size_t j = 0; j < n; ++j) lp.objective[j] = -q.numerator[j];

  ++solves;
  const LpSolution sol = solve_lp(lp, lp_opt);
  OrthantOutcome out;
  if (sol.status == LpStatus::optimal) {
    out.kind = OrthantOutcome::Kind::finite;
    out.value = -sol.objective_value;
    out.h.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.h[j] = orthant_sign(mask, j) * sol.point[j];
    return out;
  }

  // Unbounded, or infeasible because the cone lies in {h_{T^c} = 0}: pin the
  // denominator at zero, i.e. g supported on T, and maximize the numerator
  // subject to numerator ≤ 1.
  const std::size_t kt = q.t.size();
  StandardLp zero;
  zero.eq_matrix = DenseMatrix(m + 1, kt + 1);
  for (std::size_t c = 0; c < kt; ++c) {
    const std::size_t j = q.t[c];
    for (std::size_t i = 0; i < m; ++i) {
      zero.eq_matrix(i, c) = a(i, j) * orthant_sign(mask, j);
    }
    zero.eq_matrix(m, c) = q.numerator[j];
  }
  zero.eq_matrix(m, kt) = 1.0;
  zero.eq_rhs.assign(m + 1, 0.0);
  zero.eq_rhs[m] = 1.0;
  zero.objective.assign(kt + 1, 0.0);
  for (std::size_t c = 0; c < kt; ++c) zero.objective[c] = -q.numerator[q.t[c]];
  ++solves;
  const LpSolution confirm = solve_lp(zero, lp_opt);

  const bool positive =
      confirm.status == LpStatus::optimal && -confirm.objective_value > kInfiniteTol;
  if (sol.status == LpStatus::infeasible && !positive) return out;
  out.kind = OrthantOutcome::Kind::infinite;
  out.value = std::numeric_limits<double>::infinity();
  out.h.assign(n, 0.0);
  if (positive) {
    for (std::size_t c = 0; c < kt; ++c) {
      const std::size_t j = q.t[c];
      out.h[j] = orthant_sign(mask, j) * confirm.point[c];
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) out.h[j] = orthant_sign(mask, j) * sol.ray[j];
  }
  return out;
}

PairResult search_pair(const NullSpaceOrthants& orthants,
                       const std::vector<std::uint32_t>& patterns,
                       const PairQuery& q, const LpOptions& lp_opt) {
  PairResult best;
  for (std::uint32_t mask : patterns) {
    OrthantOutcome o = solve_orthant(orthants.matrix(), mask, q, lp_opt, best.solves);
    if (o.kind == OrthantOutcome::Kind::skipped) continue;
    if (o.kind == OrthantOutcome::Kind::infinite) {
      best.value = o.value;
      best.infinite = true;
      best.h = std::move(o.h);
      return best;
    }
    if (best.h.empty() || o.value > best.value + kTieTol * std::max(1.0, best.value)) {
      best.value = o.value;
      best.h = std::move(o.h);
    }
  }
  return best;
}

std::vector<double> project_onto_kernel(const DenseMatrix& basis,
                                        std::span<const double> h) {
  const auto coeffs = multiply_transposed(basis, h);
  return multiply(basis, coeffs);
}

void check_budget(unsigned long long pairs, std::size_t orthant_count,
                  const NspOptions& options) {
  const auto total = static_cast<long double>(pairs) * orthant_count;
  if (total > static_cast<long double>(options.lp_budget)) {
    throw CapacityError("NSP search needs about " +
                        std::to_string(static_cast<unsigned long long>(total)) +
                        " orthant LPs, above the budget of " +
                        std::to_string(options.lp_budget));
  }
}

NspCertificate run_search(const NullSpaceOrthants& orthants,
                          std::vector<PairQuery> queries, NspMode mode,
                          std::size_t k, std::size_t s, double weight,
                          const NspOptions& options) {
  const std::size_t n = orthants.dimension();
  std::vector<std::uint32_t> patterns;
  patterns.reserve(orthants.count());
  for (std::size_t o = 0; o < orthants.count(); ++o) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (orthants.sign(o, i) < 0) mask |= 1u << i;
    }
    patterns.push_back(mask);
  }

  std::vector<PairResult> results(queries.size());
  parallel_for(queries.size(), options.threads, [&](std::size_t i) {
    results[i] = search_pair(orthants, patterns, queries[i], options.lp);
  });

  NspCertificate cert;
  cert.mode = mode;
  cert.k = k;
  cert.s = s;
  cert.weight = weight;
  std::size_t best = queries.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    cert.lp_solves += results[i].solves;
    const auto& r = results[i];
    if (r.h.empty()) continue;
    if (best == queries.size()) {
      best = i;
    } else if (!results[best].infinite &&
               (r.infinite ||
                r.value > results[best].value +
                              kTieTol * std::max(1.0, results[best].value))) {
      best = i;
    }
  }
  if (best == queries.size()) {
    throw DegeneracyError("NSP search found no feasible orthant");
  }
  const auto& r = results[best];
  cert.optimal_constant = r.value;
  cert.witness_T = queries[best].t;
  cert.witness_S = queries[best].s;
  if (r.infinite) {
    cert.witness = r.h;
  } else {
    cert.witness = project_onto_kernel(orthants.basis(), r.h);
  }
  return cert;
}

void check_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw ArgumentError("NSP: weight must lie in [0,1]");
}

void check_order(std::size_t n, std::size_t k, std::size_t s) {
  if (k >= n) throw ArgumentError("NSP: k must be smaller than N");
  if (s > n) throw ArgumentError("NSP: s must not exceed N");
}

IndexSet to_set(std::span<const std::size_t> idx) {
  return IndexSet(std::vector<std::size_t>(idx.begin(), idx.end()));
}

// Pairs with |T| = k and S ⊂ T, |S| = s.
std::vector<PairQuery> star_pairs(std::size_t n, std::size_t k, std::size_t s,
                                  double w) {
  std::vector<PairQuery> out;
  for_each_subset(n, k, [&](std::span<const std::size_t> t_idx) {
    const IndexSet t = to_set(t_idx);
    for_each_subset(k, s, [&](std::span<const std::size_t> pick) {
      std::vector<std::size_t> s_idx;
      for (std::size_t p : pick) s_idx.push_back(t_idx[p]);
      out.push_back(make_pair_query(n, t, IndexSet(std::move(s_idx)), w));
    });
  });
  return out;
}

}  // namespace

NullSpaceOrthants::NullSpaceOrthants(const DenseMatrix& a, const NspOptions& options)
    : a_(a) {
  const std::size_t n = a.cols();
  if (n > options.orthant_cap) {
    throw CapacityError("NSP: N = " + std::to_string(n) +
                        " exceeds the orthant cap of " +
                        std::to_string(options.orthant_cap));
  }
  if (n > 31) throw CapacityError("NSP: N above 31 is not supported");
  if (a.rows() >= n) throw ArgumentError("NSP: need N − m ≥ 1");
  basis_ = null_space_basis(a);

  std::vector<std::size_t> free;
  std::vector<bool> is_free(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (norm2(basis_.row(i)) > kVanishTol) {
      free.push_back(i);
      is_free[i] = true;
    }
  }
  const std::uint32_t codes = std::uint32_t{1} << (free.size() - 1);
  std::vector<char> keep(codes, 0);
  parallel_for(codes, options.threads, [&](std::size_t c) {
    keep[c] = has_interior(a_, pattern_from_code(static_cast<std::uint32_t>(c), free),
                           is_free, options.lp)
                  ? 1
                  : 0;
  });
  screening_solves_ = codes;
  for (std::uint32_t c = 0; c < codes; ++c) {
    if (keep[c]) patterns_.push_back(pattern_from_code(c, free));
  }
}

NspCertificate nsp_constant_nonuniform(const NullSpaceOrthants& orthants,
                                       const IndexSet& t, const IndexSet& t_est,
                                       double weight, const NspOptions& options) {
  check_weight(weight);
  const std::size_t n = orthants.dimension();
  if (t.bound() > n || t_est.bound() > n) {
    throw ArgumentError("NSP: index set out of range");
  }
  check_order(n, t.size(), 0);
  const IndexSet s = symmetric_difference(t, t_est);
  std::vector<PairQuery> queries;
  queries.push_back(make_pair_query(n, t, s, weight));
  check_budget(1, orthants.count(), options);
  return run_search(orthants, std::move(queries), NspMode::nonuniform, t.size(),
                    s.size(), weight, options);
}

NspCertificate nsp_constant_nonuniform(const DenseMatrix& a, const IndexSet& t,
                                       const IndexSet& t_est, double weight,
                                       const NspOptions& options) {
  return nsp_constant_nonuniform(NullSpaceOrthants(a, options), t, t_est, weight,
                                 options);
}

NspCertificate nsp_constant_standard(const NullSpaceOrthants& orthants,
                                     std::size_t k, const NspOptions& options) {
  const std::size_t n = orthants.dimension();
  check_order(n, k, 0);
  check_budget(binomial(n, k), orthants.count(), options);
  std::vector<PairQuery> queries;
  for_each_subset(n, k, [&](std::span<const std::size_t> t_idx) {
    queries.push_back(make_pair_query(n, to_set(t_idx), IndexSet{}, 1.0));
  });
  return run_search(orthants, std::move(queries), NspMode::standard, k, k, 1.0,
                    options);
}

NspCertificate nsp_constant_standard(const DenseMatrix& a, std::size_t k,
                                     const NspOptions& options) {
  return nsp_constant_standard(NullSpaceOrthants(a, options), k, options);
}

NspCertificate nsp_constant_uniform(const NullSpaceOrthants& orthants,
                                    std::size_t k, std::size_t s, double weight,
                                    const NspOptions& options) {
  check_weight(weight);
  const std::size_t n = orthants.dimension();
  check_order(n, k, s);
  std::vector<PairQuery> queries;
  // The ratio grows with |T| and |S| for every fixed h, so the supremum is
  // reached at |T| = k, |S| = s.
  if (options.prune_uniform && s <= k) {
    check_budget(binomial(n, k) * binomial(k, s), orthants.count(), options);
    queries = star_pairs(n, k, s, weight);
  } else {
    const unsigned long long pairs = binomial(n, k) * binomial(n, s);
    check_budget(pairs, orthants.count(), options);
    for_each_subset(n, k, [&](std::span<const std::size_t> t_idx) {
      const IndexSet t = to_set(t_idx);
      for_each_subset(n, s, [&](std::span<const std::size_t> s_idx) {
        queries.push_back(make_pair_query(n, t, to_set(s_idx), weight));
      });
    });
  }
  return run_search(orthants, std::move(queries), NspMode::uniform, k, s, weight,
                    options);
}

NspCertificate nsp_constant_uniform(const DenseMatrix& a, std::size_t k,
                                    std::size_t s, double weight,
                                    const NspOptions& options) {
  return nsp_constant_uniform(NullSpaceOrthants(a, options), k, s, weight, options);
}

NspCertificate nsp_constant_uniform_star(const NullSpaceOrthants& orthants,
                                         std::size_t k, std::size_t s,
                                         double weight, const NspOptions& options) {
  check_weight(weight);
  if (s > k) throw ArgumentError("NSP: uniform_star requires s ≤ k");
  const std::size_t n = orthants.dimension();
  check_order(n, k, s);
  check_budget(binomial(n, k) * binomial(k, s), orthants.count(), options);
  return run_search(orthants, star_pairs(n, k, s, weight), NspMode::uniform_star,
                    k, s, weight, options);
}

NspCertificate nsp_constant_uniform_star(const DenseMatrix& a, std::size_t k,
                                         std::size_t s, double weight,
                                         const NspOptions& options) {
  return nsp_constant_uniform_star(NullSpaceOrthants(a, options), k, s, weight,
                                   options);
}

double composed_constant(double c_s, double c_ks, double weight) {
  if (!(c_s >= 0.0 && c_ks >= 0.0)) {
    throw DomainError("composed_constant: constants must be nonnegative");
  }
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw DomainError("composed_constant: weight must lie in [0,1]");
  }
  const double product = c_s * c_ks;
  if (!(product < 1.0)) {
    throw DomainError("composed_constant: requires C_s·C_{k−s} < 1");
  }
  return ((1.0 + weight) * product + c_s + weight * c_ks) / (1.0 - product);
}

double max_weight_for_recovery(double c_s, double c_ks) {
  if (!(c_s >= 0.0 && c_ks >= 0.0)) {
    throw DomainError("max_weight_for_recovery: constants must be nonnegative");
  }
  if (!(c_s < 1.0 / (2.0 * c_ks + 1.0))) {
    throw DomainError("max_weight_for_recovery: requires C_s < 1/(2·C_{k−s} + 1)");
  }
  if (c_ks == 0.0) return 1.0;
  const double bound = (1.0 - 2.0 * c_s * c_ks - c_s) / (c_ks * (c_s + 1.0));
  return std::clamp(bound, 0.0, 1.0);
}

FailureInstance failure_instance_from_witness(const DenseMatrix& a,
                                              const NspCertificate& cert) {
  const std::size_t n = a.cols();
  if (cert.witness.size() != n) {
    throw ArgumentError("failure_instance_from_witness: witness length mismatch");
  }
  FailureInstance out;
  out.instance.signal.assign(n, 0.0);
  out.competitor.assign(n, 0.0);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.witness_T.contains(i)) {
      out.instance.signal[i] = cert.witness[i];
      if (cert.witness[i] != 0.0) support.push_back(i);
    } else {
      out.competitor[i] = -cert.witness[i];
    }
  }
  out.instance.support = IndexSet(std::move(support));
  measure(a, out.instance);
  out.estimate.estimate = symmetric_difference(cert.witness_T, cert.witness_S);
  out.estimate.weight = cert.weight;
  return out;
}

}  // namespace wl1

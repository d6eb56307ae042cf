#include "wl1/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "wl1/error.hpp"

namespace wl1 {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("matrix entry is not finite");
  }
}

std::size_t checked_size(std::size_t rows, std::size_t cols) {
  if (cols != 0 && rows > std::numeric_limits<std::size_t>::max() / cols) {
    throw ArgumentError("matrix dimensions overflow");
  }
  return rows * cols;
}

// Householder QR with column pivoting, in place on an n×m working copy.
// Reflector k acts on rows k..n-1 and is stored in `reflectors[k]` with the
// first entry at row k.
struct PivotedQr {
  std::vector<std::vector<double>> reflectors;
  std::vector<double> r_diagonal;
};

PivotedQr pivoted_qr(DenseMatrix work) {
  const std::size_t n = work.rows();
  const std::size_t m = work.cols();
  const std::size_t steps = std::min(n, m);
  PivotedQr qr;
  qr.reflectors.reserve(steps);
  qr.r_diagonal.reserve(steps);

  std::vector<double> col_norm2(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) col_norm2[j] += work(i, j) * work(i, j);
  }

  for (std::size_t k = 0; k < steps; ++k) {
    // Recompute the trailing norms exactly; the matrices here are small and
    // downdating loses accuracy near rank deficiency.
    std::size_t pivot = k;
    double best = -1.0;
    for (std::size_t j = k; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += work(i, j) * work(i, j);
      col_norm2[j] = s;
      if (s > best) {
        best = s;
        pivot = j;
      }
    }
    if (pivot != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(work(i, k), work(i, pivot));
    }

    std::vector<double> v(n - k);
    for (std::size_t i = k; i < n; ++i) v[i - k] = work(i, k);
    const double alpha = norm2(v);
    if (alpha == 0.0) {
      qr.r_diagonal.push_back(0.0);
      qr.reflectors.emplace_back(n - k, 0.0);
      continue;
    }
    const double beta = v[0] >= 0.0 ? -alpha : alpha;
    v[0] -= beta;
    const double vnorm = norm2(v);
    for (double& x : v) x /= vnorm;

    for (std::size_t j = k; j < m; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < n; ++i) proj += v[i - k] * work(i, j);
      for (std::size_t i = k; i < n; ++i) work(i, j) -= 2.0 * proj * v[i - k];
    }
    qr.r_diagonal.push_back(work(k, k));
    qr.reflectors.push_back(std::move(v));
  }
  return qr;
}

std::size_t rank_from_diagonal(std::span<const double> diag, double rel_tol) {
  if (diag.empty()) return 0;
  const double lead = std::abs(diag[0]);
  if (lead == 0.0) return 0;
  std::size_t rank = 0;
  for (double d : diag) {
    if (std::abs(d) > rel_tol * lead) ++rank;
  }
  return rank;
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(checked_size(rows, cols), 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != checked_size(rows, cols)) {
    throw ArgumentError("matrix expects " + std::to_string(rows * cols) +
                        " entries, got " + std::to_string(entries_.size()));
  }
  require_finite(entries_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ArgumentError("ragged matrix initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  require_finite(entries_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix eye(n, n);
  for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
  return eye;
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

DenseMatrix DenseMatrix::select_columns(std::span<const std::size_t> cols) const {
  DenseMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) out(i, c) = (*this)(i, cols[c]);
  }
  return out;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw ArgumentError("matrix-vector size mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("matrix-matrix size mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<double> multiply_transposed(const DenseMatrix& a,
                                        std::span<const double> x) {
  if (x.size() != a.rows()) throw ArgumentError("matrix-vector size mismatch");
  std::vector<double> y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += r[j] * x[i];
  }
  return y;
}

double norm1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double norm2(std::span<const double> x) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += (v / scale) * (v / scale);
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::size_t numerical_rank(const DenseMatrix& a, double rel_tol) {
  if (a.empty()) return 0;
  const auto qr = pivoted_qr(a.rows() >= a.cols() ? a : a.transpose());
  return rank_from_diagonal(qr.r_diagonal, rel_tol);
}

DenseMatrix null_space_basis(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0 || n == 0) throw ArgumentError("null_space_basis: empty matrix");
  if (m >= n) {
    throw ArgumentError("null_space_basis: expected m < n, got " +
                        std::to_string(m) + "x" + std::to_string(n));
  }
  const auto qr = pivoted_qr(a.transpose());
  if (rank_from_diagonal(qr.r_diagonal, kRankTolerance) < m) {
    throw DegeneracyError("null_space_basis: matrix is rank deficient");
  }

  // Trailing columns of Q = H_0 H_1 ... H_{m-1}.
  const std::size_t d = n - m;
  DenseMatrix basis(n, d);
  std::vector<double> e(n);
  for (std::size_t c = 0; c < d; ++c) {
    std::fill(e.begin(), e.end(), 0.0);
    e[m + c] = 1.0;
    for (std::size_t k = m; k-- > 0;) {
      const auto& v = qr.reflectors[k];
      double proj = 0.0;
      for (std::size_t i = k; i < n; ++i) proj += v[i - k] * e[i];
      for (std::size_t i = k; i < n; ++i) e[i] -= 2.0 * proj * v[i - k];
    }
    for (std::size_t i = 0; i < n; ++i) basis(i, c) = e[i];
  }
  return basis;
}

DenseMatrix inverse(const DenseMatrix& a, double pivot_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw ArgumentError("inverse: matrix is not square");
  DenseMatrix lu = a;
  DenseMatrix inv = DenseMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    }
    if (std::abs(lu(p, k)) <= pivot_tol * scale) {
      throw DegeneracyError("inverse: matrix is singular to working precision");
    }
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap_ranges(inv.row(k).begin(), inv.row(k).end(), inv.row(p).begin());
    }
    const double pivot = lu(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      lu(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = lu(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        lu(i, j) -= f * lu(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace wl1

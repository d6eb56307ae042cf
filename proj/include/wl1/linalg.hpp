#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace wl1 {

// Row-major dense real matrix with explicit dimensions. Entries are always
// finite; constructors reject NaN and infinities.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<const double> entries() const { return entries_; }

  std::vector<double> column(std::size_t j) const;
  DenseMatrix transpose() const;
  // Columns listed in `cols`, in that order.
  DenseMatrix select_columns(std::span<const std::size_t> cols) const;

  double max_abs() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
// aᵀ·x without forming the transpose.
std::vector<double> multiply_transposed(const DenseMatrix& a,
                                        std::span<const double> x);

double norm1(std::span<const double> x);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

// Relative tolerance on the pivoted R diagonal below which a factorization
// is declared rank deficient.
inline constexpr double kRankTolerance = 1e-10;

// Orthonormal basis of ker(A) for A of full row rank m < n, as an n×(n−m)
// matrix. Computed from a column-pivoted Householder QR of Aᵀ.
// Throws DegeneracyError when A is rank deficient, ArgumentError if m ≥ n.
DenseMatrix null_space_basis(const DenseMatrix& a);

// Numerical rank from a column-pivoted Householder QR.
std::size_t numerical_rank(const DenseMatrix& a,
                           double rel_tol = kRankTolerance);

// Inverse of a square matrix by Gauss-Jordan elimination with partial
// pivoting. Throws DegeneracyError when a pivot falls below `pivot_tol`
// times the largest entry.
DenseMatrix inverse(const DenseMatrix& a, double pivot_tol = 1e-13);

}  // namespace wl1

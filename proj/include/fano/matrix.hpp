#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fano {

// Dense row-major real matrix. The generators here are 5x5 and 4x4, so
// everything below is plain O(n^3) with partial pivoting and no blocking.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
  friend Matrix operator*(double s, Matrix rhs) { return rhs *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  // y = M x
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  double one_norm() const;  // max column absolute sum
  double max_abs() const;
  bool is_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// PA = LU with partial (row) pivoting, for square matrices.
class LuSolver {
 public:
  explicit LuSolver(Matrix m);

  std::size_t size() const { return n_; }
  // Smallest |pivot| relative to the largest |entry| of the input matrix.
  double pivot_ratio() const { return pivot_ratio_; }
  bool nearly_singular(double tol = 1e-13) const { return pivot_ratio_ <= tol; }

  std::vector<double> solve(std::span<const double> b) const;
  // Solves M^T x = b using the same factorization.
  std::vector<double> solve_transpose(std::span<const double> b) const;

 private:
  std::size_t n_ = 0;
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double pivot_ratio_ = 0.0;
};

// Hager-style incremental lower-bound estimate of ||M^{-1}||_1.
double inverse_one_norm_estimate(const LuSolver& lu);

}  // namespace fano

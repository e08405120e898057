#include "fano/matrix.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fano {

Matrix::Matrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), data_(rows * cols, value) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols_ == b.rows_);
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

void Matrix::apply(std::span<const double> x, std::span<double> y) const {
  assert(x.size() == cols_ && y.size() == rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  apply(x, y);
  return y;
}

double Matrix::one_norm() const {
  double norm = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double colsum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) colsum += std::abs((*this)(i, j));
    norm = std::max(norm, colsum);
  }
  return norm;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::is_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

LuSolver::LuSolver(Matrix m) : n_(m.rows()), lu_(std::move(m)), perm_(n_) {
  if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LuSolver: matrix must be square");
  const double scale = lu_.max_abs();
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    min_pivot = std::min(min_pivot, best);
    if (best == 0.0) continue;  // singular; pivot_ratio_ records it
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double f = lu_(i, k) / lu_(k, k);
      lu_(i, k) = f;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
  pivot_ratio_ = (scale > 0.0) ? min_pivot / scale : 0.0;
}

std::vector<double> LuSolver::solve(std::span<const double> b) const {
  assert(b.size() == n_);
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 1; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n_; ++j) x[ii] -= lu_(ii, j) * x[j];
    x[ii] /= lu_(ii, ii);
  }
  return x;
}

std::vector<double> LuSolver::solve_transpose(std::span<const double> b) const {
  assert(b.size() == n_);
  // M = P^T L U, so M^T x = b  <=>  U^T y = b, L^T z = y, x = P^T z.
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) y[i] -= lu_(j, i) * y[j];
    y[i] /= lu_(i, i);
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n_; ++j) y[ii] -= lu_(j, ii) * y[j];
  }
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
  return x;
}

double inverse_one_norm_estimate(const LuSolver& lu) {
  const std::size_t n = lu.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int iter = 0; iter < 8; ++iter) {
    std::vector<double> y = lu.solve(x);
    double norm1 = 0.0;
    for (double v : y) norm1 += std::abs(v);
    estimate = std::max(estimate, norm1);

    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = (y[i] >= 0.0) ? 1.0 : -1.0;
    std::vector<double> z = lu.solve_transpose(xi);

    std::size_t j = 0;
    double zmax = 0.0, ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ztx += z[i] * x[i];
      if (std::abs(z[i]) > zmax) {
        zmax = std::abs(z[i]);
        j = i;
      }
    }
    if (zmax <= ztx) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[j] = 1.0;
  }
  return estimate;
}

}  // namespace fano

#pragma once

// Dense real linear algebra for certificates and the discretized simulator.

#include <cstddef>
#include <span>
#include <vector>

#include "pdesync/errors.hpp"

namespace pdesync {

/// Row-major dense matrix. Value type; copies are deep.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using IntMatrix = DenseMatrix<long>;
using Vector = std::vector<double>;

Matrix to_real(const IntMatrix& m);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
/// Serial product; see kernels.hpp for the parallel one.
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

double max_abs(const Matrix& a);
/// Induced infinity norm (max absolute row sum).
double norm_inf(const Matrix& a);
double norm_inf(std::span<const double> v);

/// Dense symmetric matrix. Construction symmetrizes as (A + A^T)/2 and keeps
/// the largest |a_ij - a_ji| seen in the input.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& a);

  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  double asymmetry() const noexcept { return asymmetry_; }
  double trace() const;

  bool operator==(const SymMatrix& o) const { return m_ == o.m_; }

 private:
  Matrix m_;
  double asymmetry_ = 0.0;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  int iterations = 0;               // Jacobi sweeps
  double residual = 0.0;            // max |off-diagonal| on exit

  double max() const { return eigenvalues.back(); }
  double min() const { return eigenvalues.front(); }
};

inline constexpr double kDefaultEigTol = 1e-12;

/// Cyclic Jacobi rotations. Converged when every off-diagonal entry is below
/// tol * max(1, max|a_ij|). Throws NoConvergence after 100 sweeps.
Spectrum sym_eigenvalues(const SymMatrix& a, double tol = kDefaultEigTol);

/// Cholesky on -(a + margin I); true iff every pivot is strictly positive.
bool is_negative_definite(const SymMatrix& a, double margin);

/// Cholesky on a directly.
bool is_positive_definite(const SymMatrix& a);

Matrix kron(const Matrix& a, const Matrix& b);

/// LU with partial pivoting. Singular when a pivot falls below
/// 1e-14 * norm_inf(a).
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  std::size_t dim() const noexcept { return lu_.rows(); }
  Vector solve(std::span<const double> rhs) const;
  void solve_in_place(std::span<double> x) const;
  /// Solves A X = B column by column (columns run in parallel).
  Matrix solve(const Matrix& rhs) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

Vector solve_linear(const Matrix& a, std::span<const double> rhs);

struct PowerResult {
  double rho = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Power iteration with per-step renormalization. The estimate is the norm
/// growth ratio ||A x|| / ||x||; converged once ten consecutive estimates
/// agree to relative tol.
PowerResult power_dominant(const Matrix& a, int iters, double tol);

}  // namespace pdesync

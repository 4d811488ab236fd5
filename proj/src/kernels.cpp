#include "pdesync/kernels.hpp"

#include <cassert>
#include <cmath>

namespace pdesync::kernels {

namespace {

inline double row_dot(std::span<const double> row, std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
  return acc;
}

// c(i, :) = a(i, :) * b, i-k-j order so the inner loop streams rows of b.
inline void matmul_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
  auto out = c.row(i);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double aik = a(i, k);
    if (aik == 0.0) continue;
    auto brow = b.row(k);
    for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
  }
}

inline bool bad(double v, double bound) { return !std::isfinite(v) || std::abs(v) > bound; }

}  // namespace

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == a.cols() && y.size() == a.rows());
  const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) y[i] = row_dot(a.row(i), x);
}

void matvec_axpy(const Matrix& a, std::span<const double> x, double s,
                 std::span<const double> v, std::span<double> y) {
  assert(x.size() == a.cols() && y.size() == a.rows() && v.size() == a.rows());
  const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) y[i] = row_dot(a.row(i), x) + s * v[i];
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

long find_blowup(std::span<const double> v, double bound) {
  const long n = static_cast<long>(v.size());
  long first = n;
#pragma omp parallel for reduction(min : first) schedule(static)
  for (long i = 0; i < n; ++i) {
    if (i < first && bad(v[i], bound)) first = i;
  }
  return first == n ? -1 : first;
}

namespace serial {

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == a.cols() && y.size() == a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = row_dot(a.row(i), x);
}

void matvec_axpy(const Matrix& a, std::span<const double> x, double s,
                 std::span<const double> v, std::span<double> y) {
  assert(x.size() == a.cols() && y.size() == a.rows() && v.size() == a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = row_dot(a.row(i), x) + s * v[i];
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
  return c;
}

long find_blowup(std::span<const double> v, double bound) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (bad(v[i], bound)) return static_cast<long>(i);
  return -1;
}

}  // namespace serial

}  // namespace pdesync::kernels

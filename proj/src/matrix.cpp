#include "pdesync/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pdesync/kernels.hpp"

namespace pdesync {

Matrix to_real(const IntMatrix& m) {
  Matrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = static_cast<double>(m(i, j));
  return r;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(what) + ": shapes differ");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator+");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] += bd[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator-");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return kernels::serial::matmul(a, b); }

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector: length mismatch");
  Vector y(a.rows());
  kernels::serial::matvec(a, x, y);
  return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double norm_inf(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

SymMatrix::SymMatrix(const Matrix& a) {
  if (!a.square()) throw DimensionMismatch("SymMatrix: matrix is not square");
  m_ = Matrix(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    m_(i, i) = a(i, i);
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      asymmetry_ = std::max(asymmetry_, std::abs(a(i, j) - a(j, i)));
      const double v = 0.5 * (a(i, j) + a(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
  }
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

Spectrum sym_eigenvalues(const SymMatrix& sym, double tol) {
  if (sym.dim() == 0) throw DimensionMismatch("sym_eigenvalues: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("sym_eigenvalues: tol must be positive");

  constexpr int kMaxSweeps = 100;
  Matrix a = sym.matrix();
  const std::size_t n = a.rows();
  const double threshold = tol * std::max(1.0, max_abs(a));

  auto off_diagonal = [&] {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    return off;
  };

  Spectrum out;
  double off = off_diagonal();
  while (off > threshold) {
    if (out.iterations == kMaxSweeps)
      throw NoConvergence("sym_eigenvalues: residual " + std::to_string(off) + " after " +
                          std::to_string(kMaxSweeps) + " sweeps");
    ++out.iterations;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    off = off_diagonal();
  }

  out.residual = off;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

namespace {

bool cholesky_succeeds(const Matrix& b) {
  const std::size_t n = b.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = b(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = b(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / ljj;
    }
  }
  return true;
}

}  // namespace

bool is_negative_definite(const SymMatrix& a, double margin) {
  if (margin < 0.0) throw std::invalid_argument("is_negative_definite: margin must be >= 0");
  Matrix b = -1.0 * a.matrix();
  for (std::size_t i = 0; i < b.rows(); ++i) b(i, i) -= margin;
  return cholesky_succeeds(b);
}

bool is_positive_definite(const SymMatrix& a) { return cholesky_succeeds(a.matrix()); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)) {
  if (!lu_.square()) throw DimensionMismatch("LU: matrix is not square");
  const std::size_t n = lu_.rows();
  const double floor = 1e-14 * norm_inf(lu_);
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) piv = i;
    if (!(std::abs(lu_(piv, k)) > floor))
      throw SingularMatrix("LU: pivot " + std::to_string(lu_(piv, k)) + " in column " +
                           std::to_string(k));
    if (piv != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(piv).begin());
      std::swap(perm_[k], perm_[piv]);
    }
    const double inv = 1.0 / lu_(k, k);
    auto rowk = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu_(i, k) * inv;
      lu_(i, k) = f;
      if (f == 0.0) continue;
      auto rowi = lu_.row(i);
      for (std::size_t j = k + 1; j < n; ++j) rowi[j] -= f * rowk[j];
    }
  }
}

void LuFactorization::solve_in_place(std::span<double> x) const {
  const std::size_t n = dim();
  if (x.size() != n) throw DimensionMismatch("LU solve: rhs length mismatch");
  Vector b(x.begin(), x.end());
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    auto r = lu_.row(i);
    double v = x[i];
    for (std::size_t j = 0; j < i; ++j) v -= r[j] * x[j];
    x[i] = v;
  }
  for (std::size_t i = n; i-- > 0;) {
    auto r = lu_.row(i);
    double v = x[i];
    for (std::size_t j = i + 1; j < n; ++j) v -= r[j] * x[j];
    x[i] = v / r[i];
  }
}

Vector LuFactorization::solve(std::span<const double> rhs) const {
  Vector x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
  if (rhs.rows() != dim()) throw DimensionMismatch("LU solve: rhs rows mismatch");
  Matrix x(rhs.rows(), rhs.cols());
  const long m = static_cast<long>(rhs.cols());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < m; ++c) {
    Vector col(rhs.rows());
    for (std::size_t i = 0; i < rhs.rows(); ++i) col[i] = rhs(i, c);
    solve_in_place(col);
    for (std::size_t i = 0; i < rhs.rows(); ++i) x(i, c) = col[i];
  }
  return x;
}

Vector solve_linear(const Matrix& a, std::span<const double> rhs) {
  if (!a.square() || a.rows() != rhs.size())
    throw DimensionMismatch("solve_linear: incompatible shapes");
  return LuFactorization(a).solve(rhs);
}

PowerResult power_dominant(const Matrix& a, int iters, double tol) {
  if (!a.square()) throw DimensionMismatch("power_dominant: matrix is not square");
  if (iters < 1) throw std::invalid_argument("power_dominant: iters must be >= 1");
  constexpr int kWindow = 10;
  const std::size_t n = a.rows();

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  Vector x(n), y(n);
  for (double& v : x) v = dist(rng);
  auto norm2 = [](std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
  };
  const double x0 = norm2(x);
  for (double& v : x) v /= x0;

  PowerResult res;
  std::vector<double> history;
  for (int it = 1; it <= iters; ++it) {
    kernels::matvec(a, x, y);
    const double r = norm2(y);
    res.iterations = it;
    res.rho = r;
    if (r == 0.0) {
      res.converged = true;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / r;
    history.push_back(r);
    if (history.size() > kWindow) {
      double worst = 0.0;
      for (std::size_t k = history.size() - kWindow; k < history.size(); ++k)
        worst = std::max(worst, std::abs(history[k] - history[k - 1]) / history[k]);
      if (worst < tol) {
        res.converged = true;
        return res;
      }
    }
  }
  return res;
}

}  // namespace pdesync

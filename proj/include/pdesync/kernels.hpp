#pragma once

// Data-parallel inner loops used by the simulator and the spectral estimate.
//
// Every kernel has an OpenMP version in `pdesync::kernels` and a plain serial
// version in `pdesync::kernels::serial`. The serial ones are the reference the
// tests compare against and the baseline for bench_kernels. Each output entry
// is produced by exactly one thread with a fixed summation order, so parallel
// and serial results are bit-identical.

#include <span>

#include "pdesync/matrix.hpp"

namespace pdesync::kernels {

/// y = a x
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);

/// y = a x + s v
void matvec_axpy(const Matrix& a, std::span<const double> x, double s,
                 std::span<const double> v, std::span<double> y);

Matrix matmul(const Matrix& a, const Matrix& b);

/// First index whose value is non-finite or exceeds `bound` in magnitude, or
/// -1 when all entries are fine.
long find_blowup(std::span<const double> v, double bound);

namespace serial {

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);
void matvec_axpy(const Matrix& a, std::span<const double> x, double s,
                 std::span<const double> v, std::span<double> y);
Matrix matmul(const Matrix& a, const Matrix& b);
long find_blowup(std::span<const double> v, double bound);

}  // namespace serial

}  // namespace pdesync::kernels

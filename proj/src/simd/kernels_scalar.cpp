#include "aitd/simd/kernels.hpp"

namespace aitd::simd {
namespace {

// Four accumulators mirror the four double lanes of a 256-bit register.
double reduce_lanes(const double lanes[4]) { return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]); }

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double lanes[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double p = a[i + l] * b[i + l];
      lanes[l] = lanes[l] + p;
    }
  }
  double sum = reduce_lanes(lanes);
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    sum = sum + p;
  }
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p = alpha * x[i];
    y[i] = y[i] + p;
  }
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double sum_squares_scalar(const double* x, std::size_t n) { return dot_scalar(x, x, n); }

double sparse_dot_scalar(const std::uint32_t* indices, const double* values, std::size_t nnz,
                         const double* dense) {
  double lanes[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    for (int l = 0; l < 4; ++l) {
      const double p = values[k + l] * dense[indices[k + l]];
      lanes[l] = lanes[l] + p;
    }
  }
  double sum = reduce_lanes(lanes);
  for (; k < nnz; ++k) {
    const double p = values[k] * dense[indices[k]];
    sum = sum + p;
  }
  return sum;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar,        "scalar",          dot_scalar, axpy_scalar,
                                 scale_scalar,       sum_squares_scalar, sparse_dot_scalar};
  return table;
}

}  // namespace aitd::simd

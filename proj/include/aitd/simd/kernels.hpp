#pragma once

// Dense and sparse-by-dense arithmetic kernels behind a runtime-selected table.
//
// Every variant uses the same four-lane accumulation order and never fuses
// multiply-add, so the scalar reference and the vector variants agree bit for
// bit. Reports stay byte-identical whichever variant the host selects.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace aitd::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  // sum_k values[k] * dense[indices[k]]
  double (*sparse_dot)(const std::uint32_t* indices, const double* values, std::size_t nnz,
                       const double* dense);
};

const KernelTable& scalar_table();

/// nullptr when the build has no vector variant for this target.
const KernelTable* avx2_table();

bool isa_supported(Isa isa);

/// Table chosen at first use: AVX2 when the CPU has it, unless the
/// AITD_KERNELS environment variable says "scalar".
const KernelTable& active();

/// Overrides the selection (tests and benchmarking). Throws if unsupported.
void force_isa(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

inline double sparse_dot(std::span<const std::uint32_t> indices, std::span<const double> values,
                         std::span<const double> dense) {
  return active().sparse_dot(indices.data(), values.data(), indices.size(), dense.data());
}

}  // namespace aitd::simd

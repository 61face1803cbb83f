#include <algorithm>
#include <cmath>

#include "graphmark/simd/kernels.hpp"

namespace graphmark::simd {
namespace {

double sum_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::abs(a[k] - b[k]);
  return s;
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void sum_min_max_scalar(const double* a, const double* b, std::size_t n, double* min_sum,
                        double* max_sum) {
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    lo += std::min(a[k], b[k]);
    hi += std::max(a[k], b[k]);
  }
  *min_sum = lo;
  *max_sum = hi;
}

double sum_sqrt_diff_sq_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = std::sqrt(a[k]) - std::sqrt(b[k]);
    s += d * d;
  }
  return s;
}

double weighted_sq_diff_scalar(const double* w, const double* a, const double* b,
                               std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    s += w[k] * d * d;
  }
  return s;
}

double weighted_abs_diff_scalar(const double* w, const double* a, const double* b,
                                std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * std::abs(a[k] - b[k]);
  return s;
}

void lorentz_sum_scalar(const double* x, std::size_t n, const double* centers, std::size_t m,
                        double width, double* out) {
  const double w2 = width * width;
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      const double d = x[k] - centers[l];
      s += width / (d * d + w2);
    }
    out[k] = s;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      sum_abs_diff_scalar,     sum_sq_diff_scalar,      dot_scalar,
      sum_min_max_scalar,      sum_sqrt_diff_sq_scalar, weighted_sq_diff_scalar,
      weighted_abs_diff_scalar, lorentz_sum_scalar,
  };
  return table;
}

}  // namespace graphmark::simd

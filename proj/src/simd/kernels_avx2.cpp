// Compiled with -mavx2 -mfma. Only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "graphmark/simd/kernels.hpp"

namespace graphmark::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double sum_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k))));
    acc1 = _mm256_add_pd(acc1, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k + 4),
                                                    _mm256_loadu_pd(b + k + 4))));
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k))));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += std::abs(a[k] - b[k]);
  return s;
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void sum_min_max_avx2(const double* a, const double* b, std::size_t n, double* min_sum,
                      double* max_sum) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d va = _mm256_loadu_pd(a + k);
    const __m256d vb = _mm256_loadu_pd(b + k);
    lo = _mm256_add_pd(lo, _mm256_min_pd(va, vb));
    hi = _mm256_add_pd(hi, _mm256_max_pd(va, vb));
  }
  double slo = hsum(lo);
  double shi = hsum(hi);
  for (; k < n; ++k) {
    slo += std::min(a[k], b[k]);
    shi += std::max(a[k], b[k]);
  }
  *min_sum = slo;
  *max_sum = shi;
}

double sum_sqrt_diff_sq_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_sqrt_pd(_mm256_loadu_pd(a + k)),
                                    _mm256_sqrt_pd(_mm256_loadu_pd(b + k)));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) {
    const double d = std::sqrt(a[k]) - std::sqrt(b[k]);
    s += d * d;
  }
  return s;
}

double weighted_sq_diff_avx2(const double* w, const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4));
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + k), d0), d0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + k + 4), d1), d1, acc1);
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + k), d), d, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    s += w[k] * d * d;
  }
  return s;
}

double weighted_abs_diff_avx2(const double* w, const double* a, const double* b,
                              std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d d0 = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
    const __m256d d1 =
        abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4)));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), d0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k + 4), d1, acc1);
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), d, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += w[k] * std::abs(a[k] - b[k]);
  return s;
}

void lorentz_sum_avx2(const double* x, std::size_t n, const double* centers, std::size_t m,
                      double width, double* out) {
  const __m256d vw = _mm256_set1_pd(width);
  const __m256d vw2 = _mm256_set1_pd(width * width);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vx = _mm256_loadu_pd(x + k);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t l = 0; l < m; ++l) {
      const __m256d d = _mm256_sub_pd(vx, _mm256_set1_pd(centers[l]));
      acc = _mm256_add_pd(acc, _mm256_div_pd(vw, _mm256_fmadd_pd(d, d, vw2)));
    }
    _mm256_storeu_pd(out + k, acc);
  }
  const double w2 = width * width;
  for (; k < n; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      const double d = x[k] - centers[l];
      s += width / (d * d + w2);
    }
    out[k] = s;
  }
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{
      sum_abs_diff_avx2,     sum_sq_diff_avx2,      dot_avx2,
      sum_min_max_avx2,      sum_sqrt_diff_sq_avx2, weighted_sq_diff_avx2,
      weighted_abs_diff_avx2, lorentz_sum_avx2,
  };
  return &table;
}

}  // namespace graphmark::simd

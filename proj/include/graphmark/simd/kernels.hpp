#pragma once

// Data-parallel inner loops used by the graph metrics and spectral density
// quadratures. Each kernel has a scalar reference implementation and, on
// x86-64, an AVX2/FMA variant. The variant is picked once at first use from
// CPUID; GRAPHMARK_SIMD=scalar forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace graphmark::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  // sum_k |a_k - b_k|
  double (*sum_abs_diff)(const double* a, const double* b, std::size_t n);
  // sum_k (a_k - b_k)^2
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
  // sum_k a_k b_k
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_k min(a_k, b_k) and sum_k max(a_k, b_k)
  void (*sum_min_max)(const double* a, const double* b, std::size_t n, double* min_sum,
                      double* max_sum);
  // sum_k (sqrt(a_k) - sqrt(b_k))^2, inputs nonnegative
  double (*sum_sqrt_diff_sq)(const double* a, const double* b, std::size_t n);
  // sum_k w_k (a_k - b_k)^2
  double (*weighted_sq_diff)(const double* w, const double* a, const double* b, std::size_t n);
  // sum_k w_k |a_k - b_k|
  double (*weighted_abs_diff)(const double* w, const double* a, const double* b, std::size_t n);
  // out_k = sum_l width / ((x_k - c_l)^2 + width^2)
  void (*lorentz_sum)(const double* x, std::size_t n, const double* centers, std::size_t m,
                      double width, double* out);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

Isa active_isa();
const KernelTable& active_kernels();
const KernelTable& kernels_for(Isa isa);

// Span front-ends over the active table. Lengths of paired spans must match.
double sum_abs_diff(std::span<const double> a, std::span<const double> b);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);
void sum_min_max(std::span<const double> a, std::span<const double> b, double& min_sum,
                 double& max_sum);
double sum_sqrt_diff_sq(std::span<const double> a, std::span<const double> b);
double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b);
double weighted_abs_diff(std::span<const double> w, std::span<const double> a,
                         std::span<const double> b);
void lorentz_sum(std::span<const double> x, std::span<const double> centers, double width,
                 std::span<double> out);

}  // namespace graphmark::simd

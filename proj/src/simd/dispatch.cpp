#include <cassert>
#include <cstdlib>
#include <string>

#include "graphmark/simd/kernels.hpp"

namespace graphmark::simd {

#ifndef GRAPHMARK_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool cpu_supports_avx2() {
#if defined(GRAPHMARK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("GRAPHMARK_SIMD")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  if (avx2_kernels() != nullptr && cpu_supports_avx2()) return Isa::avx2;
  return Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& kernels_for(Isa isa) {
  if (isa == Isa::avx2 && avx2_kernels() != nullptr && cpu_supports_avx2()) {
    return *avx2_kernels();
  }
  return scalar_kernels();
}

const KernelTable& active_kernels() {
  static const KernelTable& table = kernels_for(active_isa());
  return table;
}

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_kernels().sum_abs_diff(a.data(), b.data(), a.size());
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_kernels().sum_sq_diff(a.data(), b.data(), a.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_kernels().dot(a.data(), b.data(), a.size());
}

void sum_min_max(std::span<const double> a, std::span<const double> b, double& min_sum,
                 double& max_sum) {
  assert(a.size() == b.size());
  active_kernels().sum_min_max(a.data(), b.data(), a.size(), &min_sum, &max_sum);
}

double sum_sqrt_diff_sq(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_kernels().sum_sqrt_diff_sq(a.data(), b.data(), a.size());
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b) {
  assert(a.size() == b.size() && w.size() == a.size());
  return active_kernels().weighted_sq_diff(w.data(), a.data(), b.data(), a.size());
}

double weighted_abs_diff(std::span<const double> w, std::span<const double> a,
                         std::span<const double> b) {
  assert(a.size() == b.size() && w.size() == a.size());
  return active_kernels().weighted_abs_diff(w.data(), a.data(), b.data(), a.size());
}

void lorentz_sum(std::span<const double> x, std::span<const double> centers, double width,
                 std::span<double> out) {
  assert(out.size() == x.size());
  active_kernels().lorentz_sum(x.data(), x.size(), centers.data(), centers.size(), width,
                               out.data());
}

}  // namespace graphmark::simd

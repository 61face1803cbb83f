#include "graphmark/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "graphmark/error.hpp"
#include "graphmark/simd/kernels.hpp"

namespace graphmark {

LineGrid::LineGrid(double lo, double hi, int nodes) : lo_(lo), hi_(hi) {
  if (nodes < 2 || !(hi > lo)) throw Error(ErrorCode::InvalidParam, "degenerate line grid");
  nodes_.resize(nodes);
  weights_.resize(nodes);
  const double h = (hi - lo) / (nodes - 1);
  for (int k = 0; k < nodes; ++k) {
    nodes_[k] = k + 1 == nodes ? hi : lo + h * k;
    weights_[k] = (k == 0 || k + 1 == nodes) ? 0.5 * h : h;
  }
}

HalfLineGrid::HalfLineGrid(double scale, int nodes) : scale_(scale) {
  if (nodes < 3 || !(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidParam, "degenerate half-line grid");
  }
  nodes_.resize(nodes);
  weights_.resize(nodes);
  const double dt = 1.0 / (nodes - 1);
  endpoint_weight_ = 0.5 * dt;
  for (int k = 0; k < nodes; ++k) {
    if (k + 1 == nodes) {
      nodes_[k] = std::numeric_limits<double>::infinity();
      weights_[k] = 0.0;
      continue;
    }
    const double t = k * dt;
    const double one_minus = 1.0 - t;
    nodes_[k] = scale * t / one_minus;
    const double jacobian = scale / (one_minus * one_minus);
    weights_[k] = (k == 0 ? 0.5 * dt : dt) * jacobian;
  }
}

std::vector<double> vibrational_frequencies(const GraphMark& g) {
  auto spec = spectrum(laplacian(g), SpectrumOrder::ascending);
  std::vector<double> theta(spec.eigenvalues.size());
  std::transform(spec.eigenvalues.begin(), spec.eigenvalues.end(), theta.begin(),
                 [](double w) { return std::sqrt(std::max(w, 0.0)); });
  return theta;
}

double lorentz_normalizer(std::span<const double> frequencies, double xi) {
  // int_0^inf xi / ((theta - c)^2 + xi^2) dtheta = pi/2 + atan(c / xi)
  double mass = 0.0;
  for (double c : frequencies) mass += 0.5 * std::numbers::pi + std::atan(c / xi);
  return 1.0 / mass;
}

LorentzDensity lorentz_density(std::span<const double> frequencies, double xi,
                               const HalfLineGrid& grid) {
  if (!(xi > 0.0)) throw Error(ErrorCode::InvalidParam, "xi must be positive");
  if (frequencies.empty()) throw Error(ErrorCode::InvalidParam, "no frequencies");
  LorentzDensity out;
  out.xi = xi;
  out.modes = frequencies.size();
  out.normalizer = lorentz_normalizer(frequencies, xi);
  out.values.resize(grid.nodes().size());
  simd::lorentz_sum(grid.nodes(), frequencies, xi, out.values);
  for (double& v : out.values) v *= out.normalizer;
  return out;
}

double lorentz_density_integral(const LorentzDensity& density, const HalfLineGrid& grid) {
  const auto w = grid.weights();
  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) total += w[k] * density.values[k];
  // rho(theta) * dtheta/dt -> K * xi * modes / scale as t -> 1
  total += grid.endpoint_weight() * density.normalizer * density.xi *
           static_cast<double>(density.modes) / grid.scale();
  return total;
}

double lorentz_l2_distance(const LorentzDensity& a, const LorentzDensity& b,
                           const HalfLineGrid& grid) {
  const double sq = simd::weighted_sq_diff(grid.weights(), a.values, b.values);
  return std::sqrt(std::max(sq, 0.0));
}

double half_line_scale(double xi, double max_frequency) { return std::max(xi, max_frequency); }

namespace {

double im_empty_vs_complete(const std::vector<double>& empty_freq,
                            const std::vector<double>& full_freq, double xi) {
  const double top = std::max(*std::max_element(empty_freq.begin(), empty_freq.end()),
                              *std::max_element(full_freq.begin(), full_freq.end()));
  const HalfLineGrid grid(half_line_scale(xi, top));
  return lorentz_l2_distance(lorentz_density(empty_freq, xi, grid),
                             lorentz_density(full_freq, xi, grid), grid);
}

double solve_xi(int order) {
  const auto empty_freq = vibrational_frequencies(GraphMark::empty(order));
  const auto full_freq = vibrational_frequencies(GraphMark::complete(order));
  double lo = 1e-3;
  double hi = 1e3;
  // The distance decreases in xi: narrow peaks are far apart, wide ones overlap.
  if (im_empty_vs_complete(empty_freq, full_freq, lo) < 1.0 ||
      im_empty_vs_complete(empty_freq, full_freq, hi) > 1.0) {
    throw Error(ErrorCode::InvalidParam,
                "cannot bracket the Ipsen-Mikhailov calibration at order " +
                    std::to_string(order));
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = std::sqrt(lo * hi);
    if (im_empty_vs_complete(empty_freq, full_freq, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double calibrate_im_xi(int order) {
  if (order < 2) throw Error(ErrorCode::InvalidParam, "calibration needs order >= 2");
  static std::mutex mutex;
  static std::map<int, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }
  const double xi = solve_xi(order);
  std::lock_guard lock(mutex);
  return cache.emplace(order, xi).first->second;
}

std::vector<double> gaussian_spectral_density(std::span<const double> eigenvalues, double sigma,
                                              const LineGrid& grid) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidParam, "sigma must be positive");
  if (eigenvalues.empty()) throw Error(ErrorCode::InvalidParam, "no eigenvalues");
  const double norm =
      1.0 / (static_cast<double>(eigenvalues.size()) * sigma * std::sqrt(2.0 * std::numbers::pi));
  const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
  std::vector<double> out(grid.nodes().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double a = grid.nodes()[k];
    double s = 0.0;
    for (double w : eigenvalues) {
      const double d = a - w;
      s += std::exp(-d * d * inv_two_var);
    }
    out[k] = norm * s;
  }
  return out;
}

double density_l1_distance(std::span<const double> a, std::span<const double> b,
                           const LineGrid& grid) {
  return simd::weighted_abs_diff(grid.weights(), a, b);
}

double density_integral(std::span<const double> density, const LineGrid& grid) {
  double total = 0.0;
  for (std::size_t k = 0; k < density.size(); ++k) total += grid.weights()[k] * density[k];
  return total;
}

}  // namespace graphmark

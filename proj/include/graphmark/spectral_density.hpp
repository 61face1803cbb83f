#pragma once

// Continuous spectral densities behind the eigenspectrum and Ipsen-Mikhailov
// distances, and the fixed-node trapezoid quadratures used to compare them.

#include <span>
#include <vector>

#include "graphmark/graph.hpp"

namespace graphmark {

inline constexpr int kQuadratureNodes = 2048;

/// Trapezoid rule on [lo, hi].
class LineGrid {
 public:
  LineGrid(double lo, double hi, int nodes = kQuadratureNodes);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Trapezoid rule for [0, inf) after the substitution theta = scale * t / (1 - t),
/// t in [0, 1]. weights() already include the Jacobian; the last node sits at
/// +inf and carries weight 0 (integrands there vanish or are handled through
/// endpoint_weight()).
class HalfLineGrid {
 public:
  explicit HalfLineGrid(double scale, int nodes = kQuadratureNodes);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double scale() const { return scale_; }
  /// Trapezoid weight of the t = 1 endpoint in the t variable.
  double endpoint_weight() const { return endpoint_weight_; }

 private:
  double scale_;
  double endpoint_weight_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// theta_l = sqrt(omega_l) over the Laplacian eigenvalues (clamped at 0).
std::vector<double> vibrational_frequencies(const GraphMark& g);

/// Lorentzian density K * sum_l xi / ((theta - theta_l)^2 + xi^2) tabulated on a
/// half-line grid, with K chosen analytically so the density integrates to 1
/// over [0, inf).
struct LorentzDensity {
  std::vector<double> values;
  double normalizer = 0.0;
  double xi = 0.0;
  std::size_t modes = 0;
};

double lorentz_normalizer(std::span<const double> frequencies, double xi);
LorentzDensity lorentz_density(std::span<const double> frequencies, double xi,
                               const HalfLineGrid& grid);
/// Quadrature of the tabulated density including the tail limit at +inf.
double lorentz_density_integral(const LorentzDensity& density, const HalfLineGrid& grid);
/// sqrt( int_0^inf (rho_1 - rho_2)^2 dtheta ) on a shared grid.
double lorentz_l2_distance(const LorentzDensity& a, const LorentzDensity& b,
                           const HalfLineGrid& grid);

/// Grid scale used for a set of marks: max(xi, largest vibrational frequency).
double half_line_scale(double xi, double max_frequency);

/// xi such that the Ipsen-Mikhailov distance between the empty and complete
/// graph of the given order is 1. Memoized per order; thread safe.
double calibrate_im_xi(int order);

/// Gaussian mixture (1/n) sum_l N(a; omega_l, sigma^2) on a line grid.
std::vector<double> gaussian_spectral_density(std::span<const double> eigenvalues, double sigma,
                                              const LineGrid& grid);
/// int |rho_1 - rho_2| da on a shared grid.
double density_l1_distance(std::span<const double> a, std::span<const double> b,
                           const LineGrid& grid);
double density_integral(std::span<const double> density, const LineGrid& grid);

}  // namespace graphmark

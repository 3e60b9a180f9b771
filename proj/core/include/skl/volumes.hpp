#pragma once

#include <functional>
#include <span>
#include <vector>

#include "skl/config.hpp"

namespace skl::volumes {

struct QuadratureSpec {
  int nodes = 64;          // starting Gauss-Legendre order per axis
  double rel_tol = 1e-8;   // agreement target between doublings
  int max_doublings = 3;
};

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Nodes by Newton iteration on the Legendre recurrence.
GaussLegendre gauss_legendre(int n);

// Integrates f over [a, b] with an n-node rule.
double integrate_1d(const std::function<double(double)>& f, double a, double b, int n);

// Radial density of the invariant volume in polar coordinates:
// prod sinh^2(r_j) * prod_{j<k} sinh^2((r_j - r_k)/2) sinh^2((r_j + r_k)/2).
double polar_density(std::span<const double> radii);

// Invariant volume of the polydisk [0, r]^g in radial coordinates times the
// angular normalization 2^g, by tensor quadrature with node doubling.
double polydisk_volume(int g, double r, const QuadratureSpec& spec = {});

struct PolydiskG2 {
  double i1;
  double i2;
  double i3;
  double total;  // i1 + i2 - 2 i3
};

// Closed antiderivative form of the g = 2 polydisk volume.
PolydiskG2 polydisk_volume_g2_exact(double r);

// Upper bound 32 cosh^2(r) sinh^4(r) for the g = 2 polydisk volume.
double polydisk_volume_bound_g2(double r);

// Growth-shape bound cosh^{g^2-2}(r) sinh^{g+2}(r) with implied constant 1.
double polydisk_volume_bound(int g, double r);

struct BallVolume {
  double value;
  double std_error;
  std::size_t hits;       // samples inside the Euclidean radial ball
  std::size_t samples;
};

// Monte Carlo volume of the metric ball of radius r: radial coordinates are
// sampled uniformly in the box [0, r/(2 sqrt 2)]^g and restricted to the
// Euclidean ball that the radial part of the metric carves out.
BallVolume ball_volume(int g, double r, std::size_t samples, unsigned long long seed = 42,
                       int threads = 0);

// Elementary symmetric polynomial e_k of the given values (e_k = 0 for k > n).
double elem_sym(std::span<const double> values, int k);

struct MonotoneIntegral {
  double value;           // integral of sinh^2 t cosh^{2k} t over [0, r]
  double bound_rhs;       // sinh^3 r cosh^{2k-1} r + sinh r cosh r
  bool bound_holds;       // 2 * value <= bound_rhs (up to roundoff slack)
};

MonotoneIntegral sinh2_cosh2k_integral(double r, int k);

// Log gamma for positive arguments (Lanczos, 15 terms), 1e-12 relative.
double log_gamma(double x);

// Gamma-ratio normalization integral over symmetric-matrix space:
// pi^{g(g+1)/4} * Gamma(w/2 - g/2)/Gamma(w/2) * prod_{j=1}^{g-1}
// Gamma(w - (g+j)/2)/Gamma(w - j), with w = k (g+1).
double hua_beta(int g, int k);

// hua_beta(g, k) * k^{g(g+1)/4} for each k; approaches a finite limit.
std::vector<double> hua_asymptotic_ratio(int g, std::span<const int> ks);

struct TailIntegral {
  double log_value;  // log of the integral, -inf when the mass vanishes
  int panels;
};

// Integral of exp(log_f) over [a, infinity) by fixed-width panels, stopping
// once a panel adds less than rel_floor of the accumulated mass.
TailIntegral tail_integral(const std::function<double(double)>& log_f, double a,
                           double panel_width, double rel_floor = 1e-16, int node_count = 32);

// Numerically stable log cosh / log sinh for nonnegative arguments.
double log_cosh(double x);
double log_sinh(double x);

}  // namespace skl::volumes

#pragma once

#include <complex>
#include <span>
#include <utility>

#include "skl/arithmetic.hpp"
#include "skl/siegel.hpp"
#include "skl/volumes.hpp"

namespace skl::kernel {

using arithmetic::SymplecticInt;
using matkit::cplx;
using siegel::SiegelPoint;

struct KernelParams {
  int g = 2;
  int k = 1;           // tensor power
  double c_norm = 1.0; // normalization constant, shape checks only
  int weight() const { return k * (g + 1); }
};

void validate(const KernelParams& p);

// Log-magnitude / phase split of a series term; value = exp(log_mag + i phase).
struct TermLog {
  double log_mag;
  double phase;
};

// Per-element series term
//   (4^g)^{w/2} C / (det(Z - conj(gamma W))^w conj(det(C W + D))^w),  w = k(g+1),
// evaluated through log determinants. The automorphy factor sits at W, the
// summed variable, which is the convention under which the term magnitude
// times det(YV)^{w/2} collapses to the cosh-product expression.
TermLog series_term_log(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                        const SymplecticInt& gamma, const Tolerances& t = tol());
cplx series_term(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                 const SymplecticInt& gamma, const Tolerances& t = tol());

enum class SumMode { kahan, pairwise };

// Truncated Petersson-normed sum det(4 Y V)^{w/2} |sum of plain terms|,
// assembled as det(YV)^{w/2} |sum of 4^g-weighted terms|. Deterministic for
// any thread count.
double truncated_norm(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                      std::span<const SymplecticInt> elements, SumMode mode = SumMode::kahan,
                      int threads = 0, const Tolerances& t = tol());

// Positive majorant sum_gamma C prod_j cosh^{-w}(r_j(Z, gamma W)).
double majorant_sum(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                    std::span<const SymplecticInt> elements, SumMode mode = SumMode::kahan,
                    int threads = 0, const Tolerances& t = tol());

// Single majorant term for one element, in log space.
double log_majorant_term(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                         const SymplecticInt& gamma, const Tolerances& t = tol());

// Decay envelope k^{g(g+1)/2} cosh^{-(w - g^2 - g)}(d / (2 sqrt 2)),
// implied constant 1.
double decay_envelope(const KernelParams& p, double d);

struct CuspEnvelope {
  double log_first;  // log of the height term
  double first;      // k^{g(g+1)/4} (det 4Y)^{w/2} / (det V)^{(w-g-1)/2}
  double far;        // decay envelope at d(Z, W)
  double total;
};

// Two-term envelope for separated heights; requires det Im W > det Im Z.
CuspEnvelope cusp_envelope(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                           const Tolerances& t = tol());

// Orders a pair of points so the second has the strictly larger det Im.
std::pair<SiegelPoint, SiegelPoint> orient_by_height(const SiegelPoint& z, const SiegelPoint& w);

struct OrbitSumBound {
  double counting_term;
  double volume_term;
  double tail_term;
  double total;
  int tail_panels;
};

// Three-term orbit-sum upper bound for f(rho) = cosh^{-K}(rho / (2 sqrt 2)):
// a caller-supplied near-window counting sum, the boundary volume term
// f(rho0) Vol(polydisk at rho0/(2 sqrt 2)) / vol_ball, and the tail integral
// (g^2 + g)/vol_ball * int_{rho0}^inf f(rho) cosh^{g^2-1} sinh^{g+1} of
// (rho + r_gamma)/(2 sqrt 2), truncated at 1e-16 of the accumulated mass.
OrbitSumBound orbit_sum_bound(int g, double f_exponent, double rho0, double r_gamma,
                              double vol_ball, const volumes::QuadratureSpec& quad = {},
                              double counting_sum = 0.0);

// Comparison record for envelope checks.
struct BoundReport {
  double lhs;
  double rhs;
  double ratio;
  double distance;
  double det_y;
  double det_v;
  KernelParams params;
};

BoundReport compare_bound(const KernelParams& p, double lhs, double rhs, const SiegelPoint& z,
                          const SiegelPoint& w);

}  // namespace skl::kernel

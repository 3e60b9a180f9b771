#pragma once

#include <vector>

#include "skl/matkit.hpp"

namespace skl::siegel {

using matkit::ComplexMatrix;
using matkit::RealMatrix;
using matkit::cplx;

// Point Z = X + iY with X, Y real symmetric and Y positive definite.
// Construction averages away asymmetry up to the repair window and rejects
// anything worse; Y is validated through the SPD gate.
class SiegelPoint {
 public:
  SiegelPoint(RealMatrix x, RealMatrix y, const Tolerances& t = tol());

  static SiegelPoint unit_imaginary(int g);  // i * Id_g

  int g() const { return g_; }
  const RealMatrix& x() const { return x_; }
  const RealMatrix& y() const { return y_; }
  ComplexMatrix z() const { return ComplexMatrix::from_parts(x_, y_); }

 private:
  int g_ = 0;
  RealMatrix x_;
  RealMatrix y_;
};

// Real 2g x 2g block matrix (A B; C D) with M^T J M = J within tolerance.
class SymplecticReal {
 public:
  SymplecticReal(RealMatrix a, RealMatrix b, RealMatrix c, RealMatrix d,
                 const Tolerances& t = tol());

  static SymplecticReal identity(int g);
  static SymplecticReal involution(int g);  // (0 -Id; Id 0)

  int g() const { return a_.rows(); }
  const RealMatrix& a() const { return a_; }
  const RealMatrix& b() const { return b_; }
  const RealMatrix& c() const { return c_; }
  const RealMatrix& d() const { return d_; }

  // Largest entry of M^T J M - J, for diagnostics.
  double relation_residual() const;

 private:
  RealMatrix a_, b_, c_, d_;
};

SymplecticReal operator*(const SymplecticReal& m1, const SymplecticReal& m2);

struct CrossRatioSpectrum {
  std::vector<double> rho;    // ascending, each in [0, 1)
  std::vector<double> radii;  // atanh(sqrt(rho)), same order
};

// Moebius action (AZ + B)(CZ + D)^{-1}; result re-validated as a point.
SiegelPoint act(const SymplecticReal& m, const SiegelPoint& z, const Tolerances& t = tol());

// Element sigma with sigma(Z) = i * Id: (Y^{-1/2}, -Y^{-1/2} X; 0, Y^{1/2}).
SymplecticReal sigma_normalizer(const SiegelPoint& z, const Tolerances& t = tol());

// (Z - W)(conj(Z) - W)^{-1} (conj(Z) - conj(W)) (Z - conj(W))^{-1}.
ComplexMatrix cross_ratio(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t = tol());

// Eigenvalues of the cross-ratio matrix, validated to be real and in [0, 1),
// plus the hyperbolic radii they induce.
CrossRatioSpectrum spectrum(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t = tol());

// sqrt(8 sum r_j^2). Exactly zero when every rho is below the coincidence
// floor.
double distance(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t = tol());
double distance(const CrossRatioSpectrum& s, const Tolerances& t = tol());

// det(Y)^{-(g+1)}, the density of the invariant volume form in dX dY.
double volume_density(const SiegelPoint& z);

// det(Y)^{weight}.
double petersson_factor(const SiegelPoint& z, int weight);

// Relative residual of det(4YV)/|det(Z - conj(W))|^2 against
// prod_j cosh^{-2}(r_j), the two-route consistency check.
double identity_residual(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t = tol());

// Point i exp(2t / sqrt(2g)) Id on the diagonal ray through i Id; its
// invariant distance from the base point is exactly 2t.
SiegelPoint diagonal_ray(int g, double t);

}  // namespace skl::siegel

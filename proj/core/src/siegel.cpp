#include "skl/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skl::siegel {

using matkit::SpdMatrix;
using matkit::asymmetry;
using matkit::eigen_sym;
using matkit::EigenSym;

namespace {

RealMatrix symmetrize_checked(RealMatrix m, double window, const char* who) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(who) + ": not square");
  const double asym = asymmetry(m);
  if (asym > window)
    throw DimensionError(std::string(who) + ": asymmetry beyond repair window");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace

SiegelPoint::SiegelPoint(RealMatrix x, RealMatrix y, const Tolerances& t) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError("SiegelPoint: X and Y differ in shape");
  x_ = symmetrize_checked(std::move(x), t.sym_repair, "SiegelPoint X");
  y_ = symmetrize_checked(std::move(y), t.sym_repair, "SiegelPoint Y");
  y_ = SpdMatrix(y_, t).m();
  g_ = x_.rows();
}

SiegelPoint SiegelPoint::unit_imaginary(int g) {
  return SiegelPoint(RealMatrix(g, g), RealMatrix::identity(g));
}

SymplecticReal::SymplecticReal(RealMatrix a, RealMatrix b, RealMatrix c, RealMatrix d,
                               const Tolerances& t)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const int g = a_.rows();
  if (a_.cols() != g || b_.rows() != g || b_.cols() != g || c_.rows() != g ||
      c_.cols() != g || d_.rows() != g || d_.cols() != g)
    throw DimensionError("SymplecticReal: blocks must be square of equal size");
  const double resid = relation_residual();
  if (resid > t.symplectic_check)
    throw PreconditionError("SymplecticReal: M^T J M - J residual " + std::to_string(resid));
}

double SymplecticReal::relation_residual() const {
  // M^T J M - J in blocks:
  //   top-left  C^T A - A^T C
  //   top-right C^T B - A^T D + Id
  //   bottom-left D^T A - B^T C - Id
  //   bottom-right D^T B - B^T D
  const RealMatrix at = matkit::transpose(a_);
  const RealMatrix bt = matkit::transpose(b_);
  const RealMatrix ct = matkit::transpose(c_);
  const RealMatrix dt = matkit::transpose(d_);
  const int g = a_.rows();
  const RealMatrix id = RealMatrix::identity(g);
  double r = 0.0;
  r = std::max(r, matkit::max_abs(ct * a_ - at * c_));
  r = std::max(r, matkit::max_abs(ct * b_ - at * d_ + id));
  r = std::max(r, matkit::max_abs(dt * a_ - bt * c_ - id));
  r = std::max(r, matkit::max_abs(dt * b_ - bt * d_));
  return r;
}

SymplecticReal SymplecticReal::identity(int g) {
  return SymplecticReal(RealMatrix::identity(g), RealMatrix(g, g), RealMatrix(g, g),
                        RealMatrix::identity(g));
}

SymplecticReal SymplecticReal::involution(int g) {
  return SymplecticReal(RealMatrix(g, g), -1.0 * RealMatrix::identity(g),
                        RealMatrix::identity(g), RealMatrix(g, g));
}

SymplecticReal operator*(const SymplecticReal& m1, const SymplecticReal& m2) {
  return SymplecticReal(m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
                        m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d());
}

SiegelPoint act(const SymplecticReal& m, const SiegelPoint& z, const Tolerances& t) {
  if (m.g() != z.g()) throw DimensionError("act: size mismatch");
  const ComplexMatrix zc = z.z();
  const ComplexMatrix a = ComplexMatrix::from_parts(m.a(), RealMatrix(m.g(), m.g()));
  const ComplexMatrix b = ComplexMatrix::from_parts(m.b(), RealMatrix(m.g(), m.g()));
  const ComplexMatrix c = ComplexMatrix::from_parts(m.c(), RealMatrix(m.g(), m.g()));
  const ComplexMatrix d = ComplexMatrix::from_parts(m.d(), RealMatrix(m.g(), m.g()));
  const ComplexMatrix num = a * zc + b;
  const ComplexMatrix den = c * zc + d;
  const ComplexMatrix w = num * matkit::inverse(den);
  const int g = z.g();
  RealMatrix x(g, g);
  RealMatrix y(g, g);
  // The exact image is symmetric; average before the construction gate so
  // floating-point skew from ill-conditioned denominators cannot trip it.
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      x(i, j) = 0.5 * (w(i, j).real() + w(j, i).real());
      y(i, j) = 0.5 * (w(i, j).imag() + w(j, i).imag());
    }
  return SiegelPoint(std::move(x), std::move(y), t);
}

SymplecticReal sigma_normalizer(const SiegelPoint& z, const Tolerances& t) {
  const int g = z.g();
  const SpdMatrix y(z.y(), t);
  const RealMatrix yh = matkit::spd_sqrt(y, t).m();
  const EigenSym es = eigen_sym(yh, t);
  RealMatrix yih(g, g);  // Y^{-1/2} from the spectral factors of Y^{1/2}
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      double s = 0.0;
      for (int k = 0; k < g; ++k) s += es.vectors(i, k) / es.values[k] * es.vectors(j, k);
      yih(i, j) = s;
      yih(j, i) = s;
    }
  return SymplecticReal(yih, -1.0 * (yih * z.x()), RealMatrix(g, g), yh, t);
}

ComplexMatrix cross_ratio(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t) {
  if (z.g() != w.g()) throw DimensionError("cross_ratio: size mismatch");
  const ComplexMatrix zc = z.z();
  const ComplexMatrix wc = w.z();
  const ComplexMatrix zbar = matkit::conjugate(zc);
  const ComplexMatrix wbar = matkit::conjugate(wc);
  return (zc - wc) * matkit::inverse(zbar - wc) * (zbar - wbar) * matkit::inverse(zc - wbar);
}

CrossRatioSpectrum spectrum(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t) {
  const ComplexMatrix rho = cross_ratio(z, w, t);
  const std::vector<cplx> lam = matkit::eigenvalues_complex(rho, t);
  CrossRatioSpectrum out;
  out.rho.reserve(lam.size());
  for (const cplx& l : lam) {
    if (std::abs(l.imag()) >= t.eig_im_tol)
      throw SpectralError("spectrum: eigenvalue not real within tolerance", l.real(), l.imag());
    double r = l.real();
    if (r < 0.0) {
      if (r < -t.rho_clamp)
        throw SpectralError("spectrum: negative eigenvalue beyond clamp window", l.real(),
                            l.imag());
      r = 0.0;
    }
    if (r >= 1.0) {
      if (r >= 1.0 + t.rho_clamp)
        throw SpectralError("spectrum: eigenvalue at or beyond 1", l.real(), l.imag());
      // Legitimate spectra saturate to 1.0 in doubles once the points are
      // astronomically far apart; keep those finite.
      r = std::nextafter(1.0, 0.0);
    }
    out.rho.push_back(r);
  }
  std::sort(out.rho.begin(), out.rho.end());
  out.radii.reserve(out.rho.size());
  for (double r : out.rho) out.radii.push_back(std::atanh(std::sqrt(r)));
  return out;
}

double distance(const CrossRatioSpectrum& s, const Tolerances& t) {
  bool coincident = true;
  for (double r : s.rho)
    if (r >= t.rho_zero) coincident = false;
  if (coincident) return 0.0;
  double acc = 0.0;
  for (double r : s.radii) acc += r * r;
  return std::sqrt(8.0 * acc);
}

double distance(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t) {
  return distance(spectrum(z, w, t), t);
}

double volume_density(const SiegelPoint& z) {
  const double dy = matkit::det_real(z.y());
  return std::pow(dy, -(z.g() + 1));
}

double petersson_factor(const SiegelPoint& z, int weight) {
  return std::pow(matkit::det_real(z.y()), weight);
}

double identity_residual(const SiegelPoint& z, const SiegelPoint& w, const Tolerances& t) {
  const double det4yv =
      std::pow(4.0, z.g()) * matkit::det_real(z.y()) * matkit::det_real(w.y());
  const cplx dzw = matkit::det_complex(z.z() - matkit::conjugate(w.z()));
  const double lhs = det4yv / std::norm(dzw);
  const CrossRatioSpectrum s = spectrum(z, w, t);
  double rhs = 1.0;
  for (double r : s.radii) rhs /= std::cosh(r) * std::cosh(r);
  return std::abs(lhs - rhs) / rhs;
}

SiegelPoint diagonal_ray(int g, double t) {
  if (g < 1) throw ParameterError("genus must be positive");
  const double scale = std::exp(2.0 * t / std::sqrt(2.0 * g));
  return SiegelPoint(RealMatrix(g, g), scale * RealMatrix::identity(g));
}

}  // namespace skl::siegel

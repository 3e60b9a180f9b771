#include "skl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "skl/errors.hpp"
#include "skl/parallel.hpp"

namespace skl::kernel {

namespace {

constexpr double kInvTwoSqrtTwo = 0.35355339059327373;  // 1 / (2 sqrt 2)
constexpr double kLogOverflow = 709.0;                   // exp() ceiling

double checked_exp(double log_value, const char* what) {
  if (log_value > kLogOverflow)
    throw RangeError(std::string(what) + " overflows double range", log_value);
  return std::exp(log_value);
}

// Kahan accumulation in a fixed order.
struct Compensated {
  double acc = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double term = x - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
};

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

void validate(const KernelParams& p) {
  if (p.g < 2) throw ParameterError("kernel parameters need g >= 2");
  if (p.k < 1) throw ParameterError("kernel parameters need k >= 1");
  if (!(p.c_norm > 0)) throw ParameterError("normalization constant must be positive");
}

TermLog series_term_log(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                        const SymplecticInt& gamma, const Tolerances& t) {
  validate(p);
  const int g = p.g;
  if (z.g() != g || w.g() != g || gamma.g() != g)
    throw DimensionError("series term inputs disagree on genus");
  const double wt = p.weight();

  const SiegelPoint gw = siegel::act(gamma.to_real(), w, t);
  const matkit::ComplexMatrix diff = z.z() - matkit::conjugate(gw.z());
  const cplx det1 = matkit::det_complex(diff);
  if (std::abs(det1) <= t.det_floor)
    throw SingularError("degenerate separation determinant", std::abs(det1));

  const matkit::RealMatrix zero(g, g);
  const matkit::ComplexMatrix den =
      matkit::ComplexMatrix::from_parts(gamma.c().to_real(), zero) * w.z() +
      matkit::ComplexMatrix::from_parts(gamma.d().to_real(), zero);
  const cplx det2 = matkit::det_complex(den);
  if (std::abs(det2) <= t.det_floor)
    throw SingularError("degenerate automorphy determinant", std::abs(det2));

  TermLog out;
  out.log_mag = 0.5 * wt * g * std::log(4.0) + std::log(p.c_norm) -
                wt * std::log(std::abs(det1)) - wt * std::log(std::abs(det2));
  // conj(det2)^w contributes +w arg(det2) to the phase of the denominator
  // inverse... the term is 1/(det1^w conj(det2)^w).
  out.phase = -wt * std::arg(det1) + wt * std::arg(det2);
  if (!std::isfinite(out.log_mag))
    throw RangeError("series term magnitude left double range", out.log_mag);
  return out;
}

cplx series_term(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                 const SymplecticInt& gamma, const Tolerances& t) {
  const TermLog lt = series_term_log(p, z, w, gamma, t);
  const double mag = checked_exp(lt.log_mag, "series term");
  return cplx(mag * std::cos(lt.phase), mag * std::sin(lt.phase));
}

double truncated_norm(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                      std::span<const SymplecticInt> elements, SumMode mode, int threads,
                      const Tolerances& t) {
  validate(p);
  if (elements.empty()) throw PreconditionError("truncated sum needs at least one element");
  const double wt = p.weight();

  auto chunk_logs = par::map_chunks<std::vector<TermLog>>(
      elements.size(), 64, threads, [&](std::size_t b, std::size_t e) {
        std::vector<TermLog> out;
        out.reserve(e - b);
        for (std::size_t i = b; i < e; ++i)
          out.push_back(series_term_log(p, z, w, elements[i], t));
        return out;
      });
  std::vector<TermLog> logs;
  logs.reserve(elements.size());
  for (auto& c : chunk_logs) logs.insert(logs.end(), c.begin(), c.end());

  double top = -std::numeric_limits<double>::infinity();
  for (const auto& l : logs) top = std::max(top, l.log_mag);
  if (!std::isfinite(top)) return 0.0;  // every term underflowed to nothing

  double re, im;
  if (mode == SumMode::kahan) {
    Compensated cre, cim;
    for (const auto& l : logs) {
      const double m = std::exp(l.log_mag - top);
      cre.add(m * std::cos(l.phase));
      cim.add(m * std::sin(l.phase));
    }
    re = cre.acc;
    im = cim.acc;
  } else {
    std::vector<double> vre(logs.size()), vim(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
      const double m = std::exp(logs[i].log_mag - top);
      vre[i] = m * std::cos(logs[i].phase);
      vim[i] = m * std::sin(logs[i].phase);
    }
    re = pairwise_sum(vre);
    im = pairwise_sum(vim);
  }
  const double mod = std::hypot(re, im);
  if (mod == 0.0) return 0.0;
  const double log_det_part =
      0.5 * wt * (std::log(matkit::det_real(z.y())) + std::log(matkit::det_real(w.y())));
  return checked_exp(log_det_part + top + std::log(mod), "truncated norm");
}

double log_majorant_term(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                         const SymplecticInt& gamma, const Tolerances& t) {
  validate(p);
  const SiegelPoint gw = siegel::act(gamma.to_real(), w, t);
  const siegel::CrossRatioSpectrum sp = siegel::spectrum(z, gw, t);
  double s = 0.0;
  for (double r : sp.radii) s += volumes::log_cosh(r);
  return std::log(p.c_norm) - static_cast<double>(p.weight()) * s;
}

double majorant_sum(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                    std::span<const SymplecticInt> elements, SumMode mode, int threads,
                    const Tolerances& t) {
  validate(p);
  if (elements.empty()) throw PreconditionError("majorant sum needs at least one element");
  auto chunk_terms = par::map_chunks<std::vector<double>>(
      elements.size(), 64, threads, [&](std::size_t b, std::size_t e) {
        std::vector<double> out;
        out.reserve(e - b);
        for (std::size_t i = b; i < e; ++i)
          out.push_back(std::exp(log_majorant_term(p, z, w, elements[i], t)));
        return out;
      });
  std::vector<double> terms;
  terms.reserve(elements.size());
  for (auto& c : chunk_terms) terms.insert(terms.end(), c.begin(), c.end());
  if (mode == SumMode::pairwise) return pairwise_sum(terms);
  Compensated acc;
  for (double v : terms) acc.add(v);
  return acc.acc;
}

double decay_envelope(const KernelParams& p, double d) {
  validate(p);
  const int drop = p.weight() - p.g * p.g - p.g;
  if (drop <= 0)
    throw ParameterError("decay exponent k(g+1) - g^2 - g must be positive, got " +
                         std::to_string(drop));
  if (!(d >= 0)) throw DomainError("distance must be nonnegative");
  // The k prefactor has an integer exponent; computing it by repeated
  // multiplication keeps the d = 0 value exactly k^{g(g+1)/2}.
  double lead = 1.0;
  for (int i = 0; i < p.g * (p.g + 1) / 2; ++i) lead *= p.k;
  const double lc = volumes::log_cosh(d * kInvTwoSqrtTwo);
  if (lc == 0.0) return lead;
  return lead * checked_exp(-static_cast<double>(drop) * lc, "decay envelope");
}

CuspEnvelope cusp_envelope(const KernelParams& p, const SiegelPoint& z, const SiegelPoint& w,
                           const Tolerances& t) {
  validate(p);
  const double det_y = matkit::det_real(z.y());
  const double det_v = matkit::det_real(w.y());
  if (!(det_v > det_y))
    throw PreconditionError("height separation requires det Im W > det Im Z");
  const double wt = p.weight();
  CuspEnvelope out;
  out.log_first = 0.25 * p.g * (p.g + 1) * std::log(static_cast<double>(p.k)) +
                  0.5 * wt * (p.g * std::log(4.0) + std::log(det_y)) -
                  0.5 * (wt - p.g - 1) * std::log(det_v);
  out.first = checked_exp(out.log_first, "height term");
  out.far = decay_envelope(p, siegel::distance(z, w, t));
  out.total = out.first + out.far;
  return out;
}

std::pair<SiegelPoint, SiegelPoint> orient_by_height(const SiegelPoint& z, const SiegelPoint& w) {
  const double det_y = matkit::det_real(z.y());
  const double det_v = matkit::det_real(w.y());
  if (det_y == det_v) throw PreconditionError("points have equal height, no orientation exists");
  if (det_v > det_y) return {z, w};
  return {w, z};
}

OrbitSumBound orbit_sum_bound(int g, double f_exponent, double rho0, double r_gamma,
                              double vol_ball, const volumes::QuadratureSpec& quad,
                              double counting_sum) {
  if (g < 1) throw ParameterError("genus must be positive");
  if (!(f_exponent > static_cast<double>(g) * g + g))
    throw ParameterError("tail diverges: decay exponent must exceed g^2 + g");
  if (!(r_gamma >= 0)) throw DomainError("injectivity radius must be nonnegative");
  if (!(rho0 > r_gamma)) throw PreconditionError("window radius must exceed the injectivity radius");
  if (!(vol_ball > 0)) throw DomainError("ball volume must be positive");
  if (!(counting_sum >= 0)) throw DomainError("counting sum must be nonnegative");

  OrbitSumBound out{};
  out.counting_term = counting_sum;

  const double c = kInvTwoSqrtTwo;
  const double f_rho0 = std::exp(-f_exponent * volumes::log_cosh(rho0 * c));
  out.volume_term = f_rho0 * volumes::polydisk_volume(g, rho0 * c, quad) / vol_ball;

  const double rate = std::max(1.0, (f_exponent - g * g - g) * c);
  const double width = std::min(1.0, 8.0 / rate);
  auto log_f = [&](double rho) {
    return -f_exponent * volumes::log_cosh(rho * c) +
           (g * g - 1) * volumes::log_cosh((rho + r_gamma) * c) +
           (g + 1) * volumes::log_sinh((rho + r_gamma) * c);
  };
  const volumes::TailIntegral tail = volumes::tail_integral(log_f, rho0, width, 1e-16);
  out.tail_panels = tail.panels;
  out.tail_term = (g * g + g) *
                  checked_exp(tail.log_value - std::log(vol_ball), "tail term") ;
  out.total = out.counting_term + out.volume_term + out.tail_term;
  return out;
}

BoundReport compare_bound(const KernelParams& p, double lhs, double rhs, const SiegelPoint& z,
                          const SiegelPoint& w) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs) || rhs == 0.0)
    throw DomainError("bound comparison needs finite values and a nonzero right side");
  BoundReport out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.ratio = lhs / rhs;
  out.distance = siegel::distance(z, w);
  out.det_y = matkit::det_real(z.y());
  out.det_v = matkit::det_real(w.y());
  out.params = p;
  return out;
}

}  // namespace skl::kernel

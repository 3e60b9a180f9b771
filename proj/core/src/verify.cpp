#include "skl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "skl/enumeration.hpp"
#include "skl/errors.hpp"
#include "skl/kernel.hpp"
#include "skl/pointio.hpp"
#include "skl/volumes.hpp"

namespace skl::verify {

namespace {

using matkit::ComplexMatrix;
using matkit::RealMatrix;
using matkit::cplx;
using siegel::SiegelPoint;
using arithmetic::SymplecticInt;

using Rng = std::mt19937_64;

PropertyResult prop(const std::string& suite, const std::string& name, bool pass, double residual,
                    double threshold, const std::string& detail = "") {
  return PropertyResult{suite, name, pass, residual, threshold, detail};
}

RealMatrix random_matrix(int n, Rng& rng, double scale) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uni(rng);
  return m;
}

RealMatrix random_sym(int n, Rng& rng, double scale) {
  RealMatrix m = random_matrix(n, rng, scale);
  return 0.5 * (m + matkit::transpose(m));
}

RealMatrix random_spd(int n, Rng& rng) {
  const RealMatrix b = random_matrix(n, rng, 1.0);
  RealMatrix m = b * matkit::transpose(b);
  for (int i = 0; i < n; ++i) m(i, i) += 0.25 * n;
  return (1.0 / n) * m;
}

ComplexMatrix random_complex(int n, Rng& rng, double scale) {
  return ComplexMatrix::from_parts(random_matrix(n, rng, scale), random_matrix(n, rng, scale));
}

SiegelPoint random_point(int g, Rng& rng, double x_scale = 0.4) {
  return SiegelPoint(random_sym(g, rng, x_scale), random_spd(g, rng));
}

SymplecticInt random_word(int g, Rng& rng, int max_len) {
  const auto gens = enumeration::standard_generators(g);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
  std::uniform_int_distribution<int> len(1, max_len);
  SymplecticInt m = SymplecticInt::identity(g);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) m = m * gens[pick(rng)];
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- matkit --

std::vector<PropertyResult> suite_matkit(Rng& rng) {
  std::vector<PropertyResult> out;

  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_complex(4, rng, 1.0);
    const ComplexMatrix b = random_complex(4, rng, 1.0);
    const cplx lhs = matkit::det_complex(a * b);
    const cplx rhs = matkit::det_complex(a) * matkit::det_complex(b);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1e-30, std::abs(rhs)));
  }
  out.push_back(prop("matkit", "det-multiplicative", worst < 1e-9, worst, 1e-9,
                     "det(AB) vs det(A)det(B) on random complex 4x4 pairs"));

  double worst_sqrt = 0.0;
  bool eig_positive = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int g = 2 + trial % 3;
    const matkit::SpdMatrix m(random_spd(g, rng));
    const matkit::SpdMatrix r = matkit::spd_sqrt(m);
    const RealMatrix back = r.m() * r.m();
    double scale = 1.0;
    for (int i = 0; i < g; ++i) scale = std::max(scale, std::abs(m.m()(i, i)));
    worst_sqrt = std::max(worst_sqrt, matkit::max_abs(back - m.m()) / scale);
    const auto eig = matkit::eigen_sym(m.m());
    for (double v : eig.values) eig_positive = eig_positive && v > 0;
  }
  out.push_back(prop("matkit", "spd-sqrt-involution", worst_sqrt < 1e-9, worst_sqrt, 1e-9,
                     "spd_sqrt(m)^2 - m entrywise over 100 SPD draws, g in {2,3,4}"));
  out.push_back(prop("matkit", "spd-eigen-positive", eig_positive, eig_positive ? 0.0 : 1.0, 0.0,
                     "eigen_sym of accepted SPD matrices stays positive"));

  double worst_im = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 2;
    const RealMatrix s = random_sym(n, rng, 1.0);
    RealMatrix p = random_matrix(n, rng, 0.4);
    for (int i = 0; i < n; ++i) p(i, i) += 1.5;  // keep the conjugator well conditioned
    const ComplexMatrix pc = ComplexMatrix::from_parts(p, RealMatrix(n, n));
    const ComplexMatrix sc = ComplexMatrix::from_parts(s, RealMatrix(n, n));
    const ComplexMatrix a = pc * sc * matkit::inverse(pc);
    for (const cplx& ev : matkit::eigenvalues_complex(a))
      worst_im = std::max(worst_im, std::abs(ev.imag()));
  }
  out.push_back(prop("matkit", "real-spectrum-imaginary-part", worst_im < 1e-8, worst_im, 1e-8,
                     "eigenvalues of matrices similar to symmetric ones"));

  double worst_inv = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    ComplexMatrix a = random_complex(4, rng, 1.0);
    for (int i = 0; i < 4; ++i) a(i, i) += cplx(2.0, 0.0);
    const ComplexMatrix res = a * matkit::inverse(a) - ComplexMatrix::identity(4);
    worst_inv = std::max(worst_inv, matkit::frobenius(res));
  }
  out.push_back(prop("matkit", "inverse-residual", worst_inv < 1e-10, worst_inv, 1e-10,
                     "A A^{-1} - Id on diagonally shifted random complex matrices"));
  return out;
}

// ---------------------------------------------------------------- siegel --

std::vector<PropertyResult> suite_siegel(Rng& rng) {
  std::vector<PropertyResult> out;

  double worst_sym = 0.0, worst_inv = 0.0, worst_tri = 0.0, worst_spec = 0.0, worst_ident = 0.0,
         worst_detim = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int g = 2 + trial % 2;
    const SiegelPoint z = random_point(g, rng);
    const SiegelPoint w = random_point(g, rng);
    const SiegelPoint p = random_point(g, rng);

    worst_sym = std::max(worst_sym,
                         std::abs(siegel::distance(z, w) - siegel::distance(w, z)));
    worst_tri = std::max(worst_tri, siegel::distance(z, w) - siegel::distance(z, p) -
                                        siegel::distance(p, w));

    const siegel::SymplecticReal gamma = random_word(g, rng, 5).to_real();
    const SiegelPoint gz = siegel::act(gamma, z);
    const SiegelPoint gw = siegel::act(gamma, w);
    worst_inv = std::max(worst_inv,
                         std::abs(siegel::distance(gz, gw) - siegel::distance(z, w)));

    const auto s1 = siegel::spectrum(z, w);
    const auto s2 = siegel::spectrum(gz, gw);
    for (std::size_t j = 0; j < s1.rho.size(); ++j)
      worst_spec = std::max(worst_spec, std::abs(s1.rho[j] - s2.rho[j]));

    worst_ident = std::max(worst_ident, siegel::identity_residual(z, w));

    const RealMatrix den_re = gamma.c() * z.x() + gamma.d();
    const RealMatrix den_im = gamma.c() * z.y();
    const cplx det_den = matkit::det_complex(ComplexMatrix::from_parts(den_re, den_im));
    const double lhs = matkit::det_real(gz.y());
    const double rhs = matkit::det_real(z.y()) / std::norm(det_den);
    worst_detim = std::max(worst_detim, std::abs(lhs - rhs) / std::abs(rhs));
  }
  out.push_back(prop("siegel", "distance-symmetry", worst_sym < 1e-10, worst_sym, 1e-10,
                     "d(Z,W) vs d(W,Z)"));
  out.push_back(prop("siegel", "symplectic-invariance", worst_inv < 1e-8, worst_inv, 1e-8,
                     "d(gZ,gW) vs d(Z,W) for generator words"));
  out.push_back(prop("siegel", "triangle-inequality", worst_tri < 1e-8, worst_tri, 1e-8,
                     "d(Z,W) - d(Z,P) - d(P,W) over random triples"));
  out.push_back(prop("siegel", "spectrum-invariance", worst_spec < 1e-8, worst_spec, 1e-8,
                     "sorted cross-ratio eigenvalues under the action"));
  out.push_back(prop("siegel", "cross-ratio-identity", worst_ident < 1e-9, worst_ident, 1e-9,
                     "det(4YV)/|det(Z-conj W)|^2 vs prod cosh^{-2} r_j"));
  out.push_back(prop("siegel", "det-im-transform", worst_detim < 1e-9, worst_detim, 1e-9,
                     "det Im(gZ) vs det Im Z / |det(CZ+D)|^2"));

  // cosh x <= prod cosh x_j <= cosh^g(x/sqrt g) for sum x_j^2 = x^2.
  double worst_cosh = 0.0;
  std::uniform_real_distribution<double> uni(0.05, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int g = 2 + trial % 3;
    double sum_sq = 0.0;
    double prod = 1.0;
    for (int j = 0; j < g; ++j) {
      const double xj = uni(rng);
      sum_sq += xj * xj;
      prod *= std::cosh(xj);
    }
    const double x = std::sqrt(sum_sq);
    const double lo = std::cosh(x);
    const double hi = std::pow(std::cosh(x / std::sqrt(static_cast<double>(g))), g);
    worst_cosh = std::max(worst_cosh, (lo - prod) / prod);
    worst_cosh = std::max(worst_cosh, (prod - hi) / hi);
  }
  out.push_back(prop("siegel", "cosh-product-sandwich", worst_cosh < 1e-12, worst_cosh, 1e-12,
                     "cosh x <= prod cosh x_j <= cosh^g(x/sqrt g)"));

  // Closed-form ray distance doubles the parameter.
  double worst_ray = 0.0;
  for (double tpar : {0.3, 0.9, 1.7}) {
    const SiegelPoint z0 = SiegelPoint::unit_imaginary(2);
    const SiegelPoint wt = siegel::diagonal_ray(2, tpar);
    worst_ray = std::max(worst_ray, std::abs(siegel::distance(z0, wt) - 2.0 * tpar));
  }
  out.push_back(prop("siegel", "diagonal-ray-distance", worst_ray < 1e-9, worst_ray, 1e-9,
                     "d(i Id, ray(t)) = 2t in closed form"));
  return out;
}

// ------------------------------------------------------------ arithmetic --

std::vector<PropertyResult> suite_arithmetic(Rng& rng) {
  std::vector<PropertyResult> out;

  bool closure = true;
  try {
    for (int trial = 0; trial < 40; ++trial) {
      const int g = 2 + trial % 2;
      const SymplecticInt m = random_word(g, rng, 6) * random_word(g, rng, 6);
      arithmetic::certify_symplectic(m.full());
    }
  } catch (const Error&) {
    closure = false;
  }
  out.push_back(prop("arithmetic", "product-closure", closure, closure ? 0.0 : 1.0, 0.0,
                     "products of certified elements re-certify exactly"));

  double worst_det = 0.0;
  bool unimodular = true, certified = true;
  for (int trial = 0; trial < 25; ++trial) {
    const int g = 2 + trial % 2;
    const matkit::SpdMatrix y(random_spd(g, rng));
    const auto red = arithmetic::minkowski_reduce(y);
    const long long du = arithmetic::det_int(red.u);
    unimodular = unimodular && (du == 1 || du == -1);
    const double d0 = matkit::det_real(y.m());
    worst_det = std::max(worst_det, std::abs(matkit::det_real(red.reduced) - d0) / std::abs(d0));
    certified =
        certified && arithmetic::is_minkowski_reduced(red.reduced,
                                                      arithmetic::default_scan_bound(g))
                         .reduced;
  }
  out.push_back(prop("arithmetic", "reduction-det-preserved", worst_det < 1e-12 && unimodular,
                     worst_det, 1e-12, "det(U^T Y U) vs det Y, |det U| = 1"));
  out.push_back(prop("arithmetic", "reduction-certified", certified, certified ? 0.0 : 1.0, 0.0,
                     "minkowski_reduce output passes the scan certificate"));

  bool idempotent = true;
  std::string idem_detail;
  const auto cache = enumeration::standard_cache(2, 2);
  for (int trial = 0; trial < 8 && idempotent; ++trial) {
    SiegelPoint z(random_sym(2, rng, 1.5), random_spd(2, rng));
    const auto first = arithmetic::siegel_reduce(z, cache.elements);
    if (!first.complete) continue;  // cap hit: nothing to assert
    const auto second = arithmetic::siegel_reduce(first.z, cache.elements);
    if (!second.gamma.is_identity()) {
      idempotent = false;
      idem_detail = "second pass applied a nontrivial element";
    }
  }
  out.push_back(prop("arithmetic", "reduce-idempotent", idempotent, idempotent ? 0.0 : 1.0, 0.0,
                     idem_detail.empty() ? "reducing a reduced point is a no-op" : idem_detail));

  bool counts_ok = true;
  std::string count_detail;
  for (int g = 2; g <= 3 && counts_ok; ++g)
    for (long long b = 1; b <= 2; ++b) {
      const auto all = arithmetic::gamma_inf_all({g, 0, b});
      long long expect = 1;
      for (int i = 0; i < g * (g + 1) / 2; ++i) expect *= 2 * b + 1;
      expect -= 1;
      if (static_cast<long long>(all.size()) != expect) {
        counts_ok = false;
        count_detail = "g=" + std::to_string(g) + " b=" + std::to_string(b) + " got " +
                       std::to_string(all.size()) + " want " + std::to_string(expect);
      }
    }
  out.push_back(prop("arithmetic", "translation-family-count", counts_ok, counts_ok ? 0.0 : 1.0,
                     0.0,
                     count_detail.empty() ? "(2b+1)^{g(g+1)/2} - 1 stratum-0 elements"
                                          : count_detail));

  double worst_trans = 0.0;
  {
    const SiegelPoint z = random_point(2, rng);
    for (const auto& m : arithmetic::gamma_inf_all({2, 0, 1})) {
      const SiegelPoint gz = siegel::act(m.to_real(), z);
      worst_trans = std::max(worst_trans, matkit::max_abs(gz.y() - z.y()));
      const RealMatrix shift = gz.x() - z.x();
      worst_trans = std::max(worst_trans, matkit::max_abs(shift - m.b().to_real()));
    }
  }
  out.push_back(prop("arithmetic", "translation-semantics", worst_trans < 1e-12, worst_trans,
                     1e-12, "stratum-0 action is Z -> Z + S exactly"));
  return out;
}

// ----------------------------------------------------------- enumeration --

std::vector<PropertyResult> suite_enumeration(Rng& rng, int threads) {
  std::vector<PropertyResult> out;

  const auto cache2 = enumeration::standard_cache(2, 2);
  const auto cache3 = enumeration::standard_cache(2, 3);

  bool distinct = true;
  {
    std::vector<std::vector<long long>> keys;
    keys.reserve(cache3.elements.size());
    for (const auto& m : cache3.elements) keys.push_back(m.full().data());
    std::sort(keys.begin(), keys.end());
    distinct = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
  }
  out.push_back(prop("enumeration", "dedupe-exact", distinct, distinct ? 0.0 : 1.0, 0.0,
                     "no two cached elements coincide entrywise"));

  bool monotone = true;
  {
    std::vector<std::vector<long long>> big;
    big.reserve(cache3.elements.size());
    for (const auto& m : cache3.elements) big.push_back(m.full().data());
    std::sort(big.begin(), big.end());
    for (const auto& m : cache2.elements)
      if (!std::binary_search(big.begin(), big.end(), m.full().data())) monotone = false;
  }
  out.push_back(prop("enumeration", "word-length-monotone", monotone, monotone ? 0.0 : 1.0, 0.0,
                     "cache(L) is contained in cache(L+1)"));

  // Nearest orbit point for a Dirichlet-interior W is the untranslated one.
  double worst_dir = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const SiegelPoint z = SiegelPoint::unit_imaginary(2);
    SiegelPoint w(random_sym(2, rng, 0.05),
                  0.1 * random_spd(2, rng) + 0.95 * RealMatrix::identity(2));
    const double base = siegel::distance(z, w);
    for (const auto& m : cache3.elements) {
      const double moved = siegel::distance(z, siegel::act(m.to_real(), w));
      worst_dir = std::max(worst_dir, base - moved - 1e-9);
    }
  }
  out.push_back(prop("enumeration", "dirichlet-nearest", worst_dir <= 0.0, worst_dir, 0.0,
                     "d(Z,W) <= d(Z, gW) over the cache for interior W"));

  // Ball-packing count bound with window-consistent injectivity radius.
  bool lemma_ok = true;
  std::string lemma_detail;
  try {
    const SiegelPoint z = SiegelPoint::unit_imaginary(2);
    const SiegelPoint w(random_sym(2, rng, 0.08),
                        0.12 * random_spd(2, rng) + 0.93 * RealMatrix::identity(2));
    const auto cache4 = enumeration::standard_cache(2, 4);
    const SiegelPoint samples[] = {w};
    const auto inj = enumeration::injectivity_radius_estimate(cache4, samples,
                                                              enumeration::CountMode::cocompact,
                                                              threads);
    if (inj.skipped_fixed != 0) {
      lemma_ok = false;
      lemma_detail = "sample has cached stabilizer, packing premise void";
    } else {
      const double rhat = inj.radius;
      const double rho0 = std::max(2.0 * rhat, rhat + 0.4);
      const auto disps = enumeration::class_displacements(cache2, z, w,
                                                          enumeration::CountMode::cocompact,
                                                          threads);
      auto count_below = [&](double rho) {
        return static_cast<double>(std::lower_bound(disps.begin(), disps.end(), rho) -
                                   disps.begin());
      };
      const double inv2s2 = 1.0 / (2.0 * std::sqrt(2.0));
      for (double rho : {rho0 + 0.6, rho0 + 1.2}) {
        const double n_rho = count_below(rho);
        const double n_rho0 = count_below(rho0);
        const auto ball_small = volumes::ball_volume(2, rhat, 200'000, 7);
        const auto ball_inner = volumes::ball_volume(2, rho0 - rhat, 200'000, 11);
        const double disk = volumes::polydisk_volume(2, (rho + rhat) * inv2s2);
        // Monte Carlo slack enters with the sign that only loosens the
        // bound, so noise cannot produce a false failure.
        const double numer = disk - std::max(0.0, ball_inner.value - 3.0 * ball_inner.std_error);
        const double denom = ball_small.value - 3.0 * ball_small.std_error;
        if (denom <= 0) throw DomainError("ball volume lost its signal");
        const double rhs = n_rho0 + numer / denom;
        if (n_rho > rhs) {
          lemma_ok = false;
          lemma_detail = "N(" + fmt(rho) + ") = " + fmt(n_rho) + " exceeds bound " + fmt(rhs);
        }
      }
    }
  } catch (const Error& err) {
    lemma_ok = false;
    lemma_detail = err.what();
  }
  out.push_back(prop("enumeration", "packing-count-bound", lemma_ok, lemma_ok ? 0.0 : 1.0, 0.0,
                     lemma_detail.empty() ? "windowed N(rho) against the annulus volume bound"
                                          : lemma_detail));
  return out;
}

// --------------------------------------------------------------- volumes --

std::vector<PropertyResult> suite_volumes(Rng& rng) {
  std::vector<PropertyResult> out;

  double worst_route = 0.0;
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const double quad = volumes::polydisk_volume(2, r);
    const double closed = volumes::polydisk_volume_g2_exact(r).total;
    worst_route = std::max(worst_route, std::abs(quad - closed) / std::abs(closed));
  }
  out.push_back(prop("volumes", "g2-closed-form-route", worst_route < 1e-8, worst_route, 1e-8,
                     "tensor quadrature vs antiderivative total on r in {0.25,...,2}"));

  for (int g = 2; g <= 3; ++g) {
    const std::vector<double> grid = {0.5, 1.0, 1.5, 2.0, 2.5};
    std::vector<double> ratio;
    bool finite = true;
    double sup = 0.0;
    std::size_t arg_sup = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = volumes::polydisk_volume(g, grid[i]);
      const double b = volumes::polydisk_volume_bound(g, grid[i]);
      ratio.push_back(v / b);
      if (!(ratio.back() > 0) || !std::isfinite(ratio.back())) finite = false;
      if (ratio.back() > sup) {
        sup = ratio.back();
        arg_sup = i;
      }
    }
    // The fitted constant is the sup of the ratio. Shape correctness means
    // the sup sits in the stabilized regime and refitting on the two
    // largest grid points moves it by less than a factor of two. The small-r
    // end cannot enter: the ratio scales like r^{2g^2-2} there.
    const double drift = sup / std::min(ratio[3], ratio[4]);
    const bool pass = finite && grid[arg_sup] >= 1.5 && drift < 2.0;
    out.push_back(prop("volumes", "growth-bound-constant-stable-g" + std::to_string(g), pass,
                       drift, 2.0,
                       "fitted constant " + fmt(sup) + " at r=" + fmt(grid[arg_sup]) +
                           ", refit drift across the top grid points " + fmt(drift)));
  }

  double worst_perm = 0.0;
  {
    std::uniform_real_distribution<double> uni(0.05, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
      const int g = 2 + trial % 3;
      std::vector<double> radii(g);
      for (double& v : radii) v = uni(rng);
      const double base = volumes::polar_density(radii);
      std::vector<double> shuffled = radii;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const double other = volumes::polar_density(shuffled);
      worst_perm = std::max(worst_perm, std::abs(base - other) / std::max(1e-300, base));
    }
  }
  out.push_back(prop("volumes", "polar-density-symmetric", worst_perm < 1e-12, worst_perm, 1e-12,
                     "density invariant under radius permutations"));

  double worst_diff = 0.0;
  for (int g = 2; g <= 3; ++g)
    for (double r = 0.2; r <= 3.0; r += 0.2) {
      const double ch = std::cosh(r), sh = std::sinh(r);
      const double lhs = (g * g - 2) * std::pow(ch, g * g - 3) * std::pow(sh, g + 3) +
                         (g + 2) * std::pow(ch, g * g - 1) * std::pow(sh, g + 1);
      const double rhs = (g * g + g) * std::pow(ch, g * g - 1) * std::pow(sh, g + 1);
      worst_diff = std::max(worst_diff, (lhs - rhs) / rhs);
    }
  out.push_back(prop("volumes", "growth-derivative-bound", worst_diff <= 1e-12, worst_diff, 1e-12,
                     "d/dr of the growth bound against (g^2+g) cosh^{g^2-1} sinh^{g+1}"));

  double worst_collapse = 0.0;
  for (int k = 2; k <= 20; ++k) {
    const double v = volumes::hua_beta(1, k) *
                     std::exp(volumes::log_gamma(k) - volumes::log_gamma(k - 0.5));
    worst_collapse = std::max(worst_collapse, std::abs(v - std::sqrt(M_PI)) / std::sqrt(M_PI));
  }
  out.push_back(prop("volumes", "g1-collapse-identity", worst_collapse < 1e-12, worst_collapse,
                     1e-12, "hua(1,k) Gamma(k)/Gamma(k-1/2) = sqrt(pi)"));

  bool mono_ok = true;
  for (int k : {0, 1, 3}) {
    const auto mi = volumes::sinh2_cosh2k_integral(1.3, k);
    mono_ok = mono_ok && mi.bound_holds;
  }
  out.push_back(prop("volumes", "monotone-integral-bound", mono_ok, mono_ok ? 0.0 : 1.0, 0.0,
                     "2 int sinh^2 cosh^{2k} <= sinh^3 cosh^{2k-1} + sinh cosh"));
  return out;
}

// ---------------------------------------------------------------- kernel --

std::vector<PropertyResult> suite_kernel(Rng& rng, int threads) {
  std::vector<PropertyResult> out;
  const auto cache = enumeration::standard_cache(2, 2);

  double worst_tri = 0.0, worst_sym = 0.0;
  const kernel::KernelParams params{2, 6, 1.0};
  for (int trial = 0; trial < 6; ++trial) {
    const SiegelPoint z = random_point(2, rng, 0.3);
    const SiegelPoint w = random_point(2, rng, 0.3);
    const double tn = kernel::truncated_norm(params, z, w, cache.elements,
                                             kernel::SumMode::kahan, threads);
    const double mj = kernel::majorant_sum(params, z, w, cache.elements,
                                           kernel::SumMode::kahan, threads);
    worst_tri = std::max(worst_tri, (tn - mj) / mj);
    const double mj_swapped = kernel::majorant_sum(params, w, z, cache.elements,
                                                   kernel::SumMode::kahan, threads);
    worst_sym = std::max(worst_sym, std::abs(mj - mj_swapped) / mj);
  }
  out.push_back(prop("kernel", "truncated-below-majorant", worst_tri <= 1e-9, worst_tri, 1e-9,
                     "normed truncation never exceeds the positive majorant"));
  out.push_back(prop("kernel", "majorant-symmetry", worst_sym < 1e-9, worst_sym, 1e-9,
                     "majorant under (Z,W) swap on an inverse-closed window"));

  // Decay along the diagonal ray: measured log-log slope against the
  // envelope exponent.
  double slope = 0.0;
  {
    const SiegelPoint z = SiegelPoint::unit_imaginary(2);
    const double t1 = 1.4, t2 = 2.4;  // distances 2.8 and 4.8
    const double m1 = kernel::majorant_sum(params, z, siegel::diagonal_ray(2, t1),
                                           cache.elements, kernel::SumMode::kahan, threads);
    const double m2 = kernel::majorant_sum(params, z, siegel::diagonal_ray(2, t2),
                                           cache.elements, kernel::SumMode::kahan, threads);
    const double c = 1.0 / (2.0 * std::sqrt(2.0));
    const double x1 = volumes::log_cosh(2.0 * t1 * c);
    const double x2 = volumes::log_cosh(2.0 * t2 * c);
    slope = (std::log(m2) - std::log(m1)) / (x2 - x1);
  }
  const double slope_cap = -(params.weight() - params.g * params.g - params.g) + 0.5;
  out.push_back(prop("kernel", "ray-decay-slope", slope <= slope_cap, slope, slope_cap,
                     "log majorant vs log cosh(d/2sqrt2) along the ray"));

  double worst_id = 0.0;
  {
    const std::vector<SymplecticInt> only_id = {SymplecticInt::identity(2)};
    for (int trial = 0; trial < 5; ++trial) {
      const SiegelPoint z = random_point(2, rng, 0.3);
      const SiegelPoint w = random_point(2, rng, 0.3);
      const double tn = kernel::truncated_norm(params, z, w, only_id);
      const auto sp = siegel::spectrum(z, w);
      double expect = 1.0;
      for (double r : sp.radii) expect *= std::pow(std::cosh(r), -params.weight());
      worst_id = std::max(worst_id, std::abs(tn - expect) / expect);
    }
  }
  out.push_back(prop("kernel", "identity-window-collapse", worst_id < 1e-12, worst_id, 1e-12,
                     "single-element window equals the cosh-product form"));

  // Translation-family partial sums against the height term.
  bool tail_ok = true;
  std::string tail_detail;
  try {
    const kernel::KernelParams tp{2, 4, 1.0};
    const SiegelPoint z = SiegelPoint::unit_imaginary(2);
    const SiegelPoint w(RealMatrix(2, 2), 2.0 * RealMatrix::identity(2));
    const double first_term = kernel::cusp_envelope(tp, z, w).first;
    std::vector<double> ratio;
    for (long long b : {3LL, 4LL, 5LL}) {
      double sum = 0.0;
      for (const auto& m : arithmetic::gamma_inf_all({2, 0, b}))
        sum += std::exp(kernel::log_majorant_term(tp, z, w, m));
      ratio.push_back(sum / first_term);
    }
    if (!(ratio[0] <= ratio[1] && ratio[1] <= ratio[2])) {
      tail_ok = false;
      tail_detail = "partial sums not monotone in the bound";
    } else if (std::abs(ratio[2] - ratio[0]) > 0.10 * ratio[2]) {
      tail_ok = false;
      tail_detail = "ratio drift " + fmt(std::abs(ratio[2] - ratio[0]) / ratio[2]) +
                    " exceeds 10% from b=3 to b=5";
    }
  } catch (const Error& err) {
    tail_ok = false;
    tail_detail = err.what();
  }
  out.push_back(prop("kernel", "translation-tail-ratio", tail_ok, tail_ok ? 0.0 : 1.0, 0.0,
                     tail_detail.empty() ? "partial translation sums stabilize under the height term"
                                         : tail_detail));
  return out;
}

// ------------------------------------------------------------------- hua --

std::vector<PropertyResult> suite_hua() {
  std::vector<PropertyResult> out;

  const double a1 = std::abs(volumes::hua_beta(1, 1) - M_PI) / M_PI;
  out.push_back(prop("hua", "anchor-g1-k1", a1 < 1e-12, a1, 1e-12, "hua(1,1) = pi"));

  // Frozen from the build-time agreement of the gamma-ratio route and the
  // ordered-eigenvalue quadrature route (both match to ~1e-15).
  const double kHua22 = 1.3493599767114381;
  const double a2 = std::abs(volumes::hua_beta(2, 2) - kHua22) / kHua22;
  out.push_back(prop("hua", "anchor-g2-k2", a2 < 1e-12, a2, 1e-12,
                     "hua(2,2) against the frozen dual-route value"));

  // Independent route, g = 1: int (1+t^2)^{-k} dt = int cos^{2k-2} theta dtheta.
  double worst_q1 = 0.0;
  for (int k : {2, 3, 5, 8}) {
    const double quad = volumes::integrate_1d(
        [k](double th) { return std::pow(std::cos(th), 2 * k - 2); }, -M_PI / 2, M_PI / 2, 128);
    worst_q1 = std::max(worst_q1,
                        std::abs(quad - volumes::hua_beta(1, k)) / volumes::hua_beta(1, k));
  }
  out.push_back(prop("hua", "quadrature-route-g1", worst_q1 < 1e-10, worst_q1, 1e-10,
                     "tangent-substitution quadrature vs the gamma-ratio form"));

  // Independent route, g = 2, k = 2 (s = 3): eigenvalue coordinates give
  // pi * int_{th1 > th2} (tan th1 - tan th2) cos^{2s-2} th1 cos^{2s-2} th2.
  {
    const int s = 3;
    const auto gl = volumes::gauss_legendre(96);
    double total = 0.0;
    for (int i = 0; i < 96; ++i) {
      const double th1 = 0.5 * M_PI * gl.nodes[i];
      const double w1 = 0.5 * M_PI * gl.weights[i];
      const double lo = -0.5 * M_PI;
      const double mid = 0.5 * (lo + th1), rad = 0.5 * (th1 - lo);
      double inner = 0.0;
      for (int j = 0; j < 96; ++j) {
        const double th2 = mid + rad * gl.nodes[j];
        inner += rad * gl.weights[j] * (std::tan(th1) - std::tan(th2)) *
                 std::pow(std::cos(th2), 2 * s - 2);
      }
      total += w1 * inner * std::pow(std::cos(th1), 2 * s - 2);
    }
    const double route = M_PI * total;
    const double ref = volumes::hua_beta(2, 2);
    const double err = std::abs(route - ref) / ref;
    out.push_back(prop("hua", "quadrature-route-g2", err < 1e-6, err, 1e-6,
                       "ordered-eigenvalue double quadrature vs the gamma-ratio form"));
  }

  // Normalized ratios approach their limits from the coarse side.
  {
    const int ks[] = {200, 2000};
    const auto r1 = volumes::hua_asymptotic_ratio(1, ks);
    const double lim1 = std::sqrt(M_PI);
    const bool ok1 = std::abs(r1[1] - lim1) < 1e-3 * lim1 &&
                     std::abs(r1[1] - lim1) < std::abs(r1[0] - lim1);
    out.push_back(prop("hua", "asymptotic-limit-g1", ok1, std::abs(r1[1] - lim1) / lim1, 1e-3,
                       "k^{1/2}-normalized ratio approaches sqrt(pi)"));

    const auto r2 = volumes::hua_asymptotic_ratio(2, ks);
    const double lim2 = 2.0 * std::pow(M_PI, 1.5) / (3.0 * std::sqrt(3.0));
    const bool ok2 = std::abs(r2[1] - lim2) < 2e-2 * lim2 &&
                     std::abs(r2[1] - lim2) < std::abs(r2[0] - lim2);
    out.push_back(prop("hua", "asymptotic-limit-g2", ok2, std::abs(r2[1] - lim2) / lim2, 2e-2,
                       "k^{3/2}-normalized ratio approaches 2 pi^{3/2}/(3 sqrt 3)"));
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"matkit", "siegel", "arithmetic", "enumeration", "volumes", "kernel", "hua"};
}

std::vector<PropertyResult> run_suite(const std::string& suite, unsigned long long seed,
                                      int threads) {
  Rng rng(seed);
  std::vector<PropertyResult> out;
  auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
  bool known = suite == "all";
  for (const auto& s : suite_names()) known = known || s == suite;
  if (!known) throw ParameterError("unknown verification suite: " + suite);

  if (want("matkit")) {
    auto v = suite_matkit(rng);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (want("siegel")) {
    auto v = suite_siegel(rng);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (want("arithmetic")) {
    auto v = suite_arithmetic(rng);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (want("enumeration")) {
    auto v = suite_enumeration(rng, threads);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (want("volumes")) {
    auto v = suite_volumes(rng);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (want("kernel")) {
    auto v = suite_kernel(rng, threads);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (want("hua")) {
    auto v = suite_hua();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace skl::verify

#include "skl/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "skl/errors.hpp"
#include "skl/parallel.hpp"

namespace skl::volumes {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw ParameterError("quadrature order must be positive");
  GaussLegendre gl;
  gl.nodes.assign(n, 0.0);
  gl.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussLegendre gl = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double rad = 0.5 * (b - a);
  double acc = 0.0, comp = 0.0;
  for (int i = 0; i < n; ++i) {
    const double term = gl.weights[i] * f(mid + rad * gl.nodes[i]) - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  return acc * rad;
}

double polar_density(std::span<const double> radii) {
  const int g = static_cast<int>(radii.size());
  double d = 1.0;
  for (int j = 0; j < g; ++j) {
    const double s = std::sinh(radii[j]);
    d *= s * s;
  }
  for (int j = 0; j < g; ++j)
    for (int k = j + 1; k < g; ++k) {
      const double sm = std::sinh(0.5 * (radii[j] - radii[k]));
      const double sp = std::sinh(0.5 * (radii[j] + radii[k]));
      d *= sm * sm * sp * sp;
    }
  return d;
}

namespace {

// Tensor-product integral of the radial density over [0, r]^g. Pair factors
// sinh((a +- b)/2) expand through half-angle tables, so no transcendental
// evaluations happen inside the tuple loop.
double polydisk_pass(int g, double r, int n) {
  const GaussLegendre gl = gauss_legendre(n);
  std::vector<double> x(n), w(n), sh(n), sh2(n), ch2(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * r * (gl.nodes[i] + 1.0);
    w[i] = 0.5 * r * gl.weights[i];
    sh[i] = std::sinh(x[i]);
    sh2[i] = std::sinh(0.5 * x[i]);
    ch2[i] = std::cosh(0.5 * x[i]);
  }
  std::vector<int> idx(g, 0);
  double acc = 0.0, comp = 0.0;
  while (true) {
    double f = 1.0;
    for (int j = 0; j < g; ++j) {
      const double s = sh[idx[j]];
      f *= w[idx[j]] * s * s;
    }
    for (int j = 0; j < g; ++j)
      for (int k = j + 1; k < g; ++k) {
        const int a = idx[j], b = idx[k];
        const double minus = sh2[a] * ch2[b] - ch2[a] * sh2[b];
        const double plus = sh2[a] * ch2[b] + ch2[a] * sh2[b];
        f *= minus * minus * plus * plus;
      }
    const double term = f - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;

    int axis = g - 1;
    while (axis >= 0 && ++idx[axis] == n) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return std::ldexp(acc, g);  // angular factor 2^g
}

}  // namespace

double polydisk_volume(int g, double r, const QuadratureSpec& spec) {
  if (g < 1 || g > 4) throw ParameterError("radial volume supports 1 <= g <= 4");
  if (!(r > 0)) throw DomainError("radius must be positive");
  if (spec.nodes < 2) throw ParameterError("quadrature spec needs at least 2 nodes");
  int n = spec.nodes;
  double prev = polydisk_pass(g, r, n);
  for (int d = 0; d < spec.max_doublings; ++d) {
    n *= 2;
    const double cur = polydisk_pass(g, r, n);
    if (std::abs(cur - prev) <= spec.rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw ConvergenceError("tensor quadrature did not settle: last passes gave " +
                         std::to_string(prev) + " and successor disagreeing beyond tolerance");
}

PolydiskG2 polydisk_volume_g2_exact(double r) {
  if (!(r >= 0)) throw DomainError("radius must be nonnegative");
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  const double shch = sh * ch;
  const double sh3ch = sh * sh * sh * ch;
  PolydiskG2 out;
  out.i1 = (1.0 / 48.0) * (shch - r) * (6.0 * sh3ch + 3.0 * shch - 3.0 * r);
  out.i2 = out.i1;
  out.i3 = std::pow(sh, 6) / 9.0;
  out.total = out.i1 + out.i2 - 2.0 * out.i3;
  return out;
}

double polydisk_volume_bound_g2(double r) {
  if (!(r >= 0)) throw DomainError("radius must be nonnegative");
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  return 32.0 * ch * ch * sh * sh * sh * sh;
}

double polydisk_volume_bound(int g, double r) {
  if (g < 1) throw ParameterError("genus must be positive");
  if (!(r >= 0)) throw DomainError("radius must be nonnegative");
  return std::pow(std::cosh(r), g * g - 2) * std::pow(std::sinh(r), g + 2);
}

BallVolume ball_volume(int g, double r, std::size_t samples, unsigned long long seed,
                       int threads) {
  if (g < 1) throw ParameterError("genus must be positive");
  if (!(r > 0)) throw DomainError("radius must be positive");
  if (samples < 10'000) throw ParameterError("at least 1e4 samples are required");

  const double cap = r / (2.0 * std::sqrt(2.0));
  const double box = std::pow(cap, g) * std::ldexp(1.0, g);  // orthant box times 2^g

  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t hits = 0;
  };
  constexpr std::size_t kChunk = 4096;
  auto partials =
      par::map_chunks<Partial>(samples, kChunk, threads, [&](std::size_t b, std::size_t e) {
        // Chunk-indexed stream keeps the estimate identical for any
        // thread count.
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + b / kChunk + 1);
        std::uniform_real_distribution<double> uni(0.0, cap);
        Partial p;
        std::vector<double> rad(g);
        for (std::size_t i = b; i < e; ++i) {
          double norm_sq = 0.0;
          for (int j = 0; j < g; ++j) {
            rad[j] = uni(rng);
            norm_sq += rad[j] * rad[j];
          }
          double f = 0.0;
          if (norm_sq < cap * cap) {
            f = polar_density(rad);
            ++p.hits;
          }
          p.sum += f;
          p.sum_sq += f * f;
        }
        return p;
      });

  double sum = 0.0, sum_sq = 0.0;
  BallVolume out{};
  out.samples = samples;
  for (const auto& p : partials) {
    sum += p.sum;
    sum_sq += p.sum_sq;
    out.hits += p.hits;
  }
  if (out.hits == 0) throw DomainError("degenerate estimate: no sample fell inside the ball");
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  out.value = box * mean;
  out.std_error = box * std::sqrt(var / n);
  return out;
}

double elem_sym(std::span<const double> values, int k) {
  if (k < 0) throw ParameterError("elementary symmetric index must be nonnegative");
  const int n = static_cast<int>(values.size());
  if (k > n) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += values[i] * e[j - 1];
  return e[k];
}

MonotoneIntegral sinh2_cosh2k_integral(double r, int k) {
  if (!(r >= 0)) throw DomainError("radius must be nonnegative");
  if (k < 0) throw ParameterError("cosh exponent must be nonnegative");
  MonotoneIntegral out{};
  auto f = [k](double t) {
    const double s = std::sinh(t);
    return s * s * std::pow(std::cosh(t), 2 * k);
  };
  int n = 64;
  double prev = integrate_1d(f, 0.0, r, n);
  bool settled = false;
  for (int d = 0; d < 3; ++d) {
    n *= 2;
    const double cur = integrate_1d(f, 0.0, r, n);
    if (std::abs(cur - prev) <= 1e-12 * std::max(1e-300, std::abs(cur))) {
      prev = cur;
      settled = true;
      break;
    }
    prev = cur;
  }
  if (!settled && r > 0)
    throw ConvergenceError("monotone integral quadrature did not settle at r = " +
                           std::to_string(r));
  out.value = prev;
  const double sh = std::sinh(r), ch = std::cosh(r);
  out.bound_rhs = sh * sh * sh * std::pow(ch, 2 * k - 1) + sh * ch;
  out.bound_holds = 2.0 * out.value <= out.bound_rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

double log_gamma(double x) {
  if (!(x > 0)) throw DomainError("log gamma requires a positive argument");
  static const double c[15] = {
      0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
      0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
      -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
      0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};
  double series = c[0];
  for (int i = 1; i < 15; ++i) series += c[i] / (x - 1.0 + i);
  const double t = x + 607.0 / 128.0 - 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(series);
}

double hua_beta(int g, int k) {
  if (g < 1) throw ParameterError("genus must be positive");
  if (k < 1) throw ParameterError("weight index must be positive");
  const double w = static_cast<double>(k) * (g + 1);
  double lg = 0.25 * g * (g + 1) * std::log(M_PI);
  lg += log_gamma(0.5 * w - 0.5 * g) - log_gamma(0.5 * w);
  for (int j = 1; j <= g - 1; ++j)
    lg += log_gamma(w - 0.5 * (g + j)) - log_gamma(w - static_cast<double>(j));
  return std::exp(lg);
}

std::vector<double> hua_asymptotic_ratio(int g, std::span<const int> ks) {
  std::vector<double> out;
  out.reserve(ks.size());
  for (int k : ks)
    out.push_back(hua_beta(g, k) * std::pow(static_cast<double>(k), 0.25 * g * (g + 1)));
  return out;
}

TailIntegral tail_integral(const std::function<double(double)>& log_f, double a,
                           double panel_width, double rel_floor, int node_count) {
  if (!(panel_width > 0)) throw ParameterError("panel width must be positive");
  if (rel_floor <= 0) throw ParameterError("relative floor must be positive");
  const GaussLegendre gl = gauss_legendre(node_count);
  double ref = -std::numeric_limits<double>::infinity();
  double acc = 0.0;  // integral relative to exp(ref)
  TailIntegral out{-std::numeric_limits<double>::infinity(), 0};
  constexpr int kMaxPanels = 200'000;
  for (int p = 0; p < kMaxPanels; ++p) {
    const double lo = a + p * panel_width;
    const double mid = lo + 0.5 * panel_width;
    double panel = 0.0;
    for (int i = 0; i < node_count; ++i) {
      const double xv = mid + 0.5 * panel_width * gl.nodes[i];
      const double lv = log_f(xv);
      if (!std::isfinite(lv)) {
        if (lv > 0) throw RangeError("tail integrand overflows", lv);
        continue;  // -inf contributes nothing
      }
      if (lv > ref) {
        const double scale = std::exp(ref - lv);
        acc *= scale;
        panel *= scale;
        ref = lv;
      }
      panel += 0.5 * panel_width * gl.weights[i] * std::exp(lv - ref);
    }
    acc += panel;
    out.panels = p + 1;
    if (p >= 1 && panel <= rel_floor * acc) {
      out.log_value = acc > 0 ? ref + std::log(acc) : -std::numeric_limits<double>::infinity();
      return out;
    }
  }
  throw ConvergenceError("tail integral did not converge within the panel cap");
}

double log_cosh(double x) {
  if (x == 0) return 0.0;
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

double log_sinh(double x) {
  if (x < 0) throw DomainError("log sinh requires a nonnegative argument");
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

}  // namespace skl::volumes

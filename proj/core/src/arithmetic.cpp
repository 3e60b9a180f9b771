#include "skl/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "skl/errors.hpp"

namespace skl::arithmetic {

namespace {

long long checked_narrow(__int128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
    throw RangeError(std::string("integer overflow in ") + what,
                     static_cast<double>(v > 0 ? 1.0 : -1.0) * 127.0);
  }
  return static_cast<long long>(v);
}

}  // namespace

IntMatrix::IntMatrix(int rows, int cols, std::initializer_list<long long> entries)
    : IntMatrix(rows, cols) {
  if (static_cast<size_t>(rows) * cols != entries.size())
    throw DimensionError("entry count does not match dimensions");
  std::copy(entries.begin(), entries.end(), a_.begin());
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RealMatrix IntMatrix::to_real() const {
  RealMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = static_cast<double>((*this)(i, j));
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("integer product shape mismatch");
  IntMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      __int128 acc = 0;
      for (int k = 0; k < a.cols(); ++k)
        acc += static_cast<__int128>(a(i, k)) * static_cast<__int128>(b(k, j));
      r(i, j) = checked_narrow(acc, "matrix product");
    }
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("integer sum shape mismatch");
  IntMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r(i, j) = checked_narrow(static_cast<__int128>(a(i, j)) + b(i, j), "matrix sum");
  return r;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

long long det_int(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant needs a square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination; exact for the entry sizes used here.
  std::vector<__int128> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = m(i, j);
  auto at = [&](int i, int j) -> __int128& { return a[static_cast<size_t>(i) * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return checked_narrow(sign * at(n - 1, n - 1), "determinant");
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("inverse needs a square matrix");
  const int n = u.rows();
  const long long det = det_int(u);
  if (det != 1 && det != -1)
    throw PreconditionError("matrix is not unimodular (determinant " + std::to_string(det) + ")");
  IntMatrix inv(n, n);
  if (n == 1) {
    inv(0, 0) = det;
    return inv;
  }
  IntMatrix minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = u(r, c);
          ++cc;
        }
        ++rr;
      }
      const long long cof = (((i + j) % 2 == 0) ? 1 : -1) * det_int(minor);
      inv(j, i) = det * cof;  // adjugate transposes the cofactor grid
    }
  return inv;
}

SymplecticInt SymplecticInt::identity(int g) {
  SymplecticInt m;
  m.a_ = IntMatrix::identity(g);
  m.b_ = IntMatrix(g, g);
  m.c_ = IntMatrix(g, g);
  m.d_ = IntMatrix::identity(g);
  return m;
}

SymplecticInt SymplecticInt::involution(int g) {
  SymplecticInt m;
  m.a_ = IntMatrix(g, g);
  m.b_ = -IntMatrix::identity(g);
  m.c_ = IntMatrix::identity(g);
  m.d_ = IntMatrix(g, g);
  return m;
}

SymplecticInt SymplecticInt::translation(const IntMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionError("translation block must be square");
  if (s != transpose(s)) throw PreconditionError("translation block must be symmetric");
  SymplecticInt m = identity(s.rows());
  m.b_ = s;
  return m;
}

SymplecticInt SymplecticInt::basis_change(const IntMatrix& u) {
  SymplecticInt m;
  m.a_ = transpose(u);
  m.b_ = IntMatrix(u.rows(), u.rows());
  m.c_ = IntMatrix(u.rows(), u.rows());
  m.d_ = unimodular_inverse(u);
  return m;
}

SymplecticInt SymplecticInt::from_blocks(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d) {
  const int g = a.rows();
  if (a.cols() != g || b.rows() != g || b.cols() != g || c.rows() != g || c.cols() != g ||
      d.rows() != g || d.cols() != g)
    throw DimensionError("blocks must be square with equal size");
  SymplecticInt m;
  m.a_ = std::move(a);
  m.b_ = std::move(b);
  m.c_ = std::move(c);
  m.d_ = std::move(d);
  return certify_symplectic(m.full());
}

IntMatrix SymplecticInt::full() const {
  const int g = a_.rows();
  IntMatrix m(2 * g, 2 * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      m(i, j) = a_(i, j);
      m(i, j + g) = b_(i, j);
      m(i + g, j) = c_(i, j);
      m(i + g, j + g) = d_(i, j);
    }
  return m;
}

SymplecticInt SymplecticInt::inverse() const {
  SymplecticInt m;
  m.a_ = transpose(d_);
  m.b_ = -transpose(b_);
  m.c_ = -transpose(c_);
  m.d_ = transpose(a_);
  return m;
}

bool SymplecticInt::is_identity() const {
  const int g = a_.rows();
  return a_ == IntMatrix::identity(g) && b_ == IntMatrix(g, g) && c_ == IntMatrix(g, g) &&
         d_ == IntMatrix::identity(g);
}

SymplecticInt SymplecticInt::canonical_sign() const {
  const IntMatrix f = full();
  for (long long v : f.data()) {
    if (v > 0) return *this;
    if (v < 0) {
      SymplecticInt m;
      m.a_ = -a_;
      m.b_ = -b_;
      m.c_ = -c_;
      m.d_ = -d_;
      return m;
    }
  }
  return *this;
}

siegel::SymplecticReal SymplecticInt::to_real() const {
  return siegel::SymplecticReal(a_.to_real(), b_.to_real(), c_.to_real(), d_.to_real());
}

SymplecticInt operator*(const SymplecticInt& m1, const SymplecticInt& m2) {
  if (m1.g() != m2.g()) throw DimensionError("symplectic product size mismatch");
  SymplecticInt r = SymplecticInt::identity(m1.g());
  // Certified inputs give a certified product; assemble blocks directly.
  IntMatrix a = m1.a() * m2.a() + m1.b() * m2.c();
  IntMatrix b = m1.a() * m2.b() + m1.b() * m2.d();
  IntMatrix c = m1.c() * m2.a() + m1.d() * m2.c();
  IntMatrix d = m1.c() * m2.b() + m1.d() * m2.d();
  return SymplecticInt::from_blocks(std::move(a), std::move(b), std::move(c), std::move(d));
}

std::optional<SymplecticDefect> symplectic_defect(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw DimensionError("symplectic candidate must be square of even size");
  const int g = m.rows() / 2;
  // Entry (i, j) of M^T J M = sum_k (M(k+g, i) M(k, j) - M(k, i) M(k+g, j)).
  for (int i = 0; i < 2 * g; ++i)
    for (int j = 0; j < 2 * g; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < g; ++k)
        acc += static_cast<__int128>(m(k + g, i)) * m(k, j) -
               static_cast<__int128>(m(k, i)) * m(k + g, j);
      __int128 want = 0;
      if (j == i + g) want = -1;
      if (i == j + g) want = 1;
      if (acc != want)
        return SymplecticDefect{i, j, checked_narrow(acc - want, "symplectic defect")};
    }
  return std::nullopt;
}

SymplecticInt certify_symplectic(const IntMatrix& m) {
  if (auto defect = symplectic_defect(m)) {
    throw CertifyError("symplectic relation fails at entry (" + std::to_string(defect->row) +
                           ", " + std::to_string(defect->col) + ") with defect " +
                           std::to_string(defect->value),
                       defect->row, defect->col, defect->value);
  }
  const int g = m.rows() / 2;
  SymplecticInt r;
  r.a_ = IntMatrix(g, g);
  r.b_ = IntMatrix(g, g);
  r.c_ = IntMatrix(g, g);
  r.d_ = IntMatrix(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      r.a_(i, j) = m(i, j);
      r.b_(i, j) = m(i, j + g);
      r.c_(i, j) = m(i + g, j);
      r.d_(i, j) = m(i + g, j + g);
    }
  return r;
}

int default_scan_bound(int g) { return g <= 3 ? 2 : 3; }

namespace {

double quad_form(const RealMatrix& y, const std::vector<long long>& h) {
  const int n = y.rows();
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    if (h[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      q += static_cast<double>(h[i]) * static_cast<double>(h[j]) * y(i, j);
  }
  return q;
}

// Steps h through the box [-b, b]^n skipping zero and sign duplicates
// (leading nonzero entry kept positive).
bool next_box_vector(std::vector<long long>& h, long long b) {
  const int n = static_cast<int>(h.size());
  for (int i = n - 1; i >= 0; --i) {
    if (h[i] < b) {
      ++h[i];
      for (int j = i + 1; j < n; ++j) h[j] = -b;
      return true;
    }
  }
  return false;
}

bool sign_canonical(const std::vector<long long>& h) {
  for (long long v : h) {
    if (v > 0) return true;
    if (v < 0) return false;
  }
  return false;  // zero vector: excluded
}

}  // namespace

MinkowskiCertificate is_minkowski_reduced(const RealMatrix& y, int scan_bound) {
  if (y.rows() != y.cols()) throw DimensionError("reduction check needs a square matrix");
  if (scan_bound < 1) throw ParameterError("scan bound must be at least 1");
  const int g = y.rows();
  MinkowskiCertificate cert;
  cert.scan_bound = scan_bound;
  double scale = 1.0;
  for (int i = 0; i < g; ++i) scale = std::max(scale, std::abs(y(i, i)));
  const double slack = 1e-12 * scale;

  for (int k = 0; k + 1 < g; ++k)
    if (y(k, k + 1) < -slack) cert.sign_violations.push_back(k);

  std::vector<long long> h(g, -scan_bound);
  do {
    if (!sign_canonical(h)) continue;
    const double q = quad_form(y, h);
    // gcd of the tail h_k..h_{g-1}, scanned from the right
    long long tail_gcd = 0;
    for (int k = g - 1; k >= 0; --k) {
      tail_gcd = std::gcd(tail_gcd, std::llabs(h[k]));
      if (tail_gcd == 1 && q < y(k, k) - slack) {
        if (cert.violations.size() < 32)
          cert.violations.push_back(MinkowskiViolation{h, k, q, y(k, k)});
      }
    }
  } while (next_box_vector(h, scan_bound));

  cert.reduced = cert.sign_violations.empty() && cert.violations.empty();
  return cert;
}

namespace {

// One greedy pass: for each column j, search coefficient boxes on the other
// columns for a shorter replacement b_j + sum c_i b_i.
bool box_reduce_pass(const RealMatrix& y, IntMatrix& u, RealMatrix& gram, long long box) {
  const int g = gram.rows();
  bool changed = false;
  for (int j = 0; j < g; ++j) {
    std::vector<long long> best_c;
    double best_q = gram(j, j);
    std::vector<long long> c(g - 1, -box);
    bool more = g > 1;
    while (more) {
      std::vector<long long> v(g, 0);
      v[j] = 1;
      for (int i = 0, t = 0; i < g; ++i) {
        if (i == j) continue;
        v[i] = c[t++];
      }
      const double q = quad_form(gram, v);
      if (q < best_q * (1.0 - 1e-14) - 1e-300) {
        best_q = q;
        best_c = c;
      }
      more = next_box_vector(c, box);
    }
    if (!best_c.empty()) {
      for (int i = 0, t = 0; i < g; ++i) {
        if (i == j) continue;
        const long long coeff = best_c[t++];
        if (coeff == 0) continue;
        for (int r = 0; r < g; ++r)
          u(r, j) = checked_narrow(
              static_cast<__int128>(u(r, j)) + static_cast<__int128>(coeff) * u(r, i),
              "basis reduction");
      }
      changed = true;
      gram = matkit::transpose(u.to_real()) * y * u.to_real();
    }
  }
  return changed;
}

void sort_and_fix_signs(const RealMatrix& y, IntMatrix& u, RealMatrix& gram) {
  const int g = gram.rows();
  std::vector<int> order(g);
  for (int i = 0; i < g; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gram(a, a) < gram(b, b); });
  IntMatrix up(g, g);
  for (int j = 0; j < g; ++j)
    for (int r = 0; r < g; ++r) up(r, j) = u(r, order[j]);
  u = up;
  gram = matkit::transpose(u.to_real()) * y * u.to_real();

  std::vector<int> sign(g, 1);
  for (int k = 0; k + 1 < g; ++k) {
    const double v = gram(k, k + 1);
    sign[k + 1] = (v == 0.0) ? sign[k] : (v < 0 ? -sign[k] : sign[k]);
  }
  bool flipped = false;
  for (int j = 0; j < g; ++j)
    if (sign[j] < 0) {
      flipped = true;
      for (int r = 0; r < g; ++r) u(r, j) = -u(r, j);
    }
  if (flipped) gram = matkit::transpose(u.to_real()) * y * u.to_real();
}

}  // namespace

MinkowskiReduction minkowski_reduce(const SpdMatrix& y, int max_iter) {
  const int g = y.n();
  MinkowskiReduction out;
  out.u = IntMatrix::identity(g);
  out.reduced = y.m();
  if (g == 1) {
    if (out.reduced(0, 0) <= 0) throw DefinitenessError("form is not positive", out.reduced(0, 0));
    return out;
  }
  long long box = 2;
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    const bool changed = box_reduce_pass(y.m(), out.u, out.reduced, box);
    sort_and_fix_signs(y.m(), out.u, out.reduced);
    if (!changed) {
      if (is_minkowski_reduced(out.reduced, default_scan_bound(g)).reduced) return out;
      if (box < 3) {
        box = 3;  // widen the search once before giving up
        continue;
      }
      throw ConvergenceError("basis reduction reached a fixpoint without a certificate");
    }
  }
  throw ConvergenceError("basis reduction did not settle within the iteration cap");
}

SiegelCheck is_siegel_reduced(const siegel::SiegelPoint& z,
                              std::span<const SymplecticInt> candidates, const Tolerances& t) {
  SiegelCheck chk;
  const int g = z.g();
  chk.x_in_box = true;
  for (int i = 0; i < g && chk.x_in_box; ++i)
    for (int j = 0; j < g; ++j)
      if (std::abs(z.x()(i, j)) > 0.5 + t.x_box_slack) {
        chk.x_in_box = false;
        break;
      }

  chk.minkowski = is_minkowski_reduced(z.y(), default_scan_bound(g));
  chk.y_minkowski = chk.minkowski.reduced;

  chk.height_maximal = true;
  const matkit::ComplexMatrix zc = z.z();
  for (size_t i = 0; i < candidates.size(); ++i) {
    const SymplecticInt& m = candidates[i];
    if (m.g() != g) throw DimensionError("candidate size does not match the point");
    const matkit::ComplexMatrix den =
        matkit::ComplexMatrix::from_parts(m.c().to_real(), RealMatrix(g, g)) * zc +
        matkit::ComplexMatrix::from_parts(m.d().to_real(), RealMatrix(g, g));
    const double a = std::abs(matkit::det_complex(den));
    if (a < 1.0 - t.det_one_slack && (chk.det_witness < 0 || a < chk.det_witness_value)) {
      chk.height_maximal = false;
      chk.det_witness = static_cast<int>(i);
      chk.det_witness_value = a;
    }
  }
  chk.reduced = chk.height_maximal && chk.y_minkowski && chk.x_in_box;
  return chk;
}

SiegelReduction siegel_reduce(const siegel::SiegelPoint& z,
                              std::span<const SymplecticInt> candidates, int max_iter,
                              const Tolerances& t) {
  const int g = z.g();
  SiegelReduction out{SymplecticInt::identity(g), z, false, 0};

  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    bool changed = false;

    // Bring Y toward the reduced cone.
    MinkowskiReduction mk = minkowski_reduce(SpdMatrix(out.z.y(), t));
    if (mk.u != IntMatrix::identity(g)) {
      const SymplecticInt gu = SymplecticInt::basis_change(mk.u);
      out.z = siegel::act(gu.to_real(), out.z, t);
      out.gamma = gu * out.gamma;
      changed = true;
    }

    // Center X in the unit box.
    IntMatrix s(g, g);
    bool nonzero = false;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        s(i, j) = -std::llround(out.z.x()(i, j));
        if (s(i, j) != 0) nonzero = true;
      }
    if (nonzero) {
      // Round asymmetries from the floating X are repaired by symmetrizing.
      for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) s(j, i) = s(i, j);
      const SymplecticInt ts = SymplecticInt::translation(s);
      out.z = siegel::act(ts.to_real(), out.z, t);
      out.gamma = ts * out.gamma;
      changed = true;
    }

    // Raise the height with the best candidate from the window.
    const matkit::ComplexMatrix zc = out.z.z();
    int best = -1;
    double best_abs = 1.0 - t.det_one_slack;
    for (size_t i = 0; i < candidates.size(); ++i) {
      const SymplecticInt& m = candidates[i];
      const matkit::ComplexMatrix den =
          matkit::ComplexMatrix::from_parts(m.c().to_real(), RealMatrix(g, g)) * zc +
          matkit::ComplexMatrix::from_parts(m.d().to_real(), RealMatrix(g, g));
      const double a = std::abs(matkit::det_complex(den));
      if (a < best_abs * (1.0 - 1e-12)) {
        best_abs = a;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) {
      const SymplecticInt& m = candidates[best];
      out.z = siegel::act(m.to_real(), out.z, t);
      out.gamma = m * out.gamma;
      changed = true;
    }

    if (!changed) {
      out.complete = true;
      return out;
    }
  }
  out.complete = is_siegel_reduced(out.z, candidates, t).height_maximal;
  return out;
}

GammaInfStream::GammaInfStream(GammaInfFamily family) : family_(family) {
  if (family_.g < 1) throw ParameterError("genus must be positive");
  if (family_.j < 0 || family_.j >= family_.g)
    throw ParameterError("stratum index must lie in [0, g-1]");
  if (family_.bound < 0) throw ParameterError("parameter bound must be nonnegative");
  const int g = family_.g;
  const int j = family_.j;
  size_t params;
  if (j == 0) {
    params = static_cast<size_t>(g) * (g + 1) / 2;  // symmetric S
  } else {
    const int m = g - j;
    params = 2 * static_cast<size_t>(m) * j + static_cast<size_t>(m) * (m + 1) / 2;  // L, H, M
  }
  odo_.assign(params, -family_.bound);
  done_ = family_.bound == 0;  // only the all-zero tuple exists, and it is skipped
  if (!done_) {
    // The initial all-(-b) tuple is a valid nonzero state; nothing to skip.
  }
}

bool GammaInfStream::advance() {
  for (size_t i = odo_.size(); i-- > 0;) {
    if (odo_[i] < family_.bound) {
      ++odo_[i];
      for (size_t k = i + 1; k < odo_.size(); ++k) odo_[k] = -family_.bound;
      return true;
    }
  }
  return false;
}

SymplecticInt GammaInfStream::assemble() const {
  const int g = family_.g;
  const int j = family_.j;
  size_t t = 0;
  if (j == 0) {
    IntMatrix s(g, g);
    for (int r = 0; r < g; ++r)
      for (int c = r; c < g; ++c) {
        s(r, c) = odo_[t++];
        s(c, r) = s(r, c);
      }
    return SymplecticInt::translation(s);
  }
  const int m = g - j;
  IntMatrix l(m, j), h(m, j), mm(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < j; ++c) l(r, c) = odo_[t++];
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < j; ++c) h(r, c) = odo_[t++];
  for (int r = 0; r < m; ++r)
    for (int c = r; c < m; ++c) {
      mm(r, c) = odo_[t++];
      mm(c, r) = mm(r, c);
    }
  IntMatrix a(g, g), s(g, g), dinv(g, g);
  for (int i = 0; i < g; ++i) a(i, i) = 1;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < j; ++c) a(j + r, c) = l(r, c);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < j; ++c) {
      s(j + r, c) = h(r, c);  // lower-left block H
      s(c, j + r) = h(r, c);  // upper-right block H^T
    }
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) s(j + r, j + c) = mm(r, c);
  // D = A^{-T} = (Id -L^T; 0 Id)
  for (int i = 0; i < g; ++i) dinv(i, i) = 1;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < j; ++c) dinv(c, j + r) = -l(r, c);
  return SymplecticInt::from_blocks(a, a * s, IntMatrix(g, g), dinv);
}

std::optional<SymplecticInt> GammaInfStream::next() {
  while (!done_) {
    bool all_zero = true;
    for (long long v : odo_)
      if (v != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      if (!advance()) done_ = true;
      continue;
    }
    SymplecticInt out = assemble();
    if (!advance()) done_ = true;
    return out;
  }
  return std::nullopt;
}

std::vector<SymplecticInt> gamma_inf_all(const GammaInfFamily& family) {
  GammaInfStream stream(family);
  std::vector<SymplecticInt> out;
  while (auto m = stream.next()) out.push_back(std::move(*m));
  return out;
}

}  // namespace skl::arithmetic

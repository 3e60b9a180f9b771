#include "skl/matkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace skl::matkit {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

RealMatrix::RealMatrix(int rows, int cols, std::initializer_list<double> entries)
    : RealMatrix(rows, cols) {
  if (static_cast<size_t>(rows) * cols != entries.size())
    throw DimensionError("initializer size does not match shape");
  std::copy(entries.begin(), entries.end(), a_.begin());
}

RealMatrix RealMatrix::identity(int n) {
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::initializer_list<cplx> entries)
    : ComplexMatrix(rows, cols) {
  if (static_cast<size_t>(rows) * cols != entries.size())
    throw DimensionError("initializer size does not match shape");
  std::copy(entries.begin(), entries.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = cplx(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::from_parts(const RealMatrix& re, const RealMatrix& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols())
    throw DimensionError("real and imaginary parts differ in shape");
  ComplexMatrix m(re.rows(), re.cols());
  for (int i = 0; i < re.rows(); ++i)
    for (int j = 0; j < re.cols(); ++j) m(i, j) = cplx(re(i, j), im(i, j));
  return m;
}

namespace {
void check_same_shape(int ar, int ac, int br, int bc, const char* op) {
  if (ar != br || ac != bc) throw DimensionError(std::string(op) + ": shape mismatch");
}
void check_mul_shape(int ac, int br, const char* op) {
  if (ac != br) throw DimensionError(std::string(op) + ": inner dimensions differ");
}
}  // namespace

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "add");
  RealMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "sub");
  RealMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  check_mul_shape(a.cols(), b.rows(), "mul");
  RealMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

RealMatrix operator*(double s, const RealMatrix& a) {
  RealMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

RealMatrix transpose(const RealMatrix& a) {
  RealMatrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "add");
  ComplexMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "sub");
  ComplexMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_mul_shape(a.cols(), b.rows(), "mul");
  ComplexMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = std::conj(a(i, j));
  return r;
}

double frobenius(const RealMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double max_abs(const RealMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
  return s;
}

double asymmetry(const RealMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("asymmetry: matrix not square");
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j) - a(j, i)));
  return s;
}

SpdMatrix::SpdMatrix(RealMatrix m, const Tolerances& t) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionError("SpdMatrix: not square");
  if (asymmetry(m_) > t.sym_check)
    throw DimensionError("SpdMatrix: symmetry violated beyond tolerance");
  for (int i = 0; i < m_.rows(); ++i)
    for (int j = i + 1; j < m_.cols(); ++j) {
      const double v = 0.5 * (m_(i, j) + m_(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
  const EigenSym es = eigen_sym(m_, t);
  if (!es.values.empty() && es.values.front() <= 0.0)
    throw DefinitenessError("SpdMatrix: non-positive eigenvalue", es.values.front());
}

double det_real(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("det_real: not square");
  const int n = m.rows();
  RealMatrix a = m;
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

cplx det_complex(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("det_complex: not square");
  const int n = m.rows();
  ComplexMatrix a = m;
  cplx det(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: not square");
  const int n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  double abs_det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    abs_det *= std::abs(a(piv, k));
    if (abs_det <= tol().det_floor)
      throw SingularError("inverse: pivot product below floor", abs_det);
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    const cplx d = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const cplx f = a(i, k);
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

EigenSym eigen_sym(const RealMatrix& m, const Tolerances& t) {
  if (m.rows() != m.cols()) throw DimensionError("eigen_sym: not square");
  const int n = m.rows();
  const double scale = frobenius(m);
  if (asymmetry(m) > t.sym_repair * std::max(1.0, scale))
    throw DimensionError("eigen_sym: input not symmetric within tolerance");

  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  RealMatrix v = RealMatrix::identity(n);

  const double target = t.jacobi_off * std::max(1.0, scale);
  bool converged = (n <= 1);
  for (int sweep = 0; sweep < t.jacobi_max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    off = std::sqrt(off);
    if (off <= target) {
      converged = true;
      break;
    }
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double tt = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                       : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = tt * c;
        a(p, p) = app - tt * apq;
        a(q, q) = aqq + tt * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
  }
  if (!converged) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) > target)
      throw ConvergenceError("eigen_sym: Jacobi sweep cap reached");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
  EigenSym out;
  out.values.resize(n);
  out.vectors = RealMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

SpdMatrix spd_sqrt(const SpdMatrix& m, const Tolerances& t) {
  const EigenSym es = eigen_sym(m.m(), t);
  const int n = m.n();
  for (double lam : es.values)
    if (lam <= 0.0) throw DefinitenessError("spd_sqrt: non-positive eigenvalue", lam);
  RealMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += es.vectors(i, k) * std::sqrt(es.values[k]) * es.vectors(j, k);
      r(i, j) = s;
      r(j, i) = s;
    }
  return SpdMatrix(std::move(r), t);
}

namespace {

// Rotation zeroing b in (a, b): c real, |c|^2 + |s|^2 = 1.
void givens(cplx a, cplx b, double& c, cplx& s) {
  const double aa = std::abs(a);
  const double bb = std::abs(b);
  if (bb == 0.0) {
    c = 1.0;
    s = cplx(0.0, 0.0);
    return;
  }
  if (aa == 0.0) {
    c = 0.0;
    s = cplx(1.0, 0.0);
    return;
  }
  const double d = std::hypot(aa, bb);
  c = aa / d;
  s = (a / aa) * std::conj(b) / d;
}

void hessenberg(ComplexMatrix& a) {
  const int n = a.rows();
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const cplx x0 = a(k + 1, k);
    const cplx phase = (std::abs(x0) == 0.0) ? cplx(1.0, 0.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;
    std::vector<cplx> vv(n - k - 1);
    for (int i = 0; i < n - k - 1; ++i) vv[i] = a(k + 1 + i, k);
    vv[0] -= alpha;
    double vhv = 0.0;
    for (const cplx& t : vv) vhv += std::norm(t);
    if (vhv <= 1e-300) continue;
    const double beta = 2.0 / vhv;
    // left: rows k+1.., all columns
    for (int j = k; j < n; ++j) {
      cplx dot(0.0, 0.0);
      for (int i = 0; i < n - k - 1; ++i) dot += std::conj(vv[i]) * a(k + 1 + i, j);
      dot *= beta;
      for (int i = 0; i < n - k - 1; ++i) a(k + 1 + i, j) -= vv[i] * dot;
    }
    // right: all rows, columns k+1..
    for (int i = 0; i < n; ++i) {
      cplx dot(0.0, 0.0);
      for (int j = 0; j < n - k - 1; ++j) dot += a(i, k + 1 + j) * vv[j];
      dot *= beta;
      for (int j = 0; j < n - k - 1; ++j) a(i, k + 1 + j) -= dot * std::conj(vv[j]);
    }
    a(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) a(i, k) = cplx(0.0, 0.0);
  }
}

void eig2x2(cplx a, cplx b, cplx c, cplx d, cplx& l1, cplx& l2) {
  const cplx tr = a + d;
  const cplx s = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  const cplx u = (std::abs(tr + s) >= std::abs(tr - s)) ? tr + s : tr - s;
  if (std::abs(u) == 0.0) {
    l1 = cplx(0.0, 0.0);
    l2 = cplx(0.0, 0.0);
    return;
  }
  l1 = 0.5 * u;
  l2 = (a * d - b * c) / l1;
}

}  // namespace

std::vector<cplx> eigenvalues_complex(const ComplexMatrix& m, const Tolerances& t) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues_complex: not square");
  const int n = m.rows();
  std::vector<cplx> eig;
  eig.reserve(n);
  if (n == 0) return eig;
  if (n == 1) {
    eig.push_back(m(0, 0));
    return eig;
  }
  if (n == 2) {
    cplx l1, l2;
    eig2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1), l1, l2);
    eig.push_back(l1);
    eig.push_back(l2);
    return eig;
  }

  ComplexMatrix h = m;
  hessenberg(h);
  const double hnorm = std::max(frobenius(h), 1e-300);

  int hi = n - 1;
  int total = 0;
  int since_deflation = 0;
  const int cap = t.qr_iters_per_eigenvalue * n;
  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(h(0, 0));
      break;
    }
    int lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(lo, lo - 1)) <= kEps * s) {
        h(lo, lo - 1) = cplx(0.0, 0.0);
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      since_deflation = 0;
      continue;
    }
    if (lo == hi - 1) {
      cplx l1, l2;
      eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), l1, l2);
      eig.push_back(l1);
      eig.push_back(l2);
      hi -= 2;
      since_deflation = 0;
      continue;
    }
    if (++total > cap)
      throw ConvergenceError("eigenvalues_complex: QR iteration cap reached");
    ++since_deflation;

    cplx mu;
    if (since_deflation % 10 == 0) {
      mu = h(hi, hi) + 1.5 * std::abs(h(hi, hi - 1));
    } else {
      cplx l1, l2;
      eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2);
      mu = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
    }

    for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<double> cs(hi - lo);
    std::vector<cplx> ss(hi - lo);
    for (int i = lo; i < hi; ++i) {
      double c;
      cplx s;
      givens(h(i, i), h(i + 1, i), c, s);
      cs[i - lo] = c;
      ss[i - lo] = s;
      for (int j = i; j <= hi; ++j) {
        const cplx t1 = h(i, j);
        const cplx t2 = h(i + 1, j);
        h(i, j) = c * t1 + s * t2;
        h(i + 1, j) = -std::conj(s) * t1 + c * t2;
      }
      h(i + 1, i) = cplx(0.0, 0.0);
    }
    for (int i = lo; i < hi; ++i) {
      const double c = cs[i - lo];
      const cplx s = ss[i - lo];
      for (int r = lo; r <= std::min(i + 2, hi); ++r) {
        const cplx t1 = h(r, i);
        const cplx t2 = h(r, i + 1);
        h(r, i) = c * t1 + std::conj(s) * t2;
        h(r, i + 1) = -s * t1 + c * t2;
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return eig;
}

}  // namespace skl::matkit

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "skl/config.hpp"
#include "skl/errors.hpp"

namespace skl::matkit {

using cplx = std::complex<double>;

// Row-major dense real matrix. Small (g <= 12 is the working range),
// value semantics throughout.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  }
  RealMatrix(int rows, int cols, std::initializer_list<double> entries);

  static RealMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  }
  ComplexMatrix(int rows, int cols, std::initializer_list<cplx> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix from_parts(const RealMatrix& re, const RealMatrix& im);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(double s, const RealMatrix& a);
RealMatrix transpose(const RealMatrix& a);

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);

double frobenius(const RealMatrix& a);
double frobenius(const ComplexMatrix& a);
double max_abs(const RealMatrix& a);

// Largest |a_ij - a_ji|; zero for exactly symmetric input.
double asymmetry(const RealMatrix& a);

// Symmetric positive definite wrapper. Construction enforces symmetry within
// tolerance and positive spectrum (cyclic Jacobi under the hood).
class SpdMatrix {
 public:
  explicit SpdMatrix(RealMatrix m, const Tolerances& t = tol());
  const RealMatrix& m() const { return m_; }
  int n() const { return m_.rows(); }

 private:
  RealMatrix m_;
};

struct EigenSym {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // orthogonal, column j pairs with values[j]
};

// LU with partial pivoting; exact (product of the diagonal) for upper
// triangular input since no elimination arithmetic happens there.
cplx det_complex(const ComplexMatrix& m);
double det_real(const RealMatrix& m);

// Gauss-Jordan with partial pivoting; throws SingularError with the measured
// |det| when the pivot product falls below the floor.
ComplexMatrix inverse(const ComplexMatrix& m);

// Cyclic Jacobi on the symmetrized input. Input must be symmetric within
// tolerance (relative to its magnitude); eigenvalues come back ascending.
EigenSym eigen_sym(const RealMatrix& m, const Tolerances& t = tol());

// Spectral square root Q sqrt(Lambda) Q^T.
SpdMatrix spd_sqrt(const SpdMatrix& m, const Tolerances& t = tol());

// Hessenberg reduction followed by shifted complex QR with deflation.
// Order of the returned eigenvalues is unspecified.
std::vector<cplx> eigenvalues_complex(const ComplexMatrix& m, const Tolerances& t = tol());

}  // namespace skl::matkit

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skl/siegel.hpp"

namespace skl::arithmetic {

using matkit::RealMatrix;
using matkit::SpdMatrix;

// Dense integer matrix with exact arithmetic (overflow-checked products).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  }
  IntMatrix(int rows, int cols, std::initializer_list<long long> entries);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long long& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  long long operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<long long>& data() const { return a_; }

  bool operator==(const IntMatrix& o) const = default;

  RealMatrix to_real() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<long long> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
IntMatrix transpose(const IntMatrix& a);

// Exact unimodular inverse via the adjugate; requires |det| = 1.
IntMatrix unimodular_inverse(const IntMatrix& u);
long long det_int(const IntMatrix& m);

// Integer symplectic element held as certified blocks (A B; C D).
class SymplecticInt {
 public:
  static SymplecticInt identity(int g);
  static SymplecticInt involution(int g);                  // (0 -Id; Id 0)
  static SymplecticInt translation(const IntMatrix& s);    // (Id S; 0 Id), S symmetric
  static SymplecticInt basis_change(const IntMatrix& u);   // (U^T 0; 0 U^{-1}), acts Z -> U^T Z U
  static SymplecticInt from_blocks(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d);

  int g() const { return a_.rows(); }
  const IntMatrix& a() const { return a_; }
  const IntMatrix& b() const { return b_; }
  const IntMatrix& c() const { return c_; }
  const IntMatrix& d() const { return d_; }

  IntMatrix full() const;  // 2g x 2g assembly
  SymplecticInt inverse() const;
  bool is_identity() const;
  // Representative of {M, -M} with positive leading nonzero entry.
  SymplecticInt canonical_sign() const;

  siegel::SymplecticReal to_real() const;

  bool operator==(const SymplecticInt& o) const = default;

 private:
  SymplecticInt() = default;
  IntMatrix a_, b_, c_, d_;
  friend SymplecticInt certify_symplectic(const IntMatrix&);
};

SymplecticInt operator*(const SymplecticInt& m1, const SymplecticInt& m2);

struct SymplecticDefect {
  int row;
  int col;
  long long value;  // entry of M^T J M - J
};

// Exact integer check of the defining relation. Returns the first bad entry
// in row-major order, or nothing when the relation holds.
std::optional<SymplecticDefect> symplectic_defect(const IntMatrix& m);

// Throwing form; the CertifyError carries the defect location and value.
SymplecticInt certify_symplectic(const IntMatrix& m);

struct MinkowskiViolation {
  std::vector<long long> h;
  int k;        // 0-based diagonal index whose minimality is violated
  double quad;  // h^T Y h
  double diag;  // y_kk
};

struct MinkowskiCertificate {
  bool reduced = false;
  int scan_bound = 0;
  std::vector<int> sign_violations;            // k with y_{k,k+1} < 0
  std::vector<MinkowskiViolation> violations;  // scan witnesses, at most 32 kept
};

int default_scan_bound(int g);

// Scans integer vectors with |h_i| <= scan_bound. For each k, vectors whose
// tail gcd(h_k, ..., h_g) is 1 must satisfy h^T Y h >= y_kk.
MinkowskiCertificate is_minkowski_reduced(const RealMatrix& y, int scan_bound);

struct MinkowskiReduction {
  IntMatrix u;         // |det| = 1
  RealMatrix reduced;  // U^T Y U
  int iterations = 0;
};

// Greedy pair/box reduction with sorting and sign normalization. Certified
// on exit for g <= 3; best effort at g = 4.
MinkowskiReduction minkowski_reduce(const SpdMatrix& y, int max_iter = 1000);

struct SiegelCheck {
  bool reduced = false;
  bool height_maximal = false;  // |det(CZ+D)| >= 1 - slack over the candidates
  bool y_minkowski = false;
  bool x_in_box = false;
  int det_witness = -1;  // candidate index breaking height maximality
  double det_witness_value = 1.0;
  MinkowskiCertificate minkowski;
};

SiegelCheck is_siegel_reduced(const siegel::SiegelPoint& z,
                              std::span<const SymplecticInt> candidates,
                              const Tolerances& t = tol());

struct SiegelReduction {
  SymplecticInt gamma;
  siegel::SiegelPoint z;
  bool complete = false;  // height condition reached before the cap
  int iterations = 0;
};

// Alternates Minkowski steps on Y, integer translation of X, and the best
// height-increasing candidate from the cache window. Hitting the iteration
// cap with the height condition still open is reported, not thrown.
SiegelReduction siegel_reduce(const siegel::SiegelPoint& z,
                              std::span<const SymplecticInt> candidates, int max_iter = 64,
                              const Tolerances& t = tol());

// Stratum j of the boundary-stabilizing family: elements (A, AS; 0, A^{-T})
// with A = (Id 0; L Id), S = (0 H^T; H M), all free entries in [-bound, bound].
// Stratum 0 is the pure translation family (Id S; 0 Id), S != 0.
struct GammaInfFamily {
  int g;
  int j;
  long long bound;
};

class GammaInfStream {
 public:
  explicit GammaInfStream(GammaInfFamily family);
  std::optional<SymplecticInt> next();
  const GammaInfFamily& family() const { return family_; }

 private:
  GammaInfFamily family_;
  std::vector<long long> odo_;  // free parameters, odometer order
  bool done_ = false;
  bool advance();
  SymplecticInt assemble() const;
};

std::vector<SymplecticInt> gamma_inf_all(const GammaInfFamily& family);

}  // namespace skl::arithmetic

#pragma once

namespace skl {

// Central numeric configuration. One instance of defaults serves the whole
// library; operations that need different knobs take an explicit override.
struct Tolerances {
  double sym_check = 1e-12;        // symmetry gate on SPD construction
  double sym_repair = 1e-9;        // max asymmetry silently averaged away
  double symplectic_check = 1e-9;  // residual gate on M^T J M - J
  double jacobi_off = 1e-13;       // relative off-diagonal Frobenius target
  int jacobi_max_sweeps = 100;
  int qr_iters_per_eigenvalue = 30;
  double eig_im_tol = 1e-7;        // validity window for cross-ratio spectra
  double rho_clamp = 1e-9;         // negative eigenvalues above -this snap to 0
  double rho_zero = 1e-18;         // all-rho-below-this means coincident points
  double det_floor = 1e-300;       // |det| below this is singular
  double x_box_slack = 1e-12;      // |x_jk| <= 1/2 + this
  double det_one_slack = 1e-9;     // |det(CZ+D)| >= 1 - this
  double zero_displacement = 1e-12;  // orbit moves below this are fixed points
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

}  // namespace skl

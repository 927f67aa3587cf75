#pragma once

#include "stokesrec/curve.hpp"

namespace stokesrec {

// Constants of the biharmonic fundamental solution
//   G(x) = 1/(8 pi) [ |x|^2 ln(|x|/kappa0) + kappa1 ].
// Strong ellipticity of the single-layer trace operator requires
// kappa0 > e*R and kappa1 > R^2 for any circle of radius R enclosing all
// curves; the defaults 3R / 2R^2 satisfy both with margin.
struct KernelConstants {
  double kappa0 = 3.0;
  double kappa1 = 2.0;

  static KernelConstants for_radius(double R);
  bool valid_for(double R) const;
};

// G(x, y); continuous everywhere (the r^2 ln r term vanishes at x = y).
double eval_G(cplx x, cplx y, const KernelConstants& k);

struct KernelBlock {
  double G;       // G(x, y)
  double G_ny;    // d/dn(y) G
  double G_nx;    // d/dn(x) G
  double G_nxny;  // d/dn(x) d/dn(y) G  (log-singular on the diagonal)
};

// All four trace kernels at once; throws singular_diagonal_error at x == y
// (the mixed second derivative diverges there; on-curve quadrature must use
// the corrected rule in the BEM module).
KernelBlock eval_kernel_block(cplx x, cplx nx, cplx y, cplx ny, const KernelConstants& k);

struct LaplacianBlock {
  double lap_G;     // Delta_x G = 1/(2 pi) [ln(|x-y|/kappa0) + 1]
  double lap_G_ny;  // Delta_x d/dn(y) G = -1/(2 pi) (x-y).n(y) / |x-y|^2
};

// Laplacian traces used by the jump-relation checks; throws
// singular_diagonal_error at x == y.
LaplacianBlock eval_laplacian_block(cplx x, cplx y, cplx ny, const KernelConstants& k);

inline double dot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

}  // namespace stokesrec

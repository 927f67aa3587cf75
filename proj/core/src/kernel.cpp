#include "stokesrec/kernel.hpp"

#include <cmath>

#include "stokesrec/errors.hpp"

namespace stokesrec {

namespace {
constexpr double one_over_8pi = 0.039788735772973833942220940843129;
constexpr double one_over_2pi = 0.15915494309189533576888376337251;
}  // namespace

KernelConstants KernelConstants::for_radius(double R) {
  if (!(R > 0)) throw invalid_input_error("enclosing radius must be positive");
  return {3.0 * R, 2.0 * R * R};
}

bool KernelConstants::valid_for(double R) const {
  return kappa0 > std::exp(1.0) * R && kappa1 > R * R;
}

double eval_G(cplx x, cplx y, const KernelConstants& k) {
  const double rho2 = std::norm(x - y);
  if (rho2 == 0) return k.kappa1 * one_over_8pi;
  return one_over_8pi * (0.5 * rho2 * std::log(rho2 / (k.kappa0 * k.kappa0)) + k.kappa1);
}

KernelBlock eval_kernel_block(cplx x, cplx nx, cplx y, cplx ny, const KernelConstants& k) {
  const cplx r = x - y;
  const double rho2 = std::norm(r);
  if (rho2 == 0)
    throw singular_diagonal_error(
        "mixed normal derivative of G is singular at x == y; use corrected quadrature");
  const double logterm = 0.5 * std::log(rho2 / (k.kappa0 * k.kappa0));  // ln(rho/kappa0)
  const double rnx = dot(r, nx), rny = dot(r, ny);

  KernelBlock out;
  out.G = one_over_8pi * (rho2 * logterm + k.kappa1);
  out.G_ny = -one_over_8pi * rny * (2 * logterm + 1);
  out.G_nx = one_over_8pi * rnx * (2 * logterm + 1);
  out.G_nxny = -one_over_8pi * (dot(nx, ny) * (2 * logterm + 1) + 2 * rnx * rny / rho2);
  return out;
}

LaplacianBlock eval_laplacian_block(cplx x, cplx y, cplx ny, const KernelConstants& k) {
  const cplx r = x - y;
  const double rho2 = std::norm(r);
  if (rho2 == 0) throw singular_diagonal_error("Laplacian of G is singular at x == y");
  LaplacianBlock out;
  out.lap_G = one_over_2pi * (0.5 * std::log(rho2 / (k.kappa0 * k.kappa0)) + 1);
  out.lap_G_ny = -one_over_2pi * dot(r, ny) / rho2;
  return out;
}

}  // namespace stokesrec

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "stokesrec/grid.hpp"
#include "stokesrec/moments.hpp"

namespace stokesrec {

// Orthonormal polynomial basis of L^2 over the obstacles, built from the
// moment matrix: M = chol^H chol with chol upper triangular, and
// coeffs = chol^{-1}, whose column j holds the monomial coefficients of P_j.
struct BergmanBasis {
  int degree = 0;             // highest polynomial degree n
  Eigen::MatrixXcd chol;      // upper triangular, M ~= chol^H chol
  Eigen::MatrixXcd coeffs;    // upper triangular, P_j = sum_i coeffs(i,j) z^i
  double clamp_magnitude = 0; // largest eigenvalue clamped to zero
  std::vector<std::string> warnings;

  cplx eval_poly(int j, cplx z) const;
};

// Cholesky of the (Hermitian-enforced, eigenvalue-clamped) moment matrix.
// Eigenvalues below -1e-8 ||M|| trigger a warning; negatives are clamped to
// zero. A collapsing pivot (below 1e-14 trace) truncates the basis to the
// last sound degree with a warning.
BergmanBasis bergman_coeffs(const MomentTable& table);

// Theta_n(z) = (pi sum_j |P_j(z)|^2)^{-1/2}; approximates dist(z, Gamma)
// inside the obstacles and decays like 1/n on the boundary.
double theta_eval(const BergmanBasis& basis, cplx z);

// Level sets {Theta_n = lambda/n} on the grid, one marching-squares pass per
// level. An empty result for a level above max Theta is a valid outcome.
std::vector<Contour> theta_contours(const BergmanBasis& basis, const GridSpec& grid,
                                    const std::vector<double>& lambdas);

// Theta_n sampled on the whole grid (also used for emission).
Eigen::ArrayXXd theta_grid(const BergmanBasis& basis, const GridSpec& grid);

}  // namespace stokesrec

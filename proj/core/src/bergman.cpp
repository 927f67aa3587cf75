#include "stokesrec/bergman.hpp"

#include <cmath>

#include "stokesrec/errors.hpp"

namespace stokesrec {

namespace {
constexpr double pi = 3.1415926535897932384626433832795;
}

cplx BergmanBasis::eval_poly(int j, cplx z) const {
  // Horner on column j (degree j polynomial)
  cplx acc = coeffs(j, j);
  for (int i = j - 1; i >= 0; --i) acc = acc * z + coeffs(i, j);
  return acc;
}

BergmanBasis bergman_coeffs(const MomentTable& table) {
  if (table.rows() != table.cols())
    throw invalid_input_error("bergman basis needs a square moment table");
  const int n = table.rows();
  if (n < 1) throw invalid_input_error("empty moment table");

  BergmanBasis basis;
  Eigen::MatrixXcd M = 0.5 * (table.vals + table.vals.adjoint());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(M);
  const Eigen::VectorXd ev = eig.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  if (!(scale > 0)) throw invalid_input_error("zero moment matrix has no Bergman basis");
  double clamped = 0;
  bool negative = false;
  Eigen::VectorXd ev_clamped = ev;
  for (int i = 0; i < n; ++i) {
    if (ev[i] < 0) {
      clamped = std::max(clamped, -ev[i]);
      if (ev[i] < -1e-8 * scale) negative = true;
      ev_clamped[i] = 0;
    }
  }
  basis.clamp_magnitude = clamped;
  if (negative)
    basis.warnings.push_back("moment matrix has spurious negative eigenvalues (largest " +
                             std::to_string(clamped) + "); clamped to zero");
  if (clamped > 0)
    M = eig.eigenvectors() * ev_clamped.asDiagonal() * eig.eigenvectors().adjoint();

  // Upper-triangular Cholesky M = U^H U with a pivot floor; a collapsing
  // pivot truncates the usable degree.
  const double floor_val = 1e-14 * M.real().trace();
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n, n);
  int usable = n;
  for (int j = 0; j < n; ++j) {
    cplx d = M(j, j);
    for (int k = 0; k < j; ++k) d -= std::conj(U(k, j)) * U(k, j);
    const double dj = d.real();
    if (dj <= floor_val) {
      usable = j;
      basis.warnings.push_back("moment matrix rank-deficient at degree " + std::to_string(j) +
                               "; basis truncated");
      break;
    }
    U(j, j) = std::sqrt(dj);
    for (int i = j + 1; i < n; ++i) {
      cplx s = M(j, i);
      for (int k = 0; k < j; ++k) s -= std::conj(U(k, j)) * U(k, i);
      U(j, i) = s / U(j, j);
    }
  }
  if (usable < 1) throw ill_posed_error("moment matrix has no positive pivot");

  basis.degree = usable - 1;
  basis.chol = U.topLeftCorner(usable, usable);
  basis.coeffs = basis.chol.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXcd::Identity(usable, usable));
  return basis;
}

double theta_eval(const BergmanBasis& basis, cplx z) {
  // accumulate powers once, then dot against each coefficient column
  const int n = basis.degree;
  Eigen::VectorXcd powers(n + 1);
  powers[0] = 1;
  for (int i = 1; i <= n; ++i) powers[i] = powers[i - 1] * z;
  double sum = 0;
  for (int j = 0; j <= n; ++j) {
    cplx pj = 0;
    for (int i = 0; i <= j; ++i) pj += basis.coeffs(i, j) * powers[i];
    sum += std::norm(pj);
  }
  if (!(sum > 0)) throw internal_error("all Bergman polynomials vanish at a point");
  return 1.0 / std::sqrt(pi * sum);
}

Eigen::ArrayXXd theta_grid(const BergmanBasis& basis, const GridSpec& grid) {
  Eigen::ArrayXXd vals(grid.nx, grid.ny);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) vals(i, j) = theta_eval(basis, grid.center(i, j));
  return vals;
}

std::vector<Contour> theta_contours(const BergmanBasis& basis, const GridSpec& grid,
                                    const std::vector<double>& lambdas) {
  const Eigen::ArrayXXd vals = theta_grid(basis, grid);
  std::vector<Contour> out;
  for (double lambda : lambdas) {
    const double level = lambda / std::max(1, basis.degree);
    auto cs = marching_squares(grid, vals, level);
    for (auto& c : cs) {
      c.level = level;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace stokesrec

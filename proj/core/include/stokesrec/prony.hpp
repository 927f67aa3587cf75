#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace stokesrec {

using cplx = std::complex<double>;

// Nodes and weights solving sum_j c_j z_j^l = tau_l for l = 0..2n-1, with
// diagnostics from the two ill-conditioned stages.
struct PronySolution {
  Eigen::VectorXcd nodes;
  Eigen::VectorXd weights;        // Re(c_j) as used downstream
  Eigen::VectorXcd weights_full;  // complex weights before the Re replacement
  int requested_order = 0;
  int effective_order = 0;
  double pencil_cond = 0;
  double vandermonde_residual = 0;
  double max_imag_weight = 0;
  std::vector<std::string> warnings;
};

// H0 = [tau_{i+j}], H1 = [tau_{i+j+1}], i,j = 0..n-1; needs 2n moments.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> hankel_matrices(const Eigen::VectorXcd& tau, int n);

// Nodes as the generalized eigenvalues of the pencil H1 xi = z H0 xi,
// computed on the rank-revealing SVD projection of H0 (cutoff 1e-12 sigma_max).
// A rank-deficient pencil returns r < n nodes.
Eigen::VectorXcd solve_pencil(const Eigen::MatrixXcd& H0, const Eigen::MatrixXcd& H1,
                              double* cond = nullptr, std::vector<std::string>* warnings = nullptr);

// Weights from the Vandermonde system (rows 1, z_j, z_j^2, ...) against
// tau_0..tau_{r-1}; nodes must be pairwise distinct.
Eigen::VectorXcd solve_weights(const Eigen::VectorXcd& nodes, const Eigen::VectorXcd& tau);

// Full two-stage solve; records Im(c_j), replaces c_j by Re(c_j), flags
// non-positive weights.
PronySolution prony_solve(const Eigen::VectorXcd& tau, int n);

}  // namespace stokesrec

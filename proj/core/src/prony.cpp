#include "stokesrec/prony.hpp"

#include <cmath>

#include "stokesrec/errors.hpp"

namespace stokesrec {

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> hankel_matrices(const Eigen::VectorXcd& tau,
                                                              int n) {
  if (n < 1) throw invalid_input_error("prony order must be >= 1");
  if (tau.size() < 2 * n)
    throw invalid_input_error("need 2n = " + std::to_string(2 * n) + " moments, got " +
                              std::to_string(tau.size()));
  Eigen::MatrixXcd H0(n, n), H1(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      H0(i, j) = tau[i + j];
      H1(i, j) = tau[i + j + 1];
    }
  return {H0, H1};
}

Eigen::VectorXcd solve_pencil(const Eigen::MatrixXcd& H0, const Eigen::MatrixXcd& H1,
                              double* cond, std::vector<std::string>* warnings) {
  const int n = static_cast<int>(H0.rows());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sig = svd.singularValues();
  const double smax = sig.size() ? sig[0] : 0.0;
  int r = 0;
  while (r < n && sig[r] > 1e-12 * smax) ++r;
  if (cond) *cond = (r > 0) ? smax / sig[r - 1] : 0.0;
  if (r == 0) {
    if (warnings) warnings->push_back("Hankel pencil has rank 0; no nodes recovered");
    return Eigen::VectorXcd(0);
  }
  if (r < n && warnings)
    warnings->push_back("Hankel pencil rank-deficient: effective order " + std::to_string(r) +
                        " < " + std::to_string(n));

  // Project the pencil H1 xi = z H0 xi onto the numerical range of H0:
  // M = U_r^H H1 V_r Sigma_r^{-1} has the nodes as eigenvalues.
  const Eigen::MatrixXcd Ur = svd.matrixU().leftCols(r);
  const Eigen::MatrixXcd Vr = svd.matrixV().leftCols(r);
  const Eigen::MatrixXcd M =
      Ur.adjoint() * H1 * Vr * sig.head(r).cwiseInverse().asDiagonal();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(M);
  if (eig.info() != Eigen::Success)
    throw solver_error("eigenvalue iteration failed on the projected pencil");
  return eig.eigenvalues();
}

Eigen::VectorXcd solve_weights(const Eigen::VectorXcd& nodes, const Eigen::VectorXcd& tau) {
  const int r = static_cast<int>(nodes.size());
  if (r == 0) return Eigen::VectorXcd(0);
  if (tau.size() < r) throw invalid_input_error("need at least one moment per node");
  double scale = 0;
  for (int i = 0; i < r; ++i) scale = std::max(scale, std::abs(nodes[i]));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= 1e-12 * std::max(scale, 1.0))
        throw ill_posed_error("confluent Prony nodes; Vandermonde system is singular");

  Eigen::MatrixXcd V(r, r);
  for (int j = 0; j < r; ++j) {
    V(0, j) = 1;
    for (int i = 1; i < r; ++i) V(i, j) = V(i - 1, j) * nodes[j];
  }
  return V.partialPivLu().solve(tau.head(r));
}

PronySolution prony_solve(const Eigen::VectorXcd& tau, int n) {
  PronySolution sol;
  sol.requested_order = n;
  auto [H0, H1] = hankel_matrices(tau, n);
  Eigen::VectorXcd nodes = solve_pencil(H0, H1, &sol.pencil_cond, &sol.warnings);

  // merge near-coalescent nodes (Theorem-grade solutions need simple roots)
  if (nodes.size() > 1) {
    double scale = 1.0;
    for (int i = 0; i < nodes.size(); ++i) scale = std::max(scale, std::abs(nodes[i]));
    std::vector<cplx> merged;
    std::vector<int> mult;
    for (int i = 0; i < nodes.size(); ++i) {
      bool found = false;
      for (size_t g = 0; g < merged.size(); ++g) {
        if (std::abs(nodes[i] - merged[g]) < 1e-8 * scale) {
          merged[g] = (merged[g] * double(mult[g]) + nodes[i]) / double(mult[g] + 1);
          ++mult[g];
          found = true;
          break;
        }
      }
      if (!found) {
        merged.push_back(nodes[i]);
        mult.push_back(1);
      }
    }
    if (merged.size() < static_cast<size_t>(nodes.size())) {
      sol.warnings.push_back("merged " + std::to_string(nodes.size() - merged.size()) +
                             " near-coalescent node(s)");
      nodes = Eigen::Map<Eigen::VectorXcd>(merged.data(), merged.size());
    }
  }

  sol.nodes = nodes;
  sol.effective_order = static_cast<int>(nodes.size());
  sol.weights_full = solve_weights(nodes, tau);

  // residual on the moments not used by the Vandermonde solve
  const int r = sol.effective_order;
  double resid = 0, denom = 0;
  for (int l = r; l < 2 * n; ++l) {
    cplx s = 0;
    for (int j = 0; j < r; ++j) s += sol.weights_full[j] * std::pow(nodes[j], l);
    resid += std::norm(s - tau[l]);
    denom += std::norm(tau[l]);
  }
  sol.vandermonde_residual = denom > 0 ? std::sqrt(resid / denom) : std::sqrt(resid);

  sol.weights = sol.weights_full.real();
  sol.max_imag_weight =
      r > 0 ? sol.weights_full.imag().cwiseAbs().maxCoeff() : 0.0;
  if (sol.max_imag_weight > 1e-12 * std::max(1.0, sol.weights_full.norm()))
    sol.warnings.push_back("weights had nonzero imaginary parts (max " +
                           std::to_string(sol.max_imag_weight) + "); real parts kept");
  for (int j = 0; j < r; ++j)
    if (sol.weights[j] <= 0)
      sol.warnings.push_back("non-positive weight c_" + std::to_string(j) + " = " +
                             std::to_string(sol.weights[j]));
  return sol;
}

}  // namespace stokesrec

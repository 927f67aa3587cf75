#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "stokesrec/bem.hpp"

namespace stokesrec {

// Complex moments tau_{jk} = integral over the obstacles of conj(z)^j z^k.
// vals(j, k) holds tau_{jk}; the harmonic moments are row j = 0. Pipeline
// tables are square of size (m-1) (monomial degrees 0..m-2); oracle tables
// may have any shape.
struct MomentTable {
  Eigen::MatrixXcd vals;
  int m = 0;  // measurement order when produced by the pipeline, else 0
  std::map<std::string, double> diagnostics;
  std::string provenance;

  int rows() const { return static_cast<int>(vals.rows()); }
  int cols() const { return static_cast<int>(vals.cols()); }

  // First `count` harmonic moments tau_0 .. tau_{count-1}.
  Eigen::VectorXcd harmonic(int count) const;

  double total_area() const { return vals(0, 0).real(); }
};

// Gram matrix Q^{Gamma0}[j,k] = (conj(f_j), f_k)_{H(Gamma0)}
//            = <S^{-1} conj(f_j), f_k>, via the cached Gram factorization.
Eigen::MatrixXcd gram_gamma0(const MeasurementSet& ms);

// Everything the extraction produces, for diagnostics and tests. The
// matrices live over the conjugation-closed real measurement basis
// {Re f_k, Im f_k} (identically-zero members dropped), which realizes the
// complex pairings with conjugated first arguments and their plain
// counterparts at once.
struct MomentExtraction {
  MomentTable table;
  Eigen::MatrixXd Q0;      // Q_m^{Gamma0}
  Eigen::MatrixXd V;       // V_m
  Eigen::MatrixXd Qgamma;  // Q_m^{Gamma} = Q0 - Q0 V^{-1} Q0
};

MomentExtraction extract_moments(const MeasurementSet& ms);

// The (m-1)x(m-1) moment matrix M = Z - Y* X^{-1} Y from the measurement set.
MomentTable moment_matrix(const MeasurementSet& ms);

// Independent brute-force oracle: reduces the area integral to the boundary
// integral (1/(j+1)) (1/2i) oint conj(z)^{j+1} z^k dz over each obstacle,
// evaluated with mesh quadrature. Not part of the measurement path.
MomentTable oracle_moments(const std::vector<ParamCurve>& obstacles, int j_max, int k_max,
                           int n = 1024);

}  // namespace stokesrec

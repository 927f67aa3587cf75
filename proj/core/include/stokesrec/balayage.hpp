#pragma once

#include <vector>

#include "stokesrec/grid.hpp"
#include "stokesrec/prony.hpp"

namespace stokesrec {

struct SorParams {
  double tol = 1e-9;      // relative sweep-update tolerance
  double omega = 1.8;     // over-relaxation factor
  int max_sweeps = 100000;
};

// Logarithmic potential U^n = -1/(2 pi) sum_j c_j ln|. - z_j| on the grid
// over [-R, R]^2 with the disk mask of radius `omega_radius`. Cells within
// one cell of a node take the value at the nearest off-singularity point.
// Nodes must lie inside the disk (invalid_input_error otherwise).
GridField potential_U(const std::vector<cplx>& nodes, const std::vector<double>& weights,
                      const GridSpec& grid, double omega_radius = 1.0);

// Drops negative and tiny weights (c_j < 1e-3 sum c) before building U.
GridField potential_U(const PronySolution& sol, const GridSpec& grid, double omega_radius = 1.0,
                      std::vector<std::string>* warnings = nullptr);

struct ObstacleSolution {
  GridField V;
  int sweeps = 0;
  double residual = 0;  // last sweep's maximum update, relative
};

// Projected SOR for min 1/2 int |grad v|^2 - int v over {v <= U, v = U on the
// boundary ring}; throws convergence_error when the sweep budget runs out.
ObstacleSolution solve_obstacle_problem(const GridField& U, const SorParams& params = {});

struct IndicatorResult {
  GridField indicator;            // 1 on the reconstructed domain
  std::vector<Contour> boundary;  // marching-squares outline
  double area = 0;
  cplx centroid = 0;
  bool touches_gamma0 = false;    // marked cells within 2 cells of the rim
};

// 1_{O_n} = -Delta V on the non-contact set: marks cells with
// -Delta_h V in [0.5, 1.5] that are strictly below the obstacle (node
// patches included; U is unresolved there).
IndicatorResult indicator(const GridField& V, const GridField& U,
                          const std::vector<cplx>& nodes);

// Largest discrete-KKT violation outside the 3x3 node patches: at every
// interior cell either v = U or the relaxed 5-point equation holds to the
// update metric. For converged solutions this is of the order of the SOR
// tolerance.
double complementarity_violation(const GridField& V, const GridField& U,
                                 const std::vector<cplx>& nodes);

}  // namespace stokesrec

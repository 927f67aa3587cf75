#include "stokesrec/balayage.hpp"

#include <cmath>

#include "stokesrec/errors.hpp"

namespace stokesrec {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

using MaskArray = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// mask codes
constexpr std::uint8_t outside = 0;
constexpr std::uint8_t interior = 1;
constexpr std::uint8_t ring = 2;  // Dirichlet cells carrying the trace of U

MaskArray disk_mask(const GridSpec& g, double radius) {
  MaskArray mask(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      mask(i, j) = std::abs(g.center(i, j)) < radius ? interior : outside;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (mask(i, j) != interior) continue;
      const bool border = i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1 ||
                          mask(i - 1, j) == outside || mask(i + 1, j) == outside ||
                          mask(i, j - 1) == outside || mask(i, j + 1) == outside;
      if (border) mask(i, j) = ring;
    }
  return mask;
}

bool in_node_patch(const GridSpec& g, int i, int j, const std::vector<cplx>& nodes) {
  for (const cplx& z : nodes) {
    if (std::abs(g.cx(i) - z.real()) <= 1.5 * g.h && std::abs(g.cy(j) - z.imag()) <= 1.5 * g.h)
      return true;
  }
  return false;
}

}  // namespace

GridField potential_U(const std::vector<cplx>& nodes, const std::vector<double>& weights,
                      const GridSpec& grid, double omega_radius) {
  if (nodes.size() != weights.size())
    throw invalid_input_error("node/weight count mismatch");
  for (const cplx& z : nodes)
    if (std::abs(z) >= omega_radius)
      throw invalid_input_error("balayage node lies outside the domain");

  GridField U;
  U.spec = grid;
  U.mask = disk_mask(grid, omega_radius);
  U.values.resize(grid.nx, grid.ny);
  auto eval = [&](cplx x) {
    double u = 0;
    for (size_t k = 0; k < nodes.size(); ++k) u -= weights[k] * std::log(std::abs(x - nodes[k]));
    return u / two_pi;
  };
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      cplx x = grid.center(i, j);
      // push evaluation off the singularity for cells containing a node
      for (const cplx& z : nodes) {
        const double d = std::abs(x - z);
        if (d < grid.h) {
          x = (d == 0) ? z + cplx(grid.h, 0) : z + (x - z) * (grid.h / d);
          break;
        }
      }
      U.values(i, j) = eval(x);
    }
  return U;
}

GridField potential_U(const PronySolution& sol, const GridSpec& grid, double omega_radius,
                      std::vector<std::string>* warnings) {
  double total = 0;
  for (int j = 0; j < sol.weights.size(); ++j) total += std::max(0.0, sol.weights[j]);
  std::vector<cplx> nodes;
  std::vector<double> weights;
  for (int j = 0; j < sol.weights.size(); ++j) {
    if (sol.weights[j] <= 0 || sol.weights[j] < 1e-3 * total) {
      if (warnings)
        warnings->push_back("dropped node " + std::to_string(j) + " with weight " +
                            std::to_string(sol.weights[j]));
      continue;
    }
    nodes.push_back(sol.nodes[j]);
    weights.push_back(sol.weights[j]);
  }
  return potential_U(nodes, weights, grid, omega_radius);
}

ObstacleSolution solve_obstacle_problem(const GridField& U, const SorParams& params) {
  if (!U.has_mask()) throw invalid_input_error("obstacle problem needs a masked grid");
  const GridSpec& g = U.spec;
  const double h2 = g.h * g.h;

  ObstacleSolution out;
  out.V.spec = g;
  out.V.mask = U.mask;
  out.V.values = U.values;  // feasible start: contact everywhere

  Eigen::ArrayXXd& v = out.V.values;
  for (int sweep = 1; sweep <= params.max_sweeps; ++sweep) {
    double maxupd = 0, maxabs = 1;
    for (int j = 1; j + 1 < g.ny; ++j)
      for (int i = 1; i + 1 < g.nx; ++i) {
        if (U.mask(i, j) != interior) continue;
        const double gs =
            0.25 * (v(i - 1, j) + v(i + 1, j) + v(i, j - 1) + v(i, j + 1) + h2);
        double vn = v(i, j) + params.omega * (gs - v(i, j));
        vn = std::min(vn, U.values(i, j));
        maxupd = std::max(maxupd, std::abs(vn - v(i, j)));
        maxabs = std::max(maxabs, std::abs(vn));
        v(i, j) = vn;
      }
    out.sweeps = sweep;
    out.residual = maxupd / maxabs;
    if (out.residual < params.tol) return out;
  }
  throw convergence_error("projected SOR did not converge in " +
                          std::to_string(params.max_sweeps) + " sweeps (residual " +
                          std::to_string(out.residual) + ")");
}

IndicatorResult indicator(const GridField& V, const GridField& U,
                          const std::vector<cplx>& nodes) {
  const GridSpec& g = V.spec;
  const double h2 = g.h * g.h;
  const double eps_c = 1e-10 * std::max(1.0, U.values.abs().maxCoeff());

  IndicatorResult out;
  out.indicator.spec = g;
  out.indicator.mask = V.mask;
  out.indicator.values = Eigen::ArrayXXd::Zero(g.nx, g.ny);

  double sum = 0;
  cplx first_moment = 0;
  const auto& v = V.values;
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      if (V.mask(i, j) != interior) continue;
      const double neg_lap =
          (4 * v(i, j) - v(i - 1, j) - v(i + 1, j) - v(i, j - 1) - v(i, j + 1)) / h2;
      if (neg_lap < 0.5 || neg_lap > 1.5) continue;
      const bool below = v(i, j) < U.values(i, j) - eps_c;
      if (!below && !in_node_patch(g, i, j, nodes)) continue;
      out.indicator.values(i, j) = 1;
      sum += g.cell_area();
      first_moment += g.center(i, j) * g.cell_area();
    }
  out.area = sum;
  out.centroid = sum > 0 ? first_moment / sum : cplx(0);

  // warn when the reconstruction crowds the outer rim
  for (int j = 0; j < g.ny && !out.touches_gamma0; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (out.indicator.values(i, j) == 0) continue;
      for (int dj = -2; dj <= 2 && !out.touches_gamma0; ++dj)
        for (int di = -2; di <= 2; ++di) {
          const int ii = i + di, jj = j + dj;
          if (ii >= 0 && jj >= 0 && ii < g.nx && jj < g.ny && V.mask(ii, jj) == ring) {
            out.touches_gamma0 = true;
            break;
          }
        }
      if (out.touches_gamma0) break;
    }

  out.boundary = marching_squares(g, out.indicator.values, 0.5);
  return out;
}

double complementarity_violation(const GridField& V, const GridField& U,
                                 const std::vector<cplx>& nodes) {
  const GridSpec& g = V.spec;
  const double h2 = g.h * g.h;
  const auto& v = V.values;
  double worst = 0;
  const double scale = std::max(1.0, v.abs().maxCoeff());
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      if (V.mask(i, j) != interior) continue;
      if (in_node_patch(g, i, j, nodes)) continue;
      const double contact = std::abs(v(i, j) - U.values(i, j));
      const double gs = 0.25 * (v(i - 1, j) + v(i + 1, j) + v(i, j - 1) + v(i, j + 1) + h2);
      const double pde = std::abs(v(i, j) - gs);
      worst = std::max(worst, std::min(contact, pde) / scale);
    }
  return worst;
}

}  // namespace stokesrec

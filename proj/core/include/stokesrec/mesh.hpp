#pragma once

#include <memory>
#include <vector>

#include "stokesrec/curve.hpp"

namespace stokesrec {

// Nystrom discretization of one curve: equispaced-in-theta trapezoidal nodes.
// Quadrature weights carry the parameterization speed (w_i = 2*pi/n * speed_i),
// so sums over nodes approximate arc-length integrals spectrally for analytic
// curves.
struct BoundaryMesh {
  ParamCurve curve;
  std::vector<double> theta;
  std::vector<cplx> nodes;
  std::vector<cplx> tangents;
  std::vector<cplx> normals;
  std::vector<double> curvature;
  std::vector<double> speed;
  std::vector<double> quad_w;

  int size() const { return static_cast<int>(nodes.size()); }
  double perimeter() const;
  // Enclosed area, 1/2 |oint x cross dx| from the mesh quadrature.
  double area() const;
  // Maximum spacing between adjacent nodes.
  double max_spacing() const;
};

// Discretize with n nodes (n even, n >= 16). Checks regularity, closure and
// normal orientation; throws resolution_error / geometry_error.
BoundaryMesh discretize(const ParamCurve& curve, int n);

// Winding number of a closed polyline around a point (angle summation).
int winding_number(const std::vector<cplx>& polygon, cplx z);

// Ray-casting point-in-polygon test (even-odd rule).
bool point_in_polygon(const std::vector<cplx>& polygon, cplx z);

struct ScenarioEntry {
  ParamCurve curve;
  int n = 128;
};

// Outer boundary plus obstacles, with per-curve mesh resolution.
struct Scenario {
  ScenarioEntry outer;
  std::vector<ScenarioEntry> obstacles;
  double margin = 0.02;  // minimum pairwise node distance between curves

  // Checks that obstacle closures are pairwise disjoint, strictly inside the
  // outer region (margin away from every other curve). Throws validation_error.
  void validate() const;

  std::vector<BoundaryMesh> meshes() const;  // outer first, then obstacles
};

// R = max |node| over all meshes; used to fix the kernel constants
// (kappa0 > e R, kappa1 > R^2).
double enclosing_radius(const std::vector<BoundaryMesh>& meshes);
double enclosing_radius(const Scenario& scenario);

}  // namespace stokesrec

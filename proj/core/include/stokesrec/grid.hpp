#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stokesrec/curve.hpp"

namespace stokesrec {

// Uniform Cartesian grid of cell centers: x_i = x0 + (i + 1/2) h.
struct GridSpec {
  double x0 = -1, y0 = -1, h = 0;
  int nx = 0, ny = 0;

  static GridSpec square(double lo, double hi, int n);

  double cx(int i) const { return x0 + (i + 0.5) * h; }
  double cy(int j) const { return y0 + (j + 0.5) * h; }
  cplx center(int i, int j) const { return {cx(i), cy(j)}; }
  double cell_area() const { return h * h; }
};

// Scalar field on a grid with an optional mask (1 = inside the domain).
// values(i, j) is the sample at cell (i, j), i along x.
struct GridField {
  GridSpec spec;
  Eigen::ArrayXXd values;
  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> mask;

  bool has_mask() const { return mask.size() == values.size(); }
};

struct Contour {
  double level = 0;
  std::vector<cplx> points;
  bool closed = false;
};

// Marching squares with linear interpolation on the cell-center lattice.
std::vector<Contour> marching_squares(const GridSpec& spec, const Eigen::ArrayXXd& values,
                                      double level);

}  // namespace stokesrec

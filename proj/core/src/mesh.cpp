#include "stokesrec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stokesrec/errors.hpp"

namespace stokesrec {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

// Proper segment intersection test for the self-intersection scan.
bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
  auto orient = [](cplx p, cplx q, cplx r) {
    const double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
                     (q.imag() - p.imag()) * (r.real() - p.real());
    return (v > 0) - (v < 0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}
}  // namespace

double BoundaryMesh::perimeter() const {
  return std::accumulate(quad_w.begin(), quad_w.end(), 0.0);
}

double BoundaryMesh::area() const {
  // 1/2 oint (x dy - y dx), with dx = tangent*speed dtheta
  double a = 0;
  for (int i = 0; i < size(); ++i) {
    const cplx dx = tangents[i];  // unit; quad_w already carries speed*2pi/n
    a += quad_w[i] * (nodes[i].real() * dx.imag() - nodes[i].imag() * dx.real());
  }
  return std::abs(a) / 2;
}

double BoundaryMesh::max_spacing() const {
  double h = 0;
  for (int i = 0; i < size(); ++i)
    h = std::max(h, std::abs(nodes[(i + 1) % size()] - nodes[i]));
  return h;
}

BoundaryMesh discretize(const ParamCurve& curve, int n) {
  if (n < 16 || n % 2 != 0)
    throw resolution_error("mesh resolution must be even and >= 16, got " + std::to_string(n));

  BoundaryMesh m;
  m.curve = curve;
  m.theta.resize(n);
  m.nodes.resize(n);
  m.tangents.resize(n);
  m.normals.resize(n);
  m.curvature.resize(n);
  m.speed.resize(n);
  m.quad_w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = two_pi * i / n;
    const CurvePoint p = curve.eval(t);
    if (!(p.speed > 0)) throw geometry_error("curve parameterization is not regular");
    m.theta[i] = t;
    m.nodes[i] = p.point;
    m.tangents[i] = p.tangent;
    m.normals[i] = p.normal;
    m.curvature[i] = p.curvature;
    m.speed[i] = p.speed;
    m.quad_w[i] = two_pi / n * p.speed;
  }

  // closure
  const cplx wrap = curve.eval(two_pi).point;
  if (std::abs(wrap - m.nodes[0]) > 1e-9 * (1.0 + m.perimeter()))
    throw geometry_error("curve is not closed: point(0) != point(2*pi)");

  // self-intersection on the sample polygon (skip adjacent segments)
  for (int i = 0; i < n; ++i) {
    const cplx a = m.nodes[i], b = m.nodes[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(a, b, m.nodes[j], m.nodes[(j + 1) % n]))
        throw geometry_error("curve self-intersects on the sample grid");
    }
  }

  // normal orientation: stepping inward from each node must stay inside
  const double eps = 1e-4 * m.perimeter();
  for (int i = 0; i < n; i += std::max(1, n / 32)) {
    if (winding_number(m.nodes, m.nodes[i] + eps * m.normals[i]) == 0)
      throw geometry_error("curve normals do not point into the enclosed region");
  }
  return m;
}

int winding_number(const std::vector<cplx>& polygon, cplx z) {
  double total = 0;
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const cplx a = polygon[i] - z, b = polygon[(i + 1) % n] - z;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / two_pi));
}

bool point_in_polygon(const std::vector<cplx>& polygon, cplx z) {
  bool inside = false;
  const size_t n = polygon.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const cplx& a = polygon[i];
    const cplx& b = polygon[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double xint =
          a.real() + (z.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
      if (z.real() < xint) inside = !inside;
    }
  }
  return inside;
}

void Scenario::validate() const {
  std::vector<BoundaryMesh> ms = meshes();
  const BoundaryMesh& outer_mesh = ms.front();

  for (size_t j = 1; j < ms.size(); ++j) {
    // strictly inside the outer region
    for (const cplx& p : ms[j].nodes) {
      if (winding_number(outer_mesh.nodes, p) == 0)
        throw validation_error("obstacle " + std::to_string(j - 1) +
                               " is not inside the outer boundary");
    }
    // margin against the outer curve and all other obstacles
    for (size_t k = 0; k < ms.size(); ++k) {
      if (k == j) continue;
      for (const cplx& p : ms[j].nodes)
        for (const cplx& q : ms[k].nodes)
          if (std::abs(p - q) < margin)
            throw validation_error("curves " + std::to_string(j) + " and " + std::to_string(k) +
                                   " are closer than the margin " + std::to_string(margin));
    }
    // pairwise disjoint interiors: no obstacle node inside another obstacle
    for (size_t k = 1; k < ms.size(); ++k) {
      if (k == j) continue;
      if (winding_number(ms[k].nodes, ms[j].nodes[0]) != 0)
        throw validation_error("obstacles " + std::to_string(j - 1) + " and " +
                               std::to_string(k - 1) + " overlap");
    }
  }
}

std::vector<BoundaryMesh> Scenario::meshes() const {
  std::vector<BoundaryMesh> ms;
  ms.reserve(1 + obstacles.size());
  ms.push_back(discretize(outer.curve, outer.n));
  for (const auto& o : obstacles) ms.push_back(discretize(o.curve, o.n));
  return ms;
}

double enclosing_radius(const std::vector<BoundaryMesh>& meshes) {
  if (meshes.empty()) throw invalid_input_error("enclosing radius of an empty scenario");
  double r = 0;
  for (const auto& m : meshes)
    for (const cplx& p : m.nodes) r = std::max(r, std::abs(p));
  return r;
}

double enclosing_radius(const Scenario& scenario) { return enclosing_radius(scenario.meshes()); }

}  // namespace stokesrec

#include "stokesrec/curve.hpp"

#include <algorithm>
#include <cmath>

#include "stokesrec/errors.hpp"

namespace stokesrec {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

double wrap_theta(double theta) {
  double t = std::fmod(theta, two_pi);
  if (t < 0) t += two_pi;
  return t;
}
}  // namespace

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::circle: return "circle";
    case CurveKind::ellipse: return "ellipse";
    case CurveKind::radial_cosine: return "radial-cosine";
    case CurveKind::polygon_rounded: return "polygon-rounded";
    case CurveKind::custom_samples: return "custom-samples";
  }
  throw internal_error("unknown curve kind");
}

CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "circle") return CurveKind::circle;
  if (s == "ellipse") return CurveKind::ellipse;
  if (s == "radial-cosine") return CurveKind::radial_cosine;
  if (s == "polygon-rounded") return CurveKind::polygon_rounded;
  if (s == "custom-samples") return CurveKind::custom_samples;
  throw parse_error("unknown curve kind '" + s + "'");
}

// One straight or circular piece of a rounded polygon, indexed by arc length.
struct ParamCurve::PolyPiece {
  bool is_arc = false;
  double s0 = 0, len = 0;  // arc-length range [s0, s0+len)
  // line: start point and unit direction; arc: center, radius, start angle
  cplx a;
  cplx dir_or_center;
  double radius = 0, phi0 = 0;
};

// Periodic cubic spline through n samples at uniform parameter spacing.
struct ParamCurve::SplineData {
  std::vector<cplx> y;   // sample values
  std::vector<cplx> m;   // second derivatives at the knots
  double h = 0;          // knot spacing in theta
};

ParamCurve ParamCurve::circle(cplx center, double radius) {
  if (!(radius > 0) || !std::isfinite(radius))
    throw invalid_input_error("circle radius must be positive and finite");
  ParamCurve c;
  c.kind_ = CurveKind::circle;
  c.center_ = center;
  c.params_ = {radius};
  return c;
}

ParamCurve ParamCurve::ellipse(cplx center, double a, double b) {
  if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
    throw invalid_input_error("ellipse semi-axes must be positive and finite");
  ParamCurve c;
  c.kind_ = CurveKind::ellipse;
  c.center_ = center;
  c.params_ = {a, b};
  return c;
}

ParamCurve ParamCurve::radial_cosine(cplx center, double r0, double amplitude, int frequency) {
  if (!(r0 > 0) || !std::isfinite(r0) || !std::isfinite(amplitude))
    throw invalid_input_error("radial-cosine base radius must be positive and finite");
  if (std::abs(amplitude) >= 1.0)
    throw invalid_input_error("radial-cosine amplitude must satisfy |a| < 1 (positive radius)");
  if (frequency < 0) throw invalid_input_error("radial-cosine frequency must be >= 0");
  ParamCurve c;
  c.kind_ = CurveKind::radial_cosine;
  c.center_ = center;
  c.params_ = {r0, amplitude, static_cast<double>(frequency)};
  return c;
}

ParamCurve ParamCurve::polygon_rounded(cplx center, int sides, double circumradius, double angle0,
                                       double rounding_frac) {
  if (sides < 3) throw invalid_input_error("polygon needs at least 3 sides");
  if (!(circumradius > 0) || !std::isfinite(circumradius))
    throw invalid_input_error("polygon circumradius must be positive and finite");
  if (!(rounding_frac > 0) || rounding_frac >= 0.5)
    throw invalid_input_error("polygon rounding fraction must lie in (0, 0.5)");

  const int K = sides;
  std::vector<cplx> vert(K);
  for (int k = 0; k < K; ++k)
    vert[k] = center + std::polar(circumradius, angle0 + two_pi * k / K);

  const double edge_len = std::abs(vert[1] - vert[0]);
  const double rho = rounding_frac * edge_len;          // fillet radius
  const double beta = two_pi / K;                       // exterior turn angle
  const double d = rho * std::tan(beta / 2);            // tangent offset along each edge
  if (2 * d >= edge_len)
    throw invalid_input_error("polygon rounding radius too large for edge length");

  auto pieces = std::make_shared<std::vector<PolyPiece>>();
  const cplx rot90(0, 1);
  double s = 0;
  for (int k = 0; k < K; ++k) {
    const cplx v0 = vert[k];
    const cplx v1 = vert[(k + 1) % K];
    const cplx u = (v1 - v0) / std::abs(v1 - v0);

    // straight span between the fillets at v0 and v1
    PolyPiece line;
    line.is_arc = false;
    line.s0 = s;
    line.len = edge_len - 2 * d;
    line.a = v0 + d * u;
    line.dir_or_center = u;
    s += line.len;
    pieces->push_back(line);

    // fillet at v1: tangent to both adjacent edges, swept CCW by beta
    const cplx v2 = vert[(k + 2) % K];
    const cplx u2 = (v2 - v1) / std::abs(v2 - v1);
    PolyPiece arc;
    arc.is_arc = true;
    arc.s0 = s;
    arc.len = rho * beta;
    arc.dir_or_center = v1 - d * u + rho * (rot90 * u);
    arc.radius = rho;
    arc.phi0 = std::arg(u) - two_pi / 4;  // arg of (T1 - arc center)
    (void)u2;
    s += arc.len;
    pieces->push_back(arc);
  }

  ParamCurve c;
  c.kind_ = CurveKind::polygon_rounded;
  c.center_ = center;
  c.params_ = {static_cast<double>(sides), circumradius, angle0, rounding_frac};
  c.pieces_ = pieces;
  c.total_length_ = s;
  return c;
}

ParamCurve ParamCurve::custom_samples(std::vector<cplx> samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 8) throw invalid_input_error("custom-samples curve needs at least 8 points");

  // normalize to counterclockwise (signed shoelace area)
  double signed_area = 0;
  for (int i = 0; i < n; ++i) {
    const cplx a = samples[i], b = samples[(i + 1) % n];
    signed_area += a.real() * b.imag() - a.imag() * b.real();
  }
  bool was_ccw = true;
  if (signed_area < 0) {
    std::reverse(samples.begin() + 1, samples.end());
    was_ccw = false;
  }

  // Periodic cubic spline: solve the cyclic tridiagonal system for the knot
  // second derivatives (uniform spacing h, so the system is h/6*(m_{i-1} +
  // 4 m_i + m_{i+1}) = (y_{i+1} - 2 y_i + y_{i-1})/h).
  auto sp = std::make_shared<SplineData>();
  sp->y = samples;
  sp->h = two_pi / n;
  const double h = sp->h;

  // Cyclic Thomas via Sherman-Morrison, applied separately to Re and Im
  // through complex arithmetic (coefficients are real).
  std::vector<cplx> rhs(n);
  for (int i = 0; i < n; ++i) {
    const cplx ym = samples[(i + n - 1) % n], y0 = samples[i], yp = samples[(i + 1) % n];
    rhs[i] = 6.0 * (yp - 2.0 * y0 + ym) / (h * h);
  }
  const double diag = 4.0, off = 1.0;
  // Solve (C + u v^T) m = rhs with C tridiagonal (diag-gamma at both ends).
  const double gamma = -diag;
  std::vector<double> b(n, diag);
  b[0] = diag - gamma;
  b[n - 1] = diag - off * off / gamma;
  auto thomas = [&](std::vector<cplx> r) {
    std::vector<double> c(n, 0.0);
    std::vector<cplx> x(n);
    c[0] = off / b[0];
    r[0] /= b[0];
    for (int i = 1; i < n; ++i) {
      const double denom = b[i] - off * c[i - 1];
      c[i] = off / denom;
      r[i] = (r[i] - off * r[i - 1]) / denom;
    }
    x[n - 1] = r[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = r[i] - c[i] * x[i + 1];
    return x;
  };
  std::vector<cplx> u_rhs(n, cplx(0));
  u_rhs[0] = gamma;
  u_rhs[n - 1] = off;
  const auto x1 = thomas(rhs);
  const auto x2 = thomas(u_rhs);
  const cplx corr = (x1[0] + x1[n - 1] * off / gamma) / (1.0 + x2[0] + x2[n - 1] * off / gamma);
  sp->m.resize(n);
  for (int i = 0; i < n; ++i) sp->m[i] = x1[i] - corr * x2[i];

  cplx centroid = 0;
  for (const auto& p : samples) centroid += p;
  centroid /= static_cast<double>(n);

  ParamCurve c;
  c.kind_ = CurveKind::custom_samples;
  c.center_ = centroid;
  c.samples_ = std::move(samples);
  c.spline_ = sp;
  c.input_was_ccw_ = was_ccw;
  return c;
}

CurvePoint ParamCurve::eval_polygon(double theta) const {
  const double s = wrap_theta(theta) / two_pi * total_length_;
  const auto& pieces = *pieces_;
  // pieces are sorted by s0
  size_t lo = 0, hi = pieces.size();
  while (lo + 1 < hi) {
    const size_t mid = (lo + hi) / 2;
    if (pieces[mid].s0 <= s)
      lo = mid;
    else
      hi = mid;
  }
  const auto& pc = pieces[lo];
  const double sl = s - pc.s0;
  CurvePoint out;
  out.speed = total_length_ / two_pi;
  if (!pc.is_arc) {
    out.point = pc.a + sl * pc.dir_or_center;
    out.tangent = pc.dir_or_center;
    out.curvature = 0;
  } else {
    const double phi = pc.phi0 + sl / pc.radius;
    out.point = pc.dir_or_center + std::polar(pc.radius, phi);
    out.tangent = cplx(0, 1) * std::polar(1.0, phi);
    out.curvature = 1.0 / pc.radius;
  }
  out.normal = cplx(0, 1) * out.tangent;
  return out;
}

CurvePoint ParamCurve::eval_spline(double theta) const {
  const auto& sp = *spline_;
  const int n = static_cast<int>(sp.y.size());
  const double t = wrap_theta(theta);
  int i = static_cast<int>(t / sp.h);
  if (i >= n) i = n - 1;
  const double u = t - i * sp.h;
  const double h = sp.h;
  const int j = (i + 1) % n;
  const cplx A = sp.y[i], B = sp.y[j], Ma = sp.m[i], Mb = sp.m[j];

  const double w = h - u;
  const cplx pos = (Ma * w * w * w + Mb * u * u * u) / (6 * h) + (A / h - Ma * h / 6.0) * w +
                   (B / h - Mb * h / 6.0) * u;
  const cplx d1 = (-Ma * w * w + Mb * u * u) / (2 * h) - (A / h - Ma * h / 6.0) +
                  (B / h - Mb * h / 6.0);
  const cplx d2 = (Ma * w + Mb * u) / h;

  CurvePoint out;
  out.point = pos;
  out.speed = std::abs(d1);
  if (!(out.speed > 0)) throw geometry_error("custom-samples curve has a stationary point");
  out.tangent = d1 / out.speed;
  out.normal = cplx(0, 1) * out.tangent;
  const double cross = d1.real() * d2.imag() - d1.imag() * d2.real();
  out.curvature = cross / (out.speed * out.speed * out.speed);
  return out;
}

CurvePoint ParamCurve::eval(double theta) const {
  switch (kind_) {
    case CurveKind::circle: {
      const double r = params_[0];
      const cplx e = std::polar(1.0, theta);
      CurvePoint out;
      out.point = center_ + r * e;
      out.tangent = cplx(0, 1) * e;
      out.normal = cplx(0, 1) * out.tangent;  // = -e, inward
      out.curvature = 1.0 / r;
      out.speed = r;
      return out;
    }
    case CurveKind::ellipse: {
      const double a = params_[0], b = params_[1];
      const double ct = std::cos(theta), st = std::sin(theta);
      CurvePoint out;
      out.point = center_ + cplx(a * ct, b * st);
      const cplx d1(-a * st, b * ct);
      out.speed = std::abs(d1);
      out.tangent = d1 / out.speed;
      out.normal = cplx(0, 1) * out.tangent;
      out.curvature = a * b / (out.speed * out.speed * out.speed);
      return out;
    }
    case CurveKind::radial_cosine: {
      const double r0 = params_[0], a = params_[1];
      const int k = static_cast<int>(params_[2]);
      const double rho = r0 * (1 + a * std::cos(k * theta));
      const double drho = -r0 * a * k * std::sin(k * theta);
      const double ddrho = -r0 * a * k * k * std::cos(k * theta);
      const cplx e = std::polar(1.0, theta);
      CurvePoint out;
      out.point = center_ + rho * e;
      const cplx d1 = (cplx(drho, rho)) * e;  // (rho' + i rho) e^{i theta}
      out.speed = std::abs(d1);
      out.tangent = d1 / out.speed;
      out.normal = cplx(0, 1) * out.tangent;
      out.curvature =
          (rho * rho + 2 * drho * drho - rho * ddrho) / (out.speed * out.speed * out.speed);
      return out;
    }
    case CurveKind::polygon_rounded:
      return eval_polygon(theta);
    case CurveKind::custom_samples:
      return eval_spline(theta);
  }
  throw internal_error("unreachable curve kind");
}

CurvePoint curve_eval(const ParamCurve& curve, double theta) {
  if (!std::isfinite(theta)) throw invalid_input_error("curve parameter must be finite");
  return curve.eval(theta);
}

}  // namespace stokesrec

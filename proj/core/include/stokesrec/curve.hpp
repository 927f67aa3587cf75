#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace stokesrec {

using cplx = std::complex<double>;

enum class CurveKind { circle, ellipse, radial_cosine, polygon_rounded, custom_samples };

std::string to_string(CurveKind k);
CurveKind curve_kind_from_string(const std::string& s);

// Local differential geometry at one parameter value. Tangent and normal are
// unit complex vectors; the normal is i*tangent and points into the region
// enclosed by the (counterclockwise) curve.
struct CurvePoint {
  cplx point;
  cplx tangent;
  cplx normal;
  double curvature = 0;
  double speed = 0;
};

// A closed Jordan curve with an analytic (or, for custom samples,
// spline-interpolated) 2*pi-periodic parameterization, always traversed
// counterclockwise.
class ParamCurve {
public:
  ParamCurve() : params_{1.0} {}  // unit circle

  static ParamCurve circle(cplx center, double radius);
  static ParamCurve ellipse(cplx center, double a, double b);
  // r(theta) = r0 * (1 + amplitude*cos(frequency*theta)) around `center`.
  static ParamCurve radial_cosine(cplx center, double r0, double amplitude, int frequency);
  // Regular polygon with `sides` vertices at distance `circumradius` from the
  // center, first vertex at angle `angle0`, corners filleted with a circular
  // arc of radius `rounding_frac` * edge length. Parameterized by arc length.
  static ParamCurve polygon_rounded(cplx center, int sides, double circumradius, double angle0,
                                    double rounding_frac = 0.02);
  // Closed periodic cubic spline through the given sample points. Clockwise
  // sample orders are reversed so the stored curve is always counterclockwise.
  static ParamCurve custom_samples(std::vector<cplx> samples);

  CurvePoint eval(double theta) const;

  CurveKind kind() const { return kind_; }
  cplx center() const { return center_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<cplx>& samples() const { return samples_; }
  // false when a clockwise input was normalized
  bool input_was_ccw() const { return input_was_ccw_; }

private:
  CurveKind kind_ = CurveKind::circle;
  cplx center_;
  std::vector<double> params_;
  std::vector<cplx> samples_;  // custom_samples only
  bool input_was_ccw_ = true;

  struct PolyPiece;            // rounded-polygon piece table
  struct SplineData;           // periodic spline coefficients
  std::shared_ptr<const std::vector<PolyPiece>> pieces_;
  std::shared_ptr<const SplineData> spline_;
  double total_length_ = 0;  // polygon_rounded only

  CurvePoint eval_polygon(double theta) const;
  CurvePoint eval_spline(double theta) const;
};

// curve_eval with input validation (non-finite theta -> invalid_input_error).
CurvePoint curve_eval(const ParamCurve& curve, double theta);

}  // namespace stokesrec

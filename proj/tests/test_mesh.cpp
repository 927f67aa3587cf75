#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stokesrec/errors.hpp"
#include "stokesrec/mesh.hpp"

using namespace stokesrec;

namespace {
constexpr double pi = 3.1415926535897932384626433832795;
}

TEST_CASE("unit circle mesh: perimeter and area") {
  const auto mesh = discretize(ParamCurve::circle({0, 0}, 1.0), 128);
  CHECK(mesh.perimeter() == doctest::Approx(2 * pi).epsilon(1e-13));
  CHECK(mesh.area() == doctest::Approx(pi).epsilon(1e-11));
}

TEST_CASE("cross mesh area matches the closed form") {
  // area = 1/2 oint r^2 dtheta = pi * 0.0625 * 1.08
  const auto mesh = discretize(ParamCurve::radial_cosine({0.2, 0.2}, 0.25, 0.4, 4), 256);
  CHECK(mesh.area() == doctest::Approx(pi * 0.0625 * 1.08).epsilon(1e-12));
}

TEST_CASE("resolution preconditions") {
  const auto c = ParamCurve::circle({0, 0}, 1.0);
  CHECK_THROWS_AS(discretize(c, 8), resolution_error);
  CHECK_THROWS_AS(discretize(c, 33), resolution_error);
}

TEST_CASE("refinement: perimeter and area converge at spectral rate") {
  // frequency-10 flower: narrow analyticity strip, so n=128 is not yet at the
  // roundoff floor and the n=256 error must collapse
  const auto c = ParamCurve::radial_cosine({0, 0}, 0.3, 0.4, 10);
  const auto ref = discretize(c, 2048);
  const auto m128 = discretize(c, 128);
  const auto m256 = discretize(c, 256);
  const double e128 = std::abs(m128.perimeter() - ref.perimeter());
  const double e256 = std::abs(m256.perimeter() - ref.perimeter());
  if (e128 > 1e-12 * ref.perimeter())  // not already exact
    CHECK(e256 / e128 < 1e-3);

  for (const auto& curve : {ParamCurve::circle({0.1, 0.1}, 0.5),
                            ParamCurve::ellipse({0, 0}, 0.25, 0.1),
                            ParamCurve::radial_cosine({0.2, 0.2}, 0.25, 0.4, 4)}) {
    const auto fine = discretize(curve, 1024);
    const auto a = discretize(curve, 128);
    const auto b = discretize(curve, 256);
    const double ea = std::abs(a.area() - fine.area());
    const double eb = std::abs(b.area() - fine.area());
    if (ea > 1e-12 * fine.area()) CHECK(eb / ea < 1e-3);
    CHECK(std::abs(b.perimeter() - fine.perimeter()) < 1e-10 * fine.perimeter());
  }
}

TEST_CASE("normals point into the enclosed region") {
  for (const auto& curve : {ParamCurve::radial_cosine({0.2, 0.2}, 0.25, 0.4, 4),
                            ParamCurve::ellipse({-0.45, -0.45}, 0.25, 0.1),
                            ParamCurve::polygon_rounded({0.6, 0.3}, 4, 0.2, pi / 4)}) {
    const auto mesh = discretize(curve, 128);
    const double eps = 1e-4 * mesh.perimeter();
    for (int i = 0; i < mesh.size(); ++i)
      CHECK(winding_number(mesh.nodes, mesh.nodes[i] + eps * mesh.normals[i]) != 0);
  }
}

TEST_CASE("rounded square mesh area matches side^2 minus the fillet defect") {
  const double R = 0.2;
  const double side = R * std::sqrt(2.0);
  const double rho = 0.02 * side;
  const auto mesh = discretize(ParamCurve::polygon_rounded({0.6, 0.3}, 4, R, pi / 4, 0.02), 512);
  const double expected = side * side - (4 - pi) * rho * rho;
  CHECK(mesh.area() == doctest::Approx(expected).epsilon(2e-4));
  CHECK(mesh.perimeter() == doctest::Approx(4 * side - 8 * rho + 2 * pi * rho).epsilon(1e-12));
}

TEST_CASE("enclosing radius") {
  Scenario s;
  s.outer = {ParamCurve::circle({0, 0}, 1.0), 128};
  s.obstacles.push_back({ParamCurve::circle({0.2, 0.2}, 0.3), 64});
  CHECK(enclosing_radius(s) == doctest::Approx(1.0).epsilon(1e-12));

  // single mesh, no outer
  std::vector<BoundaryMesh> one;
  one.push_back(discretize(ParamCurve::circle({0.2, 0.2}, 0.3), 256));
  CHECK(enclosing_radius(one) == doctest::Approx(std::abs(cplx(0.2, 0.2)) + 0.3).epsilon(1e-3));

  CHECK_THROWS_AS(enclosing_radius(std::vector<BoundaryMesh>{}), invalid_input_error);
}

TEST_CASE("scenario validation rejects bad geometry") {
  Scenario outside;
  outside.outer = {ParamCurve::circle({0, 0}, 1.0), 64};
  outside.obstacles.push_back({ParamCurve::circle({1.2, 0}, 0.2), 64});
  CHECK_THROWS_AS(outside.validate(), validation_error);

  Scenario overlap;
  overlap.outer = {ParamCurve::circle({0, 0}, 1.0), 64};
  overlap.obstacles.push_back({ParamCurve::circle({0.0, 0}, 0.3), 64});
  overlap.obstacles.push_back({ParamCurve::circle({0.2, 0}, 0.3), 64});
  CHECK_THROWS_AS(overlap.validate(), validation_error);

  Scenario margin_violation;
  margin_violation.outer = {ParamCurve::circle({0, 0}, 1.0), 64};
  margin_violation.obstacles.push_back({ParamCurve::circle({0.995, 0}, 0.002), 64});
  CHECK_THROWS_AS(margin_violation.validate(), validation_error);

  Scenario good;
  good.outer = {ParamCurve::circle({0, 0}, 1.0), 64};
  good.obstacles.push_back({ParamCurve::circle({0.2, 0.2}, 0.3), 64});
  good.obstacles.push_back({ParamCurve::ellipse({-0.45, -0.45}, 0.25, 0.1), 64});
  CHECK_NOTHROW(good.validate());
}

TEST_CASE("point in polygon and winding number agree on a flower") {
  const auto mesh = discretize(ParamCurve::radial_cosine({0, 0}, 0.3, 0.4, 5), 256);
  for (int i = 0; i < 50; ++i) {
    const cplx z = 0.9 * std::polar(0.02 * i, 0.37 * i);
    CHECK((winding_number(mesh.nodes, z) != 0) == point_in_polygon(mesh.nodes, z));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stokesrec/bergman.hpp"
#include "stokesrec/errors.hpp"

using namespace stokesrec;

namespace {
constexpr double pi = 3.1415926535897932384626433832795;

MomentTable unit_disk_table(int degree) {
  MomentTable t;
  t.vals = Eigen::MatrixXcd::Zero(degree + 1, degree + 1);
  for (int j = 0; j <= degree; ++j) t.vals(j, j) = pi / (j + 1);
  return t;
}
}  // namespace

TEST_CASE("1x1 table: P0 = 1/sqrt(pi) and Theta_0 = 1") {
  MomentTable t;
  t.vals = Eigen::MatrixXcd::Constant(1, 1, pi);
  const auto basis = bergman_coeffs(t);
  CHECK(basis.degree == 0);
  CHECK(std::abs(basis.eval_poly(0, {0.3, 0.7}) - 1.0 / std::sqrt(pi)) < 1e-14);
  CHECK(theta_eval(basis, {0.2, -0.4}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(theta_eval(basis, {5.0, 3.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unit disk: P_j = sqrt((j+1)/pi) z^j") {
  const auto basis = bergman_coeffs(unit_disk_table(6));
  for (int j = 0; j <= 6; ++j) {
    const cplx z{0.4, 0.3};
    const cplx expected = std::sqrt((j + 1) / pi) * std::pow(z, j);
    CHECK(std::abs(basis.eval_poly(j, z) - expected) < 1e-13);
  }
  // Cholesky factor reproduces the table
  CHECK((basis.chol.adjoint() * basis.chol - unit_disk_table(6).vals).norm() <
        1e-8 * unit_disk_table(6).vals.norm());
}

TEST_CASE("disk of radius r: scaled basis and Theta_n(0) = r") {
  const double r = 0.5;
  const auto table = oracle_moments({ParamCurve::circle({0, 0}, r)}, 12, 12, 512);
  const auto basis = bergman_coeffs(table);
  for (int j = 0; j <= 5; ++j) {
    const cplx z{0.2, -0.1};
    const cplx expected = std::sqrt((j + 1) / pi) * std::pow(z, j) / std::pow(r, j + 1);
    CHECK(std::abs(basis.eval_poly(j, z) - expected) < 1e-10);
  }
  // criterion-7 regime: truncate to each degree n = 5..12
  for (int n = 5; n <= 12; ++n) {
    MomentTable trunc;
    trunc.vals = table.vals.topLeftCorner(n + 1, n + 1);
    const auto b = bergman_coeffs(trunc);
    CHECK(std::abs(theta_eval(b, 0) - r) < 1e-6);
  }
}

TEST_CASE("on-boundary scaling: n Theta_n stays in a narrow band on the unit circle") {
  double lo = 1e30, hi = 0;
  for (int n = 5; n <= 20; ++n) {
    const auto basis = bergman_coeffs(unit_disk_table(n));
    for (double th : {0.0, 1.1, 2.7}) {
      const double v = n * theta_eval(basis, std::polar(1.0, th));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  CHECK(hi / lo < 3.0);
}

TEST_CASE("interior lower bound: dist(z, Gamma) <= Theta_n(z)") {
  struct Case {
    ParamCurve curve;
    std::vector<cplx> probes;
  };
  std::vector<Case> cases;
  cases.push_back({ParamCurve::circle({0.1, 0.1}, 0.4),
                   {{0.1, 0.1}, {0.3, 0.1}, {0.0, -0.1}, {0.35, 0.25}}});
  cases.push_back({ParamCurve::ellipse({0, 0}, 0.5, 0.2),
                   {{0.0, 0.0}, {0.3, 0.05}, {-0.2, -0.1}, {0.4, 0.0}}});
  for (const auto& c : cases) {
    const auto table = oracle_moments({c.curve}, 10, 10, 1024);
    const auto basis = bergman_coeffs(table);
    const auto mesh = discretize(c.curve, 2048);
    for (const cplx z : c.probes) {
      double dist = 1e30;
      for (const cplx p : mesh.nodes) dist = std::min(dist, std::abs(z - p));
      CHECK(dist <= theta_eval(basis, z) + 1e-5);
    }
  }
}

TEST_CASE("Theta decreases along rays beyond the obstacle hull") {
  const auto table = oracle_moments({ParamCurve::circle({0.2, 0.0}, 0.3)}, 9, 9, 512);
  const auto basis = bergman_coeffs(table);
  for (double ang : {0.0, 1.0, 2.5, 4.0}) {
    double prev = 1e30;
    for (double t = 0.7; t < 2.0; t += 0.1) {
      const double v = theta_eval(basis, cplx{0.2, 0.0} + std::polar(t, ang));
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("orthonormality: re-integrating P_j conj(P_k) over the obstacle gives identity") {
  const auto curve = ParamCurve::ellipse({0.1, -0.2}, 0.4, 0.25);
  const int n = 8;
  const auto table = oracle_moments({curve}, n, n, 1024);
  const auto basis = bergman_coeffs(table);
  // integral of P_j conj(P_k) = C^H M C with exact oracle moments
  const Eigen::MatrixXcd gram = basis.coeffs.adjoint() * table.vals * basis.coeffs;
  CHECK((gram - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("clamping: spurious negative eigenvalues are recorded and floored") {
  MomentTable t;
  t.vals = Eigen::MatrixXcd::Zero(2, 2);
  t.vals(0, 0) = pi;
  t.vals(1, 1) = -1e-3;  // spurious
  const auto basis = bergman_coeffs(t);
  CHECK(basis.clamp_magnitude == doctest::Approx(1e-3));
  CHECK(!basis.warnings.empty());
  CHECK(basis.degree == 0);  // clamped direction cannot support a polynomial
}

TEST_CASE("theta contours: disk level set is a centered circle") {
  const double r = 0.4;
  const auto table = oracle_moments({ParamCurve::circle({0, 0}, r)}, 10, 10, 512);
  const auto basis = bergman_coeffs(table);
  const GridSpec grid = GridSpec::square(-1.0, 1.0, 256);
  const auto contours = theta_contours(basis, grid, {1.0});
  REQUIRE(contours.size() == 1);
  CHECK(contours[0].closed);
  cplx centroid = 0;
  for (const cplx p : contours[0].points) centroid += p;
  centroid /= static_cast<double>(contours[0].points.size());
  CHECK(std::abs(centroid) < grid.h);
  // radius is constant around the ring
  double rmin = 1e30, rmax = 0;
  for (const cplx p : contours[0].points) {
    rmin = std::min(rmin, std::abs(p - centroid));
    rmax = std::max(rmax, std::abs(p - centroid));
  }
  CHECK(rmax - rmin < 2 * grid.h);
}

TEST_CASE("theta contours: a level above max Theta yields no contours") {
  const auto table = oracle_moments({ParamCurve::circle({0, 0}, 0.4)}, 8, 8, 512);
  const auto basis = bergman_coeffs(table);
  const GridSpec grid = GridSpec::square(-1.0, 1.0, 128);
  // Theta <= max dist scale ~ 0.4; level lambda/n with lambda = 100 n is huge
  const auto contours = theta_contours(basis, grid, {100.0 * basis.degree});
  CHECK(contours.empty());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stokesrec/bem.hpp"
#include "stokesrec/errors.hpp"

using namespace stokesrec;

namespace {

Scenario cross_scenario(int n_outer = 128, int n_obstacle = 128) {
  Scenario s;
  s.outer = {ParamCurve::circle({0, 0}, 1.0), n_outer};
  s.obstacles.push_back({ParamCurve::radial_cosine({0.2, 0.2}, 0.25, 0.4, 4), n_obstacle});
  return s;
}

Scenario empty_scenario(int n = 128) {
  Scenario s;
  s.outer = {ParamCurve::circle({0, 0}, 1.0), n};
  return s;
}

double rel_diff(const BoundaryField& a, const BoundaryField& b) {
  BoundaryField d = a;
  d.normal_part -= b.normal_part;
  d.dirichlet_part -= b.dirichlet_part;
  return field_l2_norm(d) / std::max(field_l2_norm(b), 1e-300);
}
}  // namespace

TEST_CASE("m must be at least 3") {
  CHECK_THROWS_AS(forward_measurements(empty_scenario(64), 2), invalid_input_error);
}

TEST_CASE("measurement count is 2m-1") {
  const auto ms = forward_measurements(cross_scenario(), 13);
  CHECK(ms.m == 13);
  CHECK(ms.count() == 25);
  CHECK(ms.kc.kappa0 == doctest::Approx(3.0));  // R = 1 for the unit disk
  CHECK(ms.kc.kappa1 == doctest::Approx(2.0));
}

TEST_CASE("boundary data F_k: biharmonic with consistent derivatives") {
  const int m = 6;
  const double h = 1e-4;
  for (int k = 1; k <= 2 * m - 1; ++k) {
    for (const cplx z : {cplx{0.4, 0.2}, cplx{-0.3, 0.6}}) {
      // normal derivative against central differences
      const cplx n = std::polar(1.0, 0.7 + k);
      const cplx fd = (F_value(k, m, z + h * n) - F_value(k, m, z - h * n)) / (2 * h);
      CHECK(std::abs(F_normal_deriv(k, m, z, n) - fd) < 1e-6);

      // Delta z^k = 0 and Delta (zbar z^j/(4j)) = z^{j-1}; both Laplacians are
      // holomorphic, so Delta^2 F_k = 0 follows exactly.
      auto lap = [&](cplx x) {
        return (F_value(k, m, x + cplx{h, 0}) + F_value(k, m, x - cplx{h, 0}) +
                F_value(k, m, x + cplx{0, h}) + F_value(k, m, x - cplx{0, h}) -
                4.0 * F_value(k, m, x)) /
               (h * h);
      };
      const cplx expected = (k <= m) ? cplx(0) : std::pow(z, k - m - 1);
      CHECK(std::abs(lap(z) - expected) < 1e-5);
    }
  }
}

TEST_CASE("no obstacles: measured densities are S^{-1} f_k") {
  const auto sol = solve_forward(empty_scenario(128), 4);
  CurveOperator gamma0(sol.measurements.gamma0, sol.measurements.kc);
  for (int k = 0; k < sol.measurements.count(); ++k) {
    const BoundaryField direct = gamma0.solve_density(sol.measurements.f[k]);
    CHECK(rel_diff(sol.measurements.q0[k], direct) < 1e-8);
  }
}

TEST_CASE("normalization: fluxes of q~ vanish on every curve, f_k lies in H(Gamma0)") {
  const auto sol = solve_forward(cross_scenario(), 5);
  double scale = 0;
  for (const auto& per_k : sol.q_tilde)
    for (const auto& q : per_k) scale = std::max(scale, field_l2_norm(q));
  for (const auto& per_k : sol.q_tilde)
    for (const auto& q : per_k) CHECK(std::abs(flux(q)) < 1e-10 * scale);

  CurveOperator gamma0(sol.measurements.gamma0, sol.measurements.kc);
  for (const auto& f : sol.measurements.f)
    CHECK(std::abs(gamma0.pair_hat_one(f)) < 1e-10 * std::max(1.0, field_l2_norm(f)));
}

TEST_CASE("measured densities converge under mesh refinement") {
  const auto coarse = forward_measurements(cross_scenario(128, 128), 4);
  const auto fine = forward_measurements(cross_scenario(256, 256), 4);
  // coarse nodes are the even-index fine nodes
  for (int k = 0; k < coarse.count(); ++k) {
    double err2 = 0, ref2 = 0;
    for (int i = 0; i < 128; ++i) {
      const cplx dn = coarse.q0[k].normal_part[i] - fine.q0[k].normal_part[2 * i];
      const cplx dd = coarse.q0[k].dirichlet_part[i] - fine.q0[k].dirichlet_part[2 * i];
      const double w = coarse.gamma0->quad_w[i];
      err2 += w * (std::norm(dn) + std::norm(dd));
      ref2 += w * (std::norm(fine.q0[k].normal_part[2 * i]) +
                   std::norm(fine.q0[k].dirichlet_part[2 * i]));
    }
    CHECK(std::sqrt(err2 / ref2) < 1e-6);
  }
}

TEST_CASE("noise: level zero is the identity, fixed seed reproduces") {
  const auto ms = forward_measurements(cross_scenario(), 4);
  const auto same = apply_noise(ms, 0.0, 123);
  for (int k = 0; k < ms.count(); ++k) CHECK(rel_diff(same.q0[k], ms.q0[k]) == 0.0);

  const auto a = apply_noise(ms, 0.01, 42);
  const auto b = apply_noise(ms, 0.01, 42);
  for (int k = 0; k < ms.count(); ++k) CHECK(rel_diff(a.q0[k], b.q0[k]) == 0.0);

  const auto c = apply_noise(ms, 0.01, 43);
  CHECK(rel_diff(c.q0[0], a.q0[0]) > 0);

  CHECK_THROWS_AS(apply_noise(ms, -0.1, 0), invalid_input_error);
}

TEST_CASE("noise scaling: relative perturbation tracks the level") {
  const auto ms = forward_measurements(cross_scenario(256, 128), 4);
  const double level = 0.01;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto noisy = apply_noise(ms, level, seed);
    double num = 0, den = 0;
    for (int k = 0; k < ms.count(); ++k) {
      BoundaryField d = noisy.q0[k];
      d.normal_part -= ms.q0[k].normal_part;
      d.dirichlet_part -= ms.q0[k].dirichlet_part;
      const double nq = field_l2_norm(ms.q0[k]);
      num += std::pow(field_l2_norm(d), 2);
      den += nq * nq;
    }
    const double rel = std::sqrt(num / den);
    CHECK(rel > 0.005);
    CHECK(rel < 0.02);
  }
}

TEST_CASE("alpha system has one row per curve and one column per measurement") {
  const auto sol = solve_forward(cross_scenario(), 4);
  CHECK(sol.alpha.rows() == 2);
  CHECK(sol.alpha.cols() == 7);
}

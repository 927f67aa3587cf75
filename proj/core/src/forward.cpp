#include <cmath>
#include <random>

#include "stokesrec/bem.hpp"
#include "stokesrec/errors.hpp"

namespace stokesrec {

namespace {

// FNV-1a over a canonical scenario description; stamps measurement files so
// inverse stages can be matched to their forward run.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void append_curve(std::string& s, const ParamCurve& c, int n) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s|%.17g,%.17g|n=%d", to_string(c.kind()).c_str(),
                c.center().real(), c.center().imag(), n);
  s += buf;
  for (double p : c.params()) {
    std::snprintf(buf, sizeof(buf), "|%.17g", p);
    s += buf;
  }
  for (const cplx& p : c.samples()) {
    std::snprintf(buf, sizeof(buf), "|%.17g,%.17g", p.real(), p.imag());
    s += buf;
  }
  s += ";";
}

}  // namespace

std::string scenario_fingerprint(const Scenario& scenario) {
  std::string s;
  append_curve(s, scenario.outer.curve, scenario.outer.n);
  for (const auto& o : scenario.obstacles) append_curve(s, o.curve, o.n);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "margin=%.17g", scenario.margin);
  s += buf;
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(s)));
  return buf;
}

ForwardSolution solve_forward(const Scenario& scenario, int m,
                              std::optional<KernelConstants> kc_opt) {
  if (m < 3) throw invalid_input_error("measurement order m must be >= 3");
  scenario.validate();

  std::vector<MeshPtr> meshes;
  for (auto& mesh : scenario.meshes())
    meshes.push_back(std::make_shared<BoundaryMesh>(std::move(mesh)));
  const int ncurves = static_cast<int>(meshes.size());  // N + 1
  const int mprime = 2 * m - 1;

  double R = 0;
  for (const auto& mesh : meshes)
    for (const cplx& p : mesh->nodes) R = std::max(R, std::abs(p));
  const KernelConstants kc = kc_opt.value_or(KernelConstants::for_radius(R));
  if (!kc.valid_for(R))
    throw invalid_input_error("kernel constants violate the ellipticity bounds for R = " +
                              std::to_string(R));

  BlockSystem system(meshes, kc);

  // densities q_j^k: total trace = gamma F_k on Gamma0, 0 on the obstacles
  std::vector<std::vector<BoundaryField>> q(mprime);
  for (int k = 1; k <= mprime; ++k) {
    std::vector<BoundaryField> rhs;
    rhs.push_back(trace_of_F(k, m, meshes[0]));
    for (int j = 1; j < ncurves; ++j)
      rhs.push_back(BoundaryField::zero(meshes[j], BoundaryField::Role::trace));
    q[k - 1] = system.solve(rhs);
  }

  // densities p_j^k: total trace = (delta_{jk}, 0)
  std::vector<std::vector<BoundaryField>> p(ncurves);
  for (int k = 0; k < ncurves; ++k) {
    std::vector<BoundaryField> rhs;
    for (int j = 0; j < ncurves; ++j) {
      BoundaryField t = BoundaryField::zero(meshes[j], BoundaryField::Role::trace);
      if (j == k) t.dirichlet_part.setOnes();
      rhs.push_back(std::move(t));
    }
    p[k] = system.solve(rhs);
  }

  // alpha system: [flux_j(q_j^k)] = [flux_j(p_j^i)] [alpha_{i,k}]
  Eigen::MatrixXd P(ncurves, ncurves);
  for (int j = 0; j < ncurves; ++j)
    for (int i = 0; i < ncurves; ++i) P(j, i) = flux(p[i][j]).real();
  Eigen::MatrixXcd B(ncurves, mprime);
  for (int j = 0; j < ncurves; ++j)
    for (int k = 0; k < mprime; ++k) B(j, k) = flux(q[k][j]);
  Eigen::PartialPivLU<Eigen::MatrixXd> plu(P);
  if (plu.rcond() < 1e-14)
    throw solver_error("alpha system is singular (degenerate scenario), rcond " +
                       std::to_string(plu.rcond()));
  Eigen::MatrixXcd alpha(ncurves, mprime);
  alpha.real() = plu.solve(B.real().eval());
  alpha.imag() = plu.solve(B.imag().eval());

  // q~_j^k = q_j^k - sum_i alpha_{i,k} p_j^i
  std::vector<std::vector<BoundaryField>> qt(mprime);
  for (int k = 0; k < mprime; ++k) {
    qt[k] = q[k];
    for (int j = 0; j < ncurves; ++j)
      for (int i = 0; i < ncurves; ++i) {
        qt[k][j].normal_part -= alpha(i, k) * p[i][j].normal_part;
        qt[k][j].dirichlet_part -= alpha(i, k) * p[i][j].dirichlet_part;
      }
  }

  // boundary data f_k = Pi_{Gamma0} gamma_{Gamma0} F_k
  CurveOperator gamma0(meshes[0], kc);
  ForwardSolution out;
  out.measurements.m = m;
  out.measurements.gamma0 = meshes[0];
  out.measurements.kc = kc;
  out.measurements.scenario_hash = scenario_fingerprint(scenario);
  for (int k = 1; k <= mprime; ++k) {
    out.measurements.f.push_back(gamma0.project(trace_of_F(k, m, meshes[0])));
    out.measurements.q0.push_back(qt[k - 1][0]);
  }
  out.meshes = meshes;
  out.q_tilde = std::move(qt);
  out.alpha = std::move(alpha);
  return out;
}

MeasurementSet forward_measurements(const Scenario& scenario, int m,
                                    std::optional<KernelConstants> kc) {
  return solve_forward(scenario, m, kc).measurements;
}

MeasurementSet apply_noise(const MeasurementSet& ms, double level, std::uint64_t seed) {
  if (level < 0) throw invalid_input_error("noise level must be >= 0");
  MeasurementSet out = ms;
  out.noise_level = level;
  out.seed = seed;
  if (level == 0) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double perimeter = ms.gamma0->perimeter();
  for (auto& q : out.q0) {
    const double norm = field_l2_norm(q);
    if (norm == 0) continue;
    // E ||dq||^2 = 4 sigma^2 |Gamma0| = level^2 ||q||^2
    const double sigma = level * norm / (2 * std::sqrt(perimeter));
    for (int i = 0; i < q.size(); ++i) {
      q.normal_part[i] += cplx(sigma * gauss(rng), sigma * gauss(rng));
      q.dirichlet_part[i] += cplx(sigma * gauss(rng), sigma * gauss(rng));
    }
  }
  return out;
}

}  // namespace stokesrec

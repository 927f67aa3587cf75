#include "stokesrec/moments.hpp"

#include <cmath>
#include <limits>

#include "stokesrec/errors.hpp"

namespace stokesrec {

Eigen::VectorXcd MomentTable::harmonic(int count) const {
  if (count > cols())
    throw invalid_input_error("moment table holds " + std::to_string(cols()) +
                              " harmonic moments, requested " + std::to_string(count));
  return vals.row(0).head(count).transpose();
}

Eigen::MatrixXcd gram_gamma0(const MeasurementSet& ms) {
  const int n = ms.count();
  CurveOperator gamma0(ms.gamma0, ms.kc);
  std::vector<BoundaryField> solved;
  solved.reserve(n);
  for (const auto& f : ms.f) {
    BoundaryField fbar = f;
    fbar.normal_part = f.normal_part.conjugate();
    fbar.dirichlet_part = f.dirichlet_part.conjugate();
    solved.push_back(gamma0.solve_density(fbar));
  }
  Eigen::MatrixXcd Q(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) Q(j, k) = pair_density_trace(solved[j], ms.f[k]);
  return Q;
}

namespace {

// One member of the conjugation-closed measurement basis: the real or
// imaginary part of f_k, together with the matching measured density.
struct RealField {
  int k = 0;        // 1-based measurement index
  bool imag = false;
  Eigen::VectorXd f_d, f_n;  // trace samples
  Eigen::VectorXd q_n, q_d;  // measured density samples
};

double weighted_dot(const BoundaryMesh& mesh, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b) {
  double out = 0;
  for (int i = 0; i < mesh.size(); ++i) out += mesh.quad_w[i] * a[i] * b[i];
  return out;
}

}  // namespace

// The measurement matrices are assembled over the conjugation-closed real
// basis {Re f_k, Im f_k}: the projection behind the Schur complement must
// remove the traces of every harmonic polynomial, conjugate monomials
// included, or the extracted moments retain an O(1) bias for obstacles
// without central symmetry. Densities for the split fields are the split
// densities, since the measurement operator commutes with conjugation.
MomentExtraction extract_moments(const MeasurementSet& ms) {
  const int m = ms.m;
  const int mprime = ms.count();
  if (mprime != 2 * m - 1) throw invalid_input_error("measurement set must hold 2m-1 fields");
  const BoundaryMesh& mesh = *ms.gamma0;

  // split into real basis functions, dropping identically-zero members
  // (Im of zbar z / 4 is one: that F is real-valued)
  std::vector<RealField> basis;
  double max_norm = 0;
  for (int k = 1; k <= mprime; ++k) {
    for (bool imag : {false, true}) {
      RealField g;
      g.k = k;
      g.imag = imag;
      const auto& f = ms.f[k - 1];
      const auto& q = ms.q0[k - 1];
      g.f_d = imag ? f.dirichlet_part.imag().eval() : f.dirichlet_part.real().eval();
      g.f_n = imag ? f.normal_part.imag().eval() : f.normal_part.real().eval();
      g.q_n = imag ? q.normal_part.imag().eval() : q.normal_part.real().eval();
      g.q_d = imag ? q.dirichlet_part.imag().eval() : q.dirichlet_part.real().eval();
      basis.push_back(std::move(g));
    }
  }
  for (const auto& g : basis)
    max_norm = std::max(max_norm, std::sqrt(weighted_dot(mesh, g.f_d, g.f_d) +
                                            weighted_dot(mesh, g.f_n, g.f_n)));
  std::erase_if(basis, [&](const RealField& g) {
    return std::sqrt(weighted_dot(mesh, g.f_d, g.f_d) + weighted_dot(mesh, g.f_n, g.f_n)) <
           1e-13 * max_norm;
  });
  const int L = static_cast<int>(basis.size());

  // Q0[u,v] = <S^{-1} g_u, g_v>, V[u,v] = <q(g_u), g_v>
  CurveOperator gamma0(ms.gamma0, ms.kc);
  MomentExtraction out;
  out.Q0.resize(L, L);
  out.V.resize(L, L);
  for (int u = 0; u < L; ++u) {
    BoundaryField fu = BoundaryField::zero(ms.gamma0, BoundaryField::Role::trace);
    fu.dirichlet_part = basis[u].f_d.cast<cplx>();
    fu.normal_part = basis[u].f_n.cast<cplx>();
    const BoundaryField qu = gamma0.solve_density(fu);
    for (int v = 0; v < L; ++v) {
      double acc_q0 = 0, acc_v = 0;
      for (int i = 0; i < mesh.size(); ++i) {
        const double w = mesh.quad_w[i];
        acc_q0 += w * (qu.normal_part[i].real() * basis[v].f_d[i] +
                       qu.dirichlet_part[i].real() * basis[v].f_n[i]);
        acc_v += w * (basis[u].q_n[i] * basis[v].f_d[i] + basis[u].q_d[i] * basis[v].f_n[i]);
      }
      out.Q0(u, v) = acc_q0;
      out.V(u, v) = acc_v;
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> vlu(out.V);
  const double v_rcond = vlu.rcond();
  if (!(v_rcond > 0))
    throw solver_error("V_m is singular (rcond " + std::to_string(v_rcond) + ")");
  out.Qgamma = out.Q0 - out.Q0 * vlu.solve(out.Q0);

  MomentTable table;
  table.m = m;
  table.provenance = "pipeline";
  table.diagnostics["cond_V"] = 1.0 / v_rcond;
  double omega_radius = 0;
  for (const cplx& p : mesh.nodes) omega_radius = std::max(omega_radius, std::abs(p));
  table.diagnostics["omega_radius"] = omega_radius;

  const double q0_norm = out.Q0.norm();
  const double qg_norm = out.Qgamma.norm();
  table.diagnostics["qgamma_rel_norm"] = qg_norm / q0_norm;
  if (qg_norm <= 1e-10 * q0_norm) {
    // No obstacle signal: the Schur complement of a pure-roundoff matrix is
    // meaningless, the moments are zero.
    table.vals = Eigen::MatrixXcd::Zero(m - 1, m - 1);
    table.diagnostics["sym_residual"] = 0;
    out.table = std::move(table);
    return out;
  }

  const double sym_residual = (out.Qgamma - out.Qgamma.transpose()).norm() / qg_norm;
  table.diagnostics["sym_residual"] = sym_residual;
  const Eigen::MatrixXd QG = 0.5 * (out.Qgamma + out.Qgamma.transpose());

  // span block: traces of z^a and conj(z)^a, i.e. every basis member with
  // k <= m; the Schur complement projects the G-members off it
  std::vector<int> span_idx, rest_idx;
  for (int u = 0; u < L; ++u) (basis[u].k <= m ? span_idx : rest_idx).push_back(u);
  const int S = static_cast<int>(span_idx.size());
  const int T = static_cast<int>(rest_idx.size());
  Eigen::MatrixXd X(S, S), Y(S, T), Z(T, T);
  for (int a = 0; a < S; ++a) {
    for (int b = 0; b < S; ++b) X(a, b) = QG(span_idx[a], span_idx[b]);
    for (int t = 0; t < T; ++t) Y(a, t) = QG(span_idx[a], rest_idx[t]);
  }
  for (int s = 0; s < T; ++s)
    for (int t = 0; t < T; ++t) Z(s, t) = QG(rest_idx[s], rest_idx[t]);

  Eigen::PartialPivLU<Eigen::MatrixXd> xlu(X);
  const double x_rcond = xlu.rcond();
  table.diagnostics["cond_X"] =
      x_rcond > 0 ? 1.0 / x_rcond : std::numeric_limits<double>::infinity();
  if (!(x_rcond > 1e-300))
    throw ill_posed_error("monomial block X_m is numerically singular; lower m");
  const Eigen::MatrixXd Mreal = Z - Y.transpose() * xlu.solve(Y);

  // Assemble the complex (m-1)^2 table from the real residual pairings:
  // M_{jk} = B(conj r_j, r_k) with r_j = (Re G_j residual) + i (Im G_j residual).
  std::vector<int> re_of(m, -1), im_of(m, -1);  // G index (1-based) -> row in Mreal
  for (int t = 0; t < T; ++t) {
    const RealField& g = basis[rest_idx[t]];
    const int gj = g.k - m;  // 1..m-1
    (g.imag ? im_of : re_of)[gj] = t;
  }
  auto entry = [&](int a, int b) { return (a >= 0 && b >= 0) ? Mreal(a, b) : 0.0; };
  table.vals.resize(m - 1, m - 1);
  for (int j = 1; j <= m - 1; ++j)
    for (int k = 1; k <= m - 1; ++k) {
      const double re = entry(re_of[j], re_of[k]) + entry(im_of[j], im_of[k]);
      const double im = entry(re_of[j], im_of[k]) - entry(im_of[j], re_of[k]);
      table.vals(j - 1, k - 1) = cplx(re, im);
    }
  const double herm = (table.vals - table.vals.adjoint()).norm() /
                      std::max(table.vals.norm(), 1e-300);
  table.diagnostics["moment_herm_residual"] = herm;
  table.vals = 0.5 * (table.vals + table.vals.adjoint()).eval();
  out.table = std::move(table);
  return out;
}

MomentTable moment_matrix(const MeasurementSet& ms) { return extract_moments(ms).table; }

MomentTable oracle_moments(const std::vector<ParamCurve>& obstacles, int j_max, int k_max,
                           int n) {
  MomentTable out;
  out.provenance = "oracle";
  out.vals = Eigen::MatrixXcd::Zero(j_max + 1, k_max + 1);
  for (const auto& curve : obstacles) {
    const BoundaryMesh mesh = discretize(curve, n);
    for (int i = 0; i < mesh.size(); ++i) {
      const cplx z = mesh.nodes[i];
      const cplx dz = mesh.tangents[i] * mesh.quad_w[i];  // dz = tangent * speed * dtheta
      const cplx zb = std::conj(z);
      cplx zbp = zb;  // conj(z)^{j+1}
      for (int j = 0; j <= j_max; ++j) {
        cplx zk = 1;
        const cplx common = zbp * dz / (cplx(0, 2) * double(j + 1));
        for (int k = 0; k <= k_max; ++k) {
          out.vals(j, k) += common * zk;
          zk *= z;
        }
        zbp *= zb;
      }
    }
  }
  return out;
}

}  // namespace stokesrec

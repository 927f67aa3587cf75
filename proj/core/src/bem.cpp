#include "stokesrec/bem.hpp"

#include <cmath>

#include "stokesrec/errors.hpp"

namespace stokesrec {

namespace {
constexpr double pi = 3.1415926535897932384626433832795;
constexpr double two_pi = 2 * pi;
constexpr double one_over_8pi = 0.039788735772973833942220940843129;
constexpr double one_over_16pi = one_over_8pi / 2;

Eigen::VectorXcd solve_complex(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                               const Eigen::VectorXcd& rhs) {
  Eigen::VectorXcd out(rhs.size());
  out.real() = lu.solve(rhs.real().eval());
  out.imag() = lu.solve(rhs.imag().eval());
  return out;
}
}  // namespace

BoundaryField BoundaryField::zero(MeshPtr mesh, Role role) {
  BoundaryField f;
  f.normal_part = Eigen::VectorXcd::Zero(mesh->size());
  f.dirichlet_part = Eigen::VectorXcd::Zero(mesh->size());
  f.mesh = std::move(mesh);
  f.role = role;
  return f;
}

cplx pair_density_trace(const BoundaryField& density, const BoundaryField& trace) {
  const auto& w = density.mesh->quad_w;
  cplx out = 0;
  for (int i = 0; i < density.size(); ++i)
    out += w[i] * (density.normal_part[i] * trace.dirichlet_part[i] +
                   density.dirichlet_part[i] * trace.normal_part[i]);
  return out;
}

cplx flux(const BoundaryField& density) {
  const auto& w = density.mesh->quad_w;
  cplx out = 0;
  for (int i = 0; i < density.size(); ++i) out += w[i] * density.normal_part[i];
  return out;
}

double field_l2_norm(const BoundaryField& f) {
  const auto& w = f.mesh->quad_w;
  double out = 0;
  for (int i = 0; i < f.size(); ++i)
    out += w[i] * (std::norm(f.normal_part[i]) + std::norm(f.dirichlet_part[i]));
  return std::sqrt(out);
}

BoundaryField DiscreteOperator::apply(const BoundaryField& density) const {
  const int ns = src->size();
  Eigen::VectorXcd q(2 * ns);
  q.head(ns) = density.normal_part;
  q.tail(ns) = density.dirichlet_part;
  Eigen::VectorXcd p(2 * tgt->size());
  p.real() = mat * q.real().eval();
  p.imag() = mat * q.imag().eval();
  BoundaryField out = BoundaryField::zero(tgt, BoundaryField::Role::trace);
  out.dirichlet_part = p.head(tgt->size());
  out.normal_part = p.tail(tgt->size());
  return out;
}

Eigen::VectorXd kress_log_weights(int n) {
  if (n < 2 || n % 2 != 0) throw invalid_input_error("log quadrature needs even n");
  Eigen::VectorXd R(n);
  for (int d = 0; d < n; ++d) {
    double s = 0;
    for (int m = 1; m < n / 2; ++m) s += std::cos(two_pi * m * d / n) / m;
    const double parity = (d % 2 == 0) ? 1.0 : -1.0;
    R[d] = -(2 * two_pi / n) * (s + parity / n);
  }
  return R;
}

namespace {

// Assembles one self-interaction operator with the log kernels split as
// K = K1 * ln(4 sin^2((t-s)/2)) + K2, K1/K2 analytic; K1 integrated by the
// Kress product rule, K2 by the trapezoidal rule.
Eigen::MatrixXd assemble_self(const BoundaryMesh& mesh, const KernelConstants& kc) {
  const int n = mesh.size();
  const Eigen::VectorXd R = kress_log_weights(n);
  const double tw = two_pi / n;  // trapezoidal weight in theta
  const double log_k0 = std::log(kc.kappa0);

  Eigen::MatrixXd A(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const cplx xi = mesh.nodes[i];
    const cplx ni = mesh.normals[i];
    for (int j = 0; j < n; ++j) {
      const double sj = mesh.speed[j];
      double k1_G, k2_G, k1_ny, k2_ny, k1_nx, k2_nx, k1_nn, k2_nn;
      if (i == j) {
        k1_G = 0;
        k2_G = one_over_8pi * kc.kappa1;
        k1_ny = k2_ny = k1_nx = k2_nx = 0;
        k1_nn = -one_over_8pi;
        k2_nn = -one_over_8pi * (2 * (std::log(mesh.speed[i]) - log_k0) + 1);
      } else {
        const cplx r = xi - mesh.nodes[j];
        const cplx nj = mesh.normals[j];
        const double rho2 = std::norm(r);
        const double sh = std::sin((mesh.theta[i] - mesh.theta[j]) / 2);
        const double w = 4 * sh * sh;
        const double L = std::log(rho2 / w);  // analytic through the diagonal
        const double rni = dot(r, ni), rnj = dot(r, nj);
        const double nn = dot(ni, nj);

        k1_G = one_over_16pi * rho2;
        k2_G = one_over_8pi * (0.5 * rho2 * (L - 2 * log_k0) + kc.kappa1);
        k1_ny = -one_over_8pi * rnj;
        k2_ny = -one_over_8pi * rnj * (L - 2 * log_k0 + 1);
        k1_nx = one_over_8pi * rni;
        k2_nx = one_over_8pi * rni * (L - 2 * log_k0 + 1);
        k1_nn = -one_over_8pi * nn;
        k2_nn = -one_over_8pi * (nn * (L - 2 * log_k0 + 1) + 2 * rni * rnj / rho2);
      }
      const double rw = R[std::abs(i - j)];
      A(i, j) = (rw * k1_G + tw * k2_G) * sj;
      A(i, n + j) = (rw * k1_ny + tw * k2_ny) * sj;
      A(n + i, j) = (rw * k1_nx + tw * k2_nx) * sj;
      A(n + i, n + j) = (rw * k1_nn + tw * k2_nn) * sj;
    }
  }
  return A;
}

Eigen::MatrixXd assemble_cross(const BoundaryMesh& src, const BoundaryMesh& tgt,
                               const KernelConstants& kc) {
  const int ns = src.size(), nt = tgt.size();
  Eigen::MatrixXd A(2 * nt, 2 * ns);
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < ns; ++j) {
      const KernelBlock kb =
          eval_kernel_block(tgt.nodes[i], tgt.normals[i], src.nodes[j], src.normals[j], kc);
      const double w = src.quad_w[j];
      A(i, j) = kb.G * w;
      A(i, ns + j) = kb.G_ny * w;
      A(nt + i, j) = kb.G_nx * w;
      A(nt + i, ns + j) = kb.G_nxny * w;
    }
  }
  return A;
}

void check_disjoint(const BoundaryMesh& a, const BoundaryMesh& b) {
  double dmin = std::numeric_limits<double>::infinity();
  for (const cplx& p : a.nodes)
    for (const cplx& q : b.nodes) dmin = std::min(dmin, std::abs(p - q));
  const double scale = std::max(a.max_spacing(), b.max_spacing());
  if (dmin < 0.5 * scale)
    throw geometry_error("distinct meshes overlap or nearly touch (min node distance " +
                         std::to_string(dmin) + ")");
}

}  // namespace

DiscreteOperator assemble_trace(const MeshPtr& src, const MeshPtr& tgt,
                                const KernelConstants& k) {
  DiscreteOperator op;
  op.src = src;
  op.tgt = tgt;
  op.kind = DiscreteOperator::Kind::trace;
  if (src.get() == tgt.get()) {
    op.mat = assemble_self(*src, k);
  } else {
    check_disjoint(*src, *tgt);
    op.mat = assemble_cross(*src, *tgt, k);
  }
  return op;
}

DiscreteOperator make_gram(const DiscreteOperator& self_trace) {
  if (self_trace.src.get() != self_trace.tgt.get())
    throw invalid_input_error("gram matrix requires a self-trace operator");
  const auto& mesh = *self_trace.src;
  const int n = mesh.size();
  Eigen::VectorXd w(2 * n);
  for (int i = 0; i < n; ++i) w[i] = w[n + i] = mesh.quad_w[i];
  DiscreteOperator op;
  op.src = self_trace.src;
  op.tgt = self_trace.tgt;
  op.kind = DiscreteOperator::Kind::gram;
  op.mat = w.asDiagonal() * self_trace.mat;
  return op;
}

PotentialValue eval_potential(const BoundaryField& density, cplx x, const KernelConstants& k) {
  const auto& mesh = *density.mesh;
  const double h = mesh.max_spacing();
  double dmin = std::numeric_limits<double>::infinity();
  for (const cplx& p : mesh.nodes) dmin = std::min(dmin, std::abs(x - p));
  if (dmin < 2 * h)
    throw accuracy_error("evaluation point is closer than two mesh spacings to the boundary");

  PotentialValue out{0, 0};
  for (int j = 0; j < mesh.size(); ++j) {
    const double w = mesh.quad_w[j];
    const cplx y = mesh.nodes[j], ny = mesh.normals[j];
    const double G = eval_G(x, y, k);
    const cplx r = x - y;
    const double rho2 = std::norm(r);
    const double logterm = 0.5 * std::log(rho2 / (k.kappa0 * k.kappa0));
    const double G_ny = -one_over_8pi * dot(r, ny) * (2 * logterm + 1);
    const LaplacianBlock lb = eval_laplacian_block(x, y, ny, k);
    out.value += w * (G * density.normal_part[j] + G_ny * density.dirichlet_part[j]);
    out.laplacian +=
        w * (lb.lap_G * density.normal_part[j] + lb.lap_G_ny * density.dirichlet_part[j]);
  }
  return out;
}

CurveOperator::CurveOperator(MeshPtr mesh, const KernelConstants& k) : mesh_(std::move(mesh)) {
  trace_ = assemble_trace(mesh_, mesh_, k);
  lu_.compute(trace_.mat);
  const int n = mesh_->size();
  Eigen::VectorXd one_trace = Eigen::VectorXd::Zero(2 * n);
  one_trace.head(n).setOnes();
  const Eigen::VectorXd q = lu_.solve(one_trace);
  hat_one_ = BoundaryField::zero(mesh_, BoundaryField::Role::density);
  hat_one_.normal_part = q.head(n).cast<cplx>();
  hat_one_.dirichlet_part = q.tail(n).cast<cplx>();
  // <1_hat, (1,0)> = integral of the normal part of 1_hat
  one_pairing_ = flux(hat_one_).real();
  if (!(std::abs(one_pairing_) > 0))
    throw solver_error("degenerate Gram system: <1_hat, 1> vanishes");
}

BoundaryField CurveOperator::solve_density(const BoundaryField& trace) const {
  const int n = mesh_->size();
  Eigen::VectorXcd rhs(2 * n);
  rhs.head(n) = trace.dirichlet_part;
  rhs.tail(n) = trace.normal_part;
  const Eigen::VectorXcd q = solve_complex(lu_, rhs);
  BoundaryField out = BoundaryField::zero(mesh_, BoundaryField::Role::density);
  out.normal_part = q.head(n);
  out.dirichlet_part = q.tail(n);
  return out;
}

cplx CurveOperator::pair_hat_one(const BoundaryField& trace) const {
  return pair_density_trace(hat_one_, trace);
}

BoundaryField CurveOperator::project(const BoundaryField& trace) const {
  const cplx c = pair_hat_one(trace) / one_pairing_;
  BoundaryField out = trace;
  for (int i = 0; i < out.size(); ++i) out.dirichlet_part[i] -= c;
  return out;
}

BlockSystem::BlockSystem(std::vector<MeshPtr> meshes, const KernelConstants& k)
    : meshes_(std::move(meshes)) {
  if (meshes_.empty()) throw invalid_input_error("block system needs at least one mesh");
  offsets_.resize(meshes_.size());
  for (size_t i = 0; i < meshes_.size(); ++i) {
    offsets_[i] = total_;
    total_ += 2 * meshes_[i]->size();
  }
  matrix_.resize(total_, total_);
  for (size_t i = 0; i < meshes_.size(); ++i)
    for (size_t j = 0; j < meshes_.size(); ++j) {
      const auto block = assemble_trace(meshes_[j], meshes_[i], k);
      matrix_.block(offsets_[i], offsets_[j], 2 * meshes_[i]->size(), 2 * meshes_[j]->size()) =
          block.mat;
    }
  lu_.compute(matrix_);
}

std::vector<BoundaryField> BlockSystem::solve(const std::vector<BoundaryField>& rhs_traces) const {
  if (rhs_traces.size() != meshes_.size())
    throw invalid_input_error("block solve needs one rhs trace per mesh");
  Eigen::VectorXcd rhs(total_);
  for (size_t i = 0; i < meshes_.size(); ++i) {
    const int n = meshes_[i]->size();
    rhs.segment(offsets_[i], n) = rhs_traces[i].dirichlet_part;
    rhs.segment(offsets_[i] + n, n) = rhs_traces[i].normal_part;
  }
  const Eigen::VectorXcd x = solve_complex(lu_, rhs);

  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0) {
    Eigen::VectorXcd res(total_);
    res.real() = matrix_ * x.real().eval();
    res.imag() = matrix_ * x.imag().eval();
    res -= rhs;
    if (res.norm() > 1e-10 * rhs_norm)
      throw solver_error("block system residual " + std::to_string(res.norm() / rhs_norm) +
                         " exceeds 1e-10 (rcond " + std::to_string(lu_.rcond()) + ")");
  }

  std::vector<BoundaryField> out;
  out.reserve(meshes_.size());
  for (size_t i = 0; i < meshes_.size(); ++i) {
    const int n = meshes_[i]->size();
    BoundaryField q = BoundaryField::zero(meshes_[i], BoundaryField::Role::density);
    q.normal_part = x.segment(offsets_[i], n);
    q.dirichlet_part = x.segment(offsets_[i] + n, n);
    out.push_back(std::move(q));
  }
  return out;
}

cplx F_value(int k, int m, cplx z) {
  if (k <= m) return std::pow(z, k);
  const int j = k - m;
  return std::conj(z) * std::pow(z, j) / (4.0 * j);
}

cplx F_normal_deriv(int k, int m, cplx z, cplx normal) {
  // grad expressed through n1 + i n2; for F = z^k the normal derivative is
  // k z^{k-1} (n1 + i n2), and for conj(z) z^j / (4j) it is
  // [j conj(z) z^{j-1} (n1 + i n2) + z^j (n1 - i n2)] / (4j).
  if (k <= m) return static_cast<double>(k) * std::pow(z, k - 1) * normal;
  const int j = k - m;
  return (static_cast<double>(j) * std::conj(z) * std::pow(z, j - 1) * normal +
          std::pow(z, j) * std::conj(normal)) /
         (4.0 * j);
}

BoundaryField trace_of_F(int k, int m, const MeshPtr& mesh) {
  BoundaryField f = BoundaryField::zero(mesh, BoundaryField::Role::trace);
  for (int i = 0; i < mesh->size(); ++i) {
    f.dirichlet_part[i] = F_value(k, m, mesh->nodes[i]);
    f.normal_part[i] = F_normal_deriv(k, m, mesh->nodes[i], mesh->normals[i]);
  }
  return f;
}

}  // namespace stokesrec

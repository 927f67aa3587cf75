#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stokesrec/kernel.hpp"
#include "stokesrec/mesh.hpp"

namespace stokesrec {

using MeshPtr = std::shared_ptr<const BoundaryMesh>;

// A pair of complex-valued samples on a mesh. For a density q = (q_n, q_d)
// the components feed the single-layer potential; for a trace p the pair is
// (dirichlet value, neumann derivative). normal_part/dirichlet_part always
// refer to the same physical slots: (q_n, q_d) resp. (p_n = neumann,
// p_d = dirichlet).
struct BoundaryField {
  enum class Role { density, trace };

  MeshPtr mesh;
  Eigen::VectorXcd normal_part;
  Eigen::VectorXcd dirichlet_part;
  Role role = Role::density;

  static BoundaryField zero(MeshPtr mesh, Role role);
  int size() const { return static_cast<int>(normal_part.size()); }
};

// Duality pairing <q, p> = sum w_i (q_n p_d + q_d p_n), extended bilinearly
// to complex fields (no conjugation; conjugate explicitly where needed).
cplx pair_density_trace(const BoundaryField& density, const BoundaryField& trace);

// <q, (1,0)> = integral of the normal component.
cplx flux(const BoundaryField& density);

double field_l2_norm(const BoundaryField& f);

// Dense discretization of the trace-of-single-layer operator from densities
// on `src` to traces on `tgt`. Vector layout: densities [q_n; q_d], traces
// [p_d; p_n]. The matrix is real (the kernels are); it acts on complex data
// componentwise.
struct DiscreteOperator {
  enum class Kind { trace, gram };

  Eigen::MatrixXd mat;
  MeshPtr src;
  MeshPtr tgt;
  Kind kind = Kind::trace;

  BoundaryField apply(const BoundaryField& density) const;
};

// Kress/Martensen product-quadrature weights R_j for the periodic logarithm
// ln(4 sin^2((t-s)/2)); index by |i-j| (n even).
Eigen::VectorXd kress_log_weights(int n);

// Assemble the trace operator. src == tgt uses singularity-corrected
// quadrature (spectral for analytic curves); distinct meshes must be disjoint
// (geometry_error otherwise) and use the plain trapezoidal rule.
DiscreteOperator assemble_trace(const MeshPtr& src, const MeshPtr& tgt, const KernelConstants& k);

// Weighted pairing matrix <e_i, S e_j> of a self-trace operator; symmetric,
// and positive definite when the kernel constants satisfy the ellipticity
// bounds.
DiscreteOperator make_gram(const DiscreteOperator& self_trace);

// Potential and its Laplacian at a point off the mesh (>= 2 mesh spacings
// away; accuracy_error otherwise).
struct PotentialValue {
  cplx value;
  cplx laplacian;
};
PotentialValue eval_potential(const BoundaryField& density, cplx x, const KernelConstants& k);

// Cached single-curve machinery: self-trace factorization, the density of the
// indicator trace 1_Gamma, and the orthogonal projection onto the
// codimension-one subspace H(Gamma) (fields with vanishing <1_hat, .>).
class CurveOperator {
public:
  CurveOperator(MeshPtr mesh, const KernelConstants& k);

  const MeshPtr& mesh() const { return mesh_; }
  const DiscreteOperator& trace_op() const { return trace_; }

  // S^{-1} p for a trace field (direct dense solve on the cached LU).
  BoundaryField solve_density(const BoundaryField& trace) const;

  // density of the indicator trace (1, 0)
  const BoundaryField& hat_one() const { return hat_one_; }

  // <1_hat, p>
  cplx pair_hat_one(const BoundaryField& trace) const;

  // p - (<1_hat, p>/<1_hat, 1>) * (1,0)
  BoundaryField project(const BoundaryField& trace) const;

private:
  MeshPtr mesh_;
  DiscreteOperator trace_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  BoundaryField hat_one_;
  double one_pairing_ = 0;
};

// All meshes coupled: block matrix of every source/target trace pair,
// factored once; solves the integral-equation systems for prescribed total
// traces on every curve.
class BlockSystem {
public:
  BlockSystem(std::vector<MeshPtr> meshes, const KernelConstants& k);

  const std::vector<MeshPtr>& meshes() const { return meshes_; }

  // rhs_traces[i] is the prescribed total trace on mesh i; returns the
  // density on each mesh. Residual checked to 1e-10 relative
  // (solver_error with a condition estimate otherwise).
  std::vector<BoundaryField> solve(const std::vector<BoundaryField>& rhs_traces) const;

  double rcond() const { return lu_.rcond(); }

private:
  std::vector<MeshPtr> meshes_;
  std::vector<int> offsets_;
  int total_ = 0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::MatrixXd matrix_;
};

// Boundary data F_k of the measurement recipe: F_k = z^k for k = 1..m and
// F_k = conj(z) z^{k-m} / (4(k-m)) for k = m+1..2m-1 (all biharmonic).
cplx F_value(int k, int m, cplx z);
cplx F_normal_deriv(int k, int m, cplx z, cplx normal);
BoundaryField trace_of_F(int k, int m, const MeshPtr& mesh);

// The synthetic measurement set: boundary data f_k (traces on Gamma0,
// projected into H(Gamma0)) and the measured densities q0_k with
// V_Gamma f_k = q0_k, plus provenance.
struct MeasurementSet {
  int m = 0;
  MeshPtr gamma0;
  KernelConstants kc;
  std::vector<BoundaryField> f;   // 2m-1 traces
  std::vector<BoundaryField> q0;  // 2m-1 densities
  std::string scenario_hash;
  double noise_level = 0;
  std::uint64_t seed = 0;

  int count() const { return static_cast<int>(f.size()); }
};

// Full forward state, for diagnostics and tests; MeasurementSet is the
// serializable subset.
struct ForwardSolution {
  MeasurementSet measurements;
  std::vector<MeshPtr> meshes;                        // outer first
  std::vector<std::vector<BoundaryField>> q_tilde;    // [k][mesh]
  Eigen::MatrixXcd alpha;                             // (N+1) x (2m-1)
};

// Canonical hex digest of the scenario description (provenance stamp).
std::string scenario_fingerprint(const Scenario& scenario);

ForwardSolution solve_forward(const Scenario& scenario, int m,
                              std::optional<KernelConstants> kc = std::nullopt);

MeasurementSet forward_measurements(const Scenario& scenario, int m,
                                    std::optional<KernelConstants> kc = std::nullopt);

// Additive Gaussian perturbation of the measured densities, scaled so the
// expected relative L2(Gamma0) error equals `level`; deterministic in `seed`.
MeasurementSet apply_noise(const MeasurementSet& ms, double level, std::uint64_t seed);

}  // namespace stokesrec

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fockbench/abstract.hpp"
#include "fockbench/boson.hpp"
#include "fockbench/fermion.hpp"
#include "fockbench/linalg.hpp"
#include "fockbench/weyl.hpp"

namespace fockbench::yukawa {

using Vector3 = Eigen::Vector3d;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

// Weighted momentum quadrature, closed under p → −p so negative-momentum
// spinors are table lookups.
struct MomentumGrid {
  std::vector<Vector3> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
  // index of −points[i]
  int negated_index(int i) const;
  void validate() const;  // distinct points, positive weights, closure

  // true when every point of `coarse` appears here with the same weight
  bool contains(const MomentumGrid& coarse) const;
  // for nested grids: map from coarse point index to this grid's index
  std::vector<int> embedding_from(const MomentumGrid& coarse) const;
};

// radial shells along ±z: r = 0 gives the origin, r > 0 the pair ±r·ẑ
MomentumGrid grid_from_shells(const std::vector<double>& radii,
                              const std::vector<double>& shell_weights = {});

// Dirac representation: β = diag(I2, −I2), α^j off-diagonal σ^j blocks.
Matrix4 alpha_matrix(int j);   // j = 0,1,2 for x,y,z
Matrix4 beta_matrix();
Matrix4 dirac_hamiltonian(const Vector3& p, double mass);  // α·p + βM

// Eigendecomposition of α·p + βM: u spinors span the +ω_M(p) eigenspace,
// v spinors the −ω_M(p) one; orthonormal, deterministic phases (dominant
// component real positive), spin labels from the dominant 2-block index.
struct DiracSpinors {
  std::array<Vector4, 2> u;  // index 0 ↔ s=+1/2, 1 ↔ s=−1/2
  std::array<Vector4, 2> v;
  double omega = 0.0;
};
DiracSpinors dirac_spinors(const Vector3& p, double mass);

double dispersion(const Vector3& p, double mass);  // √(p² + M²)

struct CutoffProfile {
  enum class Kind { sharp, gaussian };
  Kind kind = Kind::sharp;
  double lambda = 1.0;     // radius / width
  double amplitude = 1.0;

  double operator()(const Vector3& p) const;
  static CutoffProfile parse(const std::string& name, double lambda,
                             double amplitude);
  std::string name() const;
};

struct SpatialCutoff {
  std::vector<Vector3> points;
  std::vector<double> weights;
  std::vector<double> chi;  // χ_I values, real

  int size() const { return static_cast<int>(points.size()); }
  double l1_norm() const;  // Σ w |χ|
  void validate() const;
};

struct YukawaConfig {
  double fermion_mass = 1.0;
  double boson_mass = 0.75;
  double kappa = 0.0;
  MomentumGrid fermion_grid;
  MomentumGrid boson_grid;
  int boson_n_max = 2;
  int fermion_occupation_cap = 0;  // 0 = full space
  SpatialCutoff spatial;
  CutoffProfile cutoff_dirac;
  CutoffProfile cutoff_kg;
  double solver_tol = 1e-11;
  std::uint64_t seed = 42;

  double nu() const { return std::min(fermion_mass, boson_mass); }
  void validate() const;
};

// the desk-scale instance used by the verification suites
YukawaConfig tiny_config(double kappa = 0.1);
// three nested refinement levels for the gap probe
std::vector<YukawaConfig> hvz_configs(double kappa);

// Undressed coefficient tables: column p of f[s] row l holds
// χ_D(p)·u_s^l(p)/√((2π)³ω_M(p)); g uses v_s^l(−p). The plane-wave factor
// e^{−ip·x} is applied at assembly time.
struct FieldCoefficients {
  std::array<DenseMatrix, 2> f;  // 4 × P per spin
  std::array<DenseMatrix, 2> g;
  std::vector<double> omega;     // ω_M per grid point

  double f_norm(int s, int l, const MomentumGrid& grid) const;
  double g_norm(int s, int l, const MomentumGrid& grid) const;
};

FieldCoefficients field_coefficients(const YukawaConfig& config);

// Fermion modes: index = channel · P + grid index, channels ordered
// (b_{+1/2}, b_{−1/2}, d_{+1/2}, d_{−1/2}).
enum Channel { kParticleUp = 0, kParticleDown = 1, kAntiUp = 2, kAntiDown = 3 };

struct YukawaSystem {
  YukawaConfig config;
  FieldCoefficients coeffs;
  AbstractSystem system;
  SparseOperator interaction_unscaled;  // κ = 1

  const fermion::FermionBasis& fermion_basis() const {
    return system.fermion_basis;
  }
  const boson::BosonBasis& boson_basis() const { return *system.boson_basis; }
  int grid_size() const { return config.fermion_grid.size(); }

  // one-particle mode vector for a grid function on one channel, quadrature
  // weights folded in (√w), so mode inner products realize Σ w f̄ g
  ComplexVector embed_channel(Channel c, const ComplexVector& grid_fn) const;
  // boson mode vector for a grid function on the boson grid
  ComplexVector embed_boson(const ComplexVector& grid_fn) const;

  // weighted one-particle inner products (f, g) = Σ_p w_p conj(f_p) g_p
  Complex grid_inner_fermion(const ComplexVector& a,
                             const ComplexVector& b) const;
  Complex grid_inner_boson(const ComplexVector& a,
                           const ComplexVector& b) const;

  // dressed coefficient grid functions f^l_{s,x}, g^l_{s,x}, h_x
  ComplexVector dressed_f(int s, int l, const Vector3& x) const;
  ComplexVector dressed_g(int s, int l, const Vector3& x) const;
  ComplexVector dressed_h(const Vector3& x) const;
};

YukawaSystem build_hamiltonian(const YukawaConfig& config);

// ψ_l(x) = Σ_s ( b_s(f^l_{s,x}) + d*_s(g^l_{s,x}) ), four components
std::array<SparseOperator, 4> psi_field(const YukawaSystem& sys,
                                        const Vector3& x);
// φ(x) = (a(h_x) + a*(h_x)) / √2 on the boson factor
SparseOperator phi_field(const YukawaSystem& sys, const Vector3& x);
// Σ_{l,l'} β_{l,l'} ψ*_l(x) ψ_{l'}(x) on the fermion factor
SparseOperator psi_bar_psi(const YukawaSystem& sys, const Vector3& x);
// Σ_x w_x χ_I(x) · ψ̄ψ(x) ⊗ φ(x)  (κ = 1)
SparseOperator build_interaction(const YukawaConfig& config);

struct DefectRow {
  std::string name;
  double defect = 0.0;
};

struct DefectReport {
  std::vector<DefectRow> rows;
  double max_defect = 0.0;
  void add(std::string name, double defect);
};

// Dual assembly of the interaction commutators: matrix commutator versus
// the weighted-sum formulas, for [H_I, b_s(ξ)⊗I], [H_I, d_s(ξ)⊗I], their
// adjoint-channel versions with η, and [H_I, I⊗a*(ζ)] (the latter on the
// boson sub-cutoff sector).
DefectReport commutator_formula_check(const YukawaSystem& sys,
                                      const ComplexVector& xi,
                                      const ComplexVector& eta,
                                      const ComplexVector& zeta);

struct RelativeBoundRow {
  double eps = 0.0;
  double a = 0.0;  // coefficient of ‖H₀Ψ‖
  double b = 0.0;  // coefficient of ‖Ψ‖
  double min_margin = 0.0;
};

struct RelativeBoundReport {
  double chi_l1 = 0.0;
  double c_psi = 0.0;          // ΣΣ |β| (‖f‖+‖g‖)(‖f‖+‖g‖)
  double h_norm = 0.0;
  double h_over_sqrt_omega = 0.0;
  std::vector<RelativeBoundRow> rows;
  double min_margin = 0.0;
};

RelativeBoundReport relative_bound_report(const YukawaSystem& sys,
                                          const std::vector<double>& eps_list,
                                          int samples, std::uint64_t seed = 5);

struct GapLevel {
  int level = 0;
  Index dim = 0;
  double e0 = 0.0;
  double gap = 0.0;
  std::map<double, double> min_residual;  // per λ
  std::map<double, std::string> branch;   // per λ
};

struct GapReport {
  double nu = 0.0;
  double kappa = 0.0;
  std::vector<GapLevel> levels;
  std::vector<weyl::ProbeReport> reports;  // level-major, λ-minor
  std::vector<double> lambdas;
  bool residuals_nonincreasing = true;  // per λ across levels, tol 1e-6
  double max_residual_increase = 0.0;
  double gap_vs_nu_defect = 0.0;  // |gap − ν| at the finest level
  double min_slack = 0.0;
};

struct HvzOptions {
  std::vector<double> eps_list{0.05, 0.1, 0.2};
  int family_size = 5;
  double monotonicity_tol = 1e-6;
  double solver_tol = 1e-11;
};

GapReport hvz_gap_probe(const std::vector<YukawaConfig>& configs,
                        const std::vector<double>& lambda_grid,
                        const HvzOptions& opts = {});

// Gaussian packets over the channel-0 (resp. boson) modes, centered at
// dispersion value λ with shrinking widths, orthonormalized across the
// family.
std::vector<ComplexVector> fermion_packet_family(const YukawaSystem& sys,
                                                 double lambda, int count);
std::vector<ComplexVector> boson_packet_family(const YukawaSystem& sys,
                                               double lambda, int count);

bool is_nested(const YukawaConfig& coarse, const YukawaConfig& fine);

}  // namespace fockbench::yukawa

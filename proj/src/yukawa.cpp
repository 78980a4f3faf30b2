#include "fockbench/yukawa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fockbench/rng.hpp"

namespace fockbench::yukawa {

namespace {

constexpr double kTwoPiCubed = 248.05021344239853;  // (2π)³

const Eigen::Matrix2cd& pauli(int j) {
  static const std::array<Eigen::Matrix2cd, 3> sigma = [] {
    std::array<Eigen::Matrix2cd, 3> s;
    const Complex i(0, 1);
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -i, i, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return sigma[j];
}

}  // namespace

int MomentumGrid::negated_index(int i) const {
  const Vector3 target = -points[i];
  for (int j = 0; j < size(); ++j)
    if ((points[j] - target).norm() <= 1e-12) return j;
  detail::require(false, "momentum grid not closed under negation");
  return -1;
}

void MomentumGrid::validate() const {
  detail::require(size() >= 1, "momentum grid must be nonempty");
  detail::require(points.size() == weights.size(),
                  "momentum grid: points/weights length mismatch");
  for (double w : weights)
    detail::require(w > 0.0, "momentum grid weights must be positive");
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      detail::require((points[i] - points[j]).norm() > 1e-12,
                      "momentum grid points must be distinct");
  for (int i = 0; i < size(); ++i) negated_index(i);  // throws when open
}

bool MomentumGrid::contains(const MomentumGrid& coarse) const {
  for (int i = 0; i < coarse.size(); ++i) {
    bool found = false;
    for (int j = 0; j < size(); ++j) {
      if ((points[j] - coarse.points[i]).norm() <= 1e-12 &&
          std::abs(weights[j] - coarse.weights[i]) <= 1e-12) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<int> MomentumGrid::embedding_from(const MomentumGrid& coarse) const {
  std::vector<int> map(coarse.size(), -1);
  for (int i = 0; i < coarse.size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if ((points[j] - coarse.points[i]).norm() <= 1e-12) {
        map[i] = j;
        break;
      }
    }
    detail::require(map[i] >= 0, "grids are not nested");
  }
  return map;
}

MomentumGrid grid_from_shells(const std::vector<double>& radii,
                              const std::vector<double>& shell_weights) {
  detail::require(shell_weights.empty() || shell_weights.size() == radii.size(),
                  "shell weights must match shell radii");
  MomentumGrid grid;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double w = shell_weights.empty() ? 1.0 : shell_weights[i];
    detail::require(r >= 0.0, "shell radius must be nonnegative");
    if (r == 0.0) {
      grid.points.emplace_back(0, 0, 0);
      grid.weights.push_back(w);
    } else {
      grid.points.emplace_back(0, 0, r);
      grid.weights.push_back(w);
      grid.points.emplace_back(0, 0, -r);
      grid.weights.push_back(w);
    }
  }
  grid.validate();
  return grid;
}

Matrix4 alpha_matrix(int j) {
  detail::require(j >= 0 && j < 3, "alpha index out of range");
  Matrix4 a = Matrix4::Zero();
  a.block<2, 2>(0, 2) = pauli(j);
  a.block<2, 2>(2, 0) = pauli(j);
  return a;
}

Matrix4 beta_matrix() {
  Matrix4 b = Matrix4::Zero();
  b(0, 0) = 1;
  b(1, 1) = 1;
  b(2, 2) = -1;
  b(3, 3) = -1;
  return b;
}

Matrix4 dirac_hamiltonian(const Vector3& p, double mass) {
  Matrix4 h = mass * beta_matrix();
  for (int j = 0; j < 3; ++j) h += p[j] * alpha_matrix(j);
  return h;
}

double dispersion(const Vector3& p, double mass) {
  return std::sqrt(p.squaredNorm() + mass * mass);
}

DiracSpinors dirac_spinors(const Vector3& p, double mass) {
  detail::require(mass > 0.0, "fermion mass must be positive");
  DiracSpinors out;
  out.omega = dispersion(p, mass);

  // closed-form eigenvectors of α·p + βM in this representation; the
  // dominant component sits in the 2-block selected by the spin label and
  // is real positive by construction
  Eigen::Matrix2cd sigma_p = Eigen::Matrix2cd::Zero();
  for (int j = 0; j < 3; ++j) sigma_p += p[j] * pauli(j);
  const double norm_factor = std::sqrt((out.omega + mass) / (2.0 * out.omega));
  const Eigen::Matrix2cd mix = sigma_p / (out.omega + mass);

  for (int s = 0; s < 2; ++s) {
    Eigen::Vector2cd chi = Eigen::Vector2cd::Zero();
    chi[s] = 1.0;
    const Eigen::Vector2cd mixed = mix * chi;
    Vector4 u, v;
    u << chi[0], chi[1], mixed[0], mixed[1];
    v << -mixed[0], -mixed[1], chi[0], chi[1];
    out.u[s] = norm_factor * u;
    out.v[s] = norm_factor * v;
  }
  return out;
}

double CutoffProfile::operator()(const Vector3& p) const {
  const double r = p.norm();
  switch (kind) {
    case Kind::sharp:
      return r <= lambda ? amplitude : 0.0;
    case Kind::gaussian:
      return amplitude * std::exp(-r * r / (2.0 * lambda * lambda));
  }
  return 0.0;
}

CutoffProfile CutoffProfile::parse(const std::string& name, double lambda,
                                   double amplitude) {
  CutoffProfile c;
  if (name == "sharp")
    c.kind = Kind::sharp;
  else if (name == "gaussian")
    c.kind = Kind::gaussian;
  else
    detail::require(false, "unknown cutoff profile '" + name + "'");
  detail::require(lambda > 0.0, "cutoff scale must be positive");
  c.lambda = lambda;
  c.amplitude = amplitude;
  return c;
}

std::string CutoffProfile::name() const {
  return kind == Kind::sharp ? "sharp" : "gaussian";
}

double SpatialCutoff::l1_norm() const {
  double sum = 0.0;
  for (int i = 0; i < size(); ++i) sum += weights[i] * std::abs(chi[i]);
  return sum;
}

void SpatialCutoff::validate() const {
  detail::require(size() >= 1, "spatial cutoff needs at least one point");
  detail::require(points.size() == weights.size() &&
                      points.size() == chi.size(),
                  "spatial cutoff: length mismatch");
  for (double w : weights)
    detail::require(w > 0.0, "spatial weights must be positive");
  detail::require(std::isfinite(l1_norm()), "spatial cutoff not summable");
}

void YukawaConfig::validate() const {
  detail::require(fermion_mass > 0.0 && boson_mass > 0.0,
                  "masses must be positive");
  fermion_grid.validate();
  boson_grid.validate();
  detail::require(boson_n_max >= 1, "boson occupancy cutoff must be >= 1");
  detail::require(fermion_occupation_cap >= 0,
                  "fermion occupation cap must be nonnegative");
  spatial.validate();
}

FieldCoefficients field_coefficients(const YukawaConfig& config) {
  config.validate();
  const int P = config.fermion_grid.size();
  FieldCoefficients out;
  out.f = {DenseMatrix::Zero(4, P), DenseMatrix::Zero(4, P)};
  out.g = {DenseMatrix::Zero(4, P), DenseMatrix::Zero(4, P)};
  out.omega.resize(P);

  std::vector<DiracSpinors> spinors(P);
  for (int i = 0; i < P; ++i)
    spinors[i] =
        dirac_spinors(config.fermion_grid.points[i], config.fermion_mass);

  for (int i = 0; i < P; ++i) {
    const Vector3& p = config.fermion_grid.points[i];
    out.omega[i] = spinors[i].omega;
    const double chi = config.cutoff_dirac(p);
    const double denom = std::sqrt(kTwoPiCubed * spinors[i].omega);
    const int ineg = config.fermion_grid.negated_index(i);
    for (int s = 0; s < 2; ++s) {
      for (int l = 0; l < 4; ++l) {
        out.f[s](l, i) = chi * spinors[i].u[s][l] / denom;
        out.g[s](l, i) = chi * spinors[ineg].v[s][l] / denom;
      }
    }
  }
  return out;
}

double FieldCoefficients::f_norm(int s, int l, const MomentumGrid& grid) const {
  double sum = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    sum += grid.weights[i] * std::norm(f[s](l, i));
  return std::sqrt(sum);
}

double FieldCoefficients::g_norm(int s, int l, const MomentumGrid& grid) const {
  double sum = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    sum += grid.weights[i] * std::norm(g[s](l, i));
  return std::sqrt(sum);
}

ComplexVector YukawaSystem::embed_channel(Channel c,
                                          const ComplexVector& grid_fn) const {
  const int P = grid_size();
  detail::require(grid_fn.size() == P,
                  "channel embedding: grid function has wrong length");
  ComplexVector v = ComplexVector::Zero(4 * P);
  for (int i = 0; i < P; ++i)
    v[static_cast<int>(c) * P + i] =
        std::sqrt(config.fermion_grid.weights[i]) * grid_fn[i];
  return v;
}

ComplexVector YukawaSystem::embed_boson(const ComplexVector& grid_fn) const {
  const int P = config.boson_grid.size();
  detail::require(grid_fn.size() == P,
                  "boson embedding: grid function has wrong length");
  ComplexVector v(P);
  for (int i = 0; i < P; ++i)
    v[i] = std::sqrt(config.boson_grid.weights[i]) * grid_fn[i];
  return v;
}

Complex YukawaSystem::grid_inner_fermion(const ComplexVector& a,
                                         const ComplexVector& b) const {
  Complex sum = 0.0;
  for (int i = 0; i < grid_size(); ++i)
    sum += config.fermion_grid.weights[i] * std::conj(a[i]) * b[i];
  return sum;
}

Complex YukawaSystem::grid_inner_boson(const ComplexVector& a,
                                       const ComplexVector& b) const {
  Complex sum = 0.0;
  for (int i = 0; i < config.boson_grid.size(); ++i)
    sum += config.boson_grid.weights[i] * std::conj(a[i]) * b[i];
  return sum;
}

ComplexVector YukawaSystem::dressed_f(int s, int l, const Vector3& x) const {
  const int P = grid_size();
  ComplexVector v(P);
  for (int i = 0; i < P; ++i) {
    const double phase = -config.fermion_grid.points[i].dot(x);
    v[i] = coeffs.f[s](l, i) * std::polar(1.0, phase);
  }
  return v;
}

ComplexVector YukawaSystem::dressed_g(int s, int l, const Vector3& x) const {
  const int P = grid_size();
  ComplexVector v(P);
  for (int i = 0; i < P; ++i) {
    const double phase = -config.fermion_grid.points[i].dot(x);
    v[i] = coeffs.g[s](l, i) * std::polar(1.0, phase);
  }
  return v;
}

ComplexVector YukawaSystem::dressed_h(const Vector3& x) const {
  const int P = config.boson_grid.size();
  ComplexVector v(P);
  for (int i = 0; i < P; ++i) {
    const Vector3& k = config.boson_grid.points[i];
    const double h = config.cutoff_kg(k) /
                     std::sqrt(kTwoPiCubed * dispersion(k, config.boson_mass));
    v[i] = h * std::polar(1.0, k.dot(x));
  }
  return v;
}

std::array<SparseOperator, 4> psi_field(const YukawaSystem& sys,
                                        const Vector3& x) {
  const auto& basis = sys.fermion_basis();
  std::array<SparseOperator, 4> psi;
  for (int l = 0; l < 4; ++l) {
    SparseOperator op = zero_op(basis.dim(), basis.dim());
    for (int s = 0; s < 2; ++s) {
      op = op + fermion::annihilation(
                    basis, sys.embed_channel(static_cast<Channel>(s),
                                             sys.dressed_f(s, l, x)));
      op = op + fermion::creation(
                    basis, sys.embed_channel(static_cast<Channel>(2 + s),
                                             sys.dressed_g(s, l, x)));
    }
    psi[l] = std::move(op);
  }
  return psi;
}

SparseOperator phi_field(const YukawaSystem& sys, const Vector3& x) {
  const ComplexVector h = sys.embed_boson(sys.dressed_h(x));
  const auto& basis = sys.boson_basis();
  SparseOperator op = boson::annihilation(basis, h) + boson::creation(basis, h);
  op = (1.0 / std::sqrt(2.0)) * op;
  op.hermitian = true;
  return op;
}

SparseOperator psi_bar_psi(const YukawaSystem& sys, const Vector3& x) {
  const auto psi = psi_field(sys, x);
  const Matrix4 beta = beta_matrix();
  SparseOperator total =
      zero_op(sys.fermion_basis().dim(), sys.fermion_basis().dim());
  for (int l = 0; l < 4; ++l)
    for (int lp = 0; lp < 4; ++lp) {
      if (beta(l, lp) == Complex(0, 0)) continue;
      total = total + beta(l, lp) * (adjoint(psi[l]) * psi[lp]);
    }
  total.hermitian = true;
  return total;
}

namespace {

SparseOperator assemble_interaction(const YukawaSystem& sys) {
  const Index fd = sys.fermion_basis().dim();
  const Index bd = sys.boson_basis().dim();
  SparseOperator total = zero_op(fd * bd, fd * bd);
  for (int ix = 0; ix < sys.config.spatial.size(); ++ix) {
    const Vector3& x = sys.config.spatial.points[ix];
    const double weight =
        sys.config.spatial.weights[ix] * sys.config.spatial.chi[ix];
    if (weight == 0.0) continue;
    total = total + weight * kron(psi_bar_psi(sys, x), phi_field(sys, x));
  }
  const double defect = hermiticity_defect(total);
  detail::require(defect <= 1e-12,
                  "interaction assembly lost hermiticity (defect " +
                      std::to_string(defect) + ")");
  total.hermitian = true;
  return total;
}

}  // namespace

YukawaSystem build_hamiltonian(const YukawaConfig& config) {
  config.validate();
  const int P = config.fermion_grid.size();
  const int Pb = config.boson_grid.size();

  const int cap = config.fermion_occupation_cap == 0
                      ? 4 * P
                      : config.fermion_occupation_cap;
  fermion::FermionBasis fbasis(4 * P, std::min(cap, 4 * P));
  boson::BosonBasis bbasis(Pb, config.boson_n_max);

  YukawaSystem sys{config,
                   field_coefficients(config),
                   AbstractSystem{fbasis, OneParticleOperator(DenseMatrix::Identity(1, 1)),
                                  SparseOperator{}, SparseOperator{},
                                  SparseOperator{}, SparseOperator{},
                                  std::nullopt, std::nullopt},
                   SparseOperator{}};

  DenseMatrix kmat = DenseMatrix::Zero(4 * P, 4 * P);
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < P; ++i)
      kmat(c * P + i, c * P + i) = sys.coeffs.omega[i];
  OneParticleOperator K(kmat);

  DenseMatrix smat = DenseMatrix::Zero(Pb, Pb);
  for (int i = 0; i < Pb; ++i)
    smat(i, i) = dispersion(config.boson_grid.points[i], config.boson_mass);
  OneParticleOperator S(smat);

  const SparseOperator t_op = boson::second_quantization(bbasis, S);

  // interaction needs the bases and coefficient tables in place
  sys.system.fermion_basis = fbasis;
  sys.system.boson_basis = bbasis;
  sys.interaction_unscaled = assemble_interaction(sys);

  sys.system = make_system(std::move(fbasis), std::move(K), t_op,
                           config.kappa * sys.interaction_unscaled);
  sys.system.boson_basis = std::move(bbasis);
  sys.system.boson_dispersion = std::move(S);
  return sys;
}

SparseOperator build_interaction(const YukawaConfig& config) {
  YukawaConfig unit = config;
  unit.kappa = 1.0;
  return build_hamiltonian(unit).interaction_unscaled;
}

void DefectReport::add(std::string name, double defect) {
  rows.push_back({std::move(name), defect});
  max_defect = std::max(max_defect, defect);
}

DefectReport commutator_formula_check(const YukawaSystem& sys,
                                      const ComplexVector& xi,
                                      const ComplexVector& eta,
                                      const ComplexVector& zeta) {
  const int P = sys.grid_size();
  detail::require(xi.size() == P && eta.size() == P,
                  "commutator check: fermion arguments must be grid functions");
  detail::require(zeta.size() == sys.config.boson_grid.size(),
                  "commutator check: zeta must live on the boson grid");

  const auto& fbasis = sys.fermion_basis();
  const auto& bbasis = sys.boson_basis();
  const SparseOperator& hi = sys.interaction_unscaled;
  const Matrix4 beta = beta_matrix();
  const Index fd = fbasis.dim();
  const Index bd = bbasis.dim();

  DefectReport report;

  struct XPoint {
    Vector3 x;
    double weight;
    std::array<SparseOperator, 4> psi;
    SparseOperator phi;
  };
  std::vector<XPoint> pts;
  for (int ix = 0; ix < sys.config.spatial.size(); ++ix) {
    XPoint pt;
    pt.x = sys.config.spatial.points[ix];
    pt.weight = sys.config.spatial.weights[ix] * sys.config.spatial.chi[ix];
    pt.psi = psi_field(sys, pt.x);
    pt.phi = phi_field(sys, pt.x);
    pts.push_back(std::move(pt));
  }

  const auto lift_f = [&](const SparseOperator& a) {
    return kron(a, identity_op(bd));
  };

  for (int s = 0; s < 2; ++s) {
    const std::string tag = s == 0 ? "+1/2" : "-1/2";

    // [H_I, b_s(ξ)⊗I] = −Σ_x w χ Σ β_{l,l'} (ξ, f^l_{s,x}) ψ_{l'}(x)⊗φ(x)
    {
      const SparseOperator op = lift_f(fermion::annihilation(
          fbasis, sys.embed_channel(static_cast<Channel>(s), xi)));
      SparseOperator formula = zero_op(fd * bd, fd * bd);
      for (const auto& pt : pts)
        for (int l = 0; l < 4; ++l)
          for (int lp = 0; lp < 4; ++lp) {
            if (beta(l, lp) == Complex(0, 0)) continue;
            const Complex w = -pt.weight * beta(l, lp) *
                              sys.grid_inner_fermion(xi, sys.dressed_f(s, l, pt.x));
            if (w == Complex(0, 0)) continue;
            formula = formula + w * kron(pt.psi[lp], pt.phi);
          }
      report.add("b_" + tag, max_abs_diff(commutator(hi, op), formula));
    }

    // [H_I, d_s(ξ)⊗I] = +Σ_x w χ Σ β_{l,l'} (ξ, g^{l'}_{s,x}) ψ*_l(x)⊗φ(x)
    {
      const SparseOperator op = lift_f(fermion::annihilation(
          fbasis, sys.embed_channel(static_cast<Channel>(2 + s), xi)));
      SparseOperator formula = zero_op(fd * bd, fd * bd);
      for (const auto& pt : pts)
        for (int l = 0; l < 4; ++l)
          for (int lp = 0; lp < 4; ++lp) {
            if (beta(l, lp) == Complex(0, 0)) continue;
            const Complex w =
                pt.weight * beta(l, lp) *
                sys.grid_inner_fermion(xi, sys.dressed_g(s, lp, pt.x));
            if (w == Complex(0, 0)) continue;
            formula = formula + w * kron(adjoint(pt.psi[l]), pt.phi);
          }
      report.add("d_" + tag, max_abs_diff(commutator(hi, op), formula));
    }

    // [H_I, b*_s(η)⊗I] = +Σ_x w χ Σ β_{l,l'} (f^{l'}_{s,x}, η) ψ*_l(x)⊗φ(x)
    {
      const SparseOperator op = lift_f(fermion::creation(
          fbasis, sys.embed_channel(static_cast<Channel>(s), eta)));
      SparseOperator formula = zero_op(fd * bd, fd * bd);
      for (const auto& pt : pts)
        for (int l = 0; l < 4; ++l)
          for (int lp = 0; lp < 4; ++lp) {
            if (beta(l, lp) == Complex(0, 0)) continue;
            const Complex w =
                pt.weight * beta(l, lp) *
                sys.grid_inner_fermion(sys.dressed_f(s, lp, pt.x), eta);
            if (w == Complex(0, 0)) continue;
            formula = formula + w * kron(adjoint(pt.psi[l]), pt.phi);
          }
      report.add("b*_" + tag, max_abs_diff(commutator(hi, op), formula));
    }

    // [H_I, d*_s(η)⊗I] = −Σ_x w χ Σ β_{l,l'} (g^l_{s,x}, η) ψ_{l'}(x)⊗φ(x)
    {
      const SparseOperator op = lift_f(fermion::creation(
          fbasis, sys.embed_channel(static_cast<Channel>(2 + s), eta)));
      SparseOperator formula = zero_op(fd * bd, fd * bd);
      for (const auto& pt : pts)
        for (int l = 0; l < 4; ++l)
          for (int lp = 0; lp < 4; ++lp) {
            if (beta(l, lp) == Complex(0, 0)) continue;
            const Complex w =
                -pt.weight * beta(l, lp) *
                sys.grid_inner_fermion(sys.dressed_g(s, l, pt.x), eta);
            if (w == Complex(0, 0)) continue;
            formula = formula + w * kron(pt.psi[lp], pt.phi);
          }
      report.add("d*_" + tag, max_abs_diff(commutator(hi, op), formula));
    }
  }

  // [H_I, I⊗a*(ζ)] = (1/√2) Σ_x w χ (h_x, ζ) ψ̄ψ(x)⊗I on the sub-cutoff
  // sector (the CCR behind it stop at the occupancy ceiling)
  {
    const SparseOperator op =
        kron(identity_op(fd),
             boson::creation(bbasis, sys.embed_boson(zeta)));
    SparseOperator formula = zero_op(fd * bd, fd * bd);
    for (const auto& pt : pts) {
      const Complex w = pt.weight / std::sqrt(2.0) *
                        sys.grid_inner_boson(sys.dressed_h(pt.x), zeta);
      if (w == Complex(0, 0)) continue;
      formula = formula + w * kron(psi_bar_psi(sys, pt.x), identity_op(bd));
    }
    const SparseOperator sub =
        kron(identity_op(fd), boson::sub_cutoff_projector(bbasis));
    const SparseOperator diff = (commutator(hi, op) - formula) * sub;
    report.add("a*", max_abs(diff));
  }

  return report;
}

RelativeBoundReport relative_bound_report(const YukawaSystem& sys,
                                          const std::vector<double>& eps_list,
                                          int samples, std::uint64_t seed) {
  RelativeBoundReport report;
  report.chi_l1 = sys.config.spatial.l1_norm();

  const Matrix4 beta = beta_matrix();
  std::array<std::array<double, 4>, 2> fn{}, gn{};
  for (int s = 0; s < 2; ++s)
    for (int l = 0; l < 4; ++l) {
      fn[s][l] = sys.coeffs.f_norm(s, l, sys.config.fermion_grid);
      gn[s][l] = sys.coeffs.g_norm(s, l, sys.config.fermion_grid);
    }
  double c_psi = 0.0;
  for (int l = 0; l < 4; ++l)
    for (int lp = 0; lp < 4; ++lp)
      for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
          c_psi += std::abs(beta(l, lp)) * (fn[s][l] + gn[s][l]) *
                   (fn[sp][lp] + gn[sp][lp]);
  report.c_psi = c_psi;

  double h2 = 0.0, h2w = 0.0;
  for (int i = 0; i < sys.config.boson_grid.size(); ++i) {
    const Vector3& k = sys.config.boson_grid.points[i];
    const double om = dispersion(k, sys.config.boson_mass);
    const double h = sys.config.cutoff_kg(k) / std::sqrt(kTwoPiCubed * om);
    h2 += sys.config.boson_grid.weights[i] * h * h;
    h2w += sys.config.boson_grid.weights[i] * h * h / om;
  }
  report.h_norm = std::sqrt(h2);
  report.h_over_sqrt_omega = std::sqrt(h2w);

  const SparseOperator& hi = sys.interaction_unscaled;
  const SparseOperator& h0 = sys.system.H0;
  const SparseOperator sub = kron(identity_op(sys.fermion_basis().dim()),
                                  boson::sub_cutoff_projector(sys.boson_basis()));

  rng::Stream stream(seed);
  std::vector<ComplexVector> psis;
  for (int i = 0; i < samples; ++i) {
    ComplexVector psi = sub.apply(stream.unit_vector(sys.system.dim()));
    const double n = psi.norm();
    if (n < 1e-8) continue;
    psis.push_back(psi / n);
  }

  report.min_margin = std::numeric_limits<double>::infinity();
  for (double eps : eps_list) {
    detail::require(eps > 0.0, "relative bound: eps must be positive");
    RelativeBoundRow row;
    row.eps = eps;
    row.a = std::sqrt(2.0) * eps * report.chi_l1 * c_psi *
            report.h_over_sqrt_omega;
    row.b = report.chi_l1 * c_psi *
            (report.h_over_sqrt_omega / (std::sqrt(2.0) * eps) +
             report.h_norm / std::sqrt(2.0));
    row.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& psi : psis) {
      const double lhs = hi.apply(psi).norm();
      const double rhs = row.a * h0.apply(psi).norm() + row.b * psi.norm();
      row.min_margin = std::min(row.min_margin, rhs - lhs);
    }
    report.min_margin = std::min(report.min_margin, row.min_margin);
    report.rows.push_back(row);
  }
  return report;
}

namespace {

std::vector<ComplexVector> packet_family(const std::vector<double>& omegas,
                                         int total_modes,
                                         const std::vector<int>& mode_index,
                                         double lambda, int count) {
  const int P = static_cast<int>(omegas.size());
  double omega_min = omegas[0], omega_max = omegas[0];
  for (double w : omegas) {
    omega_min = std::min(omega_min, w);
    omega_max = std::max(omega_max, w);
  }
  const double sigma0 = std::max(1.0, omega_max - omega_min);

  // modes sorted by distance to the target dispersion value
  std::vector<int> order(P);
  for (int i = 0; i < P; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double da = std::abs(omegas[a] - lambda);
    const double db = std::abs(omegas[b] - lambda);
    return da != db ? da < db : a < b;
  });

  std::vector<ComplexVector> family;
  int fallback = 0;
  for (int n = 0; n < count; ++n) {
    const double sigma = sigma0 * std::pow(0.5, n);
    ComplexVector v = ComplexVector::Zero(total_modes);
    for (int i = 0; i < P; ++i) {
      const double d = (omegas[i] - lambda) / sigma;
      v[mode_index[i]] = std::exp(-0.5 * d * d);
    }
    // orthogonalize across the family; fall back to single modes when the
    // packets collapse onto each other
    for (const auto& prev : family) v -= prev.dot(v) * prev;
    if (v.norm() < 1e-8) {
      v = ComplexVector::Zero(total_modes);
      v[mode_index[order[fallback % P]]] = 1.0;
      ++fallback;
      for (const auto& prev : family) v -= prev.dot(v) * prev;
    }
    if (v.norm() < 1e-8) {
      // space exhausted: reuse the sharpest packet un-orthogonalized
      v = ComplexVector::Zero(total_modes);
      v[mode_index[order[n % P]]] = 1.0;
    }
    family.push_back(v / v.norm());
  }
  return family;
}

}  // namespace

std::vector<ComplexVector> fermion_packet_family(const YukawaSystem& sys,
                                                 double lambda, int count) {
  const int P = sys.grid_size();
  std::vector<int> modes(P);
  for (int i = 0; i < P; ++i) modes[i] = i;  // channel b_{+1/2}
  return packet_family(sys.coeffs.omega, 4 * P, modes, lambda, count);
}

std::vector<ComplexVector> boson_packet_family(const YukawaSystem& sys,
                                               double lambda, int count) {
  const int P = sys.config.boson_grid.size();
  std::vector<double> omegas(P);
  std::vector<int> modes(P);
  for (int i = 0; i < P; ++i) {
    omegas[i] = dispersion(sys.config.boson_grid.points[i],
                           sys.config.boson_mass);
    modes[i] = i;
  }
  return packet_family(omegas, P, modes, lambda, count);
}

bool is_nested(const YukawaConfig& coarse, const YukawaConfig& fine) {
  if (coarse.fermion_mass != fine.fermion_mass ||
      coarse.boson_mass != fine.boson_mass || coarse.kappa != fine.kappa)
    return false;
  if (!fine.fermion_grid.contains(coarse.fermion_grid)) return false;
  if (!fine.boson_grid.contains(coarse.boson_grid)) return false;
  if (fine.boson_n_max < coarse.boson_n_max) return false;
  const int coarse_cap = coarse.fermion_occupation_cap == 0
                             ? 4 * coarse.fermion_grid.size()
                             : coarse.fermion_occupation_cap;
  const int fine_cap = fine.fermion_occupation_cap == 0
                           ? 4 * fine.fermion_grid.size()
                           : fine.fermion_occupation_cap;
  if (fine_cap < std::min(coarse_cap, 4 * coarse.fermion_grid.size()))
    return false;
  const bool grows = fine.fermion_grid.size() > coarse.fermion_grid.size() ||
                     fine.boson_grid.size() > coarse.boson_grid.size() ||
                     fine.boson_n_max > coarse.boson_n_max ||
                     fine_cap > coarse_cap;
  return grows;
}

namespace {

ComplexVector embed_fermion_modes(const ComplexVector& v, int coarse_P,
                                  int fine_P, const std::vector<int>& map) {
  ComplexVector out = ComplexVector::Zero(4 * fine_P);
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < coarse_P; ++i)
      out[c * fine_P + map[i]] = v[c * coarse_P + i];
  return out;
}

ComplexVector embed_boson_modes(const ComplexVector& v,
                                const std::vector<int>& map, int fine_P) {
  ComplexVector out = ComplexVector::Zero(fine_P);
  for (int i = 0; i < v.size(); ++i) out[map[i]] = v[i];
  return out;
}

}  // namespace

GapReport hvz_gap_probe(const std::vector<YukawaConfig>& configs,
                        const std::vector<double>& lambda_grid,
                        const HvzOptions& opts) {
  detail::require(configs.size() >= 2, "gap probe needs at least two levels");
  detail::require(!lambda_grid.empty(), "gap probe needs lambda values");
  for (std::size_t i = 1; i < configs.size(); ++i)
    detail::require(is_nested(configs[i - 1], configs[i]),
                    "gap probe: configs are not nested refinements");

  GapReport report;
  report.nu = configs.front().nu();
  report.kappa = configs.front().kappa;
  report.lambdas = lambda_grid;
  report.min_slack = std::numeric_limits<double>::infinity();

  // branch per λ from the coarsest grids
  std::map<double, bool> bosonic_branch;
  {
    const auto& base = configs.front();
    for (double lam : lambda_grid) {
      double dfermi = std::numeric_limits<double>::infinity();
      for (const auto& p : base.fermion_grid.points)
        dfermi = std::min(dfermi,
                          std::abs(dispersion(p, base.fermion_mass) - lam));
      double dbos = std::numeric_limits<double>::infinity();
      for (const auto& k : base.boson_grid.points)
        dbos = std::min(dbos, std::abs(dispersion(k, base.boson_mass) - lam));
      bosonic_branch[lam] = dbos < dfermi;
    }
  }

  std::vector<YukawaSystem> systems;
  std::vector<Spectrum> spectra;
  const double eps_max =
      *std::max_element(opts.eps_list.begin(), opts.eps_list.end());
  for (const auto& cfg : configs) {
    systems.push_back(build_hamiltonian(cfg));
    spectra.push_back(weyl::window_spectrum(systems.back().system.H, eps_max,
                                            opts.solver_tol));
  }

  // per λ: previous level's family and its argmin member, for carry-forward
  std::map<double, std::vector<ComplexVector>> prev_family;
  std::map<double, int> prev_argmin;

  for (std::size_t lvl = 0; lvl < systems.size(); ++lvl) {
    const auto& sys = systems[lvl];
    const auto& spectrum = spectra[lvl];

    GapLevel level;
    level.level = static_cast<int>(lvl);
    level.dim = sys.system.dim();
    level.e0 = spectrum.ground_energy();
    level.gap = 0.0;
    for (double ev : spectrum.eigenvalues) {
      if (ev > level.e0 + 1e-10) {
        level.gap = ev - level.e0;
        break;
      }
    }

    for (double lam : lambda_grid) {
      const bool bosonic = bosonic_branch[lam];
      std::vector<ComplexVector> family =
          bosonic ? boson_packet_family(sys, lam, opts.family_size)
                  : fermion_packet_family(sys, lam, opts.family_size);

      if (lvl > 0 && prev_family.count(lam)) {
        const auto& coarse_sys = systems[lvl - 1];
        const ComplexVector& best = prev_family[lam][prev_argmin[lam]];
        if (bosonic) {
          const auto map = sys.config.boson_grid.embedding_from(
              coarse_sys.config.boson_grid);
          family[0] =
              embed_boson_modes(best, map, sys.config.boson_grid.size());
        } else {
          const auto map = sys.config.fermion_grid.embedding_from(
              coarse_sys.config.fermion_grid);
          family[0] = embed_fermion_modes(best, coarse_sys.grid_size(),
                                          sys.grid_size(), map);
        }
      }

      weyl::ProbeOptions popts;
      popts.spectrum = &spectrum;
      popts.solver_tol = opts.solver_tol;
      weyl::ProbeReport probe =
          bosonic ? weyl::probe_lambda_boson(sys.system, lam, family,
                                             opts.eps_list, popts)
                  : weyl::probe_lambda(sys.system, lam, family, opts.eps_list,
                                       popts);

      int argmin = 0;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& row : probe.rows) {
        if (row.residual < best) {
          best = row.residual;
          argmin = row.n;
        }
      }
      level.min_residual[lam] = best;
      level.branch[lam] = bosonic ? "boson" : "fermion";
      report.min_slack = std::min(report.min_slack, probe.min_slack);
      prev_family[lam] = std::move(family);
      prev_argmin[lam] = argmin;
      report.reports.push_back(std::move(probe));
    }
    report.levels.push_back(std::move(level));
  }

  for (double lam : lambda_grid) {
    for (std::size_t lvl = 1; lvl < report.levels.size(); ++lvl) {
      const double inc = report.levels[lvl].min_residual[lam] -
                         report.levels[lvl - 1].min_residual[lam];
      report.max_residual_increase =
          std::max(report.max_residual_increase, inc);
      if (inc > opts.monotonicity_tol) report.residuals_nonincreasing = false;
    }
  }
  report.gap_vs_nu_defect = 0.0;
  for (const auto& level : report.levels)
    report.gap_vs_nu_defect =
        std::max(report.gap_vs_nu_defect, std::abs(level.gap - report.nu));
  return report;
}

YukawaConfig tiny_config(double kappa) {
  YukawaConfig cfg;
  cfg.fermion_mass = 1.0;
  cfg.boson_mass = 0.75;
  cfg.kappa = kappa;
  cfg.fermion_grid = grid_from_shells({0.5});
  cfg.boson_grid = grid_from_shells({0.5});
  cfg.boson_n_max = 3;
  cfg.fermion_occupation_cap = 0;  // full 256-dim fermion space
  cfg.cutoff_dirac = CutoffProfile::parse("sharp", 1.0, 1.0);
  cfg.cutoff_kg = CutoffProfile::parse("sharp", 1.0, 1.0);
  cfg.spatial.points = {Vector3(0, 0, 0), Vector3(0, 0, 0.4),
                        Vector3(0, 0, -0.4)};
  cfg.spatial.weights = {0.5, 0.25, 0.25};
  for (const auto& x : cfg.spatial.points)
    cfg.spatial.chi.push_back(std::exp(-x.squaredNorm()));
  return cfg;
}

std::vector<YukawaConfig> hvz_configs(double kappa) {
  const std::vector<std::vector<double>> fermion_shells = {
      {0.0, 0.8}, {0.0, 0.8, 0.4}, {0.0, 0.8, 0.4, 0.2}};
  const std::vector<std::vector<double>> boson_shells = {
      {0.0, 1.0}, {0.0, 1.0, 0.5}, {0.0, 1.0, 0.5, 0.25}};

  std::vector<YukawaConfig> levels;
  for (int lvl = 0; lvl < 3; ++lvl) {
    YukawaConfig cfg;
    cfg.fermion_mass = 1.0;
    cfg.boson_mass = 0.75;
    cfg.kappa = kappa;
    cfg.fermion_grid = grid_from_shells(fermion_shells[lvl]);
    cfg.boson_grid = grid_from_shells(boson_shells[lvl]);
    cfg.boson_n_max = 2;
    cfg.fermion_occupation_cap = 3;
    // refinement shells sit outside the ultraviolet cutoffs, so they refine
    // the dispersion sampling without re-coupling the interaction
    cfg.cutoff_dirac = CutoffProfile::parse("sharp", 0.1, 1.0);
    cfg.cutoff_kg = CutoffProfile::parse("sharp", 0.1, 1.0);
    cfg.spatial.points = {Vector3(0, 0, 0)};
    cfg.spatial.weights = {1.0};
    cfg.spatial.chi = {1.0};
    levels.push_back(std::move(cfg));
  }
  return levels;
}

}  // namespace fockbench::yukawa

#include <doctest.h>

#include <cmath>

#include "fockbench/rng.hpp"
#include "fockbench/yukawa.hpp"
#include "oracles.hpp"

using namespace fockbench;
using namespace fockbench::yukawa;

namespace {

// small instance: one fermion shell pair, one boson shell pair
YukawaConfig mini_config(double kappa) {
  YukawaConfig cfg;
  cfg.fermion_mass = 1.0;
  cfg.boson_mass = 0.75;
  cfg.kappa = kappa;
  cfg.fermion_grid = grid_from_shells({0.6});
  cfg.boson_grid = grid_from_shells({0.4});
  cfg.boson_n_max = 2;
  cfg.cutoff_dirac = CutoffProfile::parse("sharp", 1.0, 1.0);
  cfg.cutoff_kg = CutoffProfile::parse("sharp", 1.0, 1.0);
  cfg.spatial.points = {Vector3(0, 0, 0), Vector3(0, 0, 0.3)};
  cfg.spatial.weights = {0.6, 0.4};
  cfg.spatial.chi = {1.0, 0.8};
  return cfg;
}

}  // namespace

TEST_CASE("momentum grids: shells, closure, nesting") {
  const MomentumGrid grid = grid_from_shells({0.0, 0.5});
  CHECK(grid.size() == 3);
  CHECK(grid.negated_index(0) == 0);  // origin is its own negation
  CHECK(grid.points[grid.negated_index(1)] == -grid.points[1]);

  MomentumGrid open;
  open.points = {Vector3(0, 0, 0.5)};
  open.weights = {1.0};
  CHECK_THROWS_AS(open.validate(), std::invalid_argument);

  const MomentumGrid fine = grid_from_shells({0.0, 0.5, 0.25});
  CHECK(fine.contains(grid));
  CHECK(!grid.contains(fine));
  const auto map = fine.embedding_from(grid);
  for (int i = 0; i < grid.size(); ++i)
    CHECK((fine.points[map[i]] - grid.points[i]).norm() <= 1e-15);
}

TEST_CASE("Dirac matrices satisfy the Clifford relations exactly") {
  const Matrix4 id = Matrix4::Identity();
  for (int j = 0; j < 3; ++j) {
    for (int l = 0; l < 3; ++l) {
      const Matrix4 anti =
          alpha_matrix(j) * alpha_matrix(l) + alpha_matrix(l) * alpha_matrix(j);
      CHECK((anti - (j == l ? 2.0 : 0.0) * id).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK((alpha_matrix(j) * beta_matrix() + beta_matrix() * alpha_matrix(j))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((alpha_matrix(j) - alpha_matrix(j).adjoint()).cwiseAbs().maxCoeff() ==
          0.0);
  }
  CHECK((beta_matrix() * beta_matrix() - id).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spinors at rest: unit vectors and omega = M") {
  const auto sp = dirac_spinors(Vector3(0, 0, 0), 1.3);
  CHECK(sp.omega == doctest::Approx(1.3).epsilon(1e-15));
  CHECK((sp.u[0] - Vector4::Unit(0)).norm() <= 1e-15);
  CHECK((sp.u[1] - Vector4::Unit(1)).norm() <= 1e-15);
  CHECK((sp.v[0] - Vector4::Unit(2)).norm() <= 1e-15);
  CHECK((sp.v[1] - Vector4::Unit(3)).norm() <= 1e-15);
}

TEST_CASE("spinors: eigen-relations, orthonormality, completeness") {
  const double mass = 0.8;
  const std::vector<Vector3> points = {
      Vector3(0.4, 0, 0), Vector3(0, -1.2, 0.3), Vector3(2.0, 1.0, -0.5)};
  for (const auto& p : points) {
    const auto sp = dirac_spinors(p, mass);
    const Matrix4 hd = dirac_hamiltonian(p, mass);
    CHECK(sp.omega ==
          doctest::Approx(std::sqrt(p.squaredNorm() + mass * mass))
              .epsilon(1e-14));
    Matrix4 completeness = Matrix4::Zero();
    for (int s = 0; s < 2; ++s) {
      CHECK((hd * sp.u[s] - sp.omega * sp.u[s]).norm() <= 1e-12);
      CHECK((hd * sp.v[s] + sp.omega * sp.v[s]).norm() <= 1e-12);
      completeness += sp.u[s] * sp.u[s].adjoint() + sp.v[s] * sp.v[s].adjoint();
      for (int t = 0; t < 2; ++t) {
        CHECK(std::abs(Complex(sp.u[s].adjoint() * sp.u[t]) -
                       (s == t ? 1.0 : 0.0)) <= 1e-12);
        CHECK(std::abs(Complex(sp.v[s].adjoint() * sp.v[t]) -
                       (s == t ? 1.0 : 0.0)) <= 1e-12);
        CHECK(std::abs(Complex(sp.u[s].adjoint() * sp.v[t])) <= 1e-12);
      }
    }
    CHECK((completeness - Matrix4::Identity()).cwiseAbs().maxCoeff() <= 1e-12);

    // cross-check against a straight numerical eigendecomposition
    Eigen::SelfAdjointEigenSolver<Matrix4> es(hd);
    CHECK(es.eigenvalues()[0] == doctest::Approx(-sp.omega).epsilon(1e-13));
    CHECK(es.eigenvalues()[1] == doctest::Approx(-sp.omega).epsilon(1e-13));
    CHECK(es.eigenvalues()[2] == doctest::Approx(sp.omega).epsilon(1e-13));
    CHECK(es.eigenvalues()[3] == doctest::Approx(sp.omega).epsilon(1e-13));
  }
}

TEST_CASE("spinor phases: dominant component real positive") {
  const auto sp = dirac_spinors(Vector3(0.7, -0.2, 0.4), 1.0);
  for (int s = 0; s < 2; ++s) {
    CHECK(sp.u[s][s].imag() == 0.0);
    CHECK(sp.u[s][s].real() > 0.0);
    CHECK(sp.v[s][2 + s].imag() == 0.0);
    CHECK(sp.v[s][2 + s].real() > 0.0);
  }
}

TEST_CASE("field coefficients: g uses the negated-momentum spinor") {
  const YukawaConfig cfg = mini_config(0.1);
  const FieldCoefficients coeffs = field_coefficients(cfg);
  const int P = cfg.fermion_grid.size();
  for (int i = 0; i < P; ++i) {
    const Vector3& p = cfg.fermion_grid.points[i];
    const auto sp_neg = dirac_spinors(-p, cfg.fermion_mass);
    const double denom =
        std::sqrt(248.05021344239853 * dispersion(p, cfg.fermion_mass));
    for (int s = 0; s < 2; ++s)
      for (int l = 0; l < 4; ++l)
        CHECK(std::abs(coeffs.g[s](l, i) -
                       cfg.cutoff_dirac(p) * sp_neg.v[s][l] / denom) <= 1e-15);
  }
}

TEST_CASE("vanishing ultraviolet cutoff kills the interaction") {
  YukawaConfig cfg = mini_config(0.3);
  cfg.cutoff_dirac.amplitude = 0.0;
  const YukawaSystem sys = build_hamiltonian(cfg);
  CHECK(max_abs(sys.interaction_unscaled) == 0.0);
  // coefficients vanish identically
  for (int s = 0; s < 2; ++s)
    CHECK(sys.coeffs.f[s].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vanishing spatial cutoff kills the interaction") {
  YukawaConfig cfg = mini_config(0.3);
  cfg.spatial.chi = {0.0, 0.0};
  const YukawaSystem sys = build_hamiltonian(cfg);
  CHECK(max_abs(sys.interaction_unscaled) == 0.0);
}

TEST_CASE("free spectrum: occupation-sum oracle on a mini instance") {
  const YukawaConfig cfg = mini_config(0.0);
  const YukawaSystem sys = build_hamiltonian(cfg);

  std::vector<double> fermion_omegas;
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < sys.grid_size(); ++i)
      fermion_omegas.push_back(sys.coeffs.omega[i]);
  std::vector<double> boson_omegas;
  for (const auto& k : cfg.boson_grid.points)
    boson_omegas.push_back(dispersion(k, cfg.boson_mass));

  const auto expect = oracles::minkowski_sum(
      oracles::fermion_occupation_spectrum(fermion_omegas),
      oracles::boson_occupation_spectrum(boson_omegas, cfg.boson_n_max));
  const Spectrum s = eig_dense(sys.system.H0);
  CHECK(oracles::max_spectrum_diff(s.eigenvalues, expect) <= 1e-10);

  // one-boson excitation energy at κ=0 is the dispersion minimum
  double gap = 0.0;
  for (double ev : s.eigenvalues)
    if (ev > 1e-10) {
      gap = ev;
      break;
    }
  double min_excitation = *std::min_element(boson_omegas.begin(),
                                            boson_omegas.end());
  for (double w : fermion_omegas)
    min_excitation = std::min(min_excitation, w);
  CHECK(gap == doctest::Approx(min_excitation).epsilon(1e-12));
}

TEST_CASE("channel CAR and field norm bound on the mini instance") {
  const YukawaSystem sys = build_hamiltonian(mini_config(0.2));
  rng::Stream stream(601);
  const int P = sys.grid_size();
  const auto& fbasis = sys.fermion_basis();

  const ComplexVector f = stream.complex_vector(P);
  const ComplexVector g = stream.complex_vector(P);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      const auto bs = fermion::annihilation(
          fbasis, sys.embed_channel(static_cast<Channel>(s), f));
      const auto bt = fermion::creation(
          fbasis, sys.embed_channel(static_cast<Channel>(t), g));
      const auto dt = fermion::creation(
          fbasis, sys.embed_channel(static_cast<Channel>(2 + t), g));
      const Complex ip = s == t ? sys.grid_inner_fermion(f, g) : Complex(0);
      CHECK(max_abs_diff(anticommutator(bs, bt),
                         scale(ip, identity_op(fbasis.dim()))) <= 1e-12);
      CHECK(max_abs(anticommutator(bs, dt)) <= 1e-12);
    }

  const Vector3 x(0.1, -0.3, 0.2);
  const auto psi = psi_field(sys, x);
  for (int l = 0; l < 4; ++l) {
    double bound = 0.0;
    for (int s = 0; s < 2; ++s)
      bound += sys.coeffs.f_norm(s, l, sys.config.fermion_grid) +
               sys.coeffs.g_norm(s, l, sys.config.fermion_grid);
    CHECK(op_norm(psi[l], 1e-10) <= bound + 1e-10);
  }
}

TEST_CASE("phi field: vacuum amplitude and x-independence") {
  const YukawaSystem sys = build_hamiltonian(mini_config(0.2));
  const ComplexVector vac = boson::vacuum(sys.boson_basis());
  const Vector3 x1(0, 0, 0.7), x2(0.4, 0.1, -0.2);
  double h2 = 0.0;
  const ComplexVector h = sys.dressed_h(x1);
  for (int i = 0; i < sys.config.boson_grid.size(); ++i)
    h2 += sys.config.boson_grid.weights[i] * std::norm(h[i]);
  const double amp1 = phi_field(sys, x1).apply(vac).norm();
  CHECK(amp1 == doctest::Approx(std::sqrt(h2 / 2.0)).epsilon(1e-12));
  CHECK(phi_field(sys, x2).apply(vac).norm() ==
        doctest::Approx(amp1).epsilon(1e-12));
  CHECK(hermiticity_defect(phi_field(sys, x1)) <= 1e-14);
}

TEST_CASE("interaction: sesquilinear form matches the defining sum") {
  const YukawaSystem sys = build_hamiltonian(mini_config(0.2));
  rng::Stream stream(602);
  const Index fd = sys.fermion_basis().dim();
  const Index bd = sys.boson_basis().dim();

  for (int rep = 0; rep < 20; ++rep) {
    const ComplexVector phi_vec = stream.unit_vector(fd * bd);
    const ComplexVector psi_vec = stream.unit_vector(fd * bd);
    const Complex direct = phi_vec.dot(sys.interaction_unscaled.apply(psi_vec));

    // independent route: apply ψ̄ψ ⊗ φ through dense tensor contraction
    Complex form = 0.0;
    for (int ix = 0; ix < sys.config.spatial.size(); ++ix) {
      const Vector3& x = sys.config.spatial.points[ix];
      const DenseMatrix density(psi_bar_psi(sys, x).mat);
      const DenseMatrix phi_op(phi_field(sys, x).mat);
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          psi_mat(psi_vec.data(), fd, bd);
      const DenseMatrix applied = density * psi_mat * phi_op.transpose();
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          phi_mat(phi_vec.data(), fd, bd);
      form += sys.config.spatial.weights[ix] * sys.config.spatial.chi[ix] *
              (phi_mat.conjugate().cwiseProduct(applied)).sum();
    }
    CHECK(std::abs(direct - form) <= 1e-12);
  }
}

TEST_CASE("Hamiltonian hermiticity and coupling continuity") {
  const YukawaConfig base = mini_config(0.2);
  const YukawaSystem sys = build_hamiltonian(base);
  CHECK(hermiticity_defect(sys.system.H) <= 1e-12);

  const double hi_norm = op_norm(sys.interaction_unscaled, 1e-9);
  const double delta = 0.05;
  YukawaConfig bumped = base;
  bumped.kappa = base.kappa + delta;
  const double e0 = eig_dense(sys.system.H).ground_energy();
  const double e0_bumped =
      eig_dense(build_hamiltonian(bumped).system.H).ground_energy();
  CHECK(std::abs(e0_bumped - e0) <= hi_norm * delta + 1e-10);
}

TEST_CASE("interaction commutators match the weighted-sum formulas") {
  const YukawaSystem sys = build_hamiltonian(mini_config(0.2));
  rng::Stream stream(603);
  const ComplexVector xi = stream.complex_vector(sys.grid_size());
  const ComplexVector eta = stream.complex_vector(sys.grid_size());
  const ComplexVector zeta =
      stream.complex_vector(sys.config.boson_grid.size());
  const DefectReport report = commutator_formula_check(sys, xi, eta, zeta);
  REQUIRE(report.rows.size() == 9);
  for (const auto& row : report.rows) {
    INFO(row.name);
    CHECK(row.defect <= 1e-10);
  }
}

TEST_CASE("commutator with an orthogonal smearing vanishes") {
  // ξ orthogonal to every f^l_{s,x} column: the coefficient tables span at
  // most the cutoff-supported modes, so build ξ in their orthocomplement
  YukawaConfig cfg = mini_config(0.5);
  cfg.cutoff_dirac = CutoffProfile::parse("sharp", 0.1, 1.0);  // only |p|≤0.1
  // grid has |p| = 0.6 only, so all f, g vanish; any ξ is orthogonal
  const YukawaSystem sys = build_hamiltonian(cfg);
  rng::Stream stream(604);
  const ComplexVector xi = stream.complex_vector(sys.grid_size());
  for (int s = 0; s < 2; ++s) {
    const auto op = kron(
        fermion::annihilation(sys.fermion_basis(),
                              sys.embed_channel(static_cast<Channel>(s), xi)),
        identity_op(sys.boson_basis().dim()));
    CHECK(max_abs(commutator(sys.interaction_unscaled, op)) == 0.0);
  }
}

TEST_CASE("relative bound: margins and coefficient structure") {
  const YukawaSystem sys = build_hamiltonian(mini_config(0.2));
  const auto report = relative_bound_report(sys, {0.25, 0.5, 1.0}, 60, 605);
  CHECK(report.min_margin >= -1e-10);
  REQUIRE(report.rows.size() == 3);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].a > report.rows[i - 1].a);   // a grows with ε
    CHECK(report.rows[i].b < report.rows[i - 1].b);   // b shrinks with ε
  }
  // vacuum row: lhs is κ-independent and within b(ε)
  const ComplexVector vac_f = fermion::vacuum(sys.fermion_basis());
  const ComplexVector vac_b = boson::vacuum(sys.boson_basis());
  ComplexVector vac = ComplexVector::Zero(sys.system.dim());
  for (Index i = 0; i < sys.fermion_basis().dim(); ++i)
    for (Index j = 0; j < sys.boson_basis().dim(); ++j)
      vac[i * sys.boson_basis().dim() + j] = vac_f[i] * vac_b[j];
  const double lhs = sys.interaction_unscaled.apply(vac).norm();
  for (const auto& row : report.rows) CHECK(lhs <= row.b + 1e-12);
}

TEST_CASE("packet families: normalization, orthogonality, shrinking term_K") {
  const YukawaSystem sys = build_hamiltonian(
      [] {
        YukawaConfig cfg = mini_config(0.0);
        cfg.fermion_grid = grid_from_shells({0.0, 0.3, 0.6, 0.9});
        return cfg;
      }());
  const double lambda = sys.config.fermion_mass;  // ω(0) = M on the grid
  const auto family = fermion_packet_family(sys, lambda, 5);
  REQUIRE(family.size() == 5);
  DenseMatrix kmat = DenseMatrix::Zero(4 * sys.grid_size(), 4 * sys.grid_size());
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < sys.grid_size(); ++i)
      kmat(c * sys.grid_size() + i, c * sys.grid_size() + i) =
          sys.coeffs.omega[i];
  std::vector<double> term_k;
  for (const auto& h : family) {
    CHECK(std::abs(h.norm() - 1.0) <= 1e-12);
    term_k.push_back((kmat * h - lambda * h).norm());
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      CHECK(std::abs(family[i].dot(family[j])) <= 1e-10);
  // packets narrow toward the ω = λ shell
  CHECK(term_k.back() <= term_k.front() + 1e-12);
}

TEST_CASE("nested configs: validation catches mismatches") {
  const auto levels = hvz_configs(0.1);
  REQUIRE(levels.size() == 3);
  CHECK(is_nested(levels[0], levels[1]));
  CHECK(is_nested(levels[1], levels[2]));
  CHECK(!is_nested(levels[1], levels[0]));

  YukawaConfig other = levels[1];
  other.boson_mass = 0.9;
  CHECK(!is_nested(levels[0], other));

  std::vector<YukawaConfig> bad = {levels[1], levels[0], levels[2]};
  CHECK_THROWS_AS((void)hvz_gap_probe(bad, {1.0}), std::invalid_argument);
}

TEST_CASE("gap probe on a small two-level tower") {
  // shrunken tower so the unit test stays fast: caps at 2 fermions, 1 boson
  std::vector<YukawaConfig> levels;
  for (int lvl = 0; lvl < 2; ++lvl) {
    YukawaConfig cfg;
    cfg.fermion_mass = 1.0;
    cfg.boson_mass = 0.75;
    cfg.kappa = 0.0;
    cfg.fermion_grid = grid_from_shells(
        lvl == 0 ? std::vector<double>{0.0} : std::vector<double>{0.0, 0.6});
    cfg.boson_grid = grid_from_shells(
        lvl == 0 ? std::vector<double>{0.0} : std::vector<double>{0.0, 0.8});
    cfg.boson_n_max = 1;
    cfg.fermion_occupation_cap = 2;
    cfg.cutoff_dirac = CutoffProfile::parse("sharp", 0.1, 1.0);
    cfg.cutoff_kg = CutoffProfile::parse("sharp", 0.1, 1.0);
    cfg.spatial.points = {Vector3(0, 0, 0)};
    cfg.spatial.weights = {1.0};
    cfg.spatial.chi = {1.0};
    levels.push_back(std::move(cfg));
  }

  HvzOptions opts;
  opts.eps_list = {0.05, 0.1};
  opts.family_size = 3;
  const GapReport report = hvz_gap_probe(levels, {0.75, 1.0}, opts);
  REQUIRE(report.levels.size() == 2);
  CHECK(report.nu == 0.75);
  CHECK(report.residuals_nonincreasing);
  CHECK(report.min_slack >= -1e-9);
  // free tower: gap equals ν at every level
  for (const auto& level : report.levels)
    CHECK(std::abs(level.gap - report.nu) <= 1e-9);
  // λ = M sits in the fermion branch, λ = m in the boson branch
  CHECK(report.levels[0].branch.at(1.0) == "fermion");
  CHECK(report.levels[0].branch.at(0.75) == "boson");
  // exact modes exist at both λ, so residuals vanish at κ = 0
  CHECK(report.levels[1].min_residual.at(1.0) <= 1e-10);
  CHECK(report.levels[1].min_residual.at(0.75) <= 1e-10);
}

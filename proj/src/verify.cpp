#include "fockbench/verify.hpp"

#include <algorithm>
#include <cmath>

#include "fockbench/abstract.hpp"
#include "fockbench/boson.hpp"
#include "fockbench/fermion.hpp"
#include "fockbench/rng.hpp"

namespace fockbench::verify {

void SuiteResult::add(std::string name, double defect, double tol) {
  const bool ok = defect <= tol;
  checks.push_back({std::move(name), defect, tol, ok});
  max_defect = std::max(max_defect, defect);
  pass = pass && ok;
}

std::vector<std::string> suite_names() {
  return {"car",    "ccr",           "norms",   "dgamma-commutators",
          "dirac",  "fields",        "hi-commutators",
          "bounds", "weak-commutator"};
}

bool is_suite(const std::string& name) {
  const auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

using fermion::FermionBasis;
using boson::BosonBasis;

SuiteResult car_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "car";
  rng::Stream stream(opts.seed);
  for (int d = opts.dim_lo; d <= opts.dim_hi; ++d) {
    const FermionBasis basis(d);
    const SparseOperator id = identity_op(basis.dim());
    double mixed = 0.0, ann = 0.0, cre = 0.0;
    for (int p = 0; p < opts.pairs; ++p) {
      const ComplexVector f = stream.complex_vector(d);
      const ComplexVector g = stream.complex_vector(d);
      const SparseOperator bf = fermion::annihilation(basis, f);
      const SparseOperator bg = fermion::annihilation(basis, g);
      const SparseOperator bgs = fermion::creation(basis, g);
      const SparseOperator bfs = fermion::creation(basis, f);
      const Complex ip = f.dot(g);  // antilinear first slot
      mixed = std::max(mixed,
                       max_abs_diff(anticommutator(bf, bgs), scale(ip, id)));
      ann = std::max(ann, max_abs(anticommutator(bf, bg)));
      cre = std::max(cre, max_abs(anticommutator(bfs, bgs)));
    }
    const std::string tag = " (d=" + std::to_string(d) + ")";
    result.add("{B(f),B*(g)} = (f,g)" + tag, mixed, 1e-12);
    result.add("{B(f),B(g)} = 0" + tag, ann, 1e-12);
    result.add("{B*(f),B*(g)} = 0" + tag, cre, 1e-12);
  }
  return result;
}

SuiteResult ccr_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "ccr";
  rng::Stream stream(opts.seed + 1);
  const int d_hi = std::min(opts.dim_hi, 3);
  for (int d = std::min(opts.dim_lo, d_hi); d <= d_hi; ++d) {
    for (int n_max = 1; n_max <= 3; ++n_max) {
      const BosonBasis basis(d, n_max);
      const SparseOperator sub = boson::sub_cutoff_projector(basis);
      const SparseOperator id = identity_op(basis.dim());
      double mixed = 0.0, ann = 0.0, cre = 0.0;
      for (int p = 0; p < opts.pairs; ++p) {
        const ComplexVector f = stream.complex_vector(d);
        const ComplexVector g = stream.complex_vector(d);
        const SparseOperator af = boson::annihilation(basis, f);
        const SparseOperator ag = boson::annihilation(basis, g);
        const SparseOperator ags = boson::creation(basis, g);
        const SparseOperator afs = boson::creation(basis, f);
        const Complex ip = f.dot(g);
        // the mixed commutator sees the occupancy ceiling: restrict columns
        mixed = std::max(
            mixed, max_abs((commutator(af, ags) - scale(ip, id)) * sub));
        ann = std::max(ann, max_abs(commutator(af, ag)));
        cre = std::max(cre, max_abs(commutator(afs, ags)));
      }
      const std::string tag =
          " (d=" + std::to_string(d) + ", n_max=" + std::to_string(n_max) + ")";
      result.add("[A(f),A*(g)] = (f,g)" + tag, mixed, 1e-12);
      result.add("[A(f),A(g)] = 0" + tag, ann, 1e-12);
      result.add("[A*(f),A*(g)] = 0" + tag, cre, 1e-12);
    }
  }
  return result;
}

SuiteResult norms_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "norms";
  rng::Stream stream(opts.seed + 2);
  for (int d = opts.dim_lo; d <= opts.dim_hi; ++d) {
    const FermionBasis basis(d);
    double dann = 0.0, dcre = 0.0;
    for (int p = 0; p < 20; ++p) {
      const ComplexVector f = stream.complex_vector(d);
      dann = std::max(dann, std::abs(op_norm(fermion::annihilation(basis, f),
                                             1e-11) -
                                     f.norm()));
      dcre = std::max(dcre, std::abs(op_norm(fermion::creation(basis, f),
                                             1e-11) -
                                     f.norm()));
    }
    const std::string tag = " (d=" + std::to_string(d) + ")";
    result.add("‖B(f)‖ = ‖f‖" + tag, dann, 1e-8);
    result.add("‖B*(f)‖ = ‖f‖" + tag, dcre, 1e-8);
  }
  return result;
}

SuiteResult dgamma_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "dgamma-commutators";
  rng::Stream stream(opts.seed + 3);

  double f_ann = 0.0, f_cre = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 2 + static_cast<int>(stream.raw() % 4);  // 2..5
    const FermionBasis basis(d);
    const OneParticleOperator x(stream.hermitian_matrix(d));
    const ComplexVector f = stream.complex_vector(d);
    const SparseOperator dg = fermion::second_quantization(basis, x);
    const ComplexVector xf = x.matrix * f;
    f_ann = std::max(
        f_ann,
        max_abs_diff(commutator(dg, fermion::annihilation(basis, f)),
                     scale(-1.0, fermion::annihilation(basis, xf))));
    f_cre = std::max(f_cre,
                     max_abs_diff(commutator(dg, fermion::creation(basis, f)),
                                  fermion::creation(basis, xf)));
  }
  result.add("[dΓ_f(X), B(f)] = −B(Xf)", f_ann, 1e-12);
  result.add("[dΓ_f(X), B*(f)] = B*(Xf)", f_cre, 1e-12);

  double b_ann = 0.0, b_cre = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const int d = 2 + static_cast<int>(stream.raw() % 2);  // 2..3
    const int n_max = 2 + static_cast<int>(stream.raw() % 2);
    const BosonBasis basis(d, n_max);
    const OneParticleOperator y(stream.hermitian_matrix(d));
    const ComplexVector f = stream.complex_vector(d);
    const SparseOperator dg = boson::second_quantization(basis, y);
    const ComplexVector yf = y.matrix * f;
    b_ann = std::max(b_ann,
                     max_abs_diff(commutator(dg, boson::annihilation(basis, f)),
                                  scale(-1.0, boson::annihilation(basis, yf))));
    b_cre = std::max(b_cre,
                     max_abs_diff(commutator(dg, boson::creation(basis, f)),
                                  boson::creation(basis, yf)));
  }
  result.add("[dΓ_b(Y), A(f)] = −A(Yf)", b_ann, 1e-12);
  result.add("[dΓ_b(Y), A*(f)] = A*(Yf)", b_cre, 1e-12);
  return result;
}

SuiteResult dirac_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "dirac";
  using namespace yukawa;

  double algebra = 0.0;
  const Matrix4 id4 = Matrix4::Identity();
  for (int j = 0; j < 3; ++j) {
    for (int l = 0; l < 3; ++l) {
      const Matrix4 anti =
          alpha_matrix(j) * alpha_matrix(l) + alpha_matrix(l) * alpha_matrix(j);
      algebra = std::max(
          algebra, (anti - (j == l ? 2.0 : 0.0) * id4).cwiseAbs().maxCoeff());
    }
    const Matrix4 ab =
        alpha_matrix(j) * beta_matrix() + beta_matrix() * alpha_matrix(j);
    algebra = std::max(algebra, ab.cwiseAbs().maxCoeff());
  }
  algebra = std::max(
      algebra, (beta_matrix() * beta_matrix() - id4).cwiseAbs().maxCoeff());
  result.add("{α^j,α^l} = 2δ_{jl}, {α^j,β} = 0, β² = I", algebra, 0.0);

  const YukawaConfig model = opts.model ? *opts.model : tiny_config(0.1);
  std::vector<Vector3> points = model.fermion_grid.points;
  points.emplace_back(0, 0, 0);
  points.emplace_back(0.3, -0.4, 0.5);
  points.emplace_back(-1.1, 0.2, 0.7);

  double eig = 0.0, ortho = 0.0, complete = 0.0, disp = 0.0;
  for (const auto& p : points) {
    const auto sp = dirac_spinors(p, model.fermion_mass);
    const Matrix4 hd = dirac_hamiltonian(p, model.fermion_mass);
    disp = std::max(disp, std::abs(sp.omega * sp.omega - p.squaredNorm() -
                                   model.fermion_mass * model.fermion_mass));
    Matrix4 completeness = Matrix4::Zero();
    for (int s = 0; s < 2; ++s) {
      eig = std::max(eig,
                     (hd * sp.u[s] - sp.omega * sp.u[s]).cwiseAbs().maxCoeff());
      eig = std::max(eig,
                     (hd * sp.v[s] + sp.omega * sp.v[s]).cwiseAbs().maxCoeff());
      completeness += sp.u[s] * sp.u[s].adjoint() + sp.v[s] * sp.v[s].adjoint();
      for (int t = 0; t < 2; ++t) {
        const Complex uu = sp.u[s].adjoint() * sp.u[t];
        const Complex vv = sp.v[s].adjoint() * sp.v[t];
        const Complex uv = sp.u[s].adjoint() * sp.v[t];
        ortho = std::max(ortho, std::abs(uu - (s == t ? 1.0 : 0.0)));
        ortho = std::max(ortho, std::abs(vv - (s == t ? 1.0 : 0.0)));
        ortho = std::max(ortho, std::abs(uv));
      }
    }
    complete =
        std::max(complete, (completeness - id4).cwiseAbs().maxCoeff());
  }
  result.add("h_D(p) u = +ω u, h_D(p) v = −ω v", eig, 1e-12);
  result.add("spinor orthonormality", ortho, 1e-12);
  result.add("Σ u u† + Σ v v† = I", complete, 1e-12);
  result.add("ω² = p² + M²", disp, 1e-12);
  return result;
}

SuiteResult fields_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "fields";
  using namespace yukawa;
  const YukawaConfig model = opts.model ? *opts.model : tiny_config(0.1);
  const YukawaSystem sys = build_hamiltonian(model);
  rng::Stream stream(opts.seed + 4);
  const int P = sys.grid_size();
  const auto& fbasis = sys.fermion_basis();

  // channel CAR with the weighted inner product
  double car_mixed = 0.0, car_zero = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexVector f = stream.complex_vector(P);
    const ComplexVector g = stream.complex_vector(P);
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) {
        const auto bs = fermion::annihilation(
            fbasis, sys.embed_channel(static_cast<Channel>(s), f));
        const auto bts = fermion::creation(
            fbasis, sys.embed_channel(static_cast<Channel>(t), g));
        const auto ds = fermion::annihilation(
            fbasis, sys.embed_channel(static_cast<Channel>(2 + s), f));
        const auto dts = fermion::creation(
            fbasis, sys.embed_channel(static_cast<Channel>(2 + t), g));
        const Complex ip =
            (s == t) ? sys.grid_inner_fermion(f, g) : Complex(0, 0);
        const SparseOperator expect = scale(ip, identity_op(fbasis.dim()));
        car_mixed = std::max(car_mixed,
                             max_abs_diff(anticommutator(bs, bts), expect));
        car_mixed = std::max(car_mixed,
                             max_abs_diff(anticommutator(ds, dts), expect));
        car_zero = std::max(car_zero, max_abs(anticommutator(bs, ds)));
        car_zero = std::max(car_zero, max_abs(anticommutator(bs, dts)));
      }
  }
  result.add("{b_s(f), b*_τ(g)} = {d_s(f), d*_τ(g)} = δ_sτ (f,g)", car_mixed,
             1e-12);
  result.add("{b_s, d_τ} = {b_s, d*_τ} = 0", car_zero, 1e-12);

  // field-operator norm bounds and the vacuum amplitude
  const Vector3 x1(0, 0, 0.3), x2(-0.2, 0, 0.1);
  double psi_margin_violation = 0.0;
  const auto psi = psi_field(sys, x1);
  for (int l = 0; l < 4; ++l) {
    double bound = 0.0;
    for (int s = 0; s < 2; ++s)
      bound += sys.coeffs.f_norm(s, l, model.fermion_grid) +
               sys.coeffs.g_norm(s, l, model.fermion_grid);
    const double nrm = op_norm(psi[l], 1e-10);
    psi_margin_violation = std::max(psi_margin_violation, nrm - bound);
  }
  result.add("‖ψ_l(x)‖ ≤ Σ_s (‖f_s^l‖+‖g_s^l‖)", psi_margin_violation, 1e-10);

  double h2 = 0.0;
  {
    const ComplexVector h = sys.dressed_h(x1);
    for (int i = 0; i < model.boson_grid.size(); ++i)
      h2 += model.boson_grid.weights[i] * std::norm(h[i]);
  }
  const ComplexVector om = boson::vacuum(sys.boson_basis());
  const double amp1 = phi_field(sys, x1).apply(om).norm();
  const double amp2 = phi_field(sys, x2).apply(om).norm();
  result.add("‖φ(x)Ω‖ = ‖h‖/√2",
             std::abs(amp1 - std::sqrt(h2 / 2.0)), 1e-12);
  result.add("‖φ(x)Ω‖ independent of x", std::abs(amp1 - amp2), 1e-12);

  // density commutators against their CAR reductions
  const ComplexVector xi_grid = stream.complex_vector(P);
  double pp = 0.0;
  for (int s = 0; s < 2; ++s) {
    const auto bs = fermion::annihilation(
        fbasis, sys.embed_channel(static_cast<Channel>(s), xi_grid));
    const auto dss = fermion::annihilation(
        fbasis, sys.embed_channel(static_cast<Channel>(2 + s), xi_grid));
    for (int l = 0; l < 4; ++l)
      for (int lp = 0; lp < 4; ++lp) {
        const SparseOperator dens = adjoint(psi[l]) * psi[lp];
        const Complex wf =
            sys.grid_inner_fermion(xi_grid, sys.dressed_f(s, l, x1));
        pp = std::max(pp, max_abs_diff(commutator(dens, bs),
                                       scale(-wf, psi[lp])));
        const Complex wg =
            sys.grid_inner_fermion(xi_grid, sys.dressed_g(s, lp, x1));
        pp = std::max(pp, max_abs_diff(commutator(dens, dss),
                                       scale(wg, adjoint(psi[l]))));
      }
  }
  result.add("[ψ*_l ψ_l'(x), b_s(ξ)] and [ψ*_l ψ_l'(x), d_s(ξ)]", pp, 1e-10);
  return result;
}

SuiteResult hi_commutators_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "hi-commutators";
  using namespace yukawa;
  const YukawaConfig model = opts.model ? *opts.model : tiny_config(0.1);
  const YukawaSystem sys = build_hamiltonian(model);
  rng::Stream stream(opts.seed + 5);
  const ComplexVector xi = stream.complex_vector(sys.grid_size());
  const ComplexVector eta = stream.complex_vector(sys.grid_size());
  const ComplexVector zeta =
      stream.complex_vector(model.boson_grid.size());
  const DefectReport report = commutator_formula_check(sys, xi, eta, zeta);
  for (const auto& row : report.rows)
    result.add("[H_I, " + row.name + "] matches the weighted-sum formula",
               row.defect, 1e-10);
  return result;
}

SuiteResult bounds_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "bounds";
  using namespace yukawa;
  const YukawaConfig model = opts.model ? *opts.model : tiny_config(0.1);
  const YukawaSystem sys = build_hamiltonian(model);
  rng::Stream stream(opts.seed + 6);

  // ladder bounds on a standalone boson space
  {
    const BosonBasis basis(3, 3);
    const OneParticleOperator y(stream.positive_matrix(3, 0.3, 1.7));
    const ComplexVector f = stream.complex_vector(3);
    const auto ann = boson::check_annihilation_bound(basis, y, f, 100,
                                                     opts.seed + 7);
    const auto cre = boson::check_creation_bound(basis, y, f, 100,
                                                 opts.seed + 8);
    result.add("‖A(f)Ψ‖ ≤ ‖Y^{-1/2}f‖ ‖dΓ(Y)^{1/2}Ψ‖", ann.max_violation,
               1e-10);
    result.add("‖A*(f)Ψ‖ ≤ ‖Y^{-1/2}f‖ ‖dΓ(Y)^{1/2}Ψ‖ + ‖f‖‖Ψ‖",
               cre.max_violation, 1e-10);
  }

  // density norm bound
  {
    const Matrix4 beta = beta_matrix();
    std::array<std::array<double, 4>, 2> fn{}, gn{};
    for (int s = 0; s < 2; ++s)
      for (int l = 0; l < 4; ++l) {
        fn[s][l] = sys.coeffs.f_norm(s, l, model.fermion_grid);
        gn[s][l] = sys.coeffs.g_norm(s, l, model.fermion_grid);
      }
    double bound = 0.0;
    for (int l = 0; l < 4; ++l)
      for (int lp = 0; lp < 4; ++lp)
        for (int s = 0; s < 2; ++s)
          for (int sp = 0; sp < 2; ++sp)
            bound += std::abs(beta(l, lp)) * (fn[s][l] + gn[s][l]) *
                     (fn[sp][lp] + gn[sp][lp]);
    double violation = 0.0;
    for (const auto& x : model.spatial.points)
      violation = std::max(violation,
                           op_norm(psi_bar_psi(sys, x), 1e-10) - bound);
    result.add("‖ψ̄ψ(x)‖ ≤ ΣΣ |β|(‖f‖+‖g‖)(‖f‖+‖g‖)", violation, 1e-10);
  }

  // smeared-field bound on sampled sub-cutoff states
  {
    const auto& bbasis = sys.boson_basis();
    DenseMatrix smat = DenseMatrix::Zero(model.boson_grid.size(),
                                         model.boson_grid.size());
    for (int i = 0; i < model.boson_grid.size(); ++i)
      smat(i, i) = dispersion(model.boson_grid.points[i], model.boson_mass);
    const OneParticleOperator s_op(smat);
    const SparseOperator h_kg = boson::second_quantization(bbasis, s_op);
    const Spectrum kg_spec = eig_dense(h_kg);
    DenseMatrix kg_root = DenseMatrix::Zero(bbasis.dim(), bbasis.dim());
    for (Index i = 0; i < bbasis.dim(); ++i)
      kg_root += std::sqrt(std::max(0.0, kg_spec.eigenvalues[i])) *
                 (kg_spec.eigenvector(i) * kg_spec.eigenvector(i).adjoint());
    const SparseOperator kg_half = from_dense(kg_root, true);
    const SparseOperator sub = boson::sub_cutoff_projector(bbasis);

    double h_norm2 = 0.0, h_w2 = 0.0;
    const Vector3 x0(0.15, -0.2, 0.05);
    const ComplexVector h = sys.dressed_h(x0);
    for (int i = 0; i < model.boson_grid.size(); ++i) {
      const double w = model.boson_grid.weights[i];
      h_norm2 += w * std::norm(h[i]);
      h_w2 += w * std::norm(h[i]) / smat(i, i).real();
    }
    const SparseOperator phi = phi_field(sys, x0);
    double violation = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      ComplexVector psi = sub.apply(stream.unit_vector(bbasis.dim()));
      const double nn = psi.norm();
      if (nn < 1e-8) continue;
      psi /= nn;
      const double lhs = phi.apply(psi).norm();
      const double rhs = std::sqrt(2.0 * h_w2) * kg_half.apply(psi).norm() +
                         std::sqrt(h_norm2 / 2.0);
      violation = std::max(violation, lhs - rhs);
    }
    result.add("‖φ(x)Ψ‖ ≤ √2‖h/√ω‖‖H_KG^{1/2}Ψ‖ + ‖h‖‖Ψ‖/√2", violation,
               1e-10);
  }

  // relative bound of the interaction with respect to H0
  {
    const auto report =
        relative_bound_report(sys, {0.25, 0.5, 1.0}, 100, opts.seed + 9);
    result.add("‖H_I Ψ‖ ≤ a(ε)‖H₀Ψ‖ + b(ε)‖Ψ‖",
               std::max(0.0, -report.min_margin), 1e-10);
    // a(ε) grows with ε while b(ε) shrinks: ε → 0 trades the relative
    // coefficient against the additive one
    double structure = 0.0;
    for (std::size_t i = 1; i < report.rows.size(); ++i)
      if (report.rows[i].eps > report.rows[i - 1].eps &&
          (report.rows[i].a <= report.rows[i - 1].a ||
           report.rows[i].b >= report.rows[i - 1].b))
        structure = 1.0;
    result.add("a(ε) → 0 as ε → 0 with b(ε) increasing", structure, 0.0);
  }
  return result;
}

SuiteResult weak_commutator_suite(const SuiteOptions& opts) {
  SuiteResult result;
  result.suite = "weak-commutator";
  rng::Stream stream(opts.seed + 10);

  double vs_commutator = 0.0, sampled = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 4 + static_cast<int>(stream.raw() % 61);  // 4..64
    const SparseOperator x = from_dense(stream.hermitian_matrix(n), true);
    const SparseOperator y = from_dense(stream.hermitian_matrix(n), true);
    const auto wc = weak_commutator(x, y, 5, opts.seed + rep);
    vs_commutator =
        std::max(vs_commutator, max_abs_diff(wc.Z, commutator(x, y)));
    sampled = std::max(sampled, wc.max_defect);
  }
  result.add("weak commutator equals [X,Y] entrywise", vs_commutator, 1e-12);
  result.add("sesquilinear identity on sampled pairs", sampled, 1e-10);

  // free-Hamiltonian commutators with smeared operators
  double lemma = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + static_cast<int>(stream.raw() % 4);  // 2..5
    const fermion::FermionBasis basis(d);
    const OneParticleOperator k(stream.positive_matrix(d, 0.2, 1.8));
    const int t_dim = 2 + static_cast<int>(stream.raw() % 3);
    const SparseOperator t = from_dense(stream.hermitian_matrix(t_dim), true);
    const AbstractSystem system = make_system(
        basis, k, t, zero_op(basis.dim() * t_dim, basis.dim() * t_dim));
    const ComplexVector f = stream.complex_vector(d);
    const ComplexVector kf = k.matrix * f;

    const auto wc_ann = weak_commutator(
        system.H0,
        system.lift_fermion(fermion::annihilation(basis, f)), 3,
        opts.seed + 100 + rep);
    lemma = std::max(
        lemma,
        max_abs_diff(wc_ann.Z, scale(-1.0, system.lift_fermion(
                                               fermion::annihilation(basis, kf)))));
    const auto wc_cre = weak_commutator(
        system.H0, system.lift_fermion(fermion::creation(basis, f)), 3,
        opts.seed + 200 + rep);
    lemma = std::max(
        lemma, max_abs_diff(
                   wc_cre.Z,
                   system.lift_fermion(fermion::creation(basis, kf))));
  }
  result.add("[H₀, B(f)⊗I]⁰ = −B(Kf)⊗I and [H₀, B*(f)⊗I]⁰ = B*(Kf)⊗I", lemma,
             1e-12);
  return result;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  detail::require(is_suite(name), "unknown suite '" + name + "'");
  if (name == "car") return car_suite(opts);
  if (name == "ccr") return ccr_suite(opts);
  if (name == "norms") return norms_suite(opts);
  if (name == "dgamma-commutators") return dgamma_suite(opts);
  if (name == "dirac") return dirac_suite(opts);
  if (name == "fields") return fields_suite(opts);
  if (name == "hi-commutators") return hi_commutators_suite(opts);
  if (name == "bounds") return bounds_suite(opts);
  return weak_commutator_suite(opts);
}

}  // namespace fockbench::verify

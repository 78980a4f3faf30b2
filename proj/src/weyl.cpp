#include "fockbench/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fockbench/rng.hpp"

namespace fockbench::weyl {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double ProbeRow::min_slack() const {
  return std::min({bound_slack(), chain_a_slack(), chain_b_slack(),
                   chain_c_slack()});
}

Spectrum window_spectrum(const SparseOperator& h, double eps_max, double tol,
                         std::uint64_t seed) {
  if (h.rows() <= dense_cap()) return eig_dense(h);
  int k = 6;
  for (;;) {
    EigLowOptions opts;
    opts.seed = seed;
    Spectrum s = eig_low(h, k, tol, opts);
    detail::require(s.converged,
                    "window spectrum: Lanczos did not converge (residual " +
                        std::to_string(s.residual_tol) + ")");
    if (s.eigenvalues.back() >= s.eigenvalues.front() + eps_max ||
        k >= std::min<Index>(h.rows() - 1, 24))
      return s;
    k *= 2;
  }
}

SpectralWindowVector spectral_window(const Spectrum& spectrum, double eps,
                                     const WindowOptions& opts) {
  detail::require(eps > 0.0, "spectral window: eps must be positive");
  detail::require(spectrum.eigenvectors.has_value(),
                  "spectral window: spectrum carries no eigenvectors");
  const double e0 = spectrum.ground_energy();

  SpectralWindowVector window;
  window.eps = eps;
  window.e0 = e0;
  for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i)
    if (spectrum.eigenvalues[i] < e0 + eps)
      window.energies_used.push_back(spectrum.eigenvalues[i]);

  const std::size_t count = window.energies_used.size();
  if (!opts.randomize || count == 1) {
    window.vector = spectrum.eigenvector(0);
  } else {
    rng::Stream stream(opts.seed);
    ComplexVector combo = ComplexVector::Zero(spectrum.eigenvector(0).size());
    for (std::size_t i = 0; i < count; ++i)
      combo += stream.complex_normal() *
               spectrum.eigenvector(static_cast<Index>(i));
    combo /= combo.norm();
    fix_phase(combo);
    window.vector = combo;
  }
  return window;
}

SpectralWindowVector spectral_window(const SparseOperator& h, double eps,
                                     const WindowOptions& opts) {
  const Spectrum s = window_spectrum(h, eps);
  return spectral_window(s, eps, opts);
}

ComplexVector trial_state(const AbstractSystem& system, const ComplexVector& h,
                          const SpectralWindowVector& window) {
  detail::require(std::abs(h.norm() - 1.0) <= 1e-10,
                  "trial state: h must be normalized");
  const SparseOperator field =
      fermion::annihilation(system.fermion_basis, h) +
      fermion::creation(system.fermion_basis, h);
  return system.lift_fermion(field).apply(window.vector);
}

namespace {

void finalize_report(ProbeReport& report, const std::vector<double>& eps_list,
                     std::size_t family_size) {
  report.min_residual = std::numeric_limits<double>::infinity();
  report.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& row : report.rows) {
    report.min_residual = std::min(report.min_residual, row.residual);
    report.min_slack = std::min(report.min_slack, row.min_slack());
  }
  // trend along the family at the smallest eps
  if (family_size >= 2 && !eps_list.empty()) {
    const double eps_min =
        *std::min_element(eps_list.begin(), eps_list.end());
    double first = -1.0, last = -1.0;
    for (const auto& row : report.rows) {
      if (row.eps != eps_min) continue;
      if (row.n == 0) first = row.residual;
      if (row.n == static_cast<int>(family_size) - 1) last = row.residual;
    }
    report.residual_trend_decreasing =
        first >= 0.0 && last >= 0.0 && last <= first + 1e-12;
  }
}

double interaction_commutator_norms(const AbstractSystem& system,
                                    const SparseOperator& ann,
                                    const SparseOperator& cre,
                                    const ComplexVector& xi) {
  if (system.interaction.nonZeros() == 0) return 0.0;
  const ComplexVector hi_xi = system.interaction.apply(xi);
  const double ann_part =
      (system.interaction.apply(ann.apply(xi)) - ann.apply(hi_xi)).norm();
  const double cre_part =
      (system.interaction.apply(cre.apply(xi)) - cre.apply(hi_xi)).norm();
  return ann_part + cre_part;
}

}  // namespace

ProbeReport probe_lambda(const AbstractSystem& system, double lambda,
                         const std::vector<ComplexVector>& h_family,
                         const std::vector<double>& eps_list,
                         const ProbeOptions& opts) {
  detail::require(lambda > 0.0, "probe: lambda must be positive");
  detail::require(!h_family.empty(), "probe: empty family");
  detail::require(!eps_list.empty(), "probe: empty eps list");

  Spectrum owned;
  const Spectrum* spectrum = opts.spectrum;
  if (!spectrum) {
    const double eps_max =
        *std::max_element(eps_list.begin(), eps_list.end());
    owned = window_spectrum(system.H, eps_max, opts.solver_tol,
                            opts.solver_seed);
    spectrum = &owned;
  }
  const double e0 = spectrum->ground_energy();

  ProbeReport report;
  report.lambda = lambda;
  report.e0 = e0;

  const DenseMatrix& kmat = system.K.matrix;

  int n = 0;
  for (const auto& h : h_family) {
    detail::require(std::abs(h.norm() - 1.0) <= 1e-10,
                    "probe: family vectors must be normalized");
    const ComplexVector kh_minus = kmat * h - lambda * h;  // (K−λ)h
    const ComplexVector kh_plus = kmat * h + lambda * h;   // (K+λ)h

    const SparseOperator ann_h =
        system.lift_fermion(fermion::annihilation(system.fermion_basis, h));
    const SparseOperator cre_h =
        system.lift_fermion(fermion::creation(system.fermion_basis, h));
    const SparseOperator field = ann_h + cre_h;
    const SparseOperator cre_minus = system.lift_fermion(
        fermion::creation(system.fermion_basis, kh_minus));
    const SparseOperator ann_plus = system.lift_fermion(
        fermion::annihilation(system.fermion_basis, kh_plus));

    for (const double eps : eps_list) {
      const SpectralWindowVector window =
          spectral_window(*spectrum, eps, opts.window);
      const ComplexVector& xi = window.vector;
      const ComplexVector psi = field.apply(xi);

      ProbeRow row;
      row.lambda = lambda;
      row.n = n;
      row.eps = eps;
      row.norm_check = psi.norm();
      row.residual = (system.H.apply(psi) - (e0 + lambda) * psi).norm();
      const double b_overlap = ann_h.apply(xi).norm();
      row.term_eps = 2.0 * eps;
      row.term_K = 2.0 * kh_minus.norm();
      row.term_B = 2.0 * std::abs(lambda) * b_overlap;
      row.term_HI = interaction_commutator_norms(system, ann_h, cre_h, xi);
      row.bound = row.term_eps + row.term_K + row.term_B + row.term_HI;

      const ComplexVector h_shift = system.H.apply(xi) - e0 * xi;
      row.chain_a_lhs = field.apply(h_shift).norm();
      row.chain_a_rhs = 2.0 * eps;
      row.chain_b_lhs = cre_minus.apply(xi).norm();
      row.chain_b_rhs = kh_minus.norm();
      row.chain_c_lhs = ann_plus.apply(xi).norm();
      row.chain_c_rhs = kh_minus.norm() + 2.0 * std::abs(lambda) * b_overlap;

      report.rows.push_back(row);
    }
    ++n;
  }
  finalize_report(report, eps_list, h_family.size());
  return report;
}

ProbeReport probe_lambda_boson(const AbstractSystem& system, double lambda,
                               const std::vector<ComplexVector>& f_family,
                               const std::vector<double>& eps_list,
                               const ProbeOptions& opts) {
  detail::require(lambda > 0.0, "boson probe: lambda must be positive");
  detail::require(!f_family.empty(), "boson probe: empty family");
  detail::require(!eps_list.empty(), "boson probe: empty eps list");
  detail::require(system.boson_basis.has_value() &&
                      system.boson_dispersion.has_value(),
                  "boson probe: system has no bosonic T factor");

  const auto& b_basis = *system.boson_basis;
  const DenseMatrix& smat = system.boson_dispersion->matrix;

  Spectrum owned;
  const Spectrum* spectrum = opts.spectrum;
  if (!spectrum) {
    const double eps_max =
        *std::max_element(eps_list.begin(), eps_list.end());
    owned = window_spectrum(system.H, eps_max, opts.solver_tol,
                            opts.solver_seed);
    spectrum = &owned;
  }
  const double e0 = spectrum->ground_energy();

  ProbeReport report;
  report.lambda = lambda;
  report.e0 = e0;

  int n = 0;
  for (const auto& f : f_family) {
    detail::require(std::abs(f.norm() - 1.0) <= 1e-10,
                    "boson probe: family vectors must be normalized");
    const ComplexVector sf_minus = smat * f - lambda * f;
    const ComplexVector sf_plus = smat * f + lambda * f;

    // ‖A(f)‖ and ‖A*(f)‖ are both ≤ √n_max ‖f‖ on the truncated space
    const double ladder_norm_bound =
        std::sqrt(double(b_basis.n_max())) * f.norm();

    const SparseOperator ann_f = system.lift_t(boson::annihilation(b_basis, f));
    const SparseOperator cre_f = system.lift_t(boson::creation(b_basis, f));
    const SparseOperator field = ann_f + cre_f;
    const SparseOperator cre_minus =
        system.lift_t(boson::creation(b_basis, sf_minus));
    const SparseOperator ann_minus =
        system.lift_t(boson::annihilation(b_basis, sf_minus));
    const SparseOperator ann_plus =
        system.lift_t(boson::annihilation(b_basis, sf_plus));
    const SparseOperator ccr_defect_op =
        commutator(ann_f, cre_f) -
        (f.squaredNorm() * identity_op(system.dim()));

    for (const double eps : eps_list) {
      const SpectralWindowVector window =
          spectral_window(*spectrum, eps, opts.window);
      const ComplexVector& xi = window.vector;
      const ComplexVector psi = field.apply(xi);

      ProbeRow row;
      row.branch = "boson";
      row.lambda = lambda;
      row.n = n;
      row.eps = eps;
      row.norm_check = psi.norm();
      row.residual = (system.H.apply(psi) - (e0 + lambda) * psi).norm();

      const ComplexVector h_shift = system.H.apply(xi) - e0 * xi;
      const double a_lhs = field.apply(h_shift).norm();
      const double b_lhs = cre_minus.apply(xi).norm();
      const double ann_minus_norm = ann_minus.apply(xi).norm();
      const double b_overlap = ann_f.apply(xi).norm();

      row.term_eps = a_lhs;
      row.term_K = b_lhs + ann_minus_norm;
      row.term_B = 2.0 * std::abs(lambda) * b_overlap;
      row.term_HI = interaction_commutator_norms(system, ann_f, cre_f, xi);
      row.bound = row.term_eps + row.term_K + row.term_B + row.term_HI;

      row.chain_a_lhs = a_lhs;
      row.chain_a_rhs = 2.0 * ladder_norm_bound * eps;
      row.chain_b_lhs = b_lhs;
      row.chain_b_rhs =
          std::sqrt(double(b_basis.n_max())) * sf_minus.norm();
      row.chain_c_lhs = ann_plus.apply(xi).norm();
      row.chain_c_rhs = ann_minus_norm + 2.0 * std::abs(lambda) * b_overlap;
      row.trunc_defect = std::abs(xi.dot(ccr_defect_op.apply(xi)));

      report.rows.push_back(row);
    }
    ++n;
  }
  finalize_report(report, eps_list, f_family.size());
  return report;
}

std::string ProbeReport::to_csv() const {
  std::string out =
      "lambda,n,eps,residual,term_eps,term_K,term_B,term_HI,bound,"
      "norm_check\n";
  for (const auto& row : rows) {
    out += fmt17(row.lambda) + "," + std::to_string(row.n) + "," +
           fmt17(row.eps) + "," + fmt17(row.residual) + "," +
           fmt17(row.term_eps) + "," + fmt17(row.term_K) + "," +
           fmt17(row.term_B) + "," + fmt17(row.term_HI) + "," +
           fmt17(row.bound) + "," + fmt17(row.norm_check) + "\n";
  }
  return out;
}

bool ConvergenceTable::nonincreasing(double tolerance) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].min_residual > rows[i - 1].min_residual + tolerance)
      return false;
  return true;
}

ConvergenceTable refine_and_probe(const std::vector<ProbeLevel>& levels,
                                  double lambda,
                                  const std::vector<double>& eps_list,
                                  const ProbeOptions& opts) {
  detail::require(!levels.empty(), "refine_and_probe: no levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    detail::require(levels[i].system->dim() > levels[i - 1].system->dim(),
                    "refine_and_probe: levels must strictly refine "
                    "(dimensions must grow)");

  ConvergenceTable table;
  table.lambda = lambda;
  int level = 0;
  for (const auto& lvl : levels) {
    ProbeReport report =
        lvl.bosonic
            ? probe_lambda_boson(*lvl.system, lambda, lvl.family, eps_list,
                                 opts)
            : probe_lambda(*lvl.system, lambda, lvl.family, eps_list, opts);
    ConvergenceRow row;
    row.level = level++;
    row.dim = lvl.system->dim();
    row.e0 = report.e0;
    row.min_residual = report.min_residual;
    row.min_term_B = std::numeric_limits<double>::infinity();
    for (const auto& r : report.rows)
      row.min_term_B = std::min(row.min_term_B, r.term_B);
    table.rows.push_back(row);
    table.reports.push_back(std::move(report));
  }
  return table;
}

}  // namespace fockbench::weyl

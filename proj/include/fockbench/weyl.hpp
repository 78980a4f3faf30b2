#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fockbench/abstract.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench::weyl {

struct SpectralWindowVector {
  ComplexVector vector;  // unit norm, in the span of window eigenvectors
  double eps = 0.0;
  std::vector<double> energies_used;  // eigenvalues inside [E0, E0+eps)
  double e0 = 0.0;
};

struct WindowOptions {
  bool randomize = false;      // seeded unit combination instead of ground
  std::uint64_t seed = 29;
};

// Spectrum rich enough to resolve [E0, E0+eps) windows; dense below the cap,
// Lanczos above it.
Spectrum window_spectrum(const SparseOperator& h, double eps_max,
                         double tol = 1e-11, std::uint64_t seed = 20240501);

SpectralWindowVector spectral_window(const SparseOperator& h, double eps,
                                     const WindowOptions& opts = {});
SpectralWindowVector spectral_window(const Spectrum& spectrum, double eps,
                                     const WindowOptions& opts = {});

// Ψ = ((B(h) + B*(h)) ⊗ I) Ξ for a normalized h.
ComplexVector trial_state(const AbstractSystem& system, const ComplexVector& h,
                          const SpectralWindowVector& window);

// One probed (λ, n, ε) configuration. The chain fields carry the
// intermediate inequalities with their branch-specific right-hand sides;
// every slack is a finite-dimensional theorem and must be ≥ -1e-9.
struct ProbeRow {
  double lambda = 0.0;
  int n = 0;
  double eps = 0.0;
  double residual = 0.0;   // ‖(H − (E0+λ))Ψ‖
  double term_eps = 0.0;   // window term
  double term_K = 0.0;     // dispersion term
  double term_B = 0.0;     // 2|λ|·(annihilator overlap with the window)
  double term_HI = 0.0;    // interaction weak-commutator norms; 0 at κ = 0
  double bound = 0.0;      // term_eps + term_K + term_B + term_HI
  double norm_check = 0.0;  // ‖Ψ‖; 1 on the fermionic branch
  double chain_a_lhs = 0.0, chain_a_rhs = 0.0;
  double chain_b_lhs = 0.0, chain_b_rhs = 0.0;
  double chain_c_lhs = 0.0, chain_c_rhs = 0.0;
  double trunc_defect = 0.0;  // bosonic rows: CCR defect of the window
  std::string branch = "fermion";

  double chain_a_slack() const { return chain_a_rhs - chain_a_lhs; }
  double chain_b_slack() const { return chain_b_rhs - chain_b_lhs; }
  double chain_c_slack() const { return chain_c_rhs - chain_c_lhs; }
  double bound_slack() const { return bound - residual; }
  double min_slack() const;
};

struct ProbeReport {
  double lambda = 0.0;
  double e0 = 0.0;
  std::vector<ProbeRow> rows;
  bool residual_trend_decreasing = false;  // along family order at min eps
  double min_residual = 0.0;
  double min_slack = 0.0;  // most negative slack over rows and chain checks

  std::string to_csv() const;
};

struct ProbeOptions {
  const Spectrum* spectrum = nullptr;  // precomputed window spectrum
  WindowOptions window;
  double solver_tol = 1e-11;
  std::uint64_t solver_seed = 20240501;
};

// Fermionic probe: trial states ((B(h)+B*(h))⊗I)Ξ_ε per (h, ε).
ProbeReport probe_lambda(const AbstractSystem& system, double lambda,
                         const std::vector<ComplexVector>& h_family,
                         const std::vector<double>& eps_list,
                         const ProbeOptions& opts = {});

// Bosonic analog with (I⊗(A(f)+A*(f)))Ξ_ε; requires the bosonic T factor.
// Bound terms are evaluated on the window (the boson operators are
// unbounded), so the rowwise inequality stays exact.
ProbeReport probe_lambda_boson(const AbstractSystem& system, double lambda,
                               const std::vector<ComplexVector>& f_family,
                               const std::vector<double>& eps_list,
                               const ProbeOptions& opts = {});

struct ProbeLevel {
  const AbstractSystem* system = nullptr;
  std::vector<ComplexVector> family;
  bool bosonic = false;
};

struct ConvergenceRow {
  int level = 0;
  Index dim = 0;
  double e0 = 0.0;
  double min_residual = 0.0;
  double min_term_B = 0.0;
};

struct ConvergenceTable {
  double lambda = 0.0;
  std::vector<ConvergenceRow> rows;
  std::vector<ProbeReport> reports;
  bool nonincreasing(double tolerance) const;
};

// Probes the same λ across a refining sequence of systems. Levels must
// strictly grow in dimension; families are the caller's (including any
// carried-forward vectors).
ConvergenceTable refine_and_probe(const std::vector<ProbeLevel>& levels,
                                  double lambda,
                                  const std::vector<double>& eps_list,
                                  const ProbeOptions& opts = {});

}  // namespace fockbench::weyl

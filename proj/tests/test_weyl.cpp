#include <doctest.h>

#include <cmath>

#include "fockbench/rng.hpp"
#include "fockbench/weyl.hpp"
#include "oracles.hpp"

using namespace fockbench;
using fermion::FermionBasis;
using boson::BosonBasis;

namespace {

// free system with diagonal dispersion and a diagonal T factor
AbstractSystem free_fermion_system(const std::vector<double>& omegas,
                                   const std::vector<double>& t_levels) {
  const int d = static_cast<int>(omegas.size());
  DenseMatrix k = DenseMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) k(i, i) = omegas[i];
  DenseMatrix t = DenseMatrix::Zero(t_levels.size(), t_levels.size());
  for (std::size_t i = 0; i < t_levels.size(); ++i) t(i, i) = t_levels[i];
  FermionBasis basis(d);
  const Index dim = basis.dim() * static_cast<Index>(t_levels.size());
  return make_system(std::move(basis), OneParticleOperator(k),
                     from_dense(t, true), zero_op(dim, dim));
}

AbstractSystem free_mixed_system(const std::vector<double>& fermion_omegas,
                                 const std::vector<double>& boson_omegas,
                                 int n_max) {
  const int d = static_cast<int>(fermion_omegas.size());
  const int db = static_cast<int>(boson_omegas.size());
  DenseMatrix k = DenseMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) k(i, i) = fermion_omegas[i];
  DenseMatrix s = DenseMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i) s(i, i) = boson_omegas[i];
  FermionBasis fb(d);
  BosonBasis bb(db, n_max);
  OneParticleOperator s_op(s);
  const SparseOperator t = boson::second_quantization(bb, s_op);
  const Index dim = fb.dim() * bb.dim();
  AbstractSystem sys = make_system(std::move(fb), OneParticleOperator(k), t,
                                   zero_op(dim, dim));
  sys.boson_basis = std::move(bb);
  sys.boson_dispersion = std::move(s_op);
  return sys;
}

}  // namespace

TEST_CASE("spectral window: ground state always qualifies") {
  DenseMatrix h = DenseMatrix::Zero(3, 3);
  h.diagonal() << 0.0, 0.05, 3.0;
  const SparseOperator op = from_dense(h, true);

  const auto window = weyl::spectral_window(op, 0.1);
  CHECK(window.energies_used.size() == 2);  // 0 and 0.05 inside [0, 0.1)
  CHECK(std::abs(window.vector.norm() - 1.0) <= 1e-14);
  // default is the ground eigenvector
  CHECK(std::abs(std::abs(window.vector[0]) - 1.0) <= 1e-12);
  CHECK((op.apply(window.vector) - window.e0 * window.vector).norm() <= 0.1);

  const auto tiny_window = weyl::spectral_window(op, 0.01);
  CHECK(tiny_window.energies_used.size() == 1);
}

TEST_CASE("spectral window: randomized degenerate choice is seeded") {
  DenseMatrix h = DenseMatrix::Zero(4, 4);
  h.diagonal() << 0.0, 0.02, 0.04, 5.0;
  const SparseOperator op = from_dense(h, true);
  weyl::WindowOptions opts;
  opts.randomize = true;
  opts.seed = 7;
  const auto w1 = weyl::spectral_window(op, 0.1, opts);
  const auto w2 = weyl::spectral_window(op, 0.1, opts);
  CHECK((w1.vector - w2.vector).norm() <= 1e-14);  // deterministic
  CHECK((op.apply(w1.vector) - w1.e0 * w1.vector).norm() <= 0.1 + 1e-12);
  CHECK(std::abs(w1.vector.norm() - 1.0) <= 1e-12);
}

TEST_CASE("trial state: unit norm via the anticommutator identity") {
  rng::Stream stream(501);
  const AbstractSystem sys = free_fermion_system({0.6, 1.1, 1.7}, {0.0, 0.9});
  const Spectrum spectrum = eig_dense(sys.H);
  weyl::ProbeOptions popts;
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexVector h = stream.unit_vector(3);
    const auto window = weyl::spectral_window(spectrum, 0.2);
    const ComplexVector psi = weyl::trial_state(sys, h, window);
    CHECK(std::abs(psi.norm() - 1.0) <= 1e-10);

    // ⟨Ψ,Ψ⟩ = ⟨Ξ, ({B(h),B*(h)}⊗I) Ξ⟩ because B(h)² = B*(h)² = 0
    const SparseOperator anti = sys.lift_fermion(
        anticommutator(fermion::annihilation(sys.fermion_basis, h),
                       fermion::creation(sys.fermion_basis, h)));
    const Complex expect = window.vector.dot(anti.apply(window.vector));
    CHECK(std::abs(psi.squaredNorm() - expect) <= 1e-12);
  }
}

TEST_CASE("trial state rejects unnormalized h") {
  const AbstractSystem sys = free_fermion_system({1.0}, {0.0});
  const auto window = weyl::spectral_window(sys.H, 0.1);
  ComplexVector h(1);
  h << 2.0;
  CHECK_THROWS_AS((void)weyl::trial_state(sys, h, window),
                  std::invalid_argument);
}

TEST_CASE("free-field exactness: K-eigenpair probes have zero residual") {
  const std::vector<double> omegas{0.8, 1.3, 2.0};
  const AbstractSystem sys = free_fermion_system(omegas, {0.0, 2.5});
  for (int j = 0; j < 3; ++j) {
    ComplexVector h = ComplexVector::Zero(3);
    h[j] = 1.0;
    const auto report =
        weyl::probe_lambda(sys, omegas[j], {h}, {0.05, 0.2});
    for (const auto& row : report.rows) {
      CHECK(row.residual <= 1e-10);
      CHECK(std::abs(row.norm_check - 1.0) <= 1e-10);
      CHECK(row.term_K <= 1e-12);
      CHECK(row.term_B <= 1e-12);
      CHECK(row.term_HI == 0.0);
      CHECK(row.min_slack() >= -1e-9);
    }
  }
}

TEST_CASE("probe rows: rowwise bound and chain inequalities on random h") {
  rng::Stream stream(502);
  const AbstractSystem sys =
      free_fermion_system({0.7, 1.0, 1.4, 2.2}, {0.0, 0.6, 1.9});
  std::vector<ComplexVector> family;
  for (int n = 0; n < 4; ++n) family.push_back(stream.unit_vector(4));
  const auto report =
      weyl::probe_lambda(sys, 1.1, family, {0.05, 0.1, 0.3});
  CHECK(report.rows.size() == 12);
  for (const auto& row : report.rows) {
    CHECK(std::abs(row.norm_check - 1.0) <= 1e-10);
    CHECK(row.residual <= row.bound + 1e-9);
    CHECK(row.chain_a_slack() >= -1e-9);
    CHECK(row.chain_b_slack() >= -1e-9);
    CHECK(row.chain_c_slack() >= -1e-9);
  }
  CHECK(report.min_slack >= -1e-9);
}

TEST_CASE("probe input validation") {
  const AbstractSystem sys = free_fermion_system({1.0, 1.5}, {0.0});
  ComplexVector h = ComplexVector::Zero(2);
  h[0] = 1.0;
  CHECK_THROWS_AS(
      (void)weyl::probe_lambda(sys, -1.0, {h}, {0.1}),
      std::invalid_argument);
  CHECK_THROWS_AS((void)weyl::probe_lambda(sys, 1.0, {}, {0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)weyl::probe_lambda(sys, 1.0, {2.0 * h}, {0.1}),
                  std::invalid_argument);
}

TEST_CASE("bosonic probe: eigenmode exactness on the sub-cutoff window") {
  const AbstractSystem sys =
      free_mixed_system({1.0, 1.6}, {0.75, 1.2}, 2);
  for (int j = 0; j < 2; ++j) {
    ComplexVector f = ComplexVector::Zero(2);
    f[j] = 1.0;
    const double lambda = j == 0 ? 0.75 : 1.2;
    const auto report =
        weyl::probe_lambda_boson(sys, lambda, {f}, {0.05, 0.2});
    for (const auto& row : report.rows) {
      CHECK(row.residual <= 1e-10);
      CHECK(row.trunc_defect <= 1e-12);  // vacuum window is sub-cutoff
      CHECK(std::abs(row.norm_check - 1.0) <= 1e-10);
      CHECK(row.min_slack() >= -1e-9);
      CHECK(row.branch == "boson");
    }
  }
}

TEST_CASE("bosonic probe: random smearing keeps the evaluated bound") {
  rng::Stream stream(503);
  const AbstractSystem sys =
      free_mixed_system({1.0, 1.6, 2.1}, {0.75, 1.2, 1.5}, 2);
  std::vector<ComplexVector> family;
  for (int n = 0; n < 3; ++n) family.push_back(stream.unit_vector(3));
  const auto report =
      weyl::probe_lambda_boson(sys, 0.9, family, {0.1, 0.3});
  for (const auto& row : report.rows) {
    CHECK(row.residual <= row.bound + 1e-9);
    CHECK(row.chain_a_slack() >= -1e-9);
    CHECK(row.chain_b_slack() >= -1e-9);
    CHECK(row.chain_c_slack() >= -1e-9);
  }
}

TEST_CASE("bosonic probe requires the bosonic T factor") {
  const AbstractSystem sys = free_fermion_system({1.0}, {0.0});
  ComplexVector f(1);
  f << 1.0;
  CHECK_THROWS_AS(
      (void)weyl::probe_lambda_boson(sys, 1.0, {f}, {0.1}),
      std::invalid_argument);
}

TEST_CASE("refinement: fresh disjoint modes give vanishing overlap terms") {
  // growing mode counts 2 → 4 → 8; the target dispersion value gets closer
  // at each level through the freshly added modes
  const double lambda = 1.0;
  const std::vector<std::vector<double>> omega_levels = {
      {1.2, 1.5},
      {1.2, 1.5, 1.1, 1.6},
      {1.2, 1.5, 1.1, 1.6, 1.05, 1.7, 2.0, 2.3}};

  std::vector<AbstractSystem> systems;
  for (const auto& omegas : omega_levels)
    systems.push_back(free_fermion_system(omegas, {0.0, 3.0}));

  std::vector<weyl::ProbeLevel> levels;
  for (std::size_t lvl = 0; lvl < systems.size(); ++lvl) {
    weyl::ProbeLevel level;
    level.system = &systems[lvl];
    const int d = static_cast<int>(omega_levels[lvl].size());
    // single-mode vectors, one per mode, nearest-to-λ first
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(omega_levels[lvl][a] - lambda) <
             std::abs(omega_levels[lvl][b] - lambda);
    });
    for (int i = 0; i < std::min(d, 3); ++i) {
      ComplexVector h = ComplexVector::Zero(d);
      h[order[i]] = 1.0;
      level.family.push_back(h);
    }
    levels.push_back(std::move(level));
  }

  const auto table = weyl::refine_and_probe(levels, lambda, {0.05, 0.1});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.nonincreasing(1e-6));
  // free field, vacuum-sector window: every annihilator overlap vanishes
  for (const auto& row : table.rows) CHECK(row.min_term_B <= 1e-12);
  // residual at each level is the dispersion distance of the best mode
  CHECK(table.rows[0].min_residual == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(table.rows[1].min_residual == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(table.rows[2].min_residual == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("refinement rejects non-growing level sequences") {
  const AbstractSystem a = free_fermion_system({1.0, 1.5}, {0.0});
  const AbstractSystem b = free_fermion_system({1.0, 1.5}, {0.0});
  ComplexVector h = ComplexVector::Zero(2);
  h[0] = 1.0;
  std::vector<weyl::ProbeLevel> levels(2);
  levels[0].system = &a;
  levels[0].family = {h};
  levels[1].system = &b;
  levels[1].family = {h};
  CHECK_THROWS_AS((void)weyl::refine_and_probe(levels, 1.0, {0.1}),
                  std::invalid_argument);
}

TEST_CASE("probe report serializes to CSV with stable columns") {
  const AbstractSystem sys = free_fermion_system({1.0, 1.4}, {0.0});
  ComplexVector h = ComplexVector::Zero(2);
  h[0] = 1.0;
  const auto report = weyl::probe_lambda(sys, 1.0, {h}, {0.1, 0.2});
  const std::string csv = report.to_csv();
  CHECK(csv.find("lambda,n,eps,residual,term_eps,term_K,term_B,term_HI,"
                 "bound,norm_check") == 0);
  // header + one row per (h, eps)
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

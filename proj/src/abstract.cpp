#include "fockbench/abstract.hpp"

#include <cmath>

#include "fockbench/rng.hpp"

namespace fockbench {

SparseOperator AbstractSystem::lift_fermion(const SparseOperator& a) const {
  return kron(a, identity_op(t_dim()));
}

SparseOperator AbstractSystem::lift_t(const SparseOperator& a) const {
  return kron(identity_op(fermion_dim()), a);
}

SparseOperator build_H0(const fermion::FermionBasis& basis,
                        const OneParticleOperator& k,
                        const SparseOperator& t) {
  detail::require(t.rows() == t.cols(), "T factor must be square");
  detail::require(t.hermitian && hermiticity_defect(t) <= 1e-12,
                  "T factor must be Hermitian");
  const double kmin = k.min_eigenvalue();
  detail::require(kmin > 0.0,
                  "dispersion K must be strictly positive (min eigenvalue " +
                      std::to_string(kmin) + ")");
  const SparseOperator dgamma = fermion::second_quantization(basis, k);
  return kron(dgamma, identity_op(t.rows())) +
         kron(identity_op(basis.dim()), t);
}

AbstractSystem make_system(fermion::FermionBasis basis, OneParticleOperator k,
                           SparseOperator t, SparseOperator interaction) {
  SparseOperator h0 = build_H0(basis, k, t);
  detail::require(interaction.rows() == h0.rows() &&
                      interaction.cols() == h0.cols(),
                  "interaction dimension mismatch");
  detail::require(hermiticity_defect(interaction) <= 1e-12,
                  "interaction must be Hermitian");
  interaction.hermitian = true;
  SparseOperator h = h0 + interaction;
  h.hermitian = true;
  return AbstractSystem{std::move(basis), std::move(k),   std::move(t),
                        std::move(interaction), std::move(h0), std::move(h),
                        std::nullopt,    std::nullopt};
}

WeakCommutatorResult weak_commutator(const SparseOperator& x,
                                     const SparseOperator& y, int samples,
                                     std::uint64_t seed) {
  WeakCommutatorResult result;
  result.Z = commutator(x, y);

  rng::Stream stream(seed);
  const Index n = x.rows();
  for (int s = 0; s < samples; ++s) {
    const ComplexVector phi = stream.unit_vector(n);
    const ComplexVector psi = stream.unit_vector(n);
    const Complex lhs = x.apply_adjoint(phi).dot(y.apply(psi)) -
                        y.apply_adjoint(phi).dot(x.apply(psi));
    const Complex rhs = phi.dot(result.Z.apply(psi));
    result.max_defect = std::max(result.max_defect, std::abs(lhs - rhs));
  }
  return result;
}

DecayReport check_a2_decay(const AbstractSystem& system,
                           const std::vector<ComplexVector>& h_family,
                           int psi_samples, std::uint64_t seed,
                           double tolerance) {
  detail::require(!h_family.empty(), "A2 decay check: empty family");
  rng::Stream stream(seed);
  std::vector<ComplexVector> psis;
  for (int s = 0; s < psi_samples; ++s)
    psis.push_back(stream.unit_vector(system.dim()));

  DecayReport report;
  int n = 0;
  for (const auto& h : h_family) {
    detail::require(std::abs(h.norm() - 1.0) <= 1e-10,
                    "A2 decay check: family vectors must be normalized");
    const SparseOperator ann =
        system.lift_fermion(fermion::annihilation(system.fermion_basis, h));
    const SparseOperator cre =
        system.lift_fermion(fermion::creation(system.fermion_basis, h));
    const SparseOperator ca = commutator(system.interaction, ann);
    const SparseOperator cc = commutator(system.interaction, cre);

    DecayRow row;
    row.n = n++;
    for (const auto& psi : psis) {
      row.r_annihilation = std::max(row.r_annihilation, ca.apply(psi).norm());
      row.r_creation = std::max(row.r_creation, cc.apply(psi).norm());
    }
    report.rows.push_back(row);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1];
    const auto& cur = report.rows[i];
    if (cur.r_annihilation > prev.r_annihilation + tolerance ||
        cur.r_creation > prev.r_creation + tolerance)
      report.nonincreasing = false;
  }
  report.final_r = std::max(report.rows.back().r_annihilation,
                            report.rows.back().r_creation);
  return report;
}

}  // namespace fockbench

#pragma once

#include <optional>
#include <vector>

#include "fockbench/boson.hpp"
#include "fockbench/fermion.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench {

// H = dΓ_f(K)⊗I + I⊗T + H_I on (fermion Fock space) ⊗ (T factor). When the
// T factor is itself a truncated boson Fock space, its basis and dispersion
// ride along so the bosonic probe can address them.
struct AbstractSystem {
  fermion::FermionBasis fermion_basis;
  OneParticleOperator K;
  SparseOperator T_op;
  SparseOperator interaction;  // already includes any coupling constant
  SparseOperator H0;
  SparseOperator H;

  std::optional<boson::BosonBasis> boson_basis;
  std::optional<OneParticleOperator> boson_dispersion;  // S with ω > 0

  Index fermion_dim() const { return fermion_basis.dim(); }
  Index t_dim() const { return T_op.rows(); }
  Index dim() const { return H.rows(); }

  // lifts of fermion-factor / T-factor operators to the tensor space
  SparseOperator lift_fermion(const SparseOperator& a) const;
  SparseOperator lift_t(const SparseOperator& a) const;
};

// Free Hamiltonian; rejects K unless strictly positive (nonnegative with
// trivial kernel).
SparseOperator build_H0(const fermion::FermionBasis& basis,
                        const OneParticleOperator& k, const SparseOperator& t);

AbstractSystem make_system(fermion::FermionBasis basis, OneParticleOperator k,
                           SparseOperator t, SparseOperator interaction);

struct WeakCommutatorResult {
  SparseOperator Z;
  double max_defect = 0.0;
};

// Z with (X†Φ, YΨ) − (Y†Φ, XΨ) = (Φ, ZΨ); in finite dimension Z = [X, Y],
// and max_defect samples the defining identity on random pairs.
WeakCommutatorResult weak_commutator(const SparseOperator& x,
                                     const SparseOperator& y, int samples,
                                     std::uint64_t seed = 13);

struct DecayRow {
  int n = 0;
  double r_annihilation = 0.0;  // max over sampled Ψ of ‖[H_I, B(h_n)⊗I]Ψ‖
  double r_creation = 0.0;      // same with B*
};

struct DecayReport {
  std::vector<DecayRow> rows;
  bool nonincreasing = true;  // along the family, within tolerance
  double final_r = 0.0;       // max of the two columns at the last n
};

// Finite shadow of the interaction decay condition along a family of
// normalized one-particle vectors.
DecayReport check_a2_decay(const AbstractSystem& system,
                           const std::vector<ComplexVector>& h_family,
                           int psi_samples, std::uint64_t seed = 17,
                           double tolerance = 1e-9);

}  // namespace fockbench

#pragma once

#include <cstdint>
#include <vector>

#include "fockbench/linalg.hpp"

namespace fockbench {

// Hermitian matrix acting on the one-particle space; also used for the
// (strictly positive) dispersion K.
struct OneParticleOperator {
  DenseMatrix matrix;

  explicit OneParticleOperator(DenseMatrix m);
  Index dim() const { return matrix.rows(); }
  double min_eigenvalue() const;
  bool strictly_positive() const { return min_eigenvalue() > 0.0; }
};

namespace fermion {

// Occupation-number basis over d modes: all bitmasks with popcount up to
// occupation_cap, ordered by increasing mask value. The full space
// (occupation_cap == d) is capped at d ≤ 14 modes; larger d requires a cap.
class FermionBasis {
 public:
  explicit FermionBasis(int mode_count);
  FermionBasis(int mode_count, int occupation_cap);

  int mode_count() const { return d_; }
  int occupation_cap() const { return cap_; }
  bool restricted() const { return cap_ < d_; }
  Index dim() const { return static_cast<Index>(states_.size()); }

  std::uint32_t state(Index i) const { return states_[i]; }
  // -1 when the mask is not in the basis (occupation above the cap)
  Index index_of(std::uint32_t mask) const;

  static constexpr int full_space_mode_cap = 14;

 private:
  int d_;
  int cap_;
  std::vector<std::uint32_t> states_;
};

ComplexVector vacuum(const FermionBasis& basis);

// B*(g) = Σ_j g_j B*(e_j), Jordan–Wigner sign counting occupied modes below
// j. Linear in g. With a restricted basis, creation out of the top
// occupation sector maps to zero (hard truncation).
SparseOperator creation(const FermionBasis& basis, const ComplexVector& g);

// B(f) = (B*(f))†, antilinear in f.
SparseOperator annihilation(const FermionBasis& basis, const ComplexVector& f);

// dΓ_f(X) = Σ_{j,k} X_{jk} B*(e_j) B(e_k); block diagonal in particle
// number, so exact also on restricted bases.
SparseOperator second_quantization(const FermionBasis& basis,
                                   const OneParticleOperator& x);

}  // namespace fermion
}  // namespace fockbench

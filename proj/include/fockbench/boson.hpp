#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fockbench/fermion.hpp"  // OneParticleOperator
#include "fockbench/linalg.hpp"

namespace fockbench::boson {

// Total-occupancy-truncated boson basis: all multi-indices (n_1..n_d) with
// Σ n_j ≤ n_max, graded lexicographic order (grades ascending, plain lex
// inside each grade), so total-occupancy sectors are contiguous blocks.
class BosonBasis {
 public:
  BosonBasis(int mode_count, int n_max);

  int mode_count() const { return d_; }
  int n_max() const { return n_max_; }
  Index dim() const { return static_cast<Index>(states_.size()); }

  const std::vector<int>& occupation(Index i) const { return states_[i]; }
  int total_occupation(Index i) const { return totals_[i]; }
  Index index_of(const std::vector<int>& occ) const;  // -1 if absent

 private:
  std::uint64_t key_of(const std::vector<int>& occ) const;

  int d_;
  int n_max_;
  std::vector<std::vector<int>> states_;
  std::vector<int> totals_;
  std::unordered_map<std::uint64_t, Index> lookup_;
};

ComplexVector vacuum(const BosonBasis& basis);

// A*(g) = Σ_j g_j A*(e_j) with A*(e_j)|n⟩ = √(n_j+1)|n+e_j⟩; creation out of
// the top sector maps to zero (hard truncation), keeping A and A* adjoint.
SparseOperator creation(const BosonBasis& basis, const ComplexVector& g);

// A(f) = (A*(f))†, antilinear in f.
SparseOperator annihilation(const BosonBasis& basis, const ComplexVector& f);

// dΓ_b(Y) = Σ_{j,k} Y_{jk} A*(e_j) A(e_k); sector-preserving, hence exact on
// the truncated space.
SparseOperator second_quantization(const BosonBasis& basis,
                                   const OneParticleOperator& y);

// Diagonal projector onto Σ n ≤ n_max − 1; the CCR hold on its range.
SparseOperator sub_cutoff_projector(const BosonBasis& basis);

struct BoundSample {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct BoundReport {
  std::vector<BoundSample> samples;
  double min_margin = 0.0;
  double max_violation = 0.0;  // max(lhs - rhs, 0) over samples
};

// ‖A(f)Ψ‖ ≤ ‖Y^{-1/2}f‖ ‖dΓ(Y)^{1/2}Ψ‖ over random states.
BoundReport check_annihilation_bound(const BosonBasis& basis,
                                     const OneParticleOperator& y,
                                     const ComplexVector& f, int samples,
                                     std::uint64_t seed = 7);

// ‖A*(f)Ψ‖ ≤ ‖Y^{-1/2}f‖ ‖dΓ(Y)^{1/2}Ψ‖ + ‖f‖ ‖Ψ‖ over random states.
BoundReport check_creation_bound(const BosonBasis& basis,
                                 const OneParticleOperator& y,
                                 const ComplexVector& f, int samples,
                                 std::uint64_t seed = 7);

}  // namespace fockbench::boson

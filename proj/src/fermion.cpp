#include "fockbench/fermion.hpp"

#include <algorithm>
#include <bit>

namespace fockbench {

OneParticleOperator::OneParticleOperator(DenseMatrix m) : matrix(std::move(m)) {
  detail::require(matrix.rows() == matrix.cols(),
                  "one-particle operator must be square");
  detail::require(matrix.rows() > 0, "one-particle operator must be nonempty");
  const double defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  detail::require(defect <= 1e-12,
                  "one-particle operator not Hermitian (defect " +
                      std::to_string(defect) + ")");
}

double OneParticleOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(matrix,
                                                Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace fermion {

namespace {

inline int jw_parity(std::uint32_t mask, int j) {
  const std::uint32_t below = mask & ((std::uint32_t(1) << j) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace

FermionBasis::FermionBasis(int mode_count)
    : FermionBasis(mode_count, mode_count) {}

FermionBasis::FermionBasis(int mode_count, int occupation_cap)
    : d_(mode_count), cap_(occupation_cap) {
  detail::require(d_ >= 1, "fermion basis needs at least one mode");
  detail::require(cap_ >= 0 && cap_ <= d_,
                  "fermion occupation cap must be in [0, mode_count]");
  detail::require(d_ <= 30, "fermion mode count exceeds bitmask width");
  if (cap_ == d_)
    detail::require(d_ <= full_space_mode_cap,
                    "full fermion space capped at " +
                        std::to_string(full_space_mode_cap) +
                        " modes; use an occupation cap beyond that");

  if (cap_ == d_) {
    const std::uint64_t n = std::uint64_t(1) << d_;
    detail::require(static_cast<Index>(n) <= basis_size_cap(),
                    "fermion basis exceeds size cap");
    states_.resize(n);
    for (std::uint64_t m = 0; m < n; ++m) states_[m] = static_cast<std::uint32_t>(m);
  } else {
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << d_); ++m)
      if (std::popcount(m) <= cap_) states_.push_back(static_cast<std::uint32_t>(m));
    detail::require(static_cast<Index>(states_.size()) <= basis_size_cap(),
                    "fermion basis exceeds size cap");
  }
}

Index FermionBasis::index_of(std::uint32_t mask) const {
  if (cap_ == d_) {
    return mask < states_.size() ? static_cast<Index>(mask) : -1;
  }
  const auto it = std::lower_bound(states_.begin(), states_.end(), mask);
  if (it == states_.end() || *it != mask) return -1;
  return static_cast<Index>(it - states_.begin());
}

ComplexVector vacuum(const FermionBasis& basis) {
  ComplexVector v = ComplexVector::Zero(basis.dim());
  v[basis.index_of(0)] = 1.0;
  return v;
}

SparseOperator creation(const FermionBasis& basis, const ComplexVector& g) {
  detail::require(g.size() == basis.mode_count(),
                  "creation: smearing vector has wrong dimension");
  std::vector<Triplet> trips;
  for (Index i = 0; i < basis.dim(); ++i) {
    const std::uint32_t mask = basis.state(i);
    for (int j = 0; j < basis.mode_count(); ++j) {
      if (g[j] == Complex(0, 0)) continue;
      const std::uint32_t bit = std::uint32_t(1) << j;
      if (mask & bit) continue;
      const Index target = basis.index_of(mask | bit);
      if (target < 0) continue;  // above the occupation cap: truncated
      trips.emplace_back(target, i, double(jw_parity(mask, j)) * g[j]);
    }
  }
  return make_operator(basis.dim(), basis.dim(), trips, false);
}

SparseOperator annihilation(const FermionBasis& basis, const ComplexVector& f) {
  detail::require(f.size() == basis.mode_count(),
                  "annihilation: smearing vector has wrong dimension");
  std::vector<Triplet> trips;
  for (Index i = 0; i < basis.dim(); ++i) {
    const std::uint32_t mask = basis.state(i);
    for (int j = 0; j < basis.mode_count(); ++j) {
      if (f[j] == Complex(0, 0)) continue;
      const std::uint32_t bit = std::uint32_t(1) << j;
      if (!(mask & bit)) continue;
      const Index target = basis.index_of(mask & ~bit);
      trips.emplace_back(target, i,
                         double(jw_parity(mask, j)) * std::conj(f[j]));
    }
  }
  return make_operator(basis.dim(), basis.dim(), trips, false);
}

SparseOperator second_quantization(const FermionBasis& basis,
                                   const OneParticleOperator& x) {
  detail::require(x.dim() == basis.mode_count(),
                  "second quantization: operator dimension mismatch");
  const DenseMatrix& m = x.matrix;

  // nonzero entries of X, gathered once
  std::vector<std::pair<int, int>> nz;
  for (int j = 0; j < m.rows(); ++j)
    for (int k = 0; k < m.cols(); ++k)
      if (m(j, k) != Complex(0, 0)) nz.emplace_back(j, k);

  std::vector<Triplet> trips;
  for (Index i = 0; i < basis.dim(); ++i) {
    const std::uint32_t mask = basis.state(i);
    for (const auto& [j, k] : nz) {
      const std::uint32_t kbit = std::uint32_t(1) << k;
      if (!(mask & kbit)) continue;
      const int sk = jw_parity(mask, k);
      const std::uint32_t inter = mask & ~kbit;
      const std::uint32_t jbit = std::uint32_t(1) << j;
      if (inter & jbit) continue;
      const int sj = jw_parity(inter, j);
      const Index target = basis.index_of(inter | jbit);
      trips.emplace_back(target, i, double(sk * sj) * m(j, k));
    }
  }
  return make_operator(basis.dim(), basis.dim(), trips, true);
}

}  // namespace fermion
}  // namespace fockbench

#include "fockbench/boson.hpp"

#include <cmath>

#include "fockbench/rng.hpp"

namespace fockbench::boson {

namespace {

void enumerate_sector(int modes, int remaining, std::vector<int>& occ,
                      std::vector<std::vector<int>>& out) {
  const int slot = static_cast<int>(occ.size());
  if (slot == modes - 1) {
    occ.push_back(remaining);
    out.push_back(occ);
    occ.pop_back();
    return;
  }
  for (int n = 0; n <= remaining; ++n) {
    occ.push_back(n);
    enumerate_sector(modes, remaining - n, occ, out);
    occ.pop_back();
  }
}

}  // namespace

BosonBasis::BosonBasis(int mode_count, int n_max)
    : d_(mode_count), n_max_(n_max) {
  detail::require(d_ >= 1, "boson basis needs at least one mode");
  detail::require(n_max_ >= 0, "boson occupancy cutoff must be nonnegative");
  detail::require(d_ <= 16 && n_max_ <= 255,
                  "boson basis limits: at most 16 modes, n_max ≤ 255");
  if (d_ > 8)
    detail::require(n_max_ <= 15,
                    "boson basis with more than 8 modes requires n_max ≤ 15");

  for (int total = 0; total <= n_max_; ++total) {
    std::vector<std::vector<int>> sector;
    std::vector<int> occ;
    enumerate_sector(d_, total, occ, sector);
    for (auto& s : sector) {
      totals_.push_back(total);
      states_.push_back(std::move(s));
    }
  }
  detail::require(static_cast<Index>(states_.size()) <= basis_size_cap(),
                  "boson basis exceeds size cap");
  for (Index i = 0; i < dim(); ++i) lookup_.emplace(key_of(states_[i]), i);
}

std::uint64_t BosonBasis::key_of(const std::vector<int>& occ) const {
  const int shift = d_ <= 8 ? 8 : 4;
  std::uint64_t key = 0;
  for (int i = 0; i < d_; ++i)
    key |= static_cast<std::uint64_t>(occ[i]) << (shift * i);
  return key;
}

Index BosonBasis::index_of(const std::vector<int>& occ) const {
  detail::require(static_cast<int>(occ.size()) == d_,
                  "boson occupation vector has wrong length");
  const auto it = lookup_.find(key_of(occ));
  return it == lookup_.end() ? -1 : it->second;
}

ComplexVector vacuum(const BosonBasis& basis) {
  ComplexVector v = ComplexVector::Zero(basis.dim());
  v[0] = 1.0;  // grade 0 is the first block
  return v;
}

SparseOperator creation(const BosonBasis& basis, const ComplexVector& g) {
  detail::require(g.size() == basis.mode_count(),
                  "boson creation: smearing vector has wrong dimension");
  std::vector<Triplet> trips;
  std::vector<int> occ;
  for (Index i = 0; i < basis.dim(); ++i) {
    if (basis.total_occupation(i) >= basis.n_max()) continue;  // truncated
    occ = basis.occupation(i);
    for (int j = 0; j < basis.mode_count(); ++j) {
      if (g[j] == Complex(0, 0)) continue;
      occ[j] += 1;
      const Index target = basis.index_of(occ);
      trips.emplace_back(target, i, std::sqrt(double(occ[j])) * g[j]);
      occ[j] -= 1;
    }
  }
  return make_operator(basis.dim(), basis.dim(), trips, false);
}

SparseOperator annihilation(const BosonBasis& basis, const ComplexVector& f) {
  detail::require(f.size() == basis.mode_count(),
                  "boson annihilation: smearing vector has wrong dimension");
  std::vector<Triplet> trips;
  std::vector<int> occ;
  for (Index i = 0; i < basis.dim(); ++i) {
    occ = basis.occupation(i);
    for (int j = 0; j < basis.mode_count(); ++j) {
      if (f[j] == Complex(0, 0) || occ[j] == 0) continue;
      const double amp = std::sqrt(double(occ[j]));
      occ[j] -= 1;
      const Index target = basis.index_of(occ);
      trips.emplace_back(target, i, amp * std::conj(f[j]));
      occ[j] += 1;
    }
  }
  return make_operator(basis.dim(), basis.dim(), trips, false);
}

SparseOperator second_quantization(const BosonBasis& basis,
                                   const OneParticleOperator& y) {
  detail::require(y.dim() == basis.mode_count(),
                  "boson second quantization: operator dimension mismatch");
  const DenseMatrix& m = y.matrix;

  std::vector<std::pair<int, int>> nz;
  for (int j = 0; j < m.rows(); ++j)
    for (int k = 0; k < m.cols(); ++k)
      if (m(j, k) != Complex(0, 0)) nz.emplace_back(j, k);

  std::vector<Triplet> trips;
  std::vector<int> occ;
  for (Index i = 0; i < basis.dim(); ++i) {
    occ = basis.occupation(i);
    for (const auto& [j, k] : nz) {
      if (occ[k] == 0) continue;
      const double down = std::sqrt(double(occ[k]));
      occ[k] -= 1;
      const double up = std::sqrt(double(occ[j] + 1));
      occ[j] += 1;
      const Index target = basis.index_of(occ);
      trips.emplace_back(target, i, down * up * m(j, k));
      occ[j] -= 1;
      occ[k] += 1;
    }
  }
  return make_operator(basis.dim(), basis.dim(), trips, true);
}

SparseOperator sub_cutoff_projector(const BosonBasis& basis) {
  std::vector<Triplet> trips;
  for (Index i = 0; i < basis.dim(); ++i)
    if (basis.total_occupation(i) <= basis.n_max() - 1)
      trips.emplace_back(i, i, 1.0);
  return make_operator(basis.dim(), basis.dim(), trips, true);
}

namespace {

struct SqrtOperators {
  SparseOperator dgamma_sqrt;      // dΓ(Y)^{1/2}
  DenseMatrix y_inv_sqrt;          // Y^{-1/2}
};

SqrtOperators sqrt_operators(const BosonBasis& basis,
                             const OneParticleOperator& y) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(y.matrix);
  detail::require(es.eigenvalues().minCoeff() > 0.0,
                  "bound check requires a strictly positive Y");
  DenseMatrix inv_sqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().adjoint();

  const SparseOperator dg = second_quantization(basis, y);
  Spectrum s = eig_dense(dg);
  const Index n = basis.dim();
  DenseMatrix root = DenseMatrix::Zero(n, n);
  const DenseMatrix& v = *s.eigenvectors;
  for (Index i = 0; i < n; ++i) {
    const double lam = std::max(0.0, s.eigenvalues[i]);
    root += std::sqrt(lam) * (v.col(i) * v.col(i).adjoint());
  }
  return {from_dense(root, true), std::move(inv_sqrt)};
}

BoundReport run_bound_check(const BosonBasis& basis,
                            const OneParticleOperator& y,
                            const ComplexVector& f, int samples,
                            std::uint64_t seed, bool with_creation_term) {
  detail::require(f.size() == basis.mode_count(),
                  "bound check: smearing vector has wrong dimension");
  const auto roots = sqrt_operators(basis, y);
  const double f_weight = (roots.y_inv_sqrt * f).norm();
  const SparseOperator op =
      with_creation_term ? creation(basis, f) : annihilation(basis, f);

  rng::Stream stream(seed);
  BoundReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const ComplexVector psi = stream.unit_vector(basis.dim());
    BoundSample row;
    row.lhs = op.apply(psi).norm();
    row.rhs = f_weight * roots.dgamma_sqrt.apply(psi).norm();
    if (with_creation_term) row.rhs += f.norm() * psi.norm();
    row.margin = row.rhs - row.lhs;
    report.min_margin = std::min(report.min_margin, row.margin);
    report.max_violation = std::max(report.max_violation, -row.margin);
    report.samples.push_back(row);
  }
  if (samples == 0) report.min_margin = 0.0;
  return report;
}

}  // namespace

BoundReport check_annihilation_bound(const BosonBasis& basis,
                                     const OneParticleOperator& y,
                                     const ComplexVector& f, int samples,
                                     std::uint64_t seed) {
  return run_bound_check(basis, y, f, samples, seed, false);
}

BoundReport check_creation_bound(const BosonBasis& basis,
                                 const OneParticleOperator& y,
                                 const ComplexVector& f, int samples,
                                 std::uint64_t seed) {
  return run_bound_check(basis, y, f, samples, seed, true);
}

}  // namespace fockbench::boson

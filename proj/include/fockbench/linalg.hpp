#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockbench {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;
using Index = Eigen::Index;

// Product basis sizes beyond this are refused outright (kron, basis ctors).
Index basis_size_cap();

// Dense eigensolver cap; FOCKBENCH_DENSE_CAP overrides the default 4096.
Index dense_cap();

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower(lower), upper(upper) {}
  double lower;  // certified lower estimate
  double upper;  // certified upper bound
};

// Complex sparse matrix with a hermiticity hint. The hint is a promise made
// by the assembling code; hermiticity_defect() measures the truth.
struct SparseOperator {
  SparseMatrix mat;
  bool hermitian = false;

  SparseOperator() = default;
  SparseOperator(SparseMatrix m, bool herm) : mat(std::move(m)), hermitian(herm) {}

  Index rows() const { return mat.rows(); }
  Index cols() const { return mat.cols(); }
  Index nonZeros() const { return mat.nonZeros(); }

  ComplexVector apply(const ComplexVector& v) const { return mat * v; }
  ComplexVector apply_adjoint(const ComplexVector& v) const {
    return mat.adjoint() * v;
  }
};

SparseOperator make_operator(Index rows, Index cols,
                             const std::vector<Triplet>& entries,
                             bool hermitian);
SparseOperator identity_op(Index n);
SparseOperator zero_op(Index rows, Index cols);
SparseOperator from_dense(const DenseMatrix& m, bool hermitian);

SparseOperator adjoint(const SparseOperator& a);
SparseOperator add(const SparseOperator& a, const SparseOperator& b);
SparseOperator sub(const SparseOperator& a, const SparseOperator& b);
SparseOperator scale(Complex c, const SparseOperator& a);
SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);

inline SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) { return add(a, b); }
inline SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) { return sub(a, b); }
inline SparseOperator operator*(Complex c, const SparseOperator& a) { return scale(c, a); }
inline SparseOperator operator*(double c, const SparseOperator& a) { return scale(Complex(c, 0), a); }
inline SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) { return multiply(a, b); }

// max |A - A†| over entries
double hermiticity_defect(const SparseOperator& a);
// max |A - B| over entries
double max_abs_diff(const SparseOperator& a, const SparseOperator& b);
double max_abs(const SparseOperator& a);

// Tensor product on the fixed index convention
//   index(i ⊗ k) = i * dim(right) + k,
// shared by every basis and field-operator assembly in the project.
SparseOperator kron(const SparseOperator& left, const SparseOperator& right);

SparseOperator commutator(const SparseOperator& x, const SparseOperator& y);
SparseOperator anticommutator(const SparseOperator& x, const SparseOperator& y);

enum class SolverMethod { dense, iterative };

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::optional<DenseMatrix> eigenvectors;  // columns, aligned with eigenvalues
  SolverMethod method = SolverMethod::dense;
  double residual_tol = 0.0;  // max_i ‖Mv_i − λ_i v_i‖ (absolute)
  bool converged = true;

  double ground_energy() const { return eigenvalues.front(); }
  ComplexVector eigenvector(Index i) const;
};

struct EigLowOptions {
  int max_subspace = 0;      // 0 = automatic
  std::uint64_t seed = 20240501;
  bool want_vectors = true;
};

// Full dense spectrum. Requires the hermitian hint, a defect within
// tolerance, and dim ≤ dense_cap().
Spectrum eig_dense(const SparseOperator& m);
// same solver, eigenvalues only (no eigenvector matrix in the result)
Spectrum eig_dense_values(const SparseOperator& m);

// Lowest-k eigenpairs by Lanczos with full reorthogonalization. On
// non-convergence the returned Spectrum carries converged = false and the
// achieved residual; callers decide whether that is fatal.
Spectrum eig_low(const SparseOperator& m, int k, double tol,
                 const EigLowOptions& opts = {});

struct OpNormOptions {
  int max_iter = 20000;
  std::uint64_t seed = 911;
};

// Largest singular value via power iteration on A†A. Throws
// ConvergenceError carrying a [lower, upper] bracket if it stalls.
double op_norm(const SparseOperator& a, double tol = 1e-10,
               const OpNormOptions& opts = {});

// Fixes the global phase: largest-magnitude entry made real positive.
void fix_phase(ComplexVector& v);

namespace detail {
void require(bool cond, const std::string& msg);
double gershgorin_bound(const SparseOperator& a);
}  // namespace detail

}  // namespace fockbench

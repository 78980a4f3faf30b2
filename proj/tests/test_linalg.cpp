#include <doctest.h>

#include "fockbench/linalg.hpp"
#include "fockbench/rng.hpp"
#include "oracles.hpp"

using namespace fockbench;

TEST_CASE("kron: identities and diagonal blocks") {
  const SparseOperator i2 = identity_op(2);
  const SparseOperator i3 = identity_op(3);
  const SparseOperator i6 = kron(i2, i3);
  CHECK(i6.rows() == 6);
  CHECK(max_abs_diff(i6, identity_op(6)) == 0.0);

  DenseMatrix d(2, 2);
  d << 1, 0, 0, 2;
  const SparseOperator block = kron(from_dense(d, true), i2);
  DenseMatrix expect = DenseMatrix::Zero(4, 4);
  expect.diagonal() << 1, 1, 2, 2;
  CHECK(max_abs_diff(block, from_dense(expect, true)) == 0.0);
}

TEST_CASE("kron: entrywise index formula on random factors") {
  rng::Stream stream(101);
  const DenseMatrix x = stream.complex_matrix(3, 3);
  const DenseMatrix y = stream.complex_matrix(2, 2);
  const SparseOperator product =
      kron(from_dense(x, false), from_dense(y, false));
  CHECK(oracles::kron_defect(x, y, product) <= 1e-14);
}

TEST_CASE("kron: associativity and hermiticity propagation") {
  rng::Stream stream(102);
  const SparseOperator a = from_dense(stream.hermitian_matrix(2), true);
  const SparseOperator b = from_dense(stream.hermitian_matrix(3), true);
  const SparseOperator c = from_dense(stream.hermitian_matrix(2), true);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-12);
  CHECK(kron(a, b).hermitian);
  CHECK(hermiticity_defect(kron(a, b)) <= 1e-12);
  CHECK(hermiticity_defect(a + a) <= 1e-12);
  CHECK((a + a).hermitian);
}

TEST_CASE("kron: capacity errors are explicit") {
  DenseMatrix big = DenseMatrix::Identity(4096, 4096);
  const SparseOperator a = from_dense(big, true);
  CHECK_THROWS_AS((void)kron(a, a), CapacityError);
}

TEST_CASE("commutator: hand-computed 2x2 cases") {
  CHECK(max_abs(commutator(identity_op(5), identity_op(5))) == 0.0);

  DenseMatrix diag(2, 2), off(2, 2);
  diag << 1, 0, 0, 2;
  off << 0, 3, -1, 0;
  // [diag(1,2), off] scales entries by eigenvalue gaps
  DenseMatrix expect(2, 2);
  expect << 0, -3, -1, 0;
  CHECK(max_abs_diff(commutator(from_dense(diag, true), from_dense(off, false)),
                     from_dense(expect, false)) <= 1e-14);

  rng::Stream stream(103);
  const DenseMatrix x = stream.complex_matrix(4, 4);
  CHECK(max_abs(commutator(identity_op(4), from_dense(x, false))) == 0.0);
}

TEST_CASE("anticommutator: Pauli matrices") {
  const SparseOperator sx = from_dense(oracles::pauli_x(), true);
  const SparseOperator sy = from_dense(oracles::pauli_y(), true);
  CHECK(max_abs(anticommutator(sx, sy)) <= 1e-15);
  CHECK(max_abs_diff(anticommutator(sx, sx), 2.0 * identity_op(2)) <= 1e-15);
}

TEST_CASE("commutator: dimension mismatch is an error") {
  CHECK_THROWS_AS((void)commutator(identity_op(2), identity_op(3)),
                  std::invalid_argument);
}

TEST_CASE("eig_dense: pinned small spectra") {
  DenseMatrix d = DenseMatrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  const Spectrum s = eig_dense(from_dense(d, true));
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == doctest::Approx(1).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(2).epsilon(1e-14));
  CHECK(s.eigenvalues[2] == doctest::Approx(3).epsilon(1e-14));

  const Spectrum pauli = eig_dense(from_dense(oracles::pauli_x(), true));
  CHECK(pauli.eigenvalues[0] == doctest::Approx(-1).epsilon(1e-14));
  CHECK(pauli.eigenvalues[1] == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("eig_dense: eigenvalue sum equals trace, residuals small") {
  rng::Stream stream(104);
  const DenseMatrix m = stream.hermitian_matrix(8);
  const SparseOperator op = from_dense(m, true);
  const Spectrum s = eig_dense(op);
  double sum = 0.0;
  for (double ev : s.eigenvalues) sum += ev;
  const double trace = m.trace().real();
  const double scale = op_norm(op, 1e-10);
  CHECK(std::abs(sum - trace) <= 1e-10 * 8 * std::max(1.0, scale));
  for (int i = 0; i < 8; ++i) {
    const ComplexVector v = s.eigenvector(i);
    CHECK((op.apply(v) - s.eigenvalues[i] * v).norm() <=
          1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("eig_dense: rejects non-Hermitian and oversized input") {
  DenseMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS((void)eig_dense(from_dense(bad, false)),
                  std::invalid_argument);
  SparseOperator liar = from_dense(bad, false);
  liar.hermitian = true;
  CHECK_THROWS_AS((void)eig_dense(liar), std::invalid_argument);
}

TEST_CASE("eig_low: diagonal staircase and dense agreement") {
  DenseMatrix d = DenseMatrix::Zero(100, 100);
  for (int i = 0; i < 100; ++i) d(i, i) = i;
  const SparseOperator op = from_dense(d, true);
  const Spectrum s = eig_low(op, 3, 1e-10);
  REQUIRE(s.converged);
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == doctest::Approx(0).epsilon(1e-9));
  CHECK(s.eigenvalues[1] == doctest::Approx(1).epsilon(1e-9));
  CHECK(s.eigenvalues[2] == doctest::Approx(2).epsilon(1e-9));

  rng::Stream stream(105);
  const SparseOperator m = from_dense(stream.hermitian_matrix(60), true);
  const Spectrum dense = eig_dense(m);
  const Spectrum low = eig_low(m, 5, 1e-11);
  REQUIRE(low.converged);
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(low.eigenvalues[i] - dense.eigenvalues[i]) <= 1e-10);
}

TEST_CASE("eig_low: k = dim-1 allowed, ascending order") {
  rng::Stream stream(106);
  const SparseOperator m = from_dense(stream.hermitian_matrix(12), true);
  const Spectrum s = eig_low(m, 11, 1e-10);
  REQUIRE(s.converged);
  REQUIRE(s.eigenvalues.size() == 11);
  CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  const Spectrum dense = eig_dense(m);
  for (int i = 0; i < 11; ++i)
    CHECK(std::abs(s.eigenvalues[i] - dense.eigenvalues[i]) <= 1e-9);
}

TEST_CASE("op_norm: pinned values") {
  CHECK(op_norm(identity_op(7), 1e-12) == doctest::Approx(1.0).epsilon(1e-10));
  DenseMatrix d = DenseMatrix::Zero(3, 3);
  d.diagonal() << 1, -5, 2;
  CHECK(op_norm(from_dense(d, true), 1e-12) ==
        doctest::Approx(5.0).epsilon(1e-10));
  CHECK(op_norm(zero_op(4, 4), 1e-12) == 0.0);
}

TEST_CASE("spectrum method flags") {
  DenseMatrix d = DenseMatrix::Zero(5, 5);
  d.diagonal() << 0, 1, 2, 3, 4;
  CHECK(eig_dense(from_dense(d, true)).method == SolverMethod::dense);
  CHECK(eig_low(from_dense(d, true), 2, 1e-10).method ==
        SolverMethod::iterative);
}

#include <doctest.h>

#include <cmath>

#include "fockbench/boson.hpp"
#include "fockbench/rng.hpp"
#include "oracles.hpp"

using namespace fockbench;
using boson::BosonBasis;

TEST_CASE("basis enumeration: graded blocks and binomial size") {
  const BosonBasis basis(3, 2);
  CHECK(basis.dim() == 10);  // C(3+2, 2)
  // grades are contiguous and ascending
  int last = 0;
  for (Index i = 0; i < basis.dim(); ++i) {
    CHECK(basis.total_occupation(i) >= last);
    last = basis.total_occupation(i);
  }
  CHECK(basis.total_occupation(0) == 0);
  CHECK(basis.index_of({0, 0, 0}) == 0);
  CHECK(basis.index_of({1, 1, 1}) == -1);  // above the cutoff
}

TEST_CASE("single-mode ladder matrix") {
  const BosonBasis basis(1, 2);
  ComplexVector g(1);
  g << 1.0;
  DenseMatrix expect(3, 3);
  expect.setZero();
  expect(1, 0) = 1.0;
  expect(2, 1) = std::sqrt(2.0);
  CHECK(max_abs_diff(boson::creation(basis, g), from_dense(expect, false)) <=
        1e-15);
  CHECK(max_abs_diff(boson::annihilation(basis, g),
                     adjoint(boson::creation(basis, g))) <= 1e-15);
}

TEST_CASE("creation from vacuum has norm ‖f‖, annihilation kills it") {
  rng::Stream stream(301);
  const BosonBasis basis(3, 2);
  const ComplexVector vac = boson::vacuum(basis);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexVector f = stream.complex_vector(3);
    CHECK(boson::creation(basis, f).apply(vac).norm() ==
          doctest::Approx(f.norm()).epsilon(1e-13));
    CHECK(boson::annihilation(basis, f).apply(vac).norm() == 0.0);
  }
}

TEST_CASE("CCR on the sub-cutoff sector") {
  rng::Stream stream(302);
  const BosonBasis basis(3, 3);
  const SparseOperator sub = boson::sub_cutoff_projector(basis);
  const SparseOperator id = identity_op(basis.dim());
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexVector f = stream.complex_vector(3);
    const ComplexVector g = stream.complex_vector(3);
    const SparseOperator mixed =
        commutator(boson::annihilation(basis, f), boson::creation(basis, g));
    CHECK(max_abs((mixed - scale(f.dot(g), id)) * sub) <= 1e-12);
    CHECK(max_abs(commutator(boson::annihilation(basis, f),
                             boson::annihilation(basis, g))) <= 1e-12);
    CHECK(max_abs(commutator(boson::creation(basis, f),
                             boson::creation(basis, g))) <= 1e-12);
  }
}

TEST_CASE("second quantization: single mode counts with energy m") {
  const double m = 0.7;
  const BosonBasis basis(1, 4);
  DenseMatrix y(1, 1);
  y << m;
  const SparseOperator dg =
      boson::second_quantization(basis, OneParticleOperator(y));
  for (Index i = 0; i < basis.dim(); ++i) {
    ComplexVector e = ComplexVector::Zero(basis.dim());
    e[i] = 1.0;
    CHECK((dg.apply(e) - m * double(basis.total_occupation(i)) * e).norm() <=
          1e-13);
  }
}

TEST_CASE("second quantization: diagonal Y matches the occupancy oracle") {
  const std::vector<double> omegas{0.4, 1.3};
  DenseMatrix y = DenseMatrix::Zero(2, 2);
  y(0, 0) = omegas[0];
  y(1, 1) = omegas[1];
  const BosonBasis basis(2, 3);
  const Spectrum s =
      eig_dense(boson::second_quantization(basis, OneParticleOperator(y)));
  const auto expect = oracles::boson_occupation_spectrum(omegas, 3);
  CHECK(oracles::max_spectrum_diff(s.eigenvalues, expect) <= 1e-12);
}

TEST_CASE("number operator and dΓ commutators") {
  rng::Stream stream(303);
  const BosonBasis basis(3, 2);
  const SparseOperator number = boson::second_quantization(
      basis, OneParticleOperator(DenseMatrix::Identity(3, 3)));
  for (Index i = 0; i < basis.dim(); ++i) {
    ComplexVector e = ComplexVector::Zero(basis.dim());
    e[i] = 1.0;
    CHECK((number.apply(e) - double(basis.total_occupation(i)) * e).norm() <=
          1e-13);
  }
  for (int rep = 0; rep < 20; ++rep) {
    const OneParticleOperator y(stream.hermitian_matrix(3));
    const ComplexVector f = stream.complex_vector(3);
    const SparseOperator dg = boson::second_quantization(basis, y);
    const ComplexVector yf = y.matrix * f;
    CHECK(max_abs_diff(commutator(dg, boson::creation(basis, f)),
                       boson::creation(basis, yf)) <= 1e-12);
    CHECK(max_abs_diff(commutator(dg, boson::annihilation(basis, f)),
                       scale(-1.0, boson::annihilation(basis, yf))) <= 1e-12);
  }
}

TEST_CASE("truncation monotonicity: low spectrum frozen once n_max suffices") {
  rng::Stream stream(304);
  const OneParticleOperator y(stream.positive_matrix(2, 0.4, 1.5));
  const Spectrum s3 =
      eig_dense(boson::second_quantization(BosonBasis(2, 3), y));
  const Spectrum s5 =
      eig_dense(boson::second_quantization(BosonBasis(2, 5), y));
  // sectors up to occupancy 3 are identical blocks
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(s3.eigenvalues[i] - s5.eigenvalues[i]) <= 1e-12);
}

TEST_CASE("annihilation bound: ladder equality case") {
  // single mode, Y = ω, f = 1, Ψ = n-particle state: ‖AΨ‖ = √n = rhs
  const double omega = 0.9;
  const BosonBasis basis(1, 3);
  DenseMatrix y(1, 1);
  y << omega;
  ComplexVector f(1);
  f << 1.0;
  const SparseOperator ann = boson::annihilation(basis, f);
  const SparseOperator dg =
      boson::second_quantization(basis, OneParticleOperator(y));
  for (int n = 0; n <= 3; ++n) {
    ComplexVector psi = ComplexVector::Zero(basis.dim());
    psi[basis.index_of({n})] = 1.0;
    const double lhs = ann.apply(psi).norm();
    const double rhs = std::sqrt(1.0 / omega) *
                       std::sqrt(std::abs(psi.dot(dg.apply(psi))));
    CHECK(lhs == doctest::Approx(std::sqrt(double(n))).epsilon(1e-12));
    CHECK(lhs <= rhs + 1e-12);
    CHECK(rhs == doctest::Approx(lhs).epsilon(1e-10));  // equality case
  }
}

TEST_CASE("annihilation/creation bounds on random instances") {
  rng::Stream stream(305);
  const BosonBasis basis(3, 3);
  const OneParticleOperator y(stream.positive_matrix(3, 0.3, 1.6));
  const ComplexVector f = stream.complex_vector(3);
  const auto ann = boson::check_annihilation_bound(basis, y, f, 100, 306);
  CHECK(ann.max_violation <= 1e-10);
  CHECK(ann.samples.size() == 100);
  const auto cre = boson::check_creation_bound(basis, y, f, 100, 307);
  CHECK(cre.max_violation <= 1e-10);
}

TEST_CASE("bound check on vacuum: both sides vanish") {
  const BosonBasis basis(2, 2);
  DenseMatrix y = DenseMatrix::Identity(2, 2);
  ComplexVector f(2);
  f << 0.3, -0.4;
  const ComplexVector vac = boson::vacuum(basis);
  CHECK(boson::annihilation(basis, f).apply(vac).norm() == 0.0);
}

TEST_CASE("singular Y is rejected by the bound checks") {
  const BosonBasis basis(2, 2);
  DenseMatrix y = DenseMatrix::Zero(2, 2);
  y(0, 0) = 1.0;  // kernel along mode 1
  ComplexVector f(2);
  f << 1.0, 1.0;
  CHECK_THROWS_AS(
      (void)boson::check_annihilation_bound(basis, OneParticleOperator(y), f, 3),
      std::invalid_argument);
}

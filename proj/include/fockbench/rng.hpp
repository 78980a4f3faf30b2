#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fockbench::rng {

// Deterministic random stream. Raw mt19937_64 output is mapped to doubles
// by hand so the produced values are pinned to the seed, independent of
// library distribution internals.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  Eigen::VectorXcd complex_vector(Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_normal();
    return v;
  }

  Eigen::VectorXcd unit_vector(Eigen::Index n) {
    Eigen::VectorXcd v = complex_vector(n);
    double nrm = v.norm();
    while (nrm < 1e-12) {
      v = complex_vector(n);
      nrm = v.norm();
    }
    return v / nrm;
  }

  Eigen::MatrixXcd complex_matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

  Eigen::MatrixXcd hermitian_matrix(Eigen::Index n) {
    const Eigen::MatrixXcd m = complex_matrix(n, n);
    return 0.5 * (m + m.adjoint());
  }

  // Hermitian with eigenvalues in (0, hi]; used for strictly positive
  // one-particle operators.
  Eigen::MatrixXcd positive_matrix(Eigen::Index n, double lo = 0.1,
                                   double hi = 2.0) {
    Eigen::MatrixXcd h = hermitian_matrix(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXd ev(n);
    for (Eigen::Index i = 0; i < n; ++i) ev[i] = uniform(lo, hi);
    return es.eigenvectors() * ev.asDiagonal() *
           es.eigenvectors().adjoint();
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fockbench::rng

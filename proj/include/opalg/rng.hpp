#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace opalg {

/// Seeded random source with samplers that are deterministic across
/// platforms: all continuous draws are derived from the raw mt19937_64
/// stream through fixed arithmetic, never through std:: distributions
/// (whose output is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), base_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Standard complex normal, E|z|^2 = 1.
  std::complex<double> normal_complex() {
    double re = normal();
    double im = normal();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    int span = hi - lo + 1;
    int v = static_cast<int>(uniform() * span);
    if (v >= span) v = span - 1;
    return lo + v;
  }

  Eigen::VectorXcd normal_vector(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal_complex();
    return v;
  }

  Eigen::MatrixXcd normal_matrix(int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = normal_complex();
    return m;
  }

  Eigen::MatrixXcd random_hermitian(int n) {
    Eigen::MatrixXcd a = normal_matrix(n, n);
    return (a + a.adjoint()) / 2.0;
  }

  /// Haar-ish random unitary: QR of a Gaussian matrix with the phase
  /// convention that diag(R) is positive, so the result is a
  /// deterministic function of the seed.
  Eigen::MatrixXcd random_unitary(int n) {
    Eigen::MatrixXcd a = normal_matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      std::complex<double> d = r(j, j);
      double ad = std::abs(d);
      std::complex<double> phase = ad > 0 ? d / ad : 1.0;
      q.col(j) *= phase;
    }
    return q;
  }

  /// Derives an independent child seed; used to give parallel work items
  /// (optimizer starts, corpus scenarios) their own streams.
  std::uint64_t derive(std::uint64_t salt) const {
    std::uint64_t z = base_ + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Constructs a child generator for the given salt.
  Rng child(std::uint64_t salt) const { return Rng(derive(salt)); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t base_ = 0;
};

}  // namespace opalg

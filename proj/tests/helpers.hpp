// Shared test utilities: random operators with reproducible seeds and an
// independent matrix-exponential reference for checking the closed-form
// propagators in the library.
#pragma once

#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "drops/operators.hpp"

namespace test_helpers {

using drops::Complex;
using drops::Matrix;
using drops::Operator;

// reference exponential from Eigen's unsupported module; the library itself
// uses closed forms, so this is an independent oracle
inline Matrix expm(const Matrix& a) { return a.exp(); }

inline Matrix random_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Operator random_unitary(int n_spins, std::mt19937_64& rng) {
  const int dim = 1 << n_spins;
  const Matrix m = random_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return Operator{n_spins, q};
}

inline Operator random_hermitian(int n_spins, std::mt19937_64& rng) {
  const int dim = 1 << n_spins;
  const Matrix m = random_matrix(dim, rng);
  return Operator{n_spins, (m + m.adjoint()) / 2.0};
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline std::array<double, 3> random_unit_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::array<double, 3> v{gauss(rng), gauss(rng), gauss(rng)};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace test_helpers

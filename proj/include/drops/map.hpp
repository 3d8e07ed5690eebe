// The bijective mapping between operators and droplet functions: trace
// projections onto the tensor basis, synthesis back to operators, pointwise
// evaluation through spherical harmonics, and the closed-form droplets of
// single-spin rotation propagators.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "drops/operators.hpp"
#include "drops/tensors.hpp"

namespace drops {

// the droplet representation of one operator: c_jm^(label) per basis index
struct DropletCoefficients {
  int n_spins = 1;
  std::map<TensorIndex, Complex> entries;

  Complex at(const TensorIndex& idx) const {
    auto it = entries.find(idx);
    return it == entries.end() ? Complex(0.0) : it->second;
  }
};

// c_jm^(label) = tr(T_jm^(label)† A) over the full droplet basis
inline DropletCoefficients decompose(const Operator& a) {
  if (a.n_spins < 1 || a.n_spins > 2)
    throw std::invalid_argument("decompose: only 1 or 2 system spins are supported");
  DropletCoefficients out{a.n_spins, {}};
  for (const TensorIndex& idx : basis_indices(a.n_spins)) {
    const Operator t = tensor_op(idx, a.n_spins);
    out.entries[idx] = (t.matrix.adjoint() * a.matrix).trace();
  }
  return out;
}

// sum of c_jm^(label) T_jm^(label); exact inverse of decompose
inline Operator synthesize(const DropletCoefficients& coeffs) {
  Operator out = zero_op(coeffs.n_spins);
  for (const auto& [idx, c] : coeffs.entries) {
    const Operator t = tensor_op(idx, coeffs.n_spins);
    out.matrix += c * t.matrix;
  }
  return out;
}

// orthonormal spherical harmonics with the Condon-Shortley phase, j <= 2
inline Complex spherical_harmonic(int j, int m, double theta, double phi) {
  if (j < 0 || j > 2 || m < -j || m > j)
    throw std::invalid_argument("spherical_harmonic: invalid (j,m)");
  const double ct = std::cos(theta), st = std::sin(theta);
  const Complex eip = std::exp(kI * phi);
  switch (j) {
    case 0:
      return std::sqrt(1.0 / (4.0 * kPi));
    case 1:
      if (m == -1) return std::sqrt(3.0 / (8.0 * kPi)) * st / eip;
      if (m == 0) return std::sqrt(3.0 / (4.0 * kPi)) * ct;
      return -std::sqrt(3.0 / (8.0 * kPi)) * st * eip;
    default:
      if (m == -2) return std::sqrt(15.0 / (32.0 * kPi)) * st * st / (eip * eip);
      if (m == -1) return std::sqrt(15.0 / (8.0 * kPi)) * st * ct / eip;
      if (m == 0) return std::sqrt(5.0 / (16.0 * kPi)) * (3.0 * ct * ct - 1.0);
      if (m == 1) return -std::sqrt(15.0 / (8.0 * kPi)) * st * ct * eip;
      return std::sqrt(15.0 / (32.0 * kPi)) * st * st * eip * eip;
  }
}

// f_j^(label)(theta, phi) summed over the requested ranks (all ranks of the
// label when `ranks` is not given)
inline Complex evaluate(const DropletCoefficients& coeffs, const DropletLabel& label, double theta,
                        double phi, const std::optional<std::set<int>>& ranks = std::nullopt) {
  bool known = false;
  for (const auto& [l, rs] : droplet_basis(coeffs.n_spins)) {
    (void)rs;
    if (l == label) known = true;
  }
  if (!known) throw std::invalid_argument("evaluate: unknown droplet label " + label.name());

  Complex sum = 0.0;
  for (int j : label_ranks(label)) {
    if (ranks && !ranks->count(j)) continue;
    for (int m = -j; m <= j; ++m)
      sum += coeffs.at({label, j, m}) * spherical_harmonic(j, m, theta, phi);
  }
  return sum;
}

// closed-form droplet values of U = exp(-i psi (n . I)) on one spin:
//   f0 = sqrt(1/2pi) cos(psi/2)
//   f1 = -i sqrt(3/2pi) sin(psi/2) (n_x sin(theta)cos(phi)
//          + n_y sin(theta)sin(phi) + n_z cos(theta))
inline std::pair<Complex, Complex> analytic_rotation_droplet(double psi,
                                                             const std::array<double, 3>& axis,
                                                             double theta, double phi) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("analytic_rotation_droplet: axis must be a unit vector");
  const Complex f0 = std::sqrt(1.0 / (2.0 * kPi)) * std::cos(psi / 2.0);
  const double direction = axis[0] * std::sin(theta) * std::cos(phi) +
                           axis[1] * std::sin(theta) * std::sin(phi) +
                           axis[2] * std::cos(theta);
  const Complex f1 = -kI * std::sqrt(3.0 / (2.0 * kPi)) * std::sin(psi / 2.0) * direction;
  return {f0, f1};
}

// the rotation propagator itself, exp(-i psi (n . I)), in closed form
inline Operator rotation_about_axis(double psi, const std::array<double, 3>& axis) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("rotation_about_axis: axis must be a unit vector");
  const double c = std::cos(psi / 2.0), s = std::sin(psi / 2.0);
  Matrix m(2, 2);
  // cos(psi/2) 1 - 2 i sin(psi/2) (n . I), written out entrywise
  m << c - kI * s * axis[2], -kI * s * (axis[0] - kI * axis[1]),
      -kI * s * (axis[0] + kI * axis[1]), c + kI * s * axis[2];
  return Operator{1, std::move(m)};
}

}  // namespace drops

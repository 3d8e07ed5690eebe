// Diagnostics built on the droplet picture of single-qubit propagators:
// spinor-sign and phase-periodicity sweeps, deliberate rotation errors
// (flip-angle scaling, axis tilt) and the inverse problem of reading the
// rotation parameters back off a coefficient map.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "drops/map.hpp"
#include "drops/operators.hpp"
#include "drops/tensors.hpp"

namespace drops {

enum class SweepKind { Rotation, PhaseShift };

// one point of a sweep: the scalar droplet value f0, the direction and value
// of the strongest rank-1 lobe, and the sign of the whole coefficient vector
// relative to the principal-range angle with the same classical action
struct SweepRecord {
  double angle = 0.0;
  Complex f0{0.0, 0.0};
  std::array<double, 3> f1_peak_direction{0.0, 0.0, 0.0};
  Complex f1_peak_value{0.0, 0.0};
  int droplet_sign = 1;
};

namespace detail {

// the rank-1 part of a single-spin droplet is linear in the direction vector:
// f1(r) = u . r with the complex 3-vector assembled here
inline std::array<Complex, 3> rank1_vector(const DropletCoefficients& coeffs,
                                           const DropletLabel& label) {
  const double s8 = std::sqrt(3.0 / (8.0 * kPi));
  const double s4 = std::sqrt(3.0 / (4.0 * kPi));
  const Complex cm = coeffs.at({label, 1, -1});
  const Complex c0 = coeffs.at({label, 1, 0});
  const Complex cp = coeffs.at({label, 1, 1});
  return {s8 * (cm - cp), -kI * s8 * (cm + cp), s4 * c0};
}

// direction maximizing |u . r| over the unit sphere: principal eigenvector of
// Re(u) Re(u)^T + Im(u) Im(u)^T, with the sign fixed so the component of
// largest magnitude is positive
inline std::array<double, 3> peak_direction(const std::array<Complex, 3>& u) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      m(a, b) = u[a].real() * u[b].real() + u[a].imag() * u[b].imag();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(m);
  const Eigen::Vector3d v = solver.eigenvectors().col(2);  // largest eigenvalue
  int lead = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(v(a)) > std::abs(v(lead))) lead = a;
  const double flip = v(lead) < 0.0 ? -1.0 : 1.0;
  return {flip * v(0), flip * v(1), flip * v(2)};
}

inline SweepRecord make_record(double angle, const Operator& u, const Operator& u_reference) {
  const DropletLabel linear = DropletLabel::linear(1);
  const DropletCoefficients coeffs = decompose(u);
  const DropletCoefficients ref = decompose(u_reference);

  SweepRecord rec;
  rec.angle = angle;
  rec.f0 = coeffs.at({DropletLabel::empty(), 0, 0}) * spherical_harmonic(0, 0, 0.0, 0.0);

  const std::array<Complex, 3> uvec = rank1_vector(coeffs, linear);
  rec.f1_peak_direction = peak_direction(uvec);
  for (int a = 0; a < 3; ++a) rec.f1_peak_value += uvec[a] * rec.f1_peak_direction[a];

  double d_same = 0.0, d_flip = 0.0;
  for (const TensorIndex& idx : basis_indices(1)) {
    d_same += std::norm(coeffs.at(idx) - ref.at(idx));
    d_flip += std::norm(coeffs.at(idx) + ref.at(idx));
  }
  rec.droplet_sign = d_same <= d_flip ? 1 : -1;
  return rec;
}

}  // namespace detail

// sweep a family of single-qubit propagators: rotations exp(-i delta I_x),
// whose droplets flip sign after 2 pi and recur after 4 pi, or phase shifts
// diag(1, e^{i gamma}), which are 2 pi periodic
inline std::vector<SweepRecord> spinor_sweep(SweepKind kind, const std::vector<double>& angles) {
  if (angles.empty()) throw std::invalid_argument("spinor_sweep: need at least one angle");
  const std::array<double, 3> x_axis{1.0, 0.0, 0.0};
  const auto build = [&](double angle) -> Operator {
    if (kind == SweepKind::Rotation) return rotation_about_axis(angle, x_axis);
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, std::exp(kI * angle);
    return Operator{1, m};
  };

  std::vector<SweepRecord> out;
  out.reserve(angles.size());
  for (double angle : angles) {
    double principal = std::fmod(angle, 2.0 * kPi);
    if (principal < 0.0) principal += 2.0 * kPi;
    out.push_back(detail::make_record(angle, build(angle), build(principal)));
  }
  return out;
}

// rotation with deliberate errors: the flip angle is scaled by flip_error and
// the axis is rotated about z by axis_tilt; returns the droplet coefficients
inline DropletCoefficients perturbed_rotation(double psi, const std::array<double, 3>& axis,
                                              double flip_error = 1.0, double axis_tilt = 0.0) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("perturbed_rotation: axis must be a unit vector");
  const double c = std::cos(axis_tilt), s = std::sin(axis_tilt);
  const std::array<double, 3> tilted{c * axis[0] - s * axis[1], s * axis[0] + c * axis[1],
                                     axis[2]};
  return decompose(rotation_about_axis(psi * flip_error, tilted));
}

// rotation parameters read back off a coefficient map
struct RotationEstimate {
  double psi = 0.0;                          // in [0, 2 pi], sign of f0 honored
  std::array<double, 3> axis{0.0, 0.0, 0.0}; // zero vector when indeterminate
  double global_phase = 0.0;                 // U e^{i global_phase} is the pure rotation
  bool axis_determinate = true;
};

// invert the closed-form droplet of a 2x2 unitary: with
// U = e^{i phi} (cos(psi/2) 1 - i sin(psi/2) n.(2I)) the rank-0 coefficient
// gives e^{i phi} cos(psi/2) and the rank-1 vector gives e^{i phi} sin(psi/2) n;
// the square sum of the two recovers e^{2 i phi} = det U, after which angle
// and axis are real quantities
inline RotationEstimate estimate_rotation_params(const DropletCoefficients& coeffs,
                                                 double tol = 1e-9) {
  if (coeffs.n_spins != 1)
    throw std::invalid_argument("estimate_rotation_params: expected single-spin coefficients");
  const Operator u = synthesize(coeffs);
  if (!u.is_unitary(tol))
    throw std::invalid_argument("estimate_rotation_params: coefficients do not synthesize a unitary");

  const Complex alpha = coeffs.at({DropletLabel::empty(), 0, 0}) / std::sqrt(2.0);
  const DropletLabel linear = DropletLabel::linear(1);
  const Complex a = -kI * coeffs.at({linear, 1, 1});   // v_x - i v_y
  const Complex b = kI * coeffs.at({linear, 1, -1});   // v_x + i v_y
  const std::array<Complex, 3> v{(a + b) / 2.0, kI * (a - b) / 2.0,
                                 kI * coeffs.at({linear, 1, 0}) / std::sqrt(2.0)};

  const Complex det = alpha * alpha + v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const double sigma = 0.5 * std::arg(det);
  const Complex rot = std::exp(-kI * sigma);

  const double c = (rot * alpha).real();
  const std::array<double, 3> w{(rot * v[0]).real(), (rot * v[1]).real(), (rot * v[2]).real()};
  const double wn = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);

  RotationEstimate est;
  est.psi = 2.0 * std::atan2(wn, c);
  est.global_phase = -sigma;
  if (wn < 1e-8) {
    est.axis_determinate = false;
  } else {
    est.axis = {w[0] / wn, w[1] / wn, w[2] / wn};
  }
  return est;
}

// L2 distance over the sphere between two droplets of the same label, which
// by orthonormality of the basis functions is the Euclidean distance of the
// coefficient vectors
inline double droplet_distance(const DropletCoefficients& a, const DropletCoefficients& b,
                               const DropletLabel& label) {
  if (a.n_spins != b.n_spins)
    throw std::invalid_argument("droplet_distance: coefficient maps differ in spin count");
  bool known = false;
  for (const auto& [l, ranks] : droplet_basis(a.n_spins)) {
    (void)ranks;
    if (l == label) known = true;
  }
  if (!known)
    throw std::invalid_argument("droplet_distance: label " + label.name() +
                                " is not part of the basis for " + std::to_string(a.n_spins) +
                                " spins");
  double sum = 0.0;
  for (int j : label_ranks(label))
    for (int m = -j; m <= j; ++m) sum += std::norm(a.at({label, j, m}) - b.at({label, j, m}));
  return std::sqrt(sum);
}

}  // namespace drops

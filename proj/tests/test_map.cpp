#include <catch2/catch_amalgamated.hpp>

#include "drops/map.hpp"
#include "helpers.hpp"

using namespace drops;
using test_helpers::max_abs_diff;

TEST_CASE("decompose and synthesize are mutually inverse", "[map]") {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 2; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix m = test_helpers::random_matrix(1 << n, rng);
      const Operator a{n, m};
      const Operator back = synthesize(decompose(a));
      CHECK(max_abs_diff(back.matrix, a.matrix) < 1e-12);
    }
}

TEST_CASE("hermitian operators have conjugate-symmetric coefficients", "[map]") {
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 2; ++n) {
    const DropletCoefficients coeffs = decompose(test_helpers::random_hermitian(n, rng));
    for (const auto& [idx, c] : coeffs.entries) {
      const Complex mirror = coeffs.at({idx.label, idx.j, -idx.m});
      const double sign = idx.m % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(std::conj(c) - sign * mirror) < 1e-12);
    }
  }
}

TEST_CASE("the map is linear in a global phase", "[map]") {
  std::mt19937_64 rng(43);
  const Operator u = test_helpers::random_unitary(1, rng);
  const Operator v{1, std::exp(kI * 0.91) * u.matrix};
  const DropletCoefficients cu = decompose(u), cv = decompose(v);
  for (const auto& [idx, c] : cu.entries)
    CHECK(std::abs(cv.at(idx) - std::exp(kI * 0.91) * c) < 1e-12);
}

TEST_CASE("spherical harmonics take their closed-form values", "[map]") {
  const double pi = kPi;
  CHECK(std::abs(spherical_harmonic(0, 0, 1.234, 4.321) - Complex(std::sqrt(1.0 / (4.0 * pi)))) <
        kAlgTol);
  CHECK(std::abs(spherical_harmonic(1, 0, 0.0, 0.0) - Complex(std::sqrt(3.0 / (4.0 * pi)))) <
        kAlgTol);
  CHECK(std::abs(spherical_harmonic(1, 1, pi / 2.0, 0.0) -
                 Complex(-std::sqrt(3.0 / (8.0 * pi)))) < kAlgTol);
  CHECK(std::abs(spherical_harmonic(1, -1, pi / 2.0, 0.0) -
                 Complex(std::sqrt(3.0 / (8.0 * pi)))) < kAlgTol);
  // Y_2,0 at the pole: sqrt(5/16pi) * 2
  CHECK(std::abs(spherical_harmonic(2, 0, 0.0, 0.0) -
                 Complex(2.0 * std::sqrt(5.0 / (16.0 * pi)))) < kAlgTol);
  // azimuthal phase factor e^{i m phi}
  const Complex y22 = spherical_harmonic(2, 2, 1.0, 0.7);
  const Complex y22_shift = spherical_harmonic(2, 2, 1.0, 0.7 + 0.3);
  CHECK(std::abs(y22_shift - y22 * std::exp(kI * 2.0 * 0.3)) < kAlgTol);
  CHECK_THROWS_AS(spherical_harmonic(3, 0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(spherical_harmonic(2, 3, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("evaluate sums the requested ranks only", "[map]") {
  DropletCoefficients coeffs{1, {}};
  coeffs.entries[{DropletLabel::empty(), 0, 0}] = 2.0;
  coeffs.entries[{DropletLabel::linear(1), 1, 0}] = 1.0;

  const Complex full = evaluate(coeffs, DropletLabel::linear(1), 0.4, 0.9);
  CHECK(std::abs(full - spherical_harmonic(1, 0, 0.4, 0.9)) < kAlgTol);

  // rank filter: excluding j=1 leaves nothing for a linear label
  CHECK(std::abs(evaluate(coeffs, DropletLabel::linear(1), 0.4, 0.9, std::set<int>{})) <
        kAlgTol);
  const Complex empty_val = evaluate(coeffs, DropletLabel::empty(), 0.4, 0.9);
  CHECK(std::abs(empty_val - 2.0 * spherical_harmonic(0, 0, 0.4, 0.9)) < kAlgTol);
}

TEST_CASE("closed-form rotation droplets match the decomposition", "[map]") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> psi_dist(0.0, 4.0 * kPi);
  std::uniform_real_distribution<double> theta_dist(0.0, kPi);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const double psi = psi_dist(rng);
    const auto axis = test_helpers::random_unit_axis(rng);
    const double theta = theta_dist(rng), phi = phi_dist(rng);

    const auto [f0, f1] = analytic_rotation_droplet(psi, axis, theta, phi);
    const DropletCoefficients coeffs = decompose(rotation_about_axis(psi, axis));
    CHECK(std::abs(f0 - evaluate(coeffs, DropletLabel::empty(), theta, phi)) < 1e-12);
    CHECK(std::abs(f1 - evaluate(coeffs, DropletLabel::linear(1), theta, phi)) < 1e-12);
  }
  CHECK_THROWS_AS(analytic_rotation_droplet(1.0, {1.0, 1.0, 0.0}, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("rotation about an axis matches the exponential reference", "[map]") {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> psi_dist(-8.0, 8.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double psi = psi_dist(rng);
    const auto axis = test_helpers::random_unit_axis(rng);
    Matrix gen = axis[0] * pauli_matrix(Axis::X) + axis[1] * pauli_matrix(Axis::Y) +
                 axis[2] * pauli_matrix(Axis::Z);
    CHECK(max_abs_diff(rotation_about_axis(psi, axis).matrix,
                       test_helpers::expm((-kI * psi * gen).eval())) < 1e-12);
  }
}

TEST_CASE("a z rotation of the operator shifts the droplet azimuth", "[map]") {
  std::mt19937_64 rng(46);
  const Operator u = test_helpers::random_unitary(1, rng);
  const double alpha = 0.83;
  const Operator rz = rotation(alpha, 0.0, {0}, 1);
  const Operator rotated{1, rz.matrix * u.matrix * rz.matrix.adjoint()};

  const DropletCoefficients cu = decompose(u), cr = decompose(rotated);
  for (const auto& [label, ranks] : droplet_basis(1)) {
    (void)ranks;
    for (double theta : {0.3, 1.2, 2.8})
      for (double phi : {0.0, 1.1, 4.4}) {
        const Complex direct = evaluate(cr, label, theta, phi);
        const Complex shifted = evaluate(cu, label, theta, phi - alpha);
        CHECK(std::abs(direct - shifted) < 1e-12);
      }
  }
}

TEST_CASE("evaluate rejects labels outside the basis", "[map]") {
  DropletCoefficients coeffs{1, {}};
  CHECK_THROWS_AS(evaluate(coeffs, DropletLabel::bilinear(1, 2), 0.0, 0.0),
                  std::invalid_argument);
}

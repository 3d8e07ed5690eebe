#include <catch2/catch_amalgamated.hpp>

#include "drops/diagnostics.hpp"
#include "drops/grids.hpp"
#include "helpers.hpp"

using namespace drops;

namespace {
double axis_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}
}  // namespace

TEST_CASE("rotation sweeps show the spinor sign", "[diagnostics]") {
  const double f0_ref = std::sqrt(1.0 / (2.0 * kPi));
  const auto records = spinor_sweep(SweepKind::Rotation, {0.0, 2.0 * kPi, 4.0 * kPi});
  REQUIRE(records.size() == 3);
  CHECK(std::abs(records[0].f0 - Complex(f0_ref)) < 1e-12);
  CHECK(std::abs(records[1].f0 - Complex(-f0_ref)) < 1e-12);
  CHECK(std::abs(records[2].f0 - Complex(f0_ref)) < 1e-12);
  CHECK(records[0].droplet_sign == 1);
  CHECK(records[1].droplet_sign == -1);
  CHECK(records[2].droplet_sign == 1);

  // at delta = pi the scalar droplet vanishes and the rank-1 lobe peaks on x
  const auto mid = spinor_sweep(SweepKind::Rotation, {kPi});
  CHECK(std::abs(mid[0].f0) < 1e-12);
  CHECK(axis_distance(mid[0].f1_peak_direction, {1.0, 0.0, 0.0}) < 1e-9);
  CHECK(std::abs(mid[0].f1_peak_value - Complex(0.0, -std::sqrt(3.0 / (2.0 * kPi)))) < 1e-12);

  CHECK_THROWS_AS(spinor_sweep(SweepKind::Rotation, {}), std::invalid_argument);
}

TEST_CASE("phase-shift sweeps are 2 pi periodic", "[diagnostics]") {
  const auto records = spinor_sweep(SweepKind::PhaseShift, {0.0, kPi, 2.0 * kPi, 3.7});
  CHECK(std::abs(records[0].f0 - records[2].f0) < 1e-12);
  CHECK(records[0].droplet_sign == 1);
  CHECK(records[2].droplet_sign == 1);
  CHECK(records[3].droplet_sign == 1);
  // f0(gamma) = (1 + e^{i gamma}) sqrt(1/8 pi)
  const Complex expected = (1.0 + std::exp(kI * kPi)) * std::sqrt(1.0 / (8.0 * kPi));
  CHECK(std::abs(records[1].f0 - expected) < 1e-12);
}

TEST_CASE("deliberate rotation errors show up in the droplets", "[diagnostics]") {
  // ideal pi rotation about x: no scalar part
  const DropletCoefficients ideal = perturbed_rotation(kPi, {1.0, 0.0, 0.0});
  CHECK(std::abs(evaluate(ideal, DropletLabel::empty(), 0.0, 0.0)) < 1e-12);

  // a 10% flip-angle error leaves a small negative scalar droplet
  const DropletCoefficients flip = perturbed_rotation(kPi, {1.0, 0.0, 0.0}, 1.1);
  const Complex f0 = evaluate(flip, DropletLabel::empty(), 1.0, 2.0);
  CHECK(std::abs(f0 - Complex(std::sqrt(1.0 / (2.0 * kPi)) * std::cos(0.55 * kPi))) < 1e-12);
  CHECK(f0.real() < 0.0);

  // an axis tilt moves the rank-1 lobes inside the xy-plane
  const DropletCoefficients tilt = perturbed_rotation(kPi, {1.0, 0.0, 0.0}, 1.0, kPi / 10.0);
  const double at_tilt =
      std::abs(evaluate(tilt, DropletLabel::linear(1), kPi / 2.0, kPi / 10.0));
  CHECK(at_tilt == Catch::Approx(std::sqrt(3.0 / (2.0 * kPi))).margin(1e-12));
  CHECK(at_tilt > std::abs(evaluate(tilt, DropletLabel::linear(1), kPi / 2.0, 0.0)));

  CHECK_THROWS_AS(perturbed_rotation(kPi, {1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("rotation parameters are recovered from coefficients", "[diagnostics]") {
  // quarter turn about x
  const RotationEstimate rx = estimate_rotation_params(
      decompose(rotation_about_axis(kPi / 2.0, {1.0, 0.0, 0.0})));
  CHECK(rx.psi == Catch::Approx(kPi / 2.0).margin(1e-9));
  CHECK(axis_distance(rx.axis, {1.0, 0.0, 0.0}) < 1e-9);
  CHECK(std::abs(rx.global_phase) < 1e-9);
  CHECK(rx.axis_determinate);

  // the hadamard gate is a pi rotation about (x+z)/sqrt(2) times e^{-i pi/2}
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const RotationEstimate eh = estimate_rotation_params(decompose(Operator{1, h}));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(eh.psi == Catch::Approx(kPi).margin(1e-9));
  CHECK(axis_distance(eh.axis, {r, 0.0, r}) < 1e-9);
  CHECK(eh.global_phase == Catch::Approx(-kPi / 2.0).margin(1e-9));

  // identity: angle zero, axis indeterminate
  const RotationEstimate id = estimate_rotation_params(decompose(identity_op(1)));
  CHECK(id.psi == Catch::Approx(0.0).margin(1e-9));
  CHECK_FALSE(id.axis_determinate);

  // the flip-angle branch honors the sign of f0
  const RotationEstimate flip =
      estimate_rotation_params(perturbed_rotation(kPi, {1.0, 0.0, 0.0}, 1.1));
  CHECK(flip.psi == Catch::Approx(1.1 * kPi).margin(1e-9));
}

TEST_CASE("estimated parameters regenerate the coefficients", "[diagnostics]") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> psi_dist(0.1, 2.0 * kPi - 0.1);
  std::uniform_real_distribution<double> phase_dist(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const double psi = psi_dist(rng);
    const auto axis = test_helpers::random_unit_axis(rng);
    const double phase = phase_dist(rng);
    const Operator u{1, std::exp(kI * phase) * rotation_about_axis(psi, axis).matrix};
    const DropletCoefficients coeffs = decompose(u);

    const RotationEstimate est = estimate_rotation_params(coeffs);
    REQUIRE(est.axis_determinate);
    const Operator rebuilt{1, std::exp(-kI * est.global_phase) *
                                  rotation_about_axis(est.psi, est.axis).matrix};
    const DropletCoefficients back = decompose(rebuilt);
    for (const auto& [idx, c] : coeffs.entries) CHECK(std::abs(back.at(idx) - c) < 1e-9);
  }

  // non-unitary coefficient maps are rejected
  DropletCoefficients scaled = decompose(identity_op(1));
  for (auto& [idx, c] : scaled.entries) c *= 1.1;
  CHECK_THROWS_AS(estimate_rotation_params(scaled), std::invalid_argument);
}

TEST_CASE("droplet distance is the coefficient-space metric", "[diagnostics]") {
  const DropletCoefficients id = decompose(identity_op(1));
  const DropletCoefficients minus = decompose(rotation_about_axis(2.0 * kPi, {1.0, 0.0, 0.0}));
  CHECK(droplet_distance(id, id, DropletLabel::empty()) == Catch::Approx(0.0).margin(1e-14));
  CHECK(droplet_distance(id, minus, DropletLabel::empty()) ==
        Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-12));

  // parseval: the coefficient metric equals the quadrature L2 distance
  std::mt19937_64 rng(72);
  const DropletCoefficients a = decompose(test_helpers::random_unitary(1, rng));
  const DropletCoefficients b = decompose(test_helpers::random_unitary(1, rng));
  const SamplingGrid grid = gauss_legendre_grid(2);
  for (const auto& [label, ranks] : droplet_basis(1)) {
    (void)ranks;
    double integral = 0.0;
    for (size_t i = 0; i < grid.nodes.size(); ++i)
      integral += (*grid.weights)[i] *
                  std::norm(evaluate(a, label, grid.nodes[i].beta, grid.nodes[i].alpha) -
                            evaluate(b, label, grid.nodes[i].beta, grid.nodes[i].alpha));
    CHECK(droplet_distance(a, b, label) == Catch::Approx(std::sqrt(integral)).margin(1e-9));
  }

  // triangle inequality spot check
  const DropletCoefficients c = decompose(test_helpers::random_unitary(1, rng));
  CHECK(droplet_distance(a, c, DropletLabel::linear(1)) <=
        droplet_distance(a, b, DropletLabel::linear(1)) +
            droplet_distance(b, c, DropletLabel::linear(1)) + 1e-12);

  DropletCoefficients two_spin{2, {}};
  CHECK_THROWS_AS(droplet_distance(a, two_spin, DropletLabel::empty()), std::invalid_argument);
  CHECK_THROWS_AS(droplet_distance(a, b, DropletLabel::bilinear(1, 2)), std::invalid_argument);
}

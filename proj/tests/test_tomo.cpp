#include <catch2/catch_amalgamated.hpp>

#include "drops/gates.hpp"
#include "drops/map.hpp"
#include "drops/tomo.hpp"
#include "helpers.hpp"

using namespace drops;
using test_helpers::max_abs_diff;

TEST_CASE("initial state preparation yields twice the transverse ancilla", "[tomo]") {
  const Operator exact = prepare_rho0(2, Rho0Via::Exact);
  Matrix expected(4, 4);
  expected << 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0;
  CHECK(max_abs_diff(exact.matrix, expected) < kAlgTol);

  // the pulsed preparation destroys the system polarization and agrees exactly
  const Operator pulsed = prepare_rho0(2, Rho0Via::SequenceP);
  CHECK(max_abs_diff(pulsed.matrix, exact.matrix) < kAlgTol);
  const Operator no_system_pol = prepare_rho0(2, Rho0Via::SequenceP, 0.0);
  CHECK(max_abs_diff(no_system_pol.matrix, exact.matrix) < kAlgTol);
  // three-spin variant
  CHECK(max_abs_diff(prepare_rho0(3, Rho0Via::SequenceP).matrix,
                     prepare_rho0(3, Rho0Via::Exact).matrix) < kAlgTol);

  CHECK_THROWS_AS(prepare_rho0(1, Rho0Via::Exact), std::invalid_argument);
}

TEST_CASE("the ideal measurement reads matrix elements of U", "[tomo]") {
  std::mt19937_64 rng(61);
  const double s1 = rank_prefactor(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator u = test_helpers::random_unitary(1, rng);
    const Operator rho = imprint(u);
    const Complex measured =
        measure_point_ideal(rho, DropletLabel::linear(1), 1, 0.0, kPi / 2.0);
    const Complex expected = s1 * (u.matrix(0, 1) + u.matrix(1, 0)) / std::sqrt(2.0);
    CHECK(std::abs(measured - expected) < 1e-12);
  }
  const Operator rho = imprint(identity_op(1));
  CHECK_THROWS_AS(measure_point_ideal(rho, DropletLabel::linear(1), 0, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("noiseless samples equal the droplet of the propagator", "[tomo]") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> beta_dist(0.0, kPi);
  std::uniform_real_distribution<double> alpha_dist(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator u = test_helpers::random_unitary(1, rng);
    const Operator rho = imprint(u);
    const DropletCoefficients truth = decompose(u);
    for (const auto& [label, ranks] : droplet_basis(1))
      for (int j : ranks)
        for (int k = 0; k < 4; ++k) {
          const double beta = beta_dist(rng), alpha = alpha_dist(rng);
          const Complex sample = measure_point_ideal(rho, label, j, alpha, beta);
          const Complex expected = evaluate(truth, label, beta, alpha, std::set<int>{j});
          CHECK(std::abs(sample - expected) < 1e-10);
        }
  }
}

TEST_CASE("the magnetic-resonance pipeline equals the ideal one", "[tomo]") {
  for (const std::string& name : {"not", "hadamard", "rx:pi/2", "phase:pi"}) {
    const Operator u = gate_by_name(name).matrix;
    const Operator rho = imprint(u);
    for (const auto& [label, ranks] : droplet_basis(1))
      for (int j : ranks)
        for (double beta : {0.0, kPi / 3.0, kPi / 2.0, 2.9})
          for (double alpha : {0.0, 1.0, 4.5}) {
            const Complex ideal = measure_point_ideal(rho, label, j, alpha, beta);
            const Complex nmr = measure_point_nmr(rho, label, j, alpha, beta);
            INFO("gate " << name << " label " << label.name() << " j " << j);
            CHECK(std::abs(ideal - nmr) < 1e-10);
          }
  }
}

TEST_CASE("known droplet values come out of the pipelines", "[tomo]") {
  // a traceless propagator has no scalar droplet
  const Operator rho_not = imprint(gate_by_name("not").matrix);
  CHECK(std::abs(measure_point_nmr(rho_not, DropletLabel::empty(), 0, 1.3, 0.4)) < 1e-12);

  // the scalar droplet of Rx(pi/2) is sqrt(1/2pi) cos(pi/4) everywhere
  const Operator rho_rx = imprint(gate_by_name("rx:pi/2").matrix);
  const double expected = std::sqrt(1.0 / (2.0 * kPi)) * std::cos(kPi / 4.0);
  for (double beta : {0.0, 1.0, 2.0})
    CHECK(std::abs(measure_point_nmr(rho_rx, DropletLabel::empty(), 0, 0.7, beta) -
                   Complex(expected)) < 1e-12);
}

TEST_CASE("tomography of the identity gives a round scalar droplet", "[tomo]") {
  TomoConfig config;
  config.gate = gate_by_name("id").matrix;
  config.grid = equiangular_grid(5, 9);
  const SampleSet samples = run_tomography(config);
  REQUIRE(samples.entries.size() == 2);
  for (const SampleEntry& entry : samples.entries)
    for (const Sample& s : entry.samples) {
      if (entry.label == DropletLabel::empty())
        CHECK(std::abs(s.value - Complex(std::sqrt(1.0 / (2.0 * kPi)))) < 1e-12);
      else
        CHECK(std::abs(s.value) < 1e-12);
    }
}

TEST_CASE("a tabulated sequence target reproduces the exact gate", "[tomo]") {
  TomoConfig exact;
  exact.gate = gate_by_name("not").matrix;
  exact.grid = equiangular_grid(5, 9);
  exact.mode = TomoMode::Nmr;

  TomoConfig seq;
  seq.sequence = gate_by_name("not").sequence;
  seq.n_system_spins = 1;
  seq.grid = exact.grid;
  seq.mode = TomoMode::Nmr;

  const SampleSet a = run_tomography(exact);
  const SampleSet b = run_tomography(seq);
  REQUIRE(a.entries.size() == b.entries.size());
  for (size_t e = 0; e < a.entries.size(); ++e)
    for (size_t i = 0; i < a.entries[e].samples.size(); ++i)
      CHECK(std::abs(a.entries[e].samples[i].value - b.entries[e].samples[i].value) < 1e-9);
}

TEST_CASE("noise is reproducible under the seed and vanishes in the mean", "[tomo]") {
  TomoConfig config;
  config.gate = gate_by_name("hadamard").matrix;
  config.grid = equiangular_grid(3, 5);
  config.noise_sigma = 0.01;
  config.seed = 7;

  const SampleSet a = run_tomography(config);
  const SampleSet b = run_tomography(config);
  for (size_t e = 0; e < a.entries.size(); ++e)
    for (size_t i = 0; i < a.entries[e].samples.size(); ++i)
      CHECK(a.entries[e].samples[i].value == b.entries[e].samples[i].value);

  config.seed = 8;
  const SampleSet c = run_tomography(config);
  double diff = 0.0;
  for (size_t i = 0; i < a.entries[0].samples.size(); ++i)
    diff += std::abs(a.entries[0].samples[i].value - c.entries[0].samples[i].value);
  CHECK(diff > 1e-6);

  // empirical mean over many seeds converges to the noiseless sample
  config.noise_sigma = 0.0;
  const SampleSet clean = run_tomography(config);
  config.noise_sigma = 0.01;
  Complex mean = 0.0;
  const int n_seeds = 1000;
  for (int seed = 0; seed < n_seeds; ++seed) {
    config.seed = static_cast<std::uint64_t>(seed);
    mean += run_tomography(config).entries[1].samples[4].value;
  }
  mean /= static_cast<double>(n_seeds);
  const Complex truth = clean.entries[1].samples[4].value;
  const double sample_sigma = rank_prefactor(1) * config.noise_sigma;
  CHECK(std::abs(mean.real() - truth.real()) < 5.0 * sample_sigma / std::sqrt(1.0 * n_seeds));
  CHECK(std::abs(mean.imag() - truth.imag()) < 5.0 * sample_sigma / std::sqrt(1.0 * n_seeds));
}

TEST_CASE("two-spin targets need measurement transforms in nmr mode", "[tomo]") {
  // controlled-z on the two system spins
  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  const Operator u{2, cz};

  TomoConfig config;
  config.gate = u;
  config.grid = gauss_legendre_grid(2);
  config.mode = TomoMode::Nmr;
  CHECK_THROWS_WITH(run_tomography(config), Catch::Matchers::ContainsSubstring("2I1xI2x"));

  // per-spin rotations mapping each transverse factor to z make the terms
  // observable; the measured values must then match the ideal pipeline
  const Matrix ry = test_helpers::expm((-kI * (-kPi / 2.0) * pauli_matrix(Axis::Y)).eval());
  const Matrix rx = test_helpers::expm((-kI * (kPi / 2.0) * pauli_matrix(Axis::X)).eval());
  const Matrix eye = Matrix::Identity(2, 2);
  const auto v_for = [&](Axis a1, Axis a2) {
    const Matrix f1 = a1 == Axis::X ? ry : (a1 == Axis::Y ? rx : eye);
    const Matrix f2 = a2 == Axis::X ? ry : (a2 == Axis::Y ? rx : eye);
    return kron(f1, f2);
  };
  const DropletLabel bil = DropletLabel::bilinear(1, 2);
  for (int j : {0, 1, 2}) {
    const auto terms = cartesian_decomposition(bil, j, 2);
    for (size_t t = 0; t < terms.size(); ++t) {
      const auto& factors = terms[t].factors;
      const Axis a1 = factors.count(0) ? factors.at(0) : Axis::Z;
      const Axis a2 = factors.count(1) ? factors.at(1) : Axis::Z;
      if (a1 != Axis::Z || a2 != Axis::Z)
        config.v_registry[{bil, j, static_cast<int>(t)}] = v_for(a1, a2);
    }
  }

  TomoConfig ideal = config;
  ideal.mode = TomoMode::Ideal;
  const SampleSet nmr_set = run_tomography(config);
  const SampleSet ideal_set = run_tomography(ideal);
  REQUIRE(nmr_set.entries.size() == ideal_set.entries.size());
  for (size_t e = 0; e < nmr_set.entries.size(); ++e)
    for (size_t i = 0; i < nmr_set.entries[e].samples.size(); ++i)
      CHECK(std::abs(nmr_set.entries[e].samples[i].value -
                     ideal_set.entries[e].samples[i].value) < 1e-10);

  // a transform that fails to diagonalize its term is rejected
  TomoConfig bad = config;
  bad.v_registry[{bil, 0, 0}] = Matrix::Identity(4, 4);
  CHECK_THROWS_WITH(run_tomography(bad),
                    Catch::Matchers::ContainsSubstring("does not diagonalize"));
}

TEST_CASE("configuration errors are rejected up front", "[tomo]") {
  TomoConfig config;
  config.grid = equiangular_grid(3, 5);
  CHECK_THROWS_AS(run_tomography(config), std::invalid_argument);  // no target

  config.gate = gate_by_name("id").matrix;
  config.sequence = PulseSequence{};
  CHECK_THROWS_AS(run_tomography(config), std::invalid_argument);  // two targets

  config.sequence.reset();
  config.noise_sigma = -0.1;
  CHECK_THROWS_AS(run_tomography(config), std::invalid_argument);

  config.noise_sigma = 0.0;
  config.labels = {DropletLabel::bilinear(1, 2)};  // not a one-spin label
  CHECK_THROWS_AS(run_tomography(config), std::invalid_argument);

  config.labels = {DropletLabel::empty()};
  const SampleSet samples = run_tomography(config);
  REQUIRE(samples.entries.size() == 1);
  CHECK(samples.entries[0].label == DropletLabel::empty());
}

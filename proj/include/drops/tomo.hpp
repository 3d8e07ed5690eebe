// Ancilla-based process tomography: sampling droplet values of a propagator
// from expectation values of the imprinted deviation density operator. Two
// measurement pipelines are provided — the direct one using scalar products
// with rotated axial tensors, and the magnetic-resonance adaptation that
// rotates the state inversely and reads Cartesian product-operator
// observables — plus seed-reproducible Gaussian measurement noise.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "drops/grids.hpp"
#include "drops/map.hpp"
#include "drops/operators.hpp"
#include "drops/pulses.hpp"
#include "drops/samples.hpp"
#include "drops/tensors.hpp"

namespace drops {

enum class TomoMode { Ideal, Nmr };
enum class Rho0Via { Exact, SequenceP };

// caller-supplied unitaries (on the system spins only) that map a transverse
// Cartesian term of an axial tensor onto directly observable diagonal form;
// keyed by (label, rank, term index within cartesian_decomposition)
using VRegistry = std::map<std::tuple<DropletLabel, int, int>, Matrix>;

// s_j = sqrt((2j+1) / 4pi)
inline double rank_prefactor(int j) { return std::sqrt((2.0 * j + 1.0) / (4.0 * kPi)); }

// initial deviation density operator 2 I_{0x} of the augmented system:
// either written down directly, or prepared from thermal z polarizations by
// the pulse block [pi/2]_x(system) - gradient - [pi/2]_y(ancilla), then
// normalized (the gradient destroys the transverse system polarization)
inline Operator prepare_rho0(int n_spins_total, Rho0Via via,
                             double gamma_system = 0.2514) {
  if (n_spins_total < 2)
    throw std::invalid_argument("prepare_rho0: need the ancilla plus at least one system spin");
  const Operator target = product_operator({{0, Axis::X}}, n_spins_total, 2.0);
  if (via == Rho0Via::Exact) return target;

  std::set<int> system_spins;
  for (int k = 1; k < n_spins_total; ++k) system_spins.insert(k);

  // thermal start: 2 (gamma_0 I_{0z} + sum_k gamma_k I_{kz}), gamma_0 = 1
  Operator rho = product_operator({{0, Axis::Z}}, n_spins_total, 2.0);
  for (int k : system_spins)
    rho.matrix += gamma_system * product_operator({{k, Axis::Z}}, n_spins_total, 2.0).matrix;

  const Operator p1 = event_propagator(Pulse{system_spins, kPi / 2.0, 0.0}, 0.0, n_spins_total);
  rho.matrix = p1.matrix * rho.matrix * p1.matrix.adjoint();
  rho = gradient_filter(rho, system_spins);
  const Operator p2 = event_propagator(Pulse{{0}, kPi / 2.0, kPi / 2.0}, 0.0, n_spins_total);
  rho.matrix = p2.matrix * rho.matrix * p2.matrix.adjoint();

  // normalize to the exact target, which must match up to a positive scale
  const double scale =
      ((target.matrix.adjoint() * rho.matrix).trace() / (target.matrix.adjoint() * target.matrix).trace())
          .real();
  if (scale <= 0.0) throw std::logic_error("prepare_rho0: preparation lost the ancilla polarization");
  rho.matrix /= scale;
  if ((rho.matrix - target.matrix).cwiseAbs().maxCoeff() > kAlgTol)
    throw std::logic_error("prepare_rho0: prepared state is not proportional to 2 I_0x");
  return rho;
}

namespace detail {

// one real expectation-value pair entering the complex combination
// value = s_j * sum_n weight_n * (ex_n + i ey_n)
struct RawTerm {
  double weight = 1.0;
  double ex = 0.0;
  double ey = 0.0;
};

inline double real_expectation(const Operator& o, const Operator& rho) {
  const Complex v = expectation(o, rho);
  if (std::abs(v.imag()) > 1e-10)
    throw std::logic_error("expectation value expected to be real came out complex");
  return v.real();
}

inline void check_point_args(const Operator& rho_u, const DropletLabel& label, int j) {
  if (rho_u.n_spins < 2)
    throw std::invalid_argument("measurement: state must cover the ancilla plus system spins");
  if (!rank_in_label(label, j))
    throw std::invalid_argument("measurement: rank " + std::to_string(j) +
                                " not available for label " + label.name());
}

// direct pipeline: expectation values of I_{0x/0y} tensored with the rotated
// axial tensor on the system spins
inline std::vector<RawTerm> raw_ideal(const Operator& rho_u, const DropletLabel& label, int j,
                                      double alpha, double beta) {
  check_point_args(rho_u, label, j);
  const int n_sys = rho_u.n_spins - 1;
  const Operator t = rotated_axial(label, j, alpha, beta, n_sys);
  const Operator ox{rho_u.n_spins, kron(pauli_matrix(Axis::X), t.matrix)};
  const Operator oy{rho_u.n_spins, kron(pauli_matrix(Axis::Y), t.matrix)};
  return {{1.0, real_expectation(ox, rho_u), real_expectation(oy, rho_u)}};
}

// magnetic-resonance pipeline: rotate the state inversely (identity on the
// ancilla), expand the axial tensor into Cartesian terms and read each term
// through conventionally normalized transverse-ancilla observables
inline std::vector<RawTerm> raw_nmr(const Operator& rho_u, const DropletLabel& label, int j,
                                    double alpha, double beta, const VRegistry& v_registry) {
  check_point_args(rho_u, label, j);
  const int n_total = rho_u.n_spins;
  const int n_sys = n_total - 1;

  std::set<int> system_spins;
  for (int k = 1; k < n_total; ++k) system_spins.insert(k);
  const Operator r = rotation(alpha, beta, system_spins, n_total);
  const Operator rho_tilde{n_total, r.matrix.adjoint() * rho_u.matrix * r.matrix};

  // pulse-level realization of the inverse rotation; differs from the exact
  // conjugation only by a residual z rotation of the system spins, which
  // leaves all-z observables untouched
  const Operator p =
      event_propagator(Pulse{system_spins, beta, alpha - kPi / 2.0}, 0.0, n_total);
  const Operator rho_pulse{n_total, p.matrix * rho_u.matrix * p.matrix.adjoint()};

  const auto terms = cartesian_decomposition(label, j, n_sys);
  std::vector<RawTerm> raw;
  for (size_t n = 0; n < terms.size(); ++n) {
    const CartesianTerm& term = terms[n];

    bool all_z = true;
    for (const auto& [pos, axis] : term.factors) {
      (void)pos;
      if (axis != Axis::Z) all_z = false;
    }
    if (!all_z) {
      // a transverse term needs a registered transform making it observable
      const auto it = v_registry.find({label, j, static_cast<int>(n)});
      if (it == v_registry.end())
        throw std::invalid_argument("measurement: term " + term.name() + " of label " +
                                    label.name() + " rank " + std::to_string(j) +
                                    " is not directly observable and no transform is registered");
      const Matrix& v = it->second;
      const Operator v_op{n_sys, v};
      if (!v_op.is_unitary(kAlgTol))
        throw std::invalid_argument("measurement: registered transform for term " + term.name() +
                                    " is not unitary");
      const Matrix d = v * term.op(n_sys).matrix * v.adjoint();
      for (Eigen::Index a = 0; a < d.rows(); ++a)
        for (Eigen::Index b = 0; b < d.cols(); ++b) {
          const bool bad = a == b ? std::abs(d(a, b).imag()) > 1e-10
                                  : std::abs(d(a, b)) > 1e-10;
          if (bad)
            throw std::invalid_argument("measurement: registered transform for term " +
                                        term.name() + " does not diagonalize it");
        }
    }

    // observables with the conventional 2^{q-1} normalization, q spins involved
    std::map<int, Axis> fx{{0, Axis::X}}, fy{{0, Axis::Y}};
    for (const auto& [pos, axis] : term.factors) {
      fx[pos + 1] = axis;
      fy[pos + 1] = axis;
    }
    const double q_scale = std::pow(2.0, static_cast<double>(term.factors.size()));
    const Operator mx = product_operator(fx, n_total, q_scale);
    const Operator my = product_operator(fy, n_total, q_scale);
    // weight such that weight * M reproduces r_n * (I_{0x} tensor C_n)
    const double weight = term.r * term.scale / q_scale;

    const double ex = real_expectation(mx, rho_tilde);
    const double ey = real_expectation(my, rho_tilde);
    if (all_z) {
      // the two realizations of the inverse rotation must agree on
      // z-commuting observables
      if (std::abs(real_expectation(mx, rho_pulse) - ex) > 1e-10 ||
          std::abs(real_expectation(my, rho_pulse) - ey) > 1e-10)
        throw std::logic_error("measurement: pulse-level inverse rotation disagrees with exact one");
    }
    raw.push_back({weight, ex, ey});
  }
  return raw;
}

inline Complex combine(const std::vector<RawTerm>& raw, int j) {
  Complex sum = 0.0;
  for (const RawTerm& t : raw) sum += t.weight * Complex(t.ex, t.ey);
  return rank_prefactor(j) * sum;
}

// deterministic, platform-stable keyed Gaussian noise
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t label_key(const DropletLabel& label) {
  switch (label.kind) {
    case DropletLabel::Kind::Empty: return 0;
    case DropletLabel::Kind::Linear: return static_cast<std::uint64_t>(label.k);
    case DropletLabel::Kind::Bilinear: return static_cast<std::uint64_t>(10 * label.k + label.l);
  }
  return ~0ULL;
}

// standard normal keyed by (seed, label, rank, node, observable); the draw
// depends only on the key, never on evaluation order
inline double keyed_normal(std::uint64_t seed, const DropletLabel& label, int j,
                           std::uint64_t node, std::uint64_t observable) {
  std::uint64_t h = splitmix64(seed);
  h = mix_key(h, label_key(label));
  h = mix_key(h, static_cast<std::uint64_t>(j));
  h = mix_key(h, node);
  h = mix_key(h, observable);
  const double u1 = (static_cast<double>(splitmix64(h) >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  const double u2 = (static_cast<double>(splitmix64(h ^ 0x5bf03635ULL) >> 11) + 1.0) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace detail

// noiseless droplet sample via the direct pipeline
inline Complex measure_point_ideal(const Operator& rho_u, const DropletLabel& label, int j,
                                   double alpha, double beta) {
  return detail::combine(detail::raw_ideal(rho_u, label, j, alpha, beta), j);
}

// noiseless droplet sample via the magnetic-resonance pipeline
inline Complex measure_point_nmr(const Operator& rho_u, const DropletLabel& label, int j,
                                 double alpha, double beta, const VRegistry& v_registry = {}) {
  return detail::combine(detail::raw_nmr(rho_u, label, j, alpha, beta, v_registry), j);
}

struct TomoConfig {
  std::optional<Operator> gate;          // either a gate matrix ...
  std::optional<PulseSequence> sequence; // ... or a sequence realizing the controlled gate
  int n_system_spins = 1;                // system size when the target is a sequence
  SamplingGrid grid;
  std::vector<DropletLabel> labels;      // empty: every label of the system's basis
  TomoMode mode = TomoMode::Ideal;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  Rho0Via rho0_via = Rho0Via::Exact;
  VRegistry v_registry;
};

// imprinted deviation density operator for the configured target
inline Operator tomography_state(const TomoConfig& config) {
  if (config.gate.has_value() == config.sequence.has_value())
    throw std::invalid_argument("tomography: configure exactly one of gate or sequence");
  if (config.gate) {
    const Operator& u = *config.gate;
    if (!u.is_unitary(kAlgTol)) throw std::invalid_argument("tomography: gate must be unitary");
    const Operator rho0 = prepare_rho0(u.n_spins + 1, config.rho0_via);
    const Operator cu = controlled(u);
    return Operator{u.n_spins + 1, cu.matrix * rho0.matrix * cu.matrix.adjoint()};
  }
  const int n_total = config.n_system_spins + 1;
  const Operator u_seq = sequence_propagator(*config.sequence, n_total);
  const Operator rho0 = prepare_rho0(n_total, config.rho0_via);
  return Operator{n_total, u_seq.matrix * rho0.matrix * u_seq.matrix.adjoint()};
}

// scan all requested labels and ranks over the grid; Gaussian noise of width
// noise_sigma is added to every real expectation value before the complex
// combination, keyed so that results are independent of evaluation order
inline SampleSet run_tomography(const TomoConfig& config) {
  if (config.noise_sigma < 0.0)
    throw std::invalid_argument("tomography: noise_sigma must be >= 0");
  detail::check_grid(config.grid);

  const Operator rho_u = tomography_state(config);
  const int n_sys = rho_u.n_spins - 1;

  std::vector<DropletLabel> labels = config.labels;
  if (labels.empty())
    for (const auto& [label, ranks] : droplet_basis(n_sys)) {
      (void)ranks;
      labels.push_back(label);
    }
  else
    for (const DropletLabel& label : labels) {
      bool known = false;
      for (const auto& [l, ranks] : droplet_basis(n_sys)) {
        (void)ranks;
        if (l == label) known = true;
      }
      if (!known)
        throw std::invalid_argument("tomography: label " + label.name() +
                                    " is not part of the basis for " + std::to_string(n_sys) +
                                    " system spins");
    }

  SampleSet out{n_sys, {}};
  for (const DropletLabel& label : labels) {
    for (int j : label_ranks(label)) {
      SampleEntry entry{label, j, {}};
      entry.samples.reserve(config.grid.nodes.size());
      for (size_t node = 0; node < config.grid.nodes.size(); ++node) {
        const GridNode& g = config.grid.nodes[node];
        std::vector<detail::RawTerm> raw =
            config.mode == TomoMode::Ideal
                ? detail::raw_ideal(rho_u, label, j, g.alpha, g.beta)
                : detail::raw_nmr(rho_u, label, j, g.alpha, g.beta, config.v_registry);
        if (config.noise_sigma > 0.0)
          for (size_t n = 0; n < raw.size(); ++n) {
            raw[n].ex += config.noise_sigma *
                         detail::keyed_normal(config.seed, label, j, node, 2 * n);
            raw[n].ey += config.noise_sigma *
                         detail::keyed_normal(config.seed, label, j, node, 2 * n + 1);
          }
        entry.samples.push_back({g.beta, g.alpha, detail::combine(raw, j)});
      }
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace drops

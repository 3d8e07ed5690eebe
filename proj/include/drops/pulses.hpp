// Pulse-sequence events and their propagators: hard pulses with arbitrary
// flip angle and phase, scalar-coupling delays, and gradient markers.
#pragma once

#include <cmath>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "drops/operators.hpp"

namespace drops {

// simultaneous hard pulse [flip]_phase on a set of spins
struct Pulse {
  std::set<int> spins;
  double flip = 0.0;   // radians
  double phase = 0.0;  // radians; x=0, y=pi/2, -x=pi, -y=3pi/2
};

// free evolution under the scalar coupling between spins 0 and 1
struct Delay {
  double duration = 0.0;  // seconds
};

// dephasing gradient acting on a set of spins (state filter, not a unitary)
struct Gradient {
  std::set<int> spins;
};

using PulseEvent = std::variant<Pulse, Delay, Gradient>;

// ordered list of events, earliest first; J is the scalar coupling in Hz
// between spins 0 and 1 (used by Delay events only). An empty event list
// is allowed and propagates as the identity.
struct PulseSequence {
  std::vector<PulseEvent> events;
  double j_coupling_hz = 0.0;
};

namespace detail {

// exp(-i 2 pi J tau I_{0z} I_{1z}): diagonal phases e^{-i theta m0 m1}
inline Matrix coupling_propagator(double j_hz, double tau, int n_spins) {
  const int d = 1 << n_spins;
  const double theta = 2.0 * kPi * j_hz * tau;
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m0 = ((i >> (n_spins - 1)) & 1) == 0 ? 0.5 : -0.5;
    const double m1 = ((i >> (n_spins - 2)) & 1) == 0 ? 0.5 : -0.5;
    m(i, i) = std::exp(-kI * (theta * m0 * m1));
  }
  return m;
}

}  // namespace detail

// propagator of one event; Gradient events are rejected (they act on states,
// not as unitaries — see gradient_filter)
inline Operator event_propagator(const PulseEvent& event, double j_hz, int n_spins) {
  if (std::holds_alternative<Gradient>(event))
    throw std::invalid_argument("event_propagator: gradient is not unitary");
  if (const auto* p = std::get_if<Pulse>(&event)) {
    if (p->spins.empty()) throw std::invalid_argument("pulse needs at least one spin");
    if (!std::isfinite(p->flip) || !std::isfinite(p->phase))
      throw std::invalid_argument("pulse flip and phase must be finite");
    for (int k : p->spins)
      if (k < 0 || k >= n_spins) throw std::invalid_argument("pulse spin index out of range");
    return Operator{n_spins,
                    detail::embed_per_spin(detail::pulse_2x2(p->flip, p->phase), p->spins, n_spins)};
  }
  const auto& d = std::get<Delay>(event);
  if (d.duration < 0.0) throw std::invalid_argument("delay duration must be >= 0");
  if (n_spins < 2)
    throw std::invalid_argument("delay requires at least two spins (coupling acts on spins 0 and 1)");
  if (j_hz <= 0.0) throw std::invalid_argument("delay requires a positive coupling constant");
  return Operator{n_spins, detail::coupling_propagator(j_hz, d.duration, n_spins)};
}

// product of event propagators in temporal order (first event acts first)
inline Operator sequence_propagator(const PulseSequence& seq, int n_spins) {
  Operator u = identity_op(n_spins);
  for (const PulseEvent& event : seq.events) {
    const Operator step = event_propagator(event, seq.j_coupling_hz, n_spins);
    u.matrix = step.matrix * u.matrix;
  }
  return u;
}

}  // namespace drops

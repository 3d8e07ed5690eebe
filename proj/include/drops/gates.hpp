// Registry of the sixteen reference single-qubit gates with their matrices
// and the two-spin pulse sequences that realize the corresponding controlled
// gate: identity, NOT, sqrt(NOT), Hadamard, four phase-shift gates and eight
// x rotations demonstrating the 4pi spinor periodicity.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "drops/angles.hpp"
#include "drops/operators.hpp"
#include "drops/pulses.hpp"

namespace drops {

struct GateDefinition {
  std::string name;         // canonical registry name, e.g. "rx:pi/2"
  std::string description;  // human-readable label
  Operator matrix;          // the 2x2 gate
  PulseSequence sequence;   // two-spin sequence realizing the controlled gate
  bool has_sequence = true; // false for off-table phase/rx angles (matrix only)
};

// default scalar coupling (Hz) between the ancilla and the system spin
inline constexpr double kDefaultCouplingHz = 214.15;

namespace detail {

inline constexpr double kPhX = 0.0;
inline constexpr double kPhY = kPi / 2.0;
inline constexpr double kPhMX = kPi;
inline constexpr double kPhMY = 3.0 * kPi / 2.0;

inline PulseEvent pev(std::set<int> spins, double flip, double phase) {
  return Pulse{std::move(spins), flip, phase};
}

inline Operator phase_gate_matrix(double gamma) {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, std::exp(kI * gamma);
  return Operator{1, std::move(m)};
}

inline Operator rx_gate_matrix(double psi) {
  const double c = std::cos(psi / 2.0), s = std::sin(psi / 2.0);
  Matrix m(2, 2);
  m << c, -kI * s, -kI * s, c;
  return Operator{1, std::move(m)};
}

// controlled x-rotation building blocks shared by the rotation rows
inline std::vector<PulseEvent> c_rx_half(double j_hz) {
  return {pev({1}, kPi / 2.0, kPhY), Delay{1.0 / (4.0 * j_hz)}, pev({1}, kPi / 2.0, kPhMY),
          pev({1}, kPi / 4.0, kPhX)};
}

inline std::vector<PulseEvent> c_rx_pi(double j_hz) {
  return {pev({1}, kPi / 2.0, kPhY), Delay{1.0 / (2.0 * j_hz)}, pev({1}, kPi / 2.0, kPhMY),
          pev({1}, kPi / 2.0, kPhX)};
}

inline std::vector<PulseEvent> concat(std::vector<std::vector<PulseEvent>> parts) {
  std::vector<PulseEvent> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// phase-shift row: [pi]_x(I0) - tau - [pi]_{-x}(I0) - [pi/2]_y(I0,I1)
//   - [mid]_x(I0,I1) - [pi/2]_{-y}(I0,I1), with tau and mid scaling with gamma
inline std::vector<PulseEvent> phase_row(double j_hz, double delay_frac, double mid_flip) {
  return {pev({0}, kPi, kPhX),          Delay{delay_frac / j_hz},
          pev({0}, kPi, kPhMX),         pev({0, 1}, kPi / 2.0, kPhY),
          pev({0, 1}, mid_flip, kPhX),  pev({0, 1}, kPi / 2.0, kPhMY)};
}

}  // namespace detail

// all sixteen registry rows, with delays materialized for the given coupling
inline std::vector<GateDefinition> gate_table(double j_hz = kDefaultCouplingHz) {
  using namespace detail;
  std::vector<GateDefinition> rows;
  auto add = [&](std::string name, std::string description, Operator m,
                 std::vector<PulseEvent> events) {
    rows.push_back({std::move(name), std::move(description), std::move(m),
                    PulseSequence{std::move(events), j_hz}});
  };

  Matrix mnot(2, 2), msqrt(2, 2), mhad(2, 2);
  mnot << 0.0, 1.0, 1.0, 0.0;
  msqrt << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5);
  mhad << 1.0, 1.0, 1.0, -1.0;
  mhad /= std::sqrt(2.0);

  add("id", "identity", identity_op(1), {});
  add("not", "NOT (bit flip)", Operator{1, mnot},
      {pev({1}, kPi / 2.0, kPhY), Delay{1.0 / (2.0 * j_hz)}, pev({0, 1}, kPi / 2.0, kPhMY),
       pev({0}, kPi / 2.0, kPhMX), pev({1}, kPi / 2.0, kPhX), pev({0}, kPi / 2.0, kPhY)});
  add("sqrtnot", "square root of NOT", Operator{1, msqrt},
      {pev({1}, kPi / 2.0, kPhY), Delay{1.0 / (4.0 * j_hz)}, pev({0, 1}, kPi / 2.0, kPhMY),
       pev({0}, kPi / 4.0, kPhMX), pev({1}, kPi / 4.0, kPhX), pev({0}, kPi / 2.0, kPhY)});
  add("hadamard", "Hadamard", Operator{1, mhad},
      {pev({0}, kPi, kPhMX), pev({1}, kPi / 4.0, kPhMY), Delay{1.0 / (2.0 * j_hz)},
       pev({0}, kPi / 2.0, kPhX), pev({1}, kPi / 2.0, kPhY), pev({0}, kPi / 2.0, kPhY),
       pev({1}, kPi / 2.0, kPhX), pev({0}, kPi / 2.0, kPhX), pev({1}, kPi / 4.0, kPhMY)});

  add("phase:pi/2", "phase shift by pi/2", phase_gate_matrix(kPi / 2.0),
      phase_row(j_hz, 0.25, kPi / 4.0));
  add("phase:pi", "phase shift by pi", phase_gate_matrix(kPi), phase_row(j_hz, 0.5, kPi / 2.0));
  add("phase:3pi/2", "phase shift by 3pi/2", phase_gate_matrix(3.0 * kPi / 2.0),
      phase_row(j_hz, 0.75, 3.0 * kPi / 4.0));
  add("phase:2pi", "phase shift by 2pi", phase_gate_matrix(2.0 * kPi), phase_row(j_hz, 1.0, kPi));

  add("rx:pi/2", "x rotation by pi/2", rx_gate_matrix(kPi / 2.0), c_rx_half(j_hz));
  add("rx:pi", "x rotation by pi", rx_gate_matrix(kPi), c_rx_pi(j_hz));
  add("rx:3pi/2", "x rotation by 3pi/2", rx_gate_matrix(3.0 * kPi / 2.0),
      concat({c_rx_pi(j_hz), c_rx_half(j_hz)}));
  add("rx:2pi", "x rotation by 2pi", rx_gate_matrix(2.0 * kPi),
      concat({c_rx_pi(j_hz), c_rx_pi(j_hz)}));
  add("rx:5pi/2", "x rotation by 5pi/2", rx_gate_matrix(5.0 * kPi / 2.0),
      concat({c_rx_pi(j_hz), c_rx_pi(j_hz), c_rx_half(j_hz)}));
  add("rx:3pi", "x rotation by 3pi", rx_gate_matrix(3.0 * kPi),
      concat({c_rx_pi(j_hz), c_rx_pi(j_hz), c_rx_pi(j_hz)}));
  add("rx:7pi/2", "x rotation by 7pi/2", rx_gate_matrix(7.0 * kPi / 2.0),
      concat({c_rx_pi(j_hz), c_rx_pi(j_hz), c_rx_pi(j_hz), c_rx_half(j_hz)}));
  add("rx:4pi", "x rotation by 4pi", rx_gate_matrix(4.0 * kPi),
      concat({c_rx_pi(j_hz), c_rx_pi(j_hz), c_rx_pi(j_hz), c_rx_pi(j_hz)}));

  return rows;
}

namespace detail {

// resolve "family:angle" names numerically so that spellings like "rx:0.5pi"
// and "rx:pi/2" denote the same registry row
inline bool same_angle(double a, double b) { return std::abs(a - b) < 1e-12; }

inline const GateDefinition* find_gate(const std::vector<GateDefinition>& rows,
                                       const std::string& name) {
  for (const auto& row : rows)
    if (row.name == name) return &row;
  const auto colon = name.find(':');
  if (colon == std::string::npos) return nullptr;
  const std::string family = name.substr(0, colon);
  double angle;
  try {
    angle = parse_angle(name.substr(colon + 1));
  } catch (const std::invalid_argument&) {
    return nullptr;
  }
  for (const auto& row : rows) {
    const auto c = row.name.find(':');
    if (c == std::string::npos || row.name.substr(0, c) != family) continue;
    if (same_angle(angle, parse_angle(row.name.substr(c + 1)))) return &row;
  }
  return nullptr;
}

}  // namespace detail

// registry lookup; `phase:<angle>` and `rx:<angle>` outside the sixteen rows
// still yield their closed-form matrices, but carry no pulse sequence
inline GateDefinition gate_by_name(const std::string& name, double j_hz = kDefaultCouplingHz) {
  const auto rows = gate_table(j_hz);
  if (const GateDefinition* row = detail::find_gate(rows, name)) return *row;
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string family = name.substr(0, colon);
    if (family == "phase" || family == "rx") {
      const double angle = parse_angle(name.substr(colon + 1));
      const Operator m =
          family == "phase" ? detail::phase_gate_matrix(angle) : detail::rx_gate_matrix(angle);
      return {name, family + " gate, angle outside the reference table", m, PulseSequence{}, false};
    }
  }
  throw std::invalid_argument("unknown gate name: " + name);
}

inline std::vector<std::string> gate_names() {
  std::vector<std::string> names;
  for (const auto& row : gate_table()) names.push_back(row.name);
  return names;
}

}  // namespace drops

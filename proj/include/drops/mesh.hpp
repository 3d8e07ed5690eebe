// Conversion of droplet functions into triangulated polar surfaces for
// display: vertex radius |f(theta, phi)| and a vertex color encoding the
// phase of f through a fixed piecewise-linear map (0 red, pi/2 yellow,
// pi green, 3pi/2 blue).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "drops/fit.hpp"
#include "drops/grids.hpp"
#include "drops/map.hpp"
#include "drops/samples.hpp"
#include "drops/tensors.hpp"

namespace drops {

struct MeshVertex {
  std::array<double, 3> position{0.0, 0.0, 0.0};
  double radius = 0.0;
  double phase = 0.0;  // in [0, 2 pi)
  std::array<std::uint8_t, 3> color{0, 0, 0};
};

struct DropletMesh {
  int n_theta = 0;  // rows, theta in [0, pi]
  int n_phi = 0;    // columns, phi periodic over [0, 2 pi)
  std::vector<MeshVertex> vertices;          // row-major, vertex = row * n_phi + column
  std::vector<std::array<int, 3>> faces;
};

namespace detail {

inline std::array<std::uint8_t, 3> hsv_to_rgb(double h_deg, double s, double v) {
  const double c = v * s;
  const double hp = h_deg / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0.0, g = 0.0, b = 0.0;
  if (hp < 1.0) { r = c; g = x; }
  else if (hp < 2.0) { r = x; g = c; }
  else if (hp < 3.0) { g = c; b = x; }
  else if (hp < 4.0) { g = x; b = c; }
  else if (hp < 5.0) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = v - c;
  return {static_cast<std::uint8_t>(std::lround(255.0 * (r + m))),
          static_cast<std::uint8_t>(std::lround(255.0 * (g + m))),
          static_cast<std::uint8_t>(std::lround(255.0 * (b + m)))};
}

}  // namespace detail

// phase in [0, 2 pi) -> RGB; hue and value interpolate linearly between the
// anchors (0, pi/2, pi, 3 pi/2, 2 pi) -> (red, yellow, green, blue, red),
// with green darkened so positive and negative real values match the
// conventional rendering
inline std::array<std::uint8_t, 3> phase_color(double phase) {
  double p = std::fmod(phase, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  static constexpr double kHue[5] = {0.0, 60.0, 120.0, 240.0, 360.0};
  static constexpr double kValue[5] = {1.0, 1.0, 128.0 / 255.0, 1.0, 1.0};
  const double t = p / (kPi / 2.0);  // in [0, 4)
  const int seg = std::min(static_cast<int>(t), 3);
  const double frac = t - seg;
  const double h = kHue[seg] + frac * (kHue[seg + 1] - kHue[seg]);
  const double v = kValue[seg] + frac * (kValue[seg + 1] - kValue[seg]);
  return detail::hsv_to_rgb(h, 1.0, v);
}

// polar surface of one droplet over a resolution x 2 resolution lattice:
// theta runs pole to pole inclusive, phi is periodic (no duplicate column)
inline DropletMesh mesh(const DropletCoefficients& coeffs, const DropletLabel& label,
                        int resolution) {
  if (resolution < 8) throw std::invalid_argument("mesh: resolution must be at least 8");

  DropletMesh out;
  out.n_theta = resolution;
  out.n_phi = 2 * resolution;
  out.vertices.reserve(static_cast<size_t>(out.n_theta) * out.n_phi);

  for (int i = 0; i < out.n_theta; ++i) {
    const double theta = kPi * i / (out.n_theta - 1);
    for (int j = 0; j < out.n_phi; ++j) {
      const double phi = 2.0 * kPi * j / out.n_phi;
      const Complex f = evaluate(coeffs, label, theta, phi);
      MeshVertex v;
      v.radius = std::abs(f);
      v.phase = std::arg(f);
      if (v.phase < 0.0) v.phase += 2.0 * kPi;
      v.position = {v.radius * std::sin(theta) * std::cos(phi),
                    v.radius * std::sin(theta) * std::sin(phi), v.radius * std::cos(theta)};
      v.color = phase_color(v.phase);
      out.vertices.push_back(v);
    }
  }

  for (int i = 0; i + 1 < out.n_theta; ++i)
    for (int j = 0; j < out.n_phi; ++j) {
      const int j2 = (j + 1) % out.n_phi;
      const int a = i * out.n_phi + j;
      const int b = (i + 1) * out.n_phi + j;
      const int c = (i + 1) * out.n_phi + j2;
      const int d = i * out.n_phi + j2;
      out.faces.push_back({a, b, c});
      out.faces.push_back({a, c, d});
    }
  return out;
}

// convenience: fit the sampled droplet first (rank-selective), then mesh it
inline DropletMesh mesh(const SampleSet& samples, const SamplingGrid& grid,
                        const DropletLabel& label, int resolution) {
  std::set<int> present;
  for (const SampleEntry& entry : samples.entries)
    if (entry.label == label) present.insert(entry.j);
  if (present.empty())
    throw std::invalid_argument("mesh: sample set has no entries for label " + label.name());
  const FitReport report = fit_coefficients(samples.filtered(label, present), grid);
  return mesh(report.coefficients, label, resolution);
}

}  // namespace drops

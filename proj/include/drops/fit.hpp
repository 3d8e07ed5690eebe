// Recovery of droplet coefficients from sampled values: quadrature
// projection on weighted grids, minimum-norm least squares on weightless
// grids, with residual and conditioning diagnostics.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "drops/grids.hpp"
#include "drops/map.hpp"
#include "drops/samples.hpp"

namespace drops {

struct FitReport {
  DropletCoefficients coefficients;
  double residual_rms = 0.0;
  double condition_number = 0.0;
};

// maximum acceptable condition number of the design matrix
inline constexpr double kConditionLimit = 1e8;

// Fit every (label, j) entry of `samples` against the grid. Each rank is an
// independent linear problem in its 2j+1 coefficients; results are merged
// into one coefficient map. Residual RMS is pooled over all fitted
// equations, the condition number is the worst over the per-rank design
// matrices.
inline FitReport fit_coefficients(const SampleSet& samples, const SamplingGrid& grid) {
  detail::check_grid(grid);
  if (samples.entries.empty()) throw std::invalid_argument("fit_coefficients: no sample entries");

  FitReport report;
  report.coefficients.n_spins = samples.n_spins;
  double residual_sq = 0.0;
  size_t n_equations = 0;

  // a label's droplet is one band-limited function, so the node count must
  // cover the total unknowns of all ranks fitted for that label
  std::map<DropletLabel, size_t> unknowns_per_label;
  for (const SampleEntry& entry : samples.entries) {
    unknowns_per_label[entry.label] += 2 * entry.j + 1;
    if (unknowns_per_label[entry.label] > grid.nodes.size())
      throw std::runtime_error("fit_coefficients: underdetermined system (" +
                               std::to_string(grid.nodes.size()) + " nodes for " +
                               std::to_string(unknowns_per_label[entry.label]) +
                               " coefficients of label " + entry.label.name() + ")");
  }

  for (const SampleEntry& entry : samples.entries) {
    if (!rank_in_label(entry.label, entry.j))
      throw std::invalid_argument("fit_coefficients: rank " + std::to_string(entry.j) +
                                  " not available for label " + entry.label.name());
    const size_t n = entry.samples.size();
    if (n != grid.nodes.size())
      throw std::invalid_argument("fit_coefficients: sample count does not match grid");
    const int cols = 2 * entry.j + 1;

    Matrix design(n, cols);
    Eigen::VectorXcd rhs(n);
    for (size_t i = 0; i < n; ++i) {
      const Sample& s = entry.samples[i];
      for (int m = -entry.j; m <= entry.j; ++m)
        design(i, m + entry.j) = spherical_harmonic(entry.j, m, s.beta, s.alpha);
      rhs(i) = s.value;
    }

    Eigen::JacobiSVD<Matrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (cond > kConditionLimit) throw std::runtime_error("ill-conditioned grid");
    report.condition_number = std::max(report.condition_number, cond);

    Eigen::VectorXcd solution(cols);
    if (grid.weights) {
      // quadrature projection: c_jm = sum_i w_i f_i conj(Y_jm)
      for (int m = -entry.j; m <= entry.j; ++m) {
        Complex c = 0.0;
        for (size_t i = 0; i < n; ++i)
          c += (*grid.weights)[i] * rhs(i) * std::conj(design(i, m + entry.j));
        solution(m + entry.j) = c;
      }
    } else {
      // minimum-norm least squares through the singular value decomposition
      solution = svd.solve(rhs);
    }

    const Eigen::VectorXcd residual = design * solution - rhs;
    residual_sq += residual.squaredNorm();
    n_equations += n;

    for (int m = -entry.j; m <= entry.j; ++m)
      report.coefficients.entries[{entry.label, entry.j, m}] = solution(m + entry.j);
  }

  report.residual_rms = std::sqrt(residual_sq / static_cast<double>(n_equations));
  return report;
}

}  // namespace drops

// Sphere sampling grids: the equiangular grid (weightless, least-squares
// use) and product Gauss-Legendre quadrature grids exact for a band limit.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "drops/operators.hpp"

namespace drops {

struct GridNode {
  double beta = 0.0;   // colatitude in [0, pi]
  double alpha = 0.0;  // azimuth in [0, 2pi]
};

struct SamplingGrid {
  enum class Kind { Equiangular, GaussLegendre };
  Kind kind = Kind::Equiangular;
  std::vector<GridNode> nodes;
  std::optional<std::vector<double>> weights;  // quadrature weights, sum 4pi
};

namespace detail {

inline void check_grid(const SamplingGrid& grid) {
  if (grid.nodes.empty()) throw std::invalid_argument("sampling grid has no nodes");
  if (grid.weights) {
    if (grid.weights->size() != grid.nodes.size())
      throw std::invalid_argument("sampling grid: one weight per node required");
    double sum = 0.0;
    for (double w : *grid.weights) sum += w;
    if (std::abs(sum - 4.0 * kPi) > 1e-9)
      throw std::invalid_argument("sampling grid: quadrature weights must sum to 4pi");
  }
}

}  // namespace detail

// n_beta equispaced colatitudes covering [0, pi] times n_alpha equispaced
// azimuths covering [0, 2pi]; the duplicate alpha = 2pi column is retained
// deliberately (13 x 25 = 325 nodes), so the grid carries no weights and is
// meant for least-squares recovery
inline SamplingGrid equiangular_grid(int n_beta, int n_alpha) {
  if (n_beta < 2 || n_alpha < 2)
    throw std::invalid_argument("equiangular_grid: need at least 2 nodes per direction");
  SamplingGrid grid;
  grid.kind = SamplingGrid::Kind::Equiangular;
  for (int i = 0; i < n_beta; ++i)
    for (int k = 0; k < n_alpha; ++k)
      grid.nodes.push_back({kPi * i / (n_beta - 1), 2.0 * kPi * k / (n_alpha - 1)});
  detail::check_grid(grid);
  return grid;
}

// (j_max+1) Gauss-Legendre colatitudes times (2 j_max+1) equispaced azimuths
// with product weights; integrates spherical polynomials up to band limit
// j_max exactly
inline SamplingGrid gauss_legendre_grid(int j_max) {
  if (j_max < 0) throw std::invalid_argument("gauss_legendre_grid: j_max must be >= 0");
  if (j_max > 2) throw std::invalid_argument("gauss_legendre_grid: band limits above 2 are out of scope");

  // Gauss-Legendre nodes/weights on [-1,1] for 1, 2 and 3 points
  std::vector<double> x, w;
  if (j_max == 0) {
    x = {0.0};
    w = {2.0};
  } else if (j_max == 1) {
    const double a = 1.0 / std::sqrt(3.0);
    x = {a, -a};
    w = {1.0, 1.0};
  } else {
    const double a = std::sqrt(3.0 / 5.0);
    x = {a, 0.0, -a};
    w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  }

  const int n_alpha = 2 * j_max + 1;
  SamplingGrid grid;
  grid.kind = SamplingGrid::Kind::GaussLegendre;
  grid.weights.emplace();
  for (size_t i = 0; i < x.size(); ++i) {
    const double beta = std::acos(x[i]);  // ascending beta since x descends
    for (int k = 0; k < n_alpha; ++k) {
      grid.nodes.push_back({beta, 2.0 * kPi * k / n_alpha});
      grid.weights->push_back(w[i] * 2.0 * kPi / n_alpha);
    }
  }
  detail::check_grid(grid);
  return grid;
}

}  // namespace drops

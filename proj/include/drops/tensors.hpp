// Irreducible spherical tensor operators and the droplet basis that labels
// them by linearity and subsystem: single-spin tensors, trace-orthonormal
// embeddings for one and two spins, rotated axial tensors and Cartesian
// product-operator decompositions of the axial components.
#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "drops/operators.hpp"

namespace drops {

// droplet label: the identity part, one linear (single-spin) part per spin,
// and the bilinear part of a two-spin operator. Spin numbers are 1-based.
struct DropletLabel {
  enum class Kind { Empty, Linear, Bilinear };
  Kind kind = Kind::Empty;
  int k = 0;  // first spin (Linear, Bilinear)
  int l = 0;  // second spin (Bilinear only), k < l

  static DropletLabel empty() { return {}; }
  static DropletLabel linear(int k) {
    if (k < 1) throw std::invalid_argument("linear label: spin number must be >= 1");
    return {Kind::Linear, k, 0};
  }
  static DropletLabel bilinear(int k, int l) {
    if (k < 1 || l <= k) throw std::invalid_argument("bilinear label: need 1 <= k < l");
    return {Kind::Bilinear, k, l};
  }

  friend auto operator<=>(const DropletLabel&, const DropletLabel&) = default;

  std::string name() const {
    switch (kind) {
      case Kind::Empty: return "empty";
      case Kind::Linear: return std::to_string(k);
      case Kind::Bilinear: return std::to_string(k) + std::to_string(l);
    }
    throw std::logic_error("unknown label kind");
  }

  static DropletLabel from_name(const std::string& s) {
    if (s == "empty") return empty();
    if (s.size() == 1 && std::isdigit(static_cast<unsigned char>(s[0]))) return linear(s[0] - '0');
    if (s.size() == 2 && std::isdigit(static_cast<unsigned char>(s[0])) &&
        std::isdigit(static_cast<unsigned char>(s[1])))
      return bilinear(s[0] - '0', s[1] - '0');
    throw std::invalid_argument("unknown droplet label: " + s);
  }
};

// rank set J(label)
inline std::vector<int> label_ranks(const DropletLabel& label) {
  switch (label.kind) {
    case DropletLabel::Kind::Empty: return {0};
    case DropletLabel::Kind::Linear: return {1};
    case DropletLabel::Kind::Bilinear: return {0, 1, 2};
  }
  throw std::logic_error("unknown label kind");
}

inline bool rank_in_label(const DropletLabel& label, int j) {
  for (int r : label_ranks(label))
    if (r == j) return true;
  return false;
}

// one basis element: label, rank j, order m
struct TensorIndex {
  DropletLabel label;
  int j = 0;
  int m = 0;

  friend auto operator<=>(const TensorIndex&, const TensorIndex&) = default;
};

// single-spin irreducible tensor components:
//   T00 = 1/sqrt(2) * identity, T1,-1 = I-, T10 = sqrt(2) Iz, T11 = -I+
inline Operator single_spin_tensor(int j, int m) {
  if (j == 0 && m == 0) {
    return Operator{1, (1.0 / std::sqrt(2.0)) * Matrix::Identity(2, 2)};
  }
  if (j == 1 && m == -1) return pauli(Axis::Minus);
  if (j == 1 && m == 0) return Operator{1, std::sqrt(2.0) * pauli_matrix(Axis::Z)};
  if (j == 1 && m == 1) return Operator{1, -pauli_matrix(Axis::Plus)};
  throw std::invalid_argument("single_spin_tensor: invalid (j,m) = (" + std::to_string(j) + "," +
                              std::to_string(m) + ")");
}

namespace detail {

// Clebsch-Gordan coefficients <1 m1 1 m2 | J (m1+m2)> in the
// Condon-Shortley convention
inline double cg_1x1(int bigj, int m1, int m2) {
  const double s2 = std::sqrt(0.5), s3 = std::sqrt(1.0 / 3.0), s6 = std::sqrt(1.0 / 6.0);
  const int m = m1 + m2;
  if (m1 < -1 || m1 > 1 || m2 < -1 || m2 > 1) return 0.0;
  switch (bigj) {
    case 0:
      if (m != 0) return 0.0;
      return m1 == 0 ? -s3 : s3;  // (1,-1)->1/sqrt3, (0,0)->-1/sqrt3, (-1,1)->1/sqrt3
    case 1:
      if (m == 1) return m1 == 1 ? s2 : -s2;    // (1,0), (0,1)
      if (m == 0) return m1 == 0 ? 0.0 : (m1 == 1 ? s2 : -s2);  // (1,-1), (0,0), (-1,1)
      if (m == -1) return m1 == 0 ? s2 : -s2;   // (0,-1), (-1,0)
      return 0.0;
    case 2:
      if (m == 2 || m == -2) return 1.0;
      if (m == 1 || m == -1) return s2;
      if (m == 0) return m1 == 0 ? 2.0 * s6 : s6;
      return 0.0;
    default:
      return 0.0;
  }
}

// tensor product with given 2x2 blocks at fixed positions, identity elsewhere
inline Matrix place_factors(const std::map<int, Matrix>& blocks, int n_spins) {
  Matrix m = Matrix::Identity(1, 1);
  for (int pos = 0; pos < n_spins; ++pos) {
    auto it = blocks.find(pos);
    m = kron(m, it == blocks.end() ? Matrix::Identity(2, 2).eval() : it->second);
  }
  return m;
}

}  // namespace detail

// trace-orthonormal droplet tensor T_jm^(label) on n_spins system spins.
// Embeddings of fewer than n_spins factors are scaled by 2^{-(missing)/2} so
// that tr(T†T) = 1 in every dimension. The bilinear rank-1 multiplet carries
// an extra factor i relative to the plain Clebsch-Gordan combination, which
// makes T_jm† = (-1)^m T_{j,-m} hold for every constructed tensor (and the
// rotated axial tensors Hermitian).
inline Operator tensor_op(const TensorIndex& idx, int n_spins) {
  if (n_spins < 1 || n_spins > 2)
    throw std::invalid_argument("tensor_op: only 1 or 2 system spins are supported");
  if (!rank_in_label(idx.label, idx.j))
    throw std::invalid_argument("tensor_op: rank " + std::to_string(idx.j) +
                                " not available for label " + idx.label.name());
  if (idx.m < -idx.j || idx.m > idx.j)
    throw std::invalid_argument("tensor_op: order m out of range");

  const int d = 1 << n_spins;
  const auto& label = idx.label;
  switch (label.kind) {
    case DropletLabel::Kind::Empty:
      return Operator{n_spins,
                      std::pow(2.0, -0.5 * n_spins) * Matrix::Identity(d, d)};
    case DropletLabel::Kind::Linear: {
      if (label.k > n_spins)
        throw std::invalid_argument("tensor_op: label spin exceeds n_spins");
      const Matrix t = single_spin_tensor(1, idx.m).matrix;
      const double scale = std::pow(2.0, -0.5 * (n_spins - 1));
      return Operator{n_spins, scale * detail::place_factors({{label.k - 1, t}}, n_spins)};
    }
    case DropletLabel::Kind::Bilinear: {
      if (label.l > n_spins)
        throw std::invalid_argument("tensor_op: label spin exceeds n_spins");
      Matrix sum = Matrix::Zero(d, d);
      for (int m1 = -1; m1 <= 1; ++m1) {
        const int m2 = idx.m - m1;
        if (m2 < -1 || m2 > 1) continue;
        const double c = detail::cg_1x1(idx.j, m1, m2);
        if (c == 0.0) continue;
        sum += c * detail::place_factors({{label.k - 1, single_spin_tensor(1, m1).matrix},
                                          {label.l - 1, single_spin_tensor(1, m2).matrix}},
                                         n_spins);
      }
      const Complex pref = idx.j == 1 ? kI : Complex(1.0);
      return Operator{n_spins, pref * sum};
    }
  }
  throw std::logic_error("unknown label kind");
}

// droplet labels with their rank sets, in display order
inline std::vector<std::pair<DropletLabel, std::vector<int>>> droplet_basis(int n_spins) {
  if (n_spins == 1)
    return {{DropletLabel::empty(), {0}}, {DropletLabel::linear(1), {1}}};
  if (n_spins == 2)
    return {{DropletLabel::empty(), {0}},
            {DropletLabel::linear(1), {1}},
            {DropletLabel::linear(2), {1}},
            {DropletLabel::bilinear(1, 2), {0, 1, 2}}};
  throw std::invalid_argument(
      "droplet_basis: unsupported spin count (auxiliary droplet labels for 3 or more spins "
      "are out of scope)");
}

// all basis indices for n_spins, flattened
inline std::vector<TensorIndex> basis_indices(int n_spins) {
  std::vector<TensorIndex> out;
  for (const auto& [label, ranks] : droplet_basis(n_spins))
    for (int j : ranks)
      for (int m = -j; m <= j; ++m) out.push_back({label, j, m});
  return out;
}

// R_{alpha,beta} T_{j0} R_{alpha,beta}† with the rotation acting on all
// system spins; Hermitian since axial tensors are
inline Operator rotated_axial(const DropletLabel& label, int j, double alpha, double beta,
                              int n_spins) {
  const Operator t = tensor_op({label, j, 0}, n_spins);
  std::set<int> all;
  for (int k = 0; k < n_spins; ++k) all.insert(k);
  const Operator r = rotation(alpha, beta, all, n_spins);
  return Operator{n_spins, r.matrix * t.matrix * r.matrix.adjoint()};
}

// one real term r * (product operator) of an axial tensor's Cartesian
// expansion; `factors` uses 0-based spin positions in the system space
struct CartesianTerm {
  double r = 0.0;
  std::map<int, Axis> factors;
  double scale = 1.0;

  Operator op(int n_spins) const { return product_operator(factors, n_spins, scale); }

  // display name with 1-based spin numbers, e.g. "1", "I1z", "2I1xI2y"
  std::string name() const {
    if (factors.empty()) return "1";
    std::string out = scale == 2.0 ? "2" : (scale == 1.0 ? "" : std::to_string(scale));
    for (const auto& [pos, axis] : factors) out += "I" + std::to_string(pos + 1) + axis_name(axis);
    return out;
  }
};

// expansion of the axial tensor T_{j0}^(label) into Cartesian product
// operators with real coefficients: sum_n r_n C_n = T_{j0}
inline std::vector<CartesianTerm> cartesian_decomposition(const DropletLabel& label, int j,
                                                          int n_spins) {
  if (n_spins < 1 || n_spins > 2)
    throw std::invalid_argument("cartesian_decomposition: only 1 or 2 system spins are supported");
  if (!rank_in_label(label, j))
    throw std::invalid_argument("cartesian_decomposition: rank " + std::to_string(j) +
                                " not available for label " + label.name());

  switch (label.kind) {
    case DropletLabel::Kind::Empty:
      return {{std::pow(2.0, -0.5 * n_spins), {}, 1.0}};
    case DropletLabel::Kind::Linear: {
      if (label.k > n_spins)
        throw std::invalid_argument("cartesian_decomposition: label spin exceeds n_spins");
      const double r = std::sqrt(2.0) * std::pow(2.0, -0.5 * (n_spins - 1));
      return {{r, {{label.k - 1, Axis::Z}}, 1.0}};
    }
    case DropletLabel::Kind::Bilinear: {
      if (label.l > n_spins)
        throw std::invalid_argument("cartesian_decomposition: label spin exceeds n_spins");
      const int a = label.k - 1, b = label.l - 1;
      const double s3 = std::sqrt(1.0 / 3.0), s2 = std::sqrt(0.5), s6 = std::sqrt(1.0 / 6.0);
      if (j == 0)
        return {{-s3, {{a, Axis::X}, {b, Axis::X}}, 2.0},
                {-s3, {{a, Axis::Y}, {b, Axis::Y}}, 2.0},
                {-s3, {{a, Axis::Z}, {b, Axis::Z}}, 2.0}};
      if (j == 1)
        return {{-s2, {{a, Axis::X}, {b, Axis::Y}}, 2.0},
                {s2, {{a, Axis::Y}, {b, Axis::X}}, 2.0}};
      return {{-s6, {{a, Axis::X}, {b, Axis::X}}, 2.0},
              {-s6, {{a, Axis::Y}, {b, Axis::Y}}, 2.0},
              {2.0 * s6, {{a, Axis::Z}, {b, Axis::Z}}, 2.0}};
    }
  }
  throw std::logic_error("unknown label kind");
}

}  // namespace drops

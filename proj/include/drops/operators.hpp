// Dense complex operator algebra for small systems of spins-1/2:
// Cartesian product operators, rotations, controlled propagators,
// density-operator imprinting, gradient filters and expectation values.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace drops {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// tolerance for algebraic identities (entrywise, absolute)
inline constexpr double kAlgTol = 1e-12;
// tolerance for composed pulse-sequence fidelities (accumulated rounding)
inline constexpr double kSequenceTol = 1e-10;

enum class Axis { X, Y, Z, Plus, Minus };

inline std::string axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
    case Axis::Plus: return "plus";
    case Axis::Minus: return "minus";
  }
  throw std::invalid_argument("unknown axis");
}

inline Axis axis_from_name(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  if (s == "plus") return Axis::Plus;
  if (s == "minus") return Axis::Minus;
  throw std::invalid_argument("unknown axis name: " + s);
}

// Dense operator on n spins-1/2. Spin 0 is the leftmost tensor factor and,
// in tomography contexts, the ancilla. Basis state 0 is spin-up (m=+1/2).
struct Operator {
  int n_spins = 1;
  Matrix matrix;

  int dim() const { return 1 << n_spins; }

  bool is_hermitian(double tol = kAlgTol) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
  bool is_unitary(double tol = kAlgTol) const {
    Matrix d = matrix * matrix.adjoint() - Matrix::Identity(dim(), dim());
    return d.cwiseAbs().maxCoeff() <= tol;
  }
};

inline Operator make_operator(int n_spins, Matrix m) {
  if (n_spins < 1) throw std::invalid_argument("operator needs at least one spin");
  const int d = 1 << n_spins;
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument("matrix dimension does not match 2^n_spins");
  return Operator{n_spins, std::move(m)};
}

inline Operator identity_op(int n_spins) {
  const int d = 1 << n_spins;
  return Operator{n_spins, Matrix::Identity(d, d)};
}

inline Operator zero_op(int n_spins) {
  const int d = 1 << n_spins;
  return Operator{n_spins, Matrix::Zero(d, d)};
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// single-spin angular momentum operator I_b = sigma_b / 2, or the raising /
// lowering combinations I± = I_x ± i I_y
inline Matrix pauli_matrix(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X: m << 0.0, 0.5, 0.5, 0.0; break;
    case Axis::Y: m << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0; break;
    case Axis::Z: m << 0.5, 0.0, 0.0, -0.5; break;
    case Axis::Plus: m << 0.0, 1.0, 0.0, 0.0; break;
    case Axis::Minus: m << 0.0, 0.0, 1.0, 0.0; break;
  }
  return m;
}

inline Operator pauli(Axis axis) { return Operator{1, pauli_matrix(axis)}; }

// scale * I_{k1,a1} * I_{k2,a2} * ...  with identity on unspecified spins;
// the conventional 2^{q-1} prefactor is the caller's business via `scale`
inline Operator product_operator(const std::map<int, Axis>& factors, int n_spins,
                                 double scale = 1.0) {
  if (n_spins < 1) throw std::invalid_argument("product_operator: n_spins must be >= 1");
  for (const auto& [k, axis] : factors) {
    (void)axis;
    if (k < 0 || k >= n_spins)
      throw std::invalid_argument("product_operator: spin index " + std::to_string(k) +
                                  " out of range for " + std::to_string(n_spins) + " spins");
  }
  Matrix m = Matrix::Identity(1, 1);
  for (int k = 0; k < n_spins; ++k) {
    auto it = factors.find(k);
    m = kron(m, it == factors.end() ? Matrix::Identity(2, 2).eval() : pauli_matrix(it->second));
  }
  return Operator{n_spins, scale * m};
}

namespace detail {

// closed-form single-spin rotations about z and y
inline Matrix rz(double alpha) {
  Matrix m(2, 2);
  m << std::exp(-kI * (alpha / 2.0)), 0.0, 0.0, std::exp(kI * (alpha / 2.0));
  return m;
}

inline Matrix ry(double beta) {
  const double c = std::cos(beta / 2.0), s = std::sin(beta / 2.0);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

// exp(-i flip (cos(phase) I_x + sin(phase) I_y)) on one spin
inline Matrix pulse_2x2(double flip, double phase) {
  const double c = std::cos(flip / 2.0), s = std::sin(flip / 2.0);
  Matrix m(2, 2);
  m << c, -kI * s * std::exp(-kI * phase), -kI * s * std::exp(kI * phase), c;
  return m;
}

// tensor product with `u` on the listed spins and identity elsewhere
inline Matrix embed_per_spin(const Matrix& u, const std::set<int>& spins, int n_spins) {
  Matrix m = Matrix::Identity(1, 1);
  for (int k = 0; k < n_spins; ++k)
    m = kron(m, spins.count(k) ? u : Matrix::Identity(2, 2).eval());
  return m;
}

}  // namespace detail

// exp(-i alpha F_z) exp(-i beta F_y) with F summed over the given spins only
inline Operator rotation(double alpha, double beta, const std::set<int>& spins, int n_spins) {
  if (spins.empty()) throw std::invalid_argument("rotation: spin set must be nonempty");
  for (int k : spins)
    if (k < 0 || k >= n_spins)
      throw std::invalid_argument("rotation: spin index out of range");
  // both exponentials factor per spin, so the product does too
  const Matrix u = detail::rz(alpha) * detail::ry(beta);
  return Operator{n_spins, detail::embed_per_spin(u, spins, n_spins)};
}

// block-diag(1, U): the propagator controlled by the ancilla spin 0
inline Operator controlled(const Operator& u) {
  if (!u.is_unitary(kAlgTol)) throw std::invalid_argument("controlled: input is not unitary");
  const int d = u.dim();
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = Matrix::Identity(d, d);
  m.bottomRightCorner(d, d) = u.matrix;
  return Operator{u.n_spins + 1, std::move(m)};
}

// deviation density operator obtained by conjugating 2 I_{0x} with the
// controlled propagator; equals the antidiagonal block form [[0, U†], [U, 0]]
inline Operator imprint(const Operator& u) {
  if (!u.is_unitary(kAlgTol)) throw std::invalid_argument("imprint: input is not unitary");
  const Operator cu = controlled(u);
  const Operator rho0 = product_operator({{0, Axis::X}}, u.n_spins + 1, 2.0);
  Matrix rho = cu.matrix * rho0.matrix * cu.matrix.adjoint();
  // internal consistency: the two constructions must coincide
  const int d = u.dim();
  Matrix blocks = Matrix::Zero(2 * d, 2 * d);
  blocks.topRightCorner(d, d) = u.matrix.adjoint();
  blocks.bottomLeftCorner(d, d) = u.matrix;
  if ((rho - blocks).cwiseAbs().maxCoeff() > kAlgTol)
    throw std::logic_error("imprint: block form and conjugation form disagree");
  return Operator{u.n_spins + 1, std::move(rho)};
}

namespace detail {

// twice the total z angular momentum of basis state `index` restricted to
// `spins` (integer-valued: +1 per up spin, -1 per down spin)
inline int zeeman2(int index, const std::set<int>& spins, int n_spins) {
  int total = 0;
  for (int k : spins) {
    const int bit = (index >> (n_spins - 1 - k)) & 1;
    total += bit == 0 ? 1 : -1;
  }
  return total;
}

}  // namespace detail

// coherence-order-zero projection with respect to the given spins: the
// average of exp(-i phi F_z) rho exp(+i phi F_z) over uniform phi, evaluated
// analytically by zeroing elements whose Zeeman quantum numbers differ
inline Operator gradient_filter(const Operator& rho, const std::set<int>& spins) {
  if (!rho.is_hermitian(kAlgTol))
    throw std::invalid_argument("gradient_filter: state must be Hermitian");
  for (int k : spins)
    if (k < 0 || k >= rho.n_spins)
      throw std::invalid_argument("gradient_filter: spin index out of range");
  Matrix m = rho.matrix;
  const int d = rho.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (detail::zeeman2(i, spins, rho.n_spins) != detail::zeeman2(j, spins, rho.n_spins))
        m(i, j) = 0.0;
  return Operator{rho.n_spins, std::move(m)};
}

// tr(O rho); real within tolerance when both arguments are Hermitian
inline Complex expectation(const Operator& o, const Operator& rho) {
  if (o.n_spins != rho.n_spins)
    throw std::invalid_argument("expectation: operator dimensions do not match");
  return (o.matrix * rho.matrix).trace();
}

// |tr(A† B)| / 2^n: equals 1 exactly when A and B agree up to a global phase
inline double fidelity_up_to_phase(const Operator& a, const Operator& b) {
  if (a.n_spins != b.n_spins)
    throw std::invalid_argument("fidelity_up_to_phase: dimensions do not match");
  if (!a.is_unitary(kAlgTol) || !b.is_unitary(kAlgTol))
    throw std::invalid_argument("fidelity_up_to_phase: both operators must be unitary");
  return std::abs((a.matrix.adjoint() * b.matrix).trace()) / static_cast<double>(a.dim());
}

}  // namespace drops

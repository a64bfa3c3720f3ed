#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <utility>

#include "uni2q/errors.hpp"

namespace uni2q {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;

/// Numerical tolerances shared by every module. Defaults are sized for
/// unit-scale data in double precision; callers may override any of them.
struct Tolerances {
  double unitary = 1e-10;
  double state = 1e-10;
  double product = 1e-8;
  double geom = 1e-9;
  double reconstruct = 1e-8;
};

/// Largest entry of |U^dagger U - I|.
double unitarity_deviation(const Eigen::Ref<const Eigen::MatrixXcd>& m);

Matrix4c kron(const Matrix2c& a, const Matrix2c& b);
Vector4c kron(const Vector2c& a, const Vector2c& b);

class SingleQubitUnitary {
 public:
  /// Throws NotUnitary when U^dagger U deviates from I by more than tol.unitary.
  explicit SingleQubitUnitary(const Matrix2c& m, const Tolerances& tol = {});

  static SingleQubitUnitary identity();

  const Matrix2c& matrix() const noexcept { return m_; }
  SingleQubitUnitary adjoint() const;

 private:
  Matrix2c m_;
};

/// 4x4 unitary in the computational order |00>, |01>, |10>, |11>, with the
/// first tensor factor (Alice) as the most significant bit.
class TwoQubitUnitary {
 public:
  explicit TwoQubitUnitary(const Matrix4c& m, const Tolerances& tol = {});

  static TwoQubitUnitary identity();
  static TwoQubitUnitary local(const SingleQubitUnitary& a, const SingleQubitUnitary& b);

  const Matrix4c& matrix() const noexcept { return m_; }
  TwoQubitUnitary adjoint() const;

  friend TwoQubitUnitary operator*(const TwoQubitUnitary& lhs, const TwoQubitUnitary& rhs);

 private:
  TwoQubitUnitary(const Matrix4c& m, std::nullptr_t) : m_(m) {}
  Matrix4c m_;
};

class PureState2Q {
 public:
  /// Throws InvalidState unless the Euclidean norm is 1 within tol.state.
  explicit PureState2Q(const Vector4c& amplitudes, const Tolerances& tol = {});

  /// Rescales a nonzero vector to unit norm.
  static PureState2Q normalized(const Vector4c& v);

  const Vector4c& amplitudes() const noexcept { return a_; }

 private:
  Vector4c a_;
};

/// Coefficients over |Phi_1> = (|00>+|11>)/sqrt2, |Phi_2> = (|00>-|11>)/sqrt2,
/// |Phi_3> = (|01>-|10>)/sqrt2, |Phi_4> = (|01>+|10>)/sqrt2.
class BellVector {
 public:
  explicit BellVector(const Vector4c& c, const Tolerances& tol = {});

  const Vector4c& coefficients() const noexcept { return c_; }
  Complex operator[](int j) const { return c_(j); }

 private:
  Vector4c c_;
};

class ProductState {
 public:
  ProductState(const Vector2c& alice, const Vector2c& bob, const Tolerances& tol = {});

  const Vector2c& alice() const noexcept { return alice_; }
  const Vector2c& bob() const noexcept { return bob_; }
  PureState2Q state() const;

 private:
  Vector2c alice_;
  Vector2c bob_;
};

class Priors {
 public:
  Priors(double q1, double q2, const Tolerances& tol = {});
  static Priors equal() { return {0.5, 0.5}; }

  double q1() const noexcept { return q1_; }
  double q2() const noexcept { return q2_; }

 private:
  double q1_;
  double q2_;
};

/// Columns are |Phi_1>..|Phi_4> in the computational basis. Real orthogonal.
const Eigen::Matrix4d& bell_basis();

PureState2Q bell_to_computational(const BellVector& b);
BellVector computational_to_bell(const PureState2Q& s);

/// |-c1^2 + c2^2 - c3^2 + c4^2| over the Bell coefficients. The sign pattern
/// is the sigma_y (x) sigma_y spin flip expressed in the basis above; it
/// equals 2|a00 a11 - a01 a10| and vanishes exactly on product states.
double concurrence(const PureState2Q& s);

/// Rank-1 factorization of the 2x2 amplitude matrix. The Alice factor is
/// phase-normalized so its first nonzero amplitude is real and positive;
/// the tensor product then reproduces `s` itself (no leftover phase).
ProductState factor_product_state(const PureState2Q& s, const Tolerances& tol = {});

/// <s|U|s>
Complex overlap(const TwoQubitUnitary& u, const PureState2Q& s);

/// Helstrom success probability for pure outputs with overlap modulus F:
/// (1 + sqrt(1 - 4 q1 q2 F^2)) / 2.
double success_probability_pure(const Priors& p, double fidelity);

/// Operator-Schmidt factorization U = A (x) B. Returns nullopt when the
/// reconstruction error exceeds `tol`. B is normalized to unit
/// determinant and A carries whatever phase remains.
std::optional<std::pair<SingleQubitUnitary, SingleQubitUnitary>> factor_local_unitary(
    const Matrix4c& u, double tol = 1e-8);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace uni2q

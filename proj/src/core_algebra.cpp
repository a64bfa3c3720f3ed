#include "uni2q/core_algebra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace uni2q {

namespace {

std::string describe(double value) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << value;
  return os.str();
}

}  // namespace

double unitarity_deviation(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  return (gram - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Vector4c kron(const Vector2c& a, const Vector2c& b) {
  Vector4c out;
  out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return out;
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

// ---------------------------------------------------------------------------

SingleQubitUnitary::SingleQubitUnitary(const Matrix2c& m, const Tolerances& tol) : m_(m) {
  const double dev = unitarity_deviation(m);
  if (!(dev <= tol.unitary))
    throw Error(ErrorCode::NotUnitary, "single-qubit matrix deviates from unitarity by " + describe(dev));
}

SingleQubitUnitary SingleQubitUnitary::identity() { return SingleQubitUnitary(Matrix2c::Identity()); }

SingleQubitUnitary SingleQubitUnitary::adjoint() const {
  SingleQubitUnitary u = *this;
  u.m_ = m_.adjoint();
  return u;
}

TwoQubitUnitary::TwoQubitUnitary(const Matrix4c& m, const Tolerances& tol) : m_(m) {
  const double dev = unitarity_deviation(m);
  if (!(dev <= tol.unitary))
    throw Error(ErrorCode::NotUnitary, "matrix deviates from unitarity by " + describe(dev));
  const double det_dev = std::abs(std::abs(m.determinant()) - 1.0);
  if (!(det_dev <= tol.unitary))
    throw Error(ErrorCode::NotUnitary, "|det U| deviates from 1 by " + describe(det_dev));
}

TwoQubitUnitary TwoQubitUnitary::identity() { return TwoQubitUnitary(Matrix4c::Identity(), nullptr); }

TwoQubitUnitary TwoQubitUnitary::local(const SingleQubitUnitary& a, const SingleQubitUnitary& b) {
  return TwoQubitUnitary(kron(a.matrix(), b.matrix()), nullptr);
}

TwoQubitUnitary TwoQubitUnitary::adjoint() const { return TwoQubitUnitary(m_.adjoint(), nullptr); }

TwoQubitUnitary operator*(const TwoQubitUnitary& lhs, const TwoQubitUnitary& rhs) {
  return TwoQubitUnitary(lhs.m_ * rhs.m_, nullptr);
}

PureState2Q::PureState2Q(const Vector4c& amplitudes, const Tolerances& tol) : a_(amplitudes) {
  const double dev = std::abs(amplitudes.norm() - 1.0);
  if (!(dev <= tol.state))
    throw Error(ErrorCode::InvalidState, "state norm deviates from 1 by " + describe(dev));
}

PureState2Q PureState2Q::normalized(const Vector4c& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::InvalidState, "cannot normalize a zero vector");
  return PureState2Q(v / n);
}

BellVector::BellVector(const Vector4c& c, const Tolerances& tol) : c_(c) {
  const double dev = std::abs(c.norm() - 1.0);
  if (!(dev <= tol.state))
    throw Error(ErrorCode::InvalidState, "Bell coefficients norm deviates from 1 by " + describe(dev));
}

ProductState::ProductState(const Vector2c& alice, const Vector2c& bob, const Tolerances& tol)
    : alice_(alice), bob_(bob) {
  const double da = std::abs(alice.norm() - 1.0);
  const double db = std::abs(bob.norm() - 1.0);
  if (!(da <= tol.state) || !(db <= tol.state))
    throw Error(ErrorCode::InvalidState, "product factor not normalized (deviation " + describe(std::max(da, db)) + ")");
}

PureState2Q ProductState::state() const { return PureState2Q(kron(alice_, bob_)); }

Priors::Priors(double q1, double q2, const Tolerances& tol) : q1_(q1), q2_(q2) {
  if (!(q1 >= 0.0) || !(q2 >= 0.0) || !(std::abs(q1 + q2 - 1.0) <= tol.state))
    throw Error(ErrorCode::InvalidArgument, "priors must be nonnegative and sum to 1");
}

// ---------------------------------------------------------------------------

const Eigen::Matrix4d& bell_basis() {
  static const Eigen::Matrix4d basis = [] {
    const double r = std::numbers::sqrt2 / 2.0;
    Eigen::Matrix4d b;
    // columns: Phi_1, Phi_2, Phi_3, Phi_4
    b << r,  r,  0,  0,
         0,  0,  r,  r,
         0,  0, -r,  r,
         r, -r,  0,  0;
    return b;
  }();
  return basis;
}

PureState2Q bell_to_computational(const BellVector& b) {
  return PureState2Q(bell_basis().cast<Complex>() * b.coefficients());
}

BellVector computational_to_bell(const PureState2Q& s) {
  return BellVector(bell_basis().transpose().cast<Complex>() * s.amplitudes());
}

double concurrence(const PureState2Q& s) {
  const Vector4c c = bell_basis().transpose().cast<Complex>() * s.amplitudes();
  const Complex spin_flip = -c(0) * c(0) + c(1) * c(1) - c(2) * c(2) + c(3) * c(3);
  return std::abs(spin_flip);
}

ProductState factor_product_state(const PureState2Q& s, const Tolerances& tol) {
  const double conc = concurrence(s);
  if (conc > tol.product)
    throw Error(ErrorCode::NotAProductState, "concurrence " + describe(conc) + " exceeds product tolerance");

  const Vector4c& a = s.amplitudes();
  Matrix2c amp;
  amp << a(0), a(1), a(2), a(3);
  Eigen::JacobiSVD<Matrix2c> svd(amp, Eigen::ComputeFullU | Eigen::ComputeFullV);

  Vector2c alice = svd.matrixU().col(0);
  Vector2c bob = svd.singularValues()(0) * svd.matrixV().col(0).conjugate();

  const int lead = std::abs(alice(0)) > 1e-8 ? 0 : 1;
  const Complex rot = std::polar(1.0, -std::arg(alice(lead)));
  alice *= rot;
  bob /= rot;
  alice.normalize();
  bob.normalize();

  const double err = (kron(alice, bob) - a).norm();
  if (err > tol.product)
    throw Error(ErrorCode::NotAProductState, "rank-1 reconstruction error " + describe(err));
  return ProductState(alice, bob, tol);
}

Complex overlap(const TwoQubitUnitary& u, const PureState2Q& s) {
  return s.amplitudes().dot(u.matrix() * s.amplitudes());
}

double success_probability_pure(const Priors& p, double fidelity) {
  if (!(fidelity >= -1e-12 && fidelity <= 1.0 + 1e-12))
    throw Error(ErrorCode::InvalidArgument, "fidelity must lie in [0, 1], got " + describe(fidelity));
  const double f = std::clamp(fidelity, 0.0, 1.0);
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * p.q1() * p.q2() * f * f)));
}

std::optional<std::pair<SingleQubitUnitary, SingleQubitUnitary>> factor_local_unitary(const Matrix4c& u,
                                                                                       double tol) {
  // Realign U[(i,k),(j,l)] as R[(i,j),(k,l)]; U = A (x) B iff R = vec(A) vec(B)^T.
  Matrix4c r;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) r(2 * i + j, 2 * k + l) = u(2 * i + k, 2 * j + l);

  Eigen::JacobiSVD<Matrix4c> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s0 = svd.singularValues()(0);
  if (!(s0 > 0.0)) return std::nullopt;

  Matrix2c a, b;
  const Vector4c ua = svd.matrixU().col(0);
  const Vector4c vb = svd.matrixV().col(0).conjugate();
  a << ua(0), ua(1), ua(2), ua(3);
  b << vb(0), vb(1), vb(2), vb(3);
  a *= s0;

  const Complex det_b = b.determinant();
  if (std::abs(det_b) < 1e-12) return std::nullopt;
  const Complex root = std::sqrt(det_b);
  b /= root;
  a *= root;

  if ((kron(a, b) - u).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  try {
    Tolerances loose;
    loose.unitary = std::max(tol, loose.unitary);
    return std::make_pair(SingleQubitUnitary(a, loose), SingleQubitUnitary(b, loose));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace uni2q

#include "uni2q/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace uni2q {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarterPi = kPi / 4.0;
constexpr double kHalfPi = kPi / 2.0;
const Complex kI{0.0, 1.0};

const Matrix2c& pauli(int k) {
  static const std::array<Matrix2c, 3> paulis = [] {
    std::array<Matrix2c, 3> p;
    p[0] << 0, 1, 1, 0;
    p[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    p[2] << 1, 0, 0, -1;
    return p;
  }();
  return paulis[static_cast<std::size_t>(k)];
}

// Single-qubit conjugations exchanging two Pauli axes (with paired signs
// cancelling on the two-qubit terms): S for x<->y, Rx(pi/2) for y<->z,
// H for x<->z.
Matrix2c axis_swapper(int i, int j) {
  const double r = std::numbers::sqrt2 / 2.0;
  Matrix2c c;
  if ((i == 0 && j == 1) || (i == 1 && j == 0)) {
    c << 1, 0, 0, kI;
  } else if ((i == 1 && j == 2) || (i == 2 && j == 1)) {
    c << r, -kI * r, -kI * r, r;
  } else {
    c << r, r, r, -r;
  }
  return c;
}

// Columns: Phi_1, i Phi_2, i Phi_4, Phi_3. Local SU(2)xSU(2) becomes SO(4).
const Matrix4c& magic_basis() {
  static const Matrix4c m = [] {
    const Eigen::Matrix4d& b = bell_basis();
    Matrix4c out;
    out.col(0) = b.col(0).cast<Complex>();
    out.col(1) = kI * b.col(1).cast<Complex>();
    out.col(2) = kI * b.col(3).cast<Complex>();
    out.col(3) = b.col(2).cast<Complex>();
    return out;
  }();
  return m;
}

// Bell index carried by each magic-basis column.
constexpr std::array<int, 4> kMagicToBell = {0, 1, 3, 2};

// Tracks W = L * W[v] * R (up to a global phase) while v is folded.
struct Folder {
  std::array<double, 3> v{};
  Matrix4c* left = nullptr;
  Matrix4c* right = nullptr;

  // v_k -> v_k - n pi/2, compensated by (sigma_k sigma_k)^n on the right.
  void shift(int k, int n) {
    v[static_cast<std::size_t>(k)] -= n * kHalfPi;
    if (right && (n % 2 != 0)) *right = kron(pauli(k), pauli(k)) * *right;
  }

  void swap_axes(int i, int j) {
    std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    if (left) {
      const Matrix2c c = axis_swapper(i, j);
      const Matrix4c cc = kron(c, c);
      *left = *left * cc.adjoint();
      *right = cc * *right;
    }
  }

  // Negates v_i and v_j via conjugation by sigma_k (x) I, k the third axis.
  void flip_pair(int i, int j) {
    v[static_cast<std::size_t>(i)] = -v[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(j)] = -v[static_cast<std::size_t>(j)];
    if (left) {
      const int k = 3 - i - j;
      const Matrix4c p = kron(pauli(k), Matrix2c::Identity());
      *left = *left * p;
      *right = p * *right;
    }
  }

  void canonicalize() {
    // Into (-pi/4, pi/4].
    for (int k = 0; k < 3; ++k) {
      const int n = -static_cast<int>(std::floor((kQuarterPi - v[static_cast<std::size_t>(k)]) / kHalfPi));
      if (n != 0) shift(k, n);
    }
    // Descending by magnitude.
    auto mag = [&](int k) { return std::abs(v[static_cast<std::size_t>(k)]); };
    if (mag(0) < mag(1)) swap_axes(0, 1);
    if (mag(1) < mag(2)) swap_axes(1, 2);
    if (mag(0) < mag(1)) swap_axes(0, 1);
    // Only vz may stay negative.
    if (v[0] < 0.0) flip_pair(0, 2);
    if (v[1] < 0.0) flip_pair(1, 2);
    // On the vx = pi/4 face the sign of vz is a local equivalence.
    if (std::abs(v[0] - kQuarterPi) <= 1e-12 && v[2] < 0.0) {
      flip_pair(0, 2);
      shift(0, -1);
    }
  }
};

Matrix4c interaction_matrix(const EigenphaseQuad& e) {
  const Eigen::Matrix4d& b = bell_basis();
  Matrix4c out = Matrix4c::Zero();
  for (int j = 0; j < 4; ++j) {
    const Vector4c phi = b.col(j).cast<Complex>();
    out += e.point(j) * phi * phi.transpose();
  }
  return out;
}

}  // namespace

bool InteractionVector::in_weyl_chamber(double tol) const {
  if (!(kQuarterPi + tol >= vx && vx + tol >= vy && vy + tol >= std::abs(vz))) return false;
  if (std::abs(vx - kQuarterPi) <= tol && vz < -tol) return false;
  return true;
}

Complex EigenphaseQuad::point(int j) const { return std::polar(1.0, -(*this)[j]); }

EigenphaseQuad eigenphases_from_d(const InteractionVector& d) {
  EigenphaseQuad e;
  e.lambda[0] = wrap_angle(d.vx - d.vy + d.vz);
  e.lambda[1] = wrap_angle(-d.vx + d.vy + d.vz);
  e.lambda[2] = wrap_angle(-d.vx - d.vy - d.vz);
  e.lambda[3] = wrap_angle(d.vx + d.vy - d.vz);
  return e;
}

InteractionVector d_from_eigenphases(const EigenphaseQuad& e, double tol) {
  const double sum = e[0] + e[1] + e[2] + e[3];
  if (!(std::abs(sum) <= tol))
    throw Error(ErrorCode::InconsistentSpectrum,
                "eigenphases must sum to zero, got " + std::to_string(sum));
  return InteractionVector{(e[0] - e[1] - e[2] + e[3]) / 4.0, (-e[0] + e[1] - e[2] + e[3]) / 4.0,
                           (e[0] + e[1] - e[2] - e[3]) / 4.0};
}

TwoQubitUnitary interaction_unitary(const InteractionVector& d) {
  return TwoQubitUnitary(interaction_matrix(eigenphases_from_d(d)));
}

InteractionVector fold_to_chamber(const InteractionVector& d) {
  Folder f;
  f.v = {d.vx, d.vy, d.vz};
  f.canonicalize();
  return {f.v[0], f.v[1], f.v[2]};
}

Matrix4c CanonicalForm::reconstruct() const {
  const Matrix4c core = interaction_unitary(d).matrix();
  return std::polar(1.0, phase) * kron(ua.matrix(), ub.matrix()) * core *
         kron(va.matrix(), vb.matrix()).adjoint();
}

CanonicalForm canonical_decompose(const TwoQubitUnitary& w, const Tolerances& tol) {
  const Matrix4c& u = w.matrix();
  const Matrix4c& mb = magic_basis();

  const Complex det = u.determinant();
  const Matrix4c special = u * std::polar(1.0, -std::arg(det) / 4.0);
  const Matrix4c um = mb.adjoint() * special * mb;
  const Matrix4c sym = um.transpose() * um;

  // sym is complex symmetric and unitary: its real and imaginary parts are
  // commuting real symmetric matrices, so a generic real combination of the
  // two has a real orthogonal eigenbasis diagonalizing sym. Seed 0 keeps the
  // choice of basis inside degenerate eigenspaces reproducible.
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Eigen::Matrix4d basis;
  Vector4c diag;
  bool found = false;
  for (int attempt = 0; attempt < 32 && !found; ++attempt) {
    const double a = coeff(rng);
    const double b = coeff(rng);
    const Eigen::Matrix4d mix = a * sym.real() + b * sym.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(0.5 * (mix + mix.transpose()));
    basis = solver.eigenvectors();
    const Matrix4c rotated = basis.transpose().cast<Complex>() * sym * basis.cast<Complex>();
    diag = rotated.diagonal();
    const double off = (rotated - Matrix4c(diag.asDiagonal())).cwiseAbs().maxCoeff();
    found = off <= 1e-9;
  }
  if (!found) throw Error(ErrorCode::DecompositionFailed, "could not diagonalize U^T U in the magic basis");
  if (basis.determinant() < 0.0) basis.col(0) = -basis.col(0);

  std::array<double, 4> theta{};
  for (int k = 0; k < 4; ++k) theta[static_cast<std::size_t>(k)] = std::arg(diag(k)) / 2.0;
  Complex det_d = 1.0;
  for (double t : theta) det_d *= std::polar(1.0, t);
  if (det_d.real() < 0.0) theta[0] += kPi;

  Vector4c inv_d;
  for (int k = 0; k < 4; ++k) inv_d(k) = std::polar(1.0, -theta[static_cast<std::size_t>(k)]);
  const Matrix4c o1c = um * basis.cast<Complex>() * inv_d.asDiagonal();
  if (o1c.imag().cwiseAbs().maxCoeff() > 1e-7)
    throw Error(ErrorCode::DecompositionFailed, "left factor is not real orthogonal");
  const Eigen::Matrix4d o1 = o1c.real();

  Matrix4c left = mb * o1.cast<Complex>() * mb.adjoint();
  Matrix4c right = mb * basis.transpose().cast<Complex>() * mb.adjoint();

  EigenphaseQuad raw;
  for (int k = 0; k < 4; ++k)
    raw.lambda[static_cast<std::size_t>(kMagicToBell[static_cast<std::size_t>(k)])] =
        -theta[static_cast<std::size_t>(k)];
  const double mean = (raw[0] + raw[1] + raw[2] + raw[3]) / 4.0;
  for (double& l : raw.lambda) l -= mean;

  Folder folder;
  const InteractionVector d0 = d_from_eigenphases(raw, 1e-9);
  folder.v = {d0.vx, d0.vy, d0.vz};
  folder.left = &left;
  folder.right = &right;
  folder.canonicalize();
  const InteractionVector d{folder.v[0], folder.v[1], folder.v[2]};

  const auto lf = factor_local_unitary(left, 1e-7);
  const auto rf = factor_local_unitary(right.adjoint(), 1e-7);
  if (!lf || !rf) throw Error(ErrorCode::DecompositionFailed, "local factors are not tensor products");

  CanonicalForm form{lf->first, lf->second, rf->first, rf->second, d, 0.0};
  const Matrix4c unphased = form.reconstruct();
  form.phase = std::arg(unphased.conjugate().cwiseProduct(u).sum());
  const double err = (form.reconstruct() - u).cwiseAbs().maxCoeff();
  if (!(err <= tol.reconstruct))
    throw Error(ErrorCode::DecompositionFailed, "reconstruction error " + std::to_string(err));
  return form;
}

Matrix4c bell_representation(const Matrix4c& w) {
  const Eigen::Matrix4cd b = bell_basis().cast<Complex>();
  return b.transpose() * w * b;
}

bool is_diagonal_form(const TwoQubitUnitary& w, double tol) {
  Matrix4c rep = bell_representation(w.matrix());
  rep.diagonal().setZero();
  return rep.cwiseAbs().maxCoeff() <= tol;
}

EigenphaseQuad bell_eigenphases(const TwoQubitUnitary& w, double tol) {
  if (!is_diagonal_form(w, tol))
    throw Error(ErrorCode::NonDiagonalProduct, "unitary is not diagonal in the Bell basis");
  const Matrix4c rep = bell_representation(w.matrix());
  EigenphaseQuad e;
  for (int j = 0; j < 4; ++j) e.lambda[static_cast<std::size_t>(j)] = wrap_angle(-std::arg(rep(j, j)));
  return e;
}

}  // namespace uni2q

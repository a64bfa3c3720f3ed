#pragma once

// Reference constructions shared by the test programs. Nothing here calls
// into the library's geometry, so results computed with these helpers are
// independent checks.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "uni2q/canonical.hpp"

namespace testsupport {

using uni2q::Complex;
using uni2q::Matrix2c;
using uni2q::Matrix4c;
using uni2q::Vector4c;

inline constexpr double kPi = std::numbers::pi;

inline Matrix2c pauli(char which) {
  const Complex i(0.0, 1.0);
  Matrix2c m;
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -i, i, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

/// exp(-i (vx XX + vy YY + vz ZZ)) straight from the Pauli matrices.
inline Matrix4c interaction_by_exponential(double vx, double vy, double vz) {
  using uni2q::kron;
  const Matrix4c h = vx * kron(pauli('x'), pauli('x')) + vy * kron(pauli('y'), pauli('y')) +
                     vz * kron(pauli('z'), pauli('z'));
  const Matrix4c a = Complex(0.0, -1.0) * h;
  return a.exp();
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal divided out.
template <int N>
Eigen::Matrix<Complex, N, N> haar(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix<Complex, N, N> z;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) z(r, c) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::Matrix<Complex, N, N>> qr(z);
  Eigen::Matrix<Complex, N, N> q = qr.householderQ();
  const Eigen::Matrix<Complex, N, N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int k = 0; k < N; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

inline uni2q::TwoQubitUnitary haar4(std::mt19937_64& rng) { return uni2q::TwoQubitUnitary(haar<4>(rng)); }
inline uni2q::SingleQubitUnitary haar2(std::mt19937_64& rng) { return uni2q::SingleQubitUnitary(haar<2>(rng)); }

/// Uniform over pi/4 >= vx >= vy >= |vz| by rejection from the bounding box.
inline uni2q::InteractionVector random_chamber_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kPi / 4.0);
  std::uniform_real_distribution<double> s(-kPi / 4.0, kPi / 4.0);
  while (true) {
    const double vx = u(rng), vy = u(rng), vz = s(rng);
    if (vx >= vy && vy >= std::abs(vz)) return {vx, vy, vz};
  }
}

inline Vector4c random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector4c v;
  for (int k = 0; k < 4; ++k) v(k) = Complex(g(rng), g(rng));
  return v.normalized();
}

/// Distance from the origin to the convex hull of points on the unit circle,
/// from the angular spread alone: cos(spread / 2) when every point fits in
/// an open half circle, zero otherwise.
inline double circle_hull_distance(std::vector<double> angles) {
  for (double& a : angles) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
  }
  std::sort(angles.begin(), angles.end());
  double gap = 2.0 * kPi - (angles.back() - angles.front());
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  const double spread = 2.0 * kPi - gap;
  return spread >= kPi ? 0.0 : std::cos(spread / 2.0);
}

inline double max_abs_diff(const Matrix4c& a, const Matrix4c& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testsupport

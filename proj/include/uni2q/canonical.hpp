#pragma once

#include <array>

#include "uni2q/core_algebra.hpp"

namespace uni2q {

/// Interaction coefficients of exp(-i (vx XX + vy YY + vz ZZ)).
struct InteractionVector {
  double vx = 0.0;
  double vy = 0.0;
  double vz = 0.0;

  /// pi/4 >= vx >= vy >= |vz|, with vz >= 0 whenever vx = pi/4.
  bool in_weyl_chamber(double tol = 1e-12) const;
};

/// Phases lambda_j of the Bell-basis eigenvalues exp(-i lambda_j), in Bell
/// order (Phi_1..Phi_4), each in (-pi, pi].
struct EigenphaseQuad {
  std::array<double, 4> lambda{};

  double operator[](int j) const { return lambda[static_cast<std::size_t>(j)]; }
  /// exp(-i lambda_j)
  Complex point(int j) const;
};

/// W = exp(i phase) (ua (x) ub) W[d] (va (x) vb)^dagger.
///
/// Local factors are normalized so that ub and vb have unit determinant;
/// ua and va may carry a sign. Only the reconstruction is guaranteed, not
/// uniqueness of the local parts.
struct CanonicalForm {
  SingleQubitUnitary ua;
  SingleQubitUnitary ub;
  SingleQubitUnitary va;
  SingleQubitUnitary vb;
  InteractionVector d;
  double phase = 0.0;

  Matrix4c reconstruct() const;
};

EigenphaseQuad eigenphases_from_d(const InteractionVector& d);

/// Inverse of eigenphases_from_d on quads whose phases sum to zero.
/// Throws InconsistentSpectrum when |sum lambda_j| > tol.
InteractionVector d_from_eigenphases(const EigenphaseQuad& e, double tol = 1e-10);

/// sum_j exp(-i lambda_j) |Phi_j><Phi_j|.
TwoQubitUnitary interaction_unitary(const InteractionVector& d);

/// Folds any interaction vector into the Weyl chamber using the local
/// equivalences (shifts by pi/2, coordinate permutations, paired sign flips).
InteractionVector fold_to_chamber(const InteractionVector& d);

CanonicalForm canonical_decompose(const TwoQubitUnitary& w, const Tolerances& tol = {});

/// B^T W B, i.e. W expressed in the Bell basis.
Matrix4c bell_representation(const Matrix4c& w);

bool is_diagonal_form(const TwoQubitUnitary& w, double tol);

/// Eigenphases read off the Bell-basis diagonal. Throws NonDiagonalProduct
/// if any off-diagonal Bell entry exceeds tol.
EigenphaseQuad bell_eigenphases(const TwoQubitUnitary& w, double tol);

}  // namespace uni2q

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uni2q/hull.hpp"
#include "uni2q/oracle.hpp"

namespace uni2q {

/// How a fidelity value was obtained.
enum class Method {
  Geometric,     // Bell-diagonal product, hull geometry
  Spectral,      // generic unitary, hull of its eigenvalues (numerical range)
  LocalUnitary,  // product of single-qubit unitaries, factorized chord distances
  Oracle,        // brute-force search
};

std::string_view method_name(Method m);

struct DiscriminationOptions {
  bool strict_diagonal = false;
  Tolerances tol;
  OracleConfig oracle;
};

struct GlobalFidelity {
  double value = 1.0;
  PureState2Q witness;
  Method method = Method::Geometric;
};

struct LocalFidelity {
  double value = 1.0;
  ProductState witness;
  Method method = Method::Geometric;
};

/// min over all pure inputs of |<psi|U1^dagger U2|psi>|.
///
/// For Bell-diagonal products this is the distance from the origin to the
/// spectrum hull. Other products are still normal matrices, so the same
/// distance over their eigenvalues (from a Schur decomposition) is exact;
/// strict mode rejects them with NonDiagonalProduct instead.
GlobalFidelity fidelity_global(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2,
                               const DiscriminationOptions& opts = {});

/// min over product inputs. Bell-diagonal products use the local hull,
/// which is exact when it reaches the global value (always the case for
/// Weyl-ordered spectra) and is otherwise refined by the oracle. A product
/// that factors into single-qubit unitaries uses the factorized chord
/// distances; anything else goes to the product-state oracle.
LocalFidelity fidelity_local(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2,
                             const DiscriminationOptions& opts = {});

/// sqrt(1 - 4 q1 q2 F^2)
double distinguishability(const Priors& p, double fidelity);

/// Distance from the origin to the chord between the two eigenvalues of `u`,
/// with the single-qubit state attaining it.
struct SingleQubitMinimum {
  double value = 1.0;
  Vector2c state;
};
SingleQubitMinimum single_qubit_fidelity(const SingleQubitUnitary& u);

LocalFidelity local_unitary_fidelity(const SingleQubitUnitary& ua, const SingleQubitUnitary& ub);

/// Eigenphases lambda_k (eigenvalues exp(-i lambda_k)) of a unitary, with
/// orthonormal eigenvectors from a complex Schur decomposition.
struct Spectrum {
  EigenphaseQuad phases;
  Matrix4c vectors;
};
Spectrum unitary_spectrum(const TwoQubitUnitary& u);

/// Whether the spectrum of U^{(x)N} (all N-fold sums of the given phases)
/// has the origin in its convex hull.
bool tensor_power_contains_origin(const EigenphaseQuad& e, int n, double tol = 1e-9);

constexpr int kMaxRepetitions = 1'000'000;

/// Smallest N with the origin in the hull of the spectrum of
/// (U1^dagger U2)^{(x)N}. Throws IdenticalUnitaries for a single-point
/// spectrum and RepetitionLimit beyond kMaxRepetitions.
int min_repetitions_for_perfect(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2, const Tolerances& tol = {});

struct DiscriminationReport {
  Priors priors = Priors::equal();
  TwoQubitUnitary product_unitary = TwoQubitUnitary::identity();
  bool diagonal_form = false;
  /// Bell order when diagonal_form, Schur order otherwise.
  EigenphaseQuad eigenphases;
  HullAnalysis hull;
  double f_global = 1.0;
  double f_local = 1.0;
  double d_global = 0.0;
  double d_local = 0.0;
  double p_success_global = 0.5;
  double p_success_local = 0.5;
  PureState2Q optimal_input_global = PureState2Q(Vector4c(1, 0, 0, 0));
  std::optional<ProductState> optimal_input_local;
  bool perfect_global = false;
  bool perfect_local = false;
  std::optional<int> min_repetitions;
  Method method_global = Method::Geometric;
  Method method_local = Method::Geometric;
  std::vector<std::string> notes;
};

DiscriminationReport full_report(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2, const Priors& priors,
                                 const DiscriminationOptions& opts = {});

}  // namespace uni2q

#pragma once

#include <cstdint>

#include "uni2q/core_algebra.hpp"

namespace uni2q {

struct OracleConfig {
  std::uint64_t seed = 42;
  int coarse_samples = 20000;
  int refine_iterations = 60;  // number of step contractions
  double refine_shrink = 0.5;
  double tol = 1e-6;
  int restarts = 32;
  int shards = 8;  // fixed so results do not depend on the thread count
};

template <typename State>
struct OracleResult {
  double value = 0.0;
  State argmin;
  long evaluations = 0;
  bool converged = false;
  double best_coarse = 0.0;
};

/// min over pure states of |<psi|U|psi>|: seeded Gaussian sampling of
/// unnormalized 4-vectors, then pattern search on the 8 real coordinates.
OracleResult<PureState2Q> brute_fidelity_global(const TwoQubitUnitary& u, const OracleConfig& cfg = {});

/// Same scheme restricted to product states, charted by two Bloch-sphere
/// angle pairs (theta_A, phi_A, theta_B, phi_B).
OracleResult<ProductState> brute_fidelity_product(const TwoQubitUnitary& u, const OracleConfig& cfg = {});

/// Helstrom success probability for the pure pair, computed from the
/// eigenvalues of q1|s1><s1| - q2|s2><s2| and checked against the closed
/// form sqrt(1 - 4 q1 q2 |<s1|s2>|^2). Throws DisagreementError when the two
/// routes differ by more than 1e-8.
double brute_helstrom(const Priors& p, const PureState2Q& s1, const PureState2Q& s2);

}  // namespace uni2q

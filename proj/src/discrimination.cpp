#include "uni2q/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

namespace uni2q {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TwoQubitUnitary relative(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2) { return u1.adjoint() * u2; }

PureState2Q state_from_weights(const WeightVector& w, const Matrix4c& basis) {
  Vector4c v = Vector4c::Zero();
  for (int k = 0; k < 4; ++k) v += std::sqrt(std::max(0.0, w[k])) * basis.col(k);
  return PureState2Q::normalized(v);
}

// Length of the shortest arc holding every point exp(-i lambda_k).
double spectral_spread(std::span<const double> phases) {
  std::vector<double> angles;
  for (double l : phases) {
    double a = std::fmod(-l, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  double max_gap = kTwoPi - (angles.back() - angles.front());
  for (std::size_t i = 1; i < angles.size(); ++i) max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  return kTwoPi - max_gap;
}

EigenphaseQuad product_phases(const TwoQubitUnitary& p, const Tolerances& tol) {
  if (is_diagonal_form(p, tol.geom)) return bell_eigenphases(p, tol.geom);
  return unitary_spectrum(p).phases;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Geometric: return "geometric";
    case Method::Spectral: return "spectral";
    case Method::LocalUnitary: return "local_unitary";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

Spectrum unitary_spectrum(const TwoQubitUnitary& u) {
  Eigen::ComplexSchur<Matrix4c> schur(u.matrix());
  Spectrum s;
  for (int k = 0; k < 4; ++k)
    s.phases.lambda[static_cast<std::size_t>(k)] = wrap_angle(-std::arg(schur.matrixT()(k, k)));
  s.vectors = schur.matrixU();
  return s;
}

GlobalFidelity fidelity_global(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2, const DiscriminationOptions& opts) {
  const TwoQubitUnitary p = relative(u1, u2);
  const double tol = opts.tol.geom;

  EigenphaseQuad e;
  Matrix4c basis;
  Method method = Method::Geometric;
  if (is_diagonal_form(p, tol)) {
    e = bell_eigenphases(p, tol);
    basis = bell_basis().cast<Complex>();
  } else {
    if (opts.strict_diagonal)
      throw Error(ErrorCode::NonDiagonalProduct, "U1^dagger U2 is not diagonal in the Bell basis");
    const Spectrum s = unitary_spectrum(p);
    e = s.phases;
    basis = s.vectors;
    method = Method::Spectral;
  }

  const Nearest n = distance_to_origin(global_hull(e, tol), tol);
  const WeightVector w = witness_weights(e, n.point, false, tol);
  return {std::clamp(n.distance, 0.0, 1.0), state_from_weights(w, basis), method};
}

SingleQubitMinimum single_qubit_fidelity(const SingleQubitUnitary& u) {
  Eigen::ComplexSchur<Matrix2c> schur(u.matrix());
  const Complex t0 = schur.matrixT()(0, 0);
  const Complex t1 = schur.matrixT()(1, 1);
  const Complex edge = t1 - t0;
  double s = 0.0;
  if (std::norm(edge) > 0.0)
    s = std::clamp(-(t0.real() * edge.real() + t0.imag() * edge.imag()) / std::norm(edge), 0.0, 1.0);
  const Vector2c psi = std::sqrt(1.0 - s) * schur.matrixU().col(0) + std::sqrt(s) * schur.matrixU().col(1);
  return {std::abs(t0 + s * edge), psi.normalized()};
}

LocalFidelity local_unitary_fidelity(const SingleQubitUnitary& ua, const SingleQubitUnitary& ub) {
  const SingleQubitMinimum a = single_qubit_fidelity(ua);
  const SingleQubitMinimum b = single_qubit_fidelity(ub);
  return {std::clamp(a.value * b.value, 0.0, 1.0), ProductState(a.state, b.state), Method::LocalUnitary};
}

LocalFidelity fidelity_local(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2, const DiscriminationOptions& opts) {
  const TwoQubitUnitary p = relative(u1, u2);
  const double tol = opts.tol.geom;

  if (is_diagonal_form(p, tol)) {
    const EigenphaseQuad e = bell_eigenphases(p, tol);
    const Nearest n = distance_to_origin(local_hull(e, tol), tol);
    const WeightVector w = witness_weights(e, n.point, true, tol);
    // Real nonnegative coefficients with w1 + w3 = w2 + w4 give zero concurrence.
    Vector4c c;
    for (int j = 0; j < 4; ++j) c(j) = std::sqrt(std::max(0.0, w[j]));
    const PureState2Q psi = bell_to_computational(BellVector(c / c.norm()));
    LocalFidelity chart{std::clamp(n.distance, 0.0, 1.0), factor_product_state(psi, opts.tol), Method::Geometric};

    // The chart only covers real Bell coefficients. It is exact whenever it
    // meets the global bound, which always happens for Weyl-ordered spectra;
    // otherwise complex product states may do better, so ask the oracle.
    const double global = distance_to_origin(global_hull(e, tol), tol).distance;
    if (chart.value - global <= tol) return chart;
    const OracleResult<ProductState> r = brute_fidelity_product(p, opts.oracle);
    if (r.value < chart.value) return {std::clamp(r.value, 0.0, 1.0), r.argmin, Method::Oracle};
    chart.method = Method::Oracle;
    return chart;
  }
  if (opts.strict_diagonal)
    throw Error(ErrorCode::NonDiagonalProduct, "U1^dagger U2 is not diagonal in the Bell basis");

  if (const auto factors = factor_local_unitary(p.matrix(), opts.tol.product))
    return local_unitary_fidelity(factors->first, factors->second);

  const OracleResult<ProductState> r = brute_fidelity_product(p, opts.oracle);
  return {std::clamp(r.value, 0.0, 1.0), r.argmin, Method::Oracle};
}

double distinguishability(const Priors& p, double fidelity) {
  if (!(fidelity >= -1e-12 && fidelity <= 1.0 + 1e-12))
    throw Error(ErrorCode::InvalidArgument, "fidelity must lie in [0, 1]");
  const double f = std::clamp(fidelity, 0.0, 1.0);
  return std::sqrt(std::max(0.0, 1.0 - 4.0 * p.q1() * p.q2() * f * f));
}

bool tensor_power_contains_origin(const EigenphaseQuad& e, int n, double tol) {
  std::vector<double> angles;
  if (n <= 40) {
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b)
        for (int c = 0; a + b + c <= n; ++c) {
          const int d = n - a - b - c;
          angles.push_back(a * e[0] + b * e[1] + c * e[2] + d * e[3]);
        }
  } else {
    // Chains (n-k) lambda_a + k lambda_b already span the full angular
    // extent of the tensor-power spectrum with gaps no wider than the
    // spectral spread, so their hull decides containment.
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b)
        for (int k = 0; k <= n; ++k) angles.push_back((n - k) * e[a] + k * e[b]);
  }
  for (double& a : angles) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(), [](double x, double y) { return y - x <= 1e-12; }),
               angles.end());
  std::vector<Complex> pts;
  pts.reserve(angles.size());
  for (double a : angles) pts.push_back(std::polar(1.0, -a));
  return contains_origin(convex_hull(pts, tol), tol);
}

int min_repetitions_for_perfect(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2, const Tolerances& tol) {
  const EigenphaseQuad e = product_phases(relative(u1, u2), tol);
  const double spread = spectral_spread(e.lambda);
  if (spread <= tol.geom)
    throw Error(ErrorCode::IdenticalUnitaries, "U1^dagger U2 is proportional to the identity");

  const double estimate = spread >= std::numbers::pi ? 1.0 : std::ceil(std::numbers::pi / spread - 1e-9);
  if (estimate > kMaxRepetitions)
    throw Error(ErrorCode::RepetitionLimit, "more than " + std::to_string(kMaxRepetitions) + " repetitions needed");

  // The estimate only seeds the search; hull containment decides.
  int n = std::max(1, static_cast<int>(estimate));
  while (!tensor_power_contains_origin(e, n, tol.geom)) {
    if (++n > kMaxRepetitions)
      throw Error(ErrorCode::RepetitionLimit, "more than " + std::to_string(kMaxRepetitions) + " repetitions needed");
  }
  while (n > 1 && tensor_power_contains_origin(e, n - 1, tol.geom)) --n;
  return n;
}

DiscriminationReport full_report(const TwoQubitUnitary& u1, const TwoQubitUnitary& u2, const Priors& priors,
                                 const DiscriminationOptions& opts) {
  DiscriminationReport r;
  r.priors = priors;
  r.product_unitary = relative(u1, u2);
  r.diagonal_form = is_diagonal_form(r.product_unitary, opts.tol.geom);
  if (!r.diagonal_form && opts.strict_diagonal)
    throw Error(ErrorCode::NonDiagonalProduct, "U1^dagger U2 is not diagonal in the Bell basis");

  r.eigenphases = product_phases(r.product_unitary, opts.tol);
  r.hull = analyze(r.eigenphases, opts.tol);

  const GlobalFidelity g = fidelity_global(u1, u2, opts);
  const LocalFidelity l = fidelity_local(u1, u2, opts);
  r.f_global = g.value;
  r.f_local = l.value;
  r.method_global = g.method;
  r.method_local = l.method;
  r.optimal_input_global = g.witness;
  r.optimal_input_local = l.witness;

  r.d_global = distinguishability(priors, r.f_global);
  r.d_local = distinguishability(priors, r.f_local);
  r.p_success_global = success_probability_pure(priors, r.f_global);
  r.p_success_local = success_probability_pure(priors, r.f_local);

  auto perfect_tol = [&](Method m) { return m == Method::Oracle ? opts.oracle.tol : opts.tol.geom; };
  r.perfect_global = r.f_global <= perfect_tol(r.method_global);
  r.perfect_local = r.f_local <= perfect_tol(r.method_local);

  try {
    r.min_repetitions = min_repetitions_for_perfect(u1, u2, opts.tol);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::IdenticalUnitaries)
      r.notes.emplace_back("identical up to phase: no repetition count makes the outputs orthogonal");
    else if (err.code() == ErrorCode::RepetitionLimit)
      r.notes.emplace_back("repetition count exceeds the search cap");
    else
      throw;
  }

  if (!r.diagonal_form)
    r.notes.emplace_back("U1^dagger U2 is not Bell-diagonal: global value from its eigenvalue hull, local value via " +
                         std::string(method_name(r.method_local)));
  if (r.diagonal_form && r.method_local == Method::Oracle)
    r.notes.emplace_back("Bell spectrum is not Weyl-ordered: the real-coefficient product hull is only an upper bound, "
                         "local value from the oracle");
  if (std::abs(priors.q1() - priors.q2()) > opts.tol.state)
    r.notes.emplace_back("optimal inputs are computed independently of the priors");
  return r;
}

}  // namespace uni2q

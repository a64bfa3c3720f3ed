#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uni2q/canonical.hpp"

namespace uni2q {

/// One way of describing a two-qubit unitary in an input file.
struct GateSpec {
  enum class Kind { Named, Matrix, Interaction };

  Kind kind = Kind::Named;
  std::string name = "IDENTITY";
  std::vector<double> params;
  std::optional<Matrix4c> matrix;
  std::optional<InteractionVector> d;

  static GateSpec named(std::string name, std::vector<double> params = {});
  static GateSpec from_matrix(const Matrix4c& m);
  static GateSpec interaction(const InteractionVector& d);
};

/// Names understood by named_gate, with their parameter counts:
/// IDENTITY, CNOT, CZ, SWAP, ISWAP, SQRT_SWAP (none), XX(theta) and
/// CPHASE(theta) (one), LOCALPHASE(theta_a, theta_b) (two).
///
/// XX(theta) = exp(-i theta X(x)X); CPHASE(theta) = diag(1, 1, 1, e^{i theta});
/// LOCALPHASE(a, b) = diag(1, e^{ia}) (x) diag(1, e^{ib}). CNOT is controlled
/// on the first qubit.
TwoQubitUnitary named_gate(std::string_view name, const std::vector<double>& params = {});

/// Splits "XX(0.3)" into {"XX", {0.3}}. Names without parentheses come back
/// with no parameters. Throws InvalidArgument on malformed text.
std::pair<std::string, std::vector<double>> parse_gate_name(std::string_view text);

std::size_t gate_param_count(std::string_view name);

TwoQubitUnitary to_unitary(const GateSpec& g, const Tolerances& tol = {});

}  // namespace uni2q

#include "uni2q/gates.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

namespace uni2q {

namespace {

const std::map<std::string, std::size_t, std::less<>>& arity() {
  static const std::map<std::string, std::size_t, std::less<>> table{
      {"IDENTITY", 0}, {"CNOT", 0},   {"CZ", 0},     {"SWAP", 0},       {"ISWAP", 0},
      {"SQRT_SWAP", 0}, {"XX", 1},    {"CPHASE", 1}, {"LOCALPHASE", 2},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Matrix2c phase_gate(double theta) {
  Matrix2c m = Matrix2c::Identity();
  m(1, 1) = std::polar(1.0, theta);
  return m;
}

}  // namespace

GateSpec GateSpec::named(std::string name, std::vector<double> params) {
  GateSpec g;
  g.kind = Kind::Named;
  g.name = std::move(name);
  g.params = std::move(params);
  return g;
}

GateSpec GateSpec::from_matrix(const Matrix4c& m) {
  GateSpec g;
  g.kind = Kind::Matrix;
  g.name.clear();
  g.matrix = m;
  return g;
}

GateSpec GateSpec::interaction(const InteractionVector& d) {
  GateSpec g;
  g.kind = Kind::Interaction;
  g.name.clear();
  g.d = d;
  return g;
}

std::size_t gate_param_count(std::string_view name) {
  const auto it = arity().find(name);
  if (it == arity().end()) throw Error(ErrorCode::InvalidArgument, "unknown gate '" + std::string(name) + "'");
  return it->second;
}

std::pair<std::string, std::vector<double>> parse_gate_name(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos) return {std::string(text), {}};
  if (text.back() != ')') throw Error(ErrorCode::InvalidArgument, "unbalanced parentheses in '" + std::string(text) + "'");

  std::pair<std::string, std::vector<double>> out{std::string(trim(text.substr(0, open))), {}};
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  if (trim(args).empty()) return out;
  while (true) {
    const auto comma = args.find(',');
    const std::string_view tok = trim(args.substr(0, comma));
    double v = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size() || !std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument, "bad gate parameter '" + std::string(tok) + "'");
    out.second.push_back(v);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return out;
}

TwoQubitUnitary named_gate(std::string_view name, const std::vector<double>& params) {
  const std::size_t n = gate_param_count(name);
  if (params.size() != n)
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " takes " + std::to_string(n) + " parameter(s), got " +
                                                std::to_string(params.size()));
  const Complex i(0.0, 1.0);
  Matrix4c m = Matrix4c::Identity();
  if (name == "IDENTITY") {
  } else if (name == "CNOT") {
    m(2, 2) = m(3, 3) = 0.0;
    m(2, 3) = m(3, 2) = 1.0;
  } else if (name == "CZ") {
    m(3, 3) = -1.0;
  } else if (name == "SWAP") {
    m(1, 1) = m(2, 2) = 0.0;
    m(1, 2) = m(2, 1) = 1.0;
  } else if (name == "ISWAP") {
    m(1, 1) = m(2, 2) = 0.0;
    m(1, 2) = m(2, 1) = i;
  } else if (name == "SQRT_SWAP") {
    m(1, 1) = m(2, 2) = (1.0 + i) / 2.0;
    m(1, 2) = m(2, 1) = (1.0 - i) / 2.0;
  } else if (name == "XX") {
    const double t = params[0];
    Matrix2c x;
    x << 0, 1, 1, 0;
    m = std::cos(t) * Matrix4c::Identity() - i * std::sin(t) * kron(x, x);
  } else if (name == "CPHASE") {
    m(3, 3) = std::polar(1.0, params[0]);
  } else if (name == "LOCALPHASE") {
    m = kron(phase_gate(params[0]), phase_gate(params[1]));
  }
  return TwoQubitUnitary(m);
}

TwoQubitUnitary to_unitary(const GateSpec& g, const Tolerances& tol) {
  switch (g.kind) {
    case GateSpec::Kind::Named: return named_gate(g.name, g.params);
    case GateSpec::Kind::Matrix:
      if (!g.matrix) throw Error(ErrorCode::InvalidArgument, "matrix gate without entries");
      return TwoQubitUnitary(*g.matrix, tol);
    case GateSpec::Kind::Interaction:
      if (!g.d) throw Error(ErrorCode::InvalidArgument, "interaction gate without coefficients");
      return interaction_unitary(*g.d);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gate kind");
}

}  // namespace uni2q

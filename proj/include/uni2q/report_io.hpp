#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "uni2q/discrimination.hpp"
#include "uni2q/gates.hpp"

namespace uni2q {

struct OutputPaths {
  std::optional<std::string> report;
  std::optional<std::string> svg;
  std::optional<std::string> csv;
};

struct RunConfig {
  GateSpec u1;
  GateSpec u2;
  Priors priors = Priors::equal();
  OracleConfig oracle;
  bool strict_diagonal = false;
  Tolerances tol;
  OutputPaths outputs;

  DiscriminationOptions options() const { return {strict_diagonal, tol, oracle}; }
};

/// Input documents look like
///
///   {"u1": {"name": "IDENTITY"},
///    "u2": {"interaction": [0.785398, 0, 0]},
///    "priors": {"q1": 0.5, "q2": 0.5},
///    "oracle": {"seed": 42, "coarse_samples": 20000},
///    "strict_diagonal": false}
///
/// A gate is exactly one of {"name": "XX(0.3)"} (optionally with "params"),
/// {"matrix": 4x4 row-major of [re, im]} or {"interaction": [vx, vy, vz]}.
/// Errors name the offending field, e.g. "SchemaError: priors.q1: ...".
/// Matrices are checked for unitarity here, so NotUnitary surfaces early.
RunConfig parse_input(std::string_view document);
RunConfig load_input(const std::filesystem::path& path);

nlohmann::ordered_json to_json(Complex z);
nlohmann::ordered_json to_json(const Matrix4c& m);
nlohmann::ordered_json to_json(const CanonicalForm& c);
nlohmann::ordered_json report_to_json(const DiscriminationReport& r);

/// Inverse of report_to_json. Numbers survive the round trip exactly.
DiscriminationReport report_from_json(const nlohmann::json& j);

/// Twelve significant digits, '.' as the decimal point whatever the locale.
std::string format_number(double v);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never see a partial file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace uni2q

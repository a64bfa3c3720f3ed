#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uni2q/report_io.hpp"

namespace uni2q {

/// Everything the command-line front end can pass to a subcommand.
struct CommandOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> svg;
  bool strict_diagonal = false;
  std::optional<std::uint64_t> seed;
  std::string axis;
  std::string grid;
};

/// --seed beats UNI2Q_SEED, which beats the config file.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env, std::uint64_t configured);

/// "start:stop:count", count points with both ends included. A count of
/// zero gives an empty grid. Throws InvalidSweep.
std::vector<double> parse_grid(std::string_view text);

DiscriminationReport analyze_config(const RunConfig& cfg);

/// Axis vx, vy or vz varies a coefficient of u2, which must be given as an
/// interaction; each point is folded into the Weyl chamber first. Axis
/// theta or theta_b varies the first or second angle of a named u2.
std::string sweep_csv(const RunConfig& cfg, std::string_view axis, const std::vector<double>& grid);

/// Geometric values next to the brute-force oracle, with a verdict.
nlohmann::ordered_json verify_json(const RunConfig& cfg);

nlohmann::ordered_json decompose_json(const RunConfig& cfg);

/// Exit codes: 0 success, 2 NonDiagonalProduct under strict mode, 1 any
/// other failure. Errors go to `err` as a one-line JSON object.
int run_analyze(const CommandOptions& opts, std::ostream& err);
int run_sweep(const CommandOptions& opts, std::ostream& err);
int run_verify(const CommandOptions& opts, std::ostream& err);
int run_decompose(const CommandOptions& opts, std::ostream& err);

}  // namespace uni2q

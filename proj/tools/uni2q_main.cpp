#include <iostream>

#include <CLI11.hpp>

#include "uni2q/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Discrimination of two-qubit unitaries: global vs product-state inputs"};
  app.require_subcommand(1);

  uni2q::CommandOptions opts;
  std::uint64_t seed = 0;
  auto input = [&](CLI::App* sub) {
    sub->add_option("--input", opts.input, "JSON run configuration")->required()->check(CLI::ExistingFile);
  };
  auto out = [&](CLI::App* sub, const char* what) {
    sub->add_option_function<std::string>("--out", [&](const std::string& p) { opts.out = p; }, what);
  };

  auto* analyze = app.add_subcommand("analyze", "Full discrimination report");
  input(analyze);
  out(analyze, "report JSON path");
  analyze->add_option_function<std::string>("--svg", [&](const std::string& p) { opts.svg = p; }, "hull figure path");
  analyze->add_flag("--strict-diagonal", opts.strict_diagonal, "reject products that are not Bell-diagonal");
  auto* analyze_seed = analyze->add_option("--seed", seed, "oracle seed");

  auto* sweep = app.add_subcommand("sweep", "Tabulate the report along one parameter");
  input(sweep);
  out(sweep, "CSV path");
  sweep->add_option("--axis", opts.axis, "vx, vy, vz, theta or theta_b")->required();
  sweep->add_option("--grid", opts.grid, "start:stop:count")->required();
  sweep->add_flag("--strict-diagonal", opts.strict_diagonal, "reject products that are not Bell-diagonal");

  auto* verify = app.add_subcommand("verify", "Compare the geometric values with the brute-force oracle");
  input(verify);
  out(verify, "verdict JSON path");
  auto* verify_seed = verify->add_option("--seed", seed, "oracle seed");

  auto* decompose = app.add_subcommand("decompose", "Canonical decomposition of u1, u2 and u1^dagger u2");
  input(decompose);
  out(decompose, "decomposition JSON path");

  CLI11_PARSE(app, argc, argv);
  if (analyze_seed->count() > 0 || verify_seed->count() > 0) opts.seed = seed;

  if (analyze->parsed()) return uni2q::run_analyze(opts, std::cerr);
  if (sweep->parsed()) return uni2q::run_sweep(opts, std::cerr);
  if (verify->parsed()) return uni2q::run_verify(opts, std::cerr);
  return uni2q::run_decompose(opts, std::cerr);
}

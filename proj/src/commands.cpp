#include "uni2q/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "uni2q/plot.hpp"

namespace uni2q {

namespace {

using ojson = nlohmann::ordered_json;

std::uint64_t parse_seed(std::string_view text, const std::string& what) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw Error(ErrorCode::InvalidArgument, what + " is not a nonnegative 64-bit integer: '" + std::string(text) + "'");
  return v;
}

RunConfig load(const CommandOptions& opts) {
  RunConfig cfg = load_input(opts.input);
  cfg.strict_diagonal = cfg.strict_diagonal || opts.strict_diagonal;
  cfg.oracle.seed = resolve_seed(opts.seed, std::getenv("UNI2Q_SEED"), cfg.oracle.seed);
  return cfg;
}

std::filesystem::path output_path(const CommandOptions& opts, const std::optional<std::string>& configured) {
  if (opts.out) return *opts.out;
  if (configured) return *configured;
  throw Error(ErrorCode::InvalidArgument, "no output path given");
}

void report_error(std::ostream& err, ErrorCode code, const std::string& message) {
  ojson j;
  j["error"] = {{"code", error_code_name(code)}, {"message", message}};
  err << j.dump() << '\n';
}

// Shared exit-code policy for every subcommand.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    report_error(err, e.code(), e.detail());
    return e.code() == ErrorCode::NonDiagonalProduct ? 2 : 1;
  } catch (const std::exception& e) {
    report_error(err, ErrorCode::IoError, e.what());
    return 1;
  }
}

enum class Axis { Vx, Vy, Vz, Theta, ThetaB };

Axis parse_axis(std::string_view axis, const RunConfig& cfg) {
  const bool interaction = cfg.u2.kind == GateSpec::Kind::Interaction;
  if (axis == "vx" || axis == "vy" || axis == "vz") {
    if (!interaction) throw Error(ErrorCode::InvalidSweep, "axis " + std::string(axis) + " needs u2 given as an interaction");
    return axis == "vx" ? Axis::Vx : axis == "vy" ? Axis::Vy : Axis::Vz;
  }
  if (axis == "theta" || axis == "theta_b") {
    const std::size_t need = axis == "theta" ? 1 : 2;
    if (cfg.u2.kind != GateSpec::Kind::Named || gate_param_count(cfg.u2.name) < need)
      throw Error(ErrorCode::InvalidSweep, "axis " + std::string(axis) + " needs a named u2 with at least " +
                                               std::to_string(need) + " angle(s)");
    return axis == "theta" ? Axis::Theta : Axis::ThetaB;
  }
  throw Error(ErrorCode::InvalidSweep, "unknown axis '" + std::string(axis) + "' (expected vx, vy, vz, theta or theta_b)");
}

GateSpec swept_gate(const GateSpec& base, Axis axis, double value) {
  GateSpec g = base;
  switch (axis) {
    case Axis::Vx: g.d->vx = value; break;
    case Axis::Vy: g.d->vy = value; break;
    case Axis::Vz: g.d->vz = value; break;
    case Axis::Theta: g.params[0] = value; break;
    case Axis::ThetaB: g.params[1] = value; break;
  }
  if (g.d) g.d = fold_to_chamber(*g.d);
  return g;
}

std::string csv_row(double parameter, const DiscriminationReport& r) {
  std::string row = format_number(parameter);
  for (double v : {r.f_global, r.f_local, r.d_global, r.d_local, r.p_success_global, r.p_success_local})
    row += "," + format_number(v);
  row += r.perfect_global ? ",true" : ",false";
  row += r.perfect_local ? ",true" : ",false";
  row += "," + (r.min_repetitions ? std::to_string(*r.min_repetitions) : std::string());
  row += r.diagonal_form ? ",true" : ",false";
  return row + "\n";
}

ojson comparison(double geometry, double oracle, long evaluations, bool converged, double tol) {
  const double diff = std::abs(geometry - oracle);
  return {{"geometry", geometry},   {"oracle", oracle},       {"difference", diff},
          {"agree", diff <= tol},   {"evaluations", evaluations}, {"converged", converged}};
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env, std::uint64_t configured) {
  if (flag) return *flag;
  if (env && *env) return parse_seed(env, "UNI2Q_SEED");
  return configured;
}

std::vector<double> parse_grid(std::string_view text) {
  const auto bad = [&](const std::string& why) {
    return Error(ErrorCode::InvalidSweep, "grid '" + std::string(text) + "': " + why);
  };
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
    throw bad("expected start:stop:count");

  auto real = [&](std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) throw bad("bad number");
    return v;
  };
  const double start = real(text.substr(0, c1));
  const double stop = real(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string_view n_text = text.substr(c2 + 1);
  long n = 0;
  const auto [end, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (n_text.empty() || ec != std::errc() || end != n_text.data() + n_text.size() || n < 0 || n > 1'000'000)
    throw bad("count must be an integer in [0, 1000000]");

  std::vector<double> grid;
  for (long k = 0; k < n; ++k)
    grid.push_back(n == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(n - 1));
  if (n > 1) grid.back() = stop;
  return grid;
}

DiscriminationReport analyze_config(const RunConfig& cfg) {
  return full_report(to_unitary(cfg.u1, cfg.tol), to_unitary(cfg.u2, cfg.tol), cfg.priors, cfg.options());
}

std::string sweep_csv(const RunConfig& cfg, std::string_view axis_name, const std::vector<double>& grid) {
  const Axis axis = parse_axis(axis_name, cfg);
  for (double v : grid)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSweep, "grid values must be finite");

  const TwoQubitUnitary u1 = to_unitary(cfg.u1, cfg.tol);
  std::vector<std::string> rows(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        const TwoQubitUnitary u2 = to_unitary(swept_gate(cfg.u2, axis, grid[i]), cfg.tol);
        rows[i] = csv_row(grid[i], full_report(u1, u2, cfg.priors, cfg.options()));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::string csv = std::string(axis_name) +
                    ",f_global,f_local,d_global,d_local,p_success_global,p_success_local,perfect_global,"
                    "perfect_local,min_repetitions,diagonal_form\n";
  for (const auto& r : rows) csv += r;
  return csv;
}

ojson verify_json(const RunConfig& cfg) {
  const TwoQubitUnitary u1 = to_unitary(cfg.u1, cfg.tol);
  const TwoQubitUnitary u2 = to_unitary(cfg.u2, cfg.tol);
  const DiscriminationReport r = full_report(u1, u2, cfg.priors, cfg.options());
  const auto g = brute_fidelity_global(r.product_unitary, cfg.oracle);
  const auto l = brute_fidelity_product(r.product_unitary, cfg.oracle);

  ojson j;
  j["version"] = "v1";
  j["oracle"] = {{"seed", cfg.oracle.seed},
                 {"coarse_samples", cfg.oracle.coarse_samples},
                 {"refine_iterations", cfg.oracle.refine_iterations},
                 {"refine_shrink", cfg.oracle.refine_shrink},
                 {"restarts", cfg.oracle.restarts},
                 {"tol", cfg.oracle.tol}};
  j["diagonal_form"] = r.diagonal_form;
  j["method_global"] = method_name(r.method_global);
  j["method_local"] = method_name(r.method_local);
  j["global"] = comparison(r.f_global, g.value, g.evaluations, g.converged, cfg.oracle.tol);
  j["local"] = comparison(r.f_local, l.value, l.evaluations, l.converged, cfg.oracle.tol);
  j["agree"] = j["global"]["agree"].get<bool>() && j["local"]["agree"].get<bool>();
  return j;
}

ojson decompose_json(const RunConfig& cfg) {
  const TwoQubitUnitary u1 = to_unitary(cfg.u1, cfg.tol);
  const TwoQubitUnitary u2 = to_unitary(cfg.u2, cfg.tol);
  ojson j;
  j["version"] = "v1";
  const std::pair<const char*, TwoQubitUnitary> parts[] = {{"u1", u1}, {"u2", u2}, {"product", u1.adjoint() * u2}};
  for (const auto& [name, u] : parts) {
    const CanonicalForm c = canonical_decompose(u, cfg.tol);
    ojson entry = to_json(c);
    entry.erase("version");
    entry.erase("basis_order");
    entry["reconstruction_error"] = (c.reconstruct() - u.matrix()).cwiseAbs().maxCoeff();
    j[name] = std::move(entry);
  }
  j["basis_order"] = {"00", "01", "10", "11"};
  return j;
}

int run_analyze(const CommandOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(opts);
    const std::filesystem::path out = output_path(opts, cfg.outputs.report);
    const DiscriminationReport r = analyze_config(cfg);
    const std::string report = report_to_json(r).dump(2) + "\n";
    std::optional<std::filesystem::path> svg = opts.svg;
    if (!svg && cfg.outputs.svg) svg = *cfg.outputs.svg;
    // Render before writing anything so a failure leaves no files behind.
    std::string figure;
    if (svg) figure = render_hull_svg(r.hull, r.diagonal_form);
    write_file_atomic(out, report);
    if (svg) write_file_atomic(*svg, figure);
  });
}

int run_sweep(const CommandOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(opts);
    const std::filesystem::path out = output_path(opts, cfg.outputs.csv);
    write_file_atomic(out, sweep_csv(cfg, opts.axis, parse_grid(opts.grid)));
  });
}

int run_verify(const CommandOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(opts);
    const std::filesystem::path out = output_path(opts, cfg.outputs.report);
    const ojson verdict = verify_json(cfg);
    write_file_atomic(out, verdict.dump(2) + "\n");
    if (!verdict["agree"].get<bool>())
      throw Error(ErrorCode::DisagreementError, "geometry and oracle differ by more than " + format_number(cfg.oracle.tol));
  });
}

int run_decompose(const CommandOptions& opts, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(opts);
    write_file_atomic(output_path(opts, cfg.outputs.report), decompose_json(cfg).dump(2) + "\n");
  });
}

}  // namespace uni2q

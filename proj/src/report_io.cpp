#include "uni2q/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace uni2q {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void only_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) schema_error(path.empty() ? "document" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema_error(join(path, key), "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema_error(path, "expected a finite number");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) schema_error(path, "must be positive");
  return v;
}

int count(const json& j, const std::string& path, int min) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min || v > std::numeric_limits<int>::max()) schema_error(path, "must be at least " + std::to_string(min));
  return static_cast<int>(v);
}

const json* find(const json& j, std::string_view key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

Complex complex_entry(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected a number or an [re, im] pair");
  return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
}

Matrix4c matrix4(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) schema_error(path, "expected 4 rows");
  Matrix4c m;
  for (std::size_t r = 0; r < 4; ++r) {
    const std::string row = index(path, r);
    if (!j[r].is_array() || j[r].size() != 4) schema_error(row, "expected 4 entries");
    for (std::size_t c = 0; c < 4; ++c)
      m(static_cast<int>(r), static_cast<int>(c)) = complex_entry(j[r][c], index(row, c));
  }
  return m;
}

template <typename Vec>
Vec complex_vector(const json& j, const std::string& path) {
  Vec v;
  if (!j.is_array() || j.size() != static_cast<std::size_t>(v.size()))
    schema_error(path, "expected " + std::to_string(v.size()) + " entries");
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<int>(k)) = complex_entry(j[k], index(path, k));
  return v;
}

GateSpec parse_gate(const json& j, const std::string& path, const Tolerances& tol) {
  GateSpec g;
  if (j.is_string()) {
    auto [name, params] = parse_gate_name(j.get<std::string>());
    g = GateSpec::named(std::move(name), std::move(params));
  } else {
    only_keys(j, path, {"name", "params", "matrix", "interaction"});
    const int payloads = (j.contains("name") ? 1 : 0) + (j.contains("matrix") ? 1 : 0) + (j.contains("interaction") ? 1 : 0);
    if (payloads != 1) schema_error(path, "exactly one of name, matrix, interaction is required");

    if (const json* n = find(j, "name")) {
      if (!n->is_string()) schema_error(join(path, "name"), "expected a string");
      std::pair<std::string, std::vector<double>> parsed;
      try {
        parsed = parse_gate_name(n->get<std::string>());
      } catch (const Error& e) {
        schema_error(join(path, "name"), e.detail());
      }
      if (const json* p = find(j, "params")) {
        if (!parsed.second.empty()) schema_error(join(path, "params"), "parameters given both inline and as a list");
        if (!p->is_array()) schema_error(join(path, "params"), "expected an array");
        for (std::size_t k = 0; k < p->size(); ++k) parsed.second.push_back(number((*p)[k], index(join(path, "params"), k)));
      }
      g = GateSpec::named(std::move(parsed.first), std::move(parsed.second));
    } else if (j.contains("params")) {
      schema_error(join(path, "params"), "only valid with name");
    } else if (const json* m = find(j, "matrix")) {
      g = GateSpec::from_matrix(matrix4(*m, join(path, "matrix")));
    } else {
      const json& d = j["interaction"];
      const std::string p = join(path, "interaction");
      if (!d.is_array() || d.size() != 3) schema_error(p, "expected [vx, vy, vz]");
      g = GateSpec::interaction({number(d[0], index(p, 0)), number(d[1], index(p, 1)), number(d[2], index(p, 2))});
    }
  }

  try {
    (void)to_unitary(g, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotUnitary) throw Error(ErrorCode::NotUnitary, path + ": " + e.detail());
    schema_error(path, e.detail());
  }
  return g;
}

Tolerances parse_tolerances(const json& j, const std::string& path) {
  only_keys(j, path, {"unitary", "state", "product", "geom", "reconstruct"});
  Tolerances t;
  if (const json* v = find(j, "unitary")) t.unitary = positive(*v, join(path, "unitary"));
  if (const json* v = find(j, "state")) t.state = positive(*v, join(path, "state"));
  if (const json* v = find(j, "product")) t.product = positive(*v, join(path, "product"));
  if (const json* v = find(j, "geom")) t.geom = positive(*v, join(path, "geom"));
  if (const json* v = find(j, "reconstruct")) t.reconstruct = positive(*v, join(path, "reconstruct"));
  return t;
}

OracleConfig parse_oracle(const json& j, const std::string& path) {
  only_keys(j, path, {"seed", "coarse_samples", "refine_iterations", "refine_shrink", "tol", "restarts"});
  OracleConfig c;
  if (const json* v = find(j, "seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0))
      schema_error(join(path, "seed"), "expected a nonnegative integer");
    c.seed = v->get<std::uint64_t>();
  }
  if (const json* v = find(j, "coarse_samples")) c.coarse_samples = count(*v, join(path, "coarse_samples"), 1000);
  if (const json* v = find(j, "refine_iterations")) c.refine_iterations = count(*v, join(path, "refine_iterations"), 1);
  if (const json* v = find(j, "refine_shrink")) {
    c.refine_shrink = number(*v, join(path, "refine_shrink"));
    if (!(c.refine_shrink > 0.0 && c.refine_shrink < 1.0)) schema_error(join(path, "refine_shrink"), "must lie in (0, 1)");
  }
  if (const json* v = find(j, "tol")) c.tol = positive(*v, join(path, "tol"));
  if (const json* v = find(j, "restarts")) c.restarts = count(*v, join(path, "restarts"), 1);
  return c;
}

Priors parse_priors(const json& j, const std::string& path) {
  only_keys(j, path, {"q1", "q2"});
  auto prob = [&](const char* key) -> std::optional<double> {
    const json* v = find(j, key);
    if (!v) return std::nullopt;
    const double q = number(*v, join(path, key));
    if (!(q >= 0.0 && q <= 1.0)) schema_error(join(path, key), "must lie in [0, 1]");
    return q;
  };
  const auto q1 = prob("q1");
  const auto q2 = prob("q2");
  if (!q1 && !q2) schema_error(path, "needs q1 or q2");
  const double a = q1 ? *q1 : 1.0 - *q2;
  const double b = q2 ? *q2 : 1.0 - *q1;
  if (std::abs(a + b - 1.0) > 1e-12) schema_error(path, "q1 + q2 must equal 1");
  return Priors(a, b);
}

std::optional<std::string> parse_path(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

ojson vector_json(const auto& v) {
  ojson a = ojson::array();
  for (int k = 0; k < v.size(); ++k) a.push_back(to_json(Complex(v(k))));
  return a;
}

template <typename M>
ojson matrix_json(const M& m) {
  ojson rows = ojson::array();
  for (int r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(Complex(m(r, c))));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson polygon_json(const Polygon& p) {
  ojson a = ojson::array();
  for (const Complex& z : p.vertices) a.push_back(to_json(z));
  return a;
}

ojson weights_json(const WeightVector& w) { return ojson(w.w); }

ojson phases_json(const EigenphaseQuad& e) { return ojson(e.lambda); }

EigenphaseQuad phases_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) schema_error(path, "expected 4 phases");
  EigenphaseQuad e;
  for (std::size_t k = 0; k < 4; ++k) e.lambda[k] = number(j[k], index(path, k));
  return e;
}

WeightVector weights_from(const json& j, const std::string& path) {
  const EigenphaseQuad e = phases_from(j, path);
  return WeightVector{e.lambda};
}

Polygon polygon_from(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  Polygon p;
  for (std::size_t k = 0; k < j.size(); ++k) p.vertices.push_back(complex_entry(j[k], index(path, k)));
  return p;
}

const json& at(const json& j, const std::string& key, const std::string& path) {
  const json* v = find(j, key);
  if (!v) schema_error(join(path, key), "missing");
  return *v;
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema_error(path, "expected true or false");
  return j.get<bool>();
}

Method method_from(const json& j, const std::string& path) {
  if (j.is_string()) {
    for (Method m : {Method::Geometric, Method::Spectral, Method::LocalUnitary, Method::Oracle})
      if (j.get<std::string>() == method_name(m)) return m;
  }
  schema_error(path, "unknown method");
}

}  // namespace

RunConfig parse_input(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    schema_error("document", e.what());
  }
  only_keys(j, "", {"version", "u1", "u2", "priors", "oracle", "strict_diagonal", "tolerances", "outputs"});
  if (const json* v = find(j, "version"); v && *v != "v1") schema_error("version", "only \"v1\" is supported");

  RunConfig cfg;
  if (const json* v = find(j, "tolerances")) cfg.tol = parse_tolerances(*v, "tolerances");
  if (!j.contains("u1")) schema_error("u1", "missing");
  if (!j.contains("u2")) schema_error("u2", "missing");
  cfg.u1 = parse_gate(j["u1"], "u1", cfg.tol);
  cfg.u2 = parse_gate(j["u2"], "u2", cfg.tol);
  if (const json* v = find(j, "priors")) cfg.priors = parse_priors(*v, "priors");
  if (const json* v = find(j, "oracle")) cfg.oracle = parse_oracle(*v, "oracle");
  if (const json* v = find(j, "strict_diagonal")) cfg.strict_diagonal = boolean(*v, "strict_diagonal");
  if (const json* v = find(j, "outputs")) {
    only_keys(*v, "outputs", {"report", "svg", "csv"});
    if (const json* p = find(*v, "report")) cfg.outputs.report = parse_path(*p, "outputs.report");
    if (const json* p = find(*v, "svg")) cfg.outputs.svg = parse_path(*p, "outputs.svg");
    if (const json* p = find(*v, "csv")) cfg.outputs.csv = parse_path(*p, "outputs.csv");
  }
  return cfg;
}

RunConfig load_input(const std::filesystem::path& path) { return parse_input(read_file(path)); }

ojson to_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

ojson to_json(const Matrix4c& m) { return matrix_json(m); }

ojson to_json(const CanonicalForm& c) {
  ojson j;
  j["version"] = "v1";
  j["basis_order"] = {"00", "01", "10", "11"};
  j["d"] = {{"vx", c.d.vx}, {"vy", c.d.vy}, {"vz", c.d.vz}};
  j["eigenphases"] = phases_json(eigenphases_from_d(c.d));
  j["phase"] = c.phase;
  j["ua"] = matrix_json(c.ua.matrix());
  j["ub"] = matrix_json(c.ub.matrix());
  j["va"] = matrix_json(c.va.matrix());
  j["vb"] = matrix_json(c.vb.matrix());
  return j;
}

ojson report_to_json(const DiscriminationReport& r) {
  ojson j;
  j["version"] = "v1";
  j["basis_order"] = {"00", "01", "10", "11"};
  j["priors"] = {{"q1", r.priors.q1()}, {"q2", r.priors.q2()}};
  j["product_unitary"] = to_json(r.product_unitary.matrix());
  j["diagonal_form"] = r.diagonal_form;
  j["eigenphases"] = phases_json(r.eigenphases);

  const HullAnalysis& h = r.hull;
  ojson hull;
  hull["eigenphases"] = phases_json(h.eigenphases);
  hull["global"] = {{"vertices", polygon_json(h.global_hull)},
                    {"contains_origin", h.contains_origin_global},
                    {"distance", h.f_global},
                    {"nearest_point", to_json(h.nearest_point_global)},
                    {"witness_weights", weights_json(h.witness_global)}};
  hull["local"] = {{"vertices", polygon_json(h.local_hull)},
                   {"contains_origin", h.contains_origin_local},
                   {"distance", h.f_local},
                   {"nearest_point", to_json(h.nearest_point_local)},
                   {"witness_weights", weights_json(h.witness_local)}};
  j["hull"] = std::move(hull);

  j["f_global"] = r.f_global;
  j["f_local"] = r.f_local;
  j["d_global"] = r.d_global;
  j["d_local"] = r.d_local;
  j["p_success_global"] = r.p_success_global;
  j["p_success_local"] = r.p_success_local;
  j["perfect_global"] = r.perfect_global;
  j["perfect_local"] = r.perfect_local;
  j["min_repetitions"] = r.min_repetitions ? ojson(*r.min_repetitions) : ojson(nullptr);
  j["method_global"] = method_name(r.method_global);
  j["method_local"] = method_name(r.method_local);
  j["optimal_input_global"] = vector_json(r.optimal_input_global.amplitudes());
  if (r.optimal_input_local)
    j["optimal_input_local"] = {{"alice", vector_json(r.optimal_input_local->alice())},
                                {"bob", vector_json(r.optimal_input_local->bob())}};
  else
    j["optimal_input_local"] = nullptr;
  j["notes"] = r.notes;
  return j;
}

DiscriminationReport report_from_json(const json& j) {
  if (!j.is_object()) schema_error("document", "expected an object");
  if (at(j, "version", "") != "v1") schema_error("version", "only \"v1\" is supported");

  DiscriminationReport r;
  const json& pr = at(j, "priors", "");
  r.priors = Priors(number(at(pr, "q1", "priors"), "priors.q1"), number(at(pr, "q2", "priors"), "priors.q2"));
  r.product_unitary = TwoQubitUnitary(matrix4(at(j, "product_unitary", ""), "product_unitary"));
  r.diagonal_form = boolean(at(j, "diagonal_form", ""), "diagonal_form");
  r.eigenphases = phases_from(at(j, "eigenphases", ""), "eigenphases");

  const json& h = at(j, "hull", "");
  r.hull.eigenphases = phases_from(at(h, "eigenphases", "hull"), "hull.eigenphases");
  const json& g = at(h, "global", "hull");
  r.hull.global_hull = polygon_from(at(g, "vertices", "hull.global"), "hull.global.vertices");
  r.hull.contains_origin_global = boolean(at(g, "contains_origin", "hull.global"), "hull.global.contains_origin");
  r.hull.f_global = number(at(g, "distance", "hull.global"), "hull.global.distance");
  r.hull.nearest_point_global = complex_entry(at(g, "nearest_point", "hull.global"), "hull.global.nearest_point");
  r.hull.witness_global = weights_from(at(g, "witness_weights", "hull.global"), "hull.global.witness_weights");
  const json& l = at(h, "local", "hull");
  r.hull.local_hull = polygon_from(at(l, "vertices", "hull.local"), "hull.local.vertices");
  r.hull.contains_origin_local = boolean(at(l, "contains_origin", "hull.local"), "hull.local.contains_origin");
  r.hull.f_local = number(at(l, "distance", "hull.local"), "hull.local.distance");
  r.hull.nearest_point_local = complex_entry(at(l, "nearest_point", "hull.local"), "hull.local.nearest_point");
  r.hull.witness_local = weights_from(at(l, "witness_weights", "hull.local"), "hull.local.witness_weights");

  r.f_global = number(at(j, "f_global", ""), "f_global");
  r.f_local = number(at(j, "f_local", ""), "f_local");
  r.d_global = number(at(j, "d_global", ""), "d_global");
  r.d_local = number(at(j, "d_local", ""), "d_local");
  r.p_success_global = number(at(j, "p_success_global", ""), "p_success_global");
  r.p_success_local = number(at(j, "p_success_local", ""), "p_success_local");
  r.perfect_global = boolean(at(j, "perfect_global", ""), "perfect_global");
  r.perfect_local = boolean(at(j, "perfect_local", ""), "perfect_local");
  if (const json& n = at(j, "min_repetitions", ""); !n.is_null()) r.min_repetitions = count(n, "min_repetitions", 1);
  r.method_global = method_from(at(j, "method_global", ""), "method_global");
  r.method_local = method_from(at(j, "method_local", ""), "method_local");
  r.optimal_input_global =
      PureState2Q(complex_vector<Vector4c>(at(j, "optimal_input_global", ""), "optimal_input_global"));
  if (const json& p = at(j, "optimal_input_local", ""); !p.is_null())
    r.optimal_input_local = ProductState(complex_vector<Vector2c>(at(p, "alice", "optimal_input_local"), "optimal_input_local.alice"),
                                         complex_vector<Vector2c>(at(p, "bob", "optimal_input_local"), "optimal_input_local.bob"));
  const json& notes = at(j, "notes", "");
  if (!notes.is_array()) schema_error("notes", "expected an array");
  for (const auto& n : notes) r.notes.push_back(n.get<std::string>());
  return r;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace uni2q

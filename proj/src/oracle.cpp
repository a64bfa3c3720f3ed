#include "uni2q/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

namespace uni2q {

namespace {

using Point = std::vector<double>;
using Objective = std::function<double(const Point&)>;
using Sampler = std::function<Point(std::mt19937_64&)>;

struct Candidate {
  double value;
  int shard;
  int index;
  Point x;
};

struct SearchOutcome {
  Point x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = true;
  double best_coarse = 0.0;
};

std::vector<Candidate> sample_shard(const Objective& f, const Sampler& draw, std::uint64_t seed, int shard,
                                    int count, int keep) {
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(shard));
  std::vector<Candidate> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Point x = draw(rng);
    const double v = f(x);
    out.push_back({v, shard, i, std::move(x)});
  }
  auto less = [](const Candidate& a, const Candidate& b) { return std::tie(a.value, a.index) < std::tie(b.value, b.index); };
  const auto k = std::min<std::size_t>(out.size(), static_cast<std::size_t>(keep));
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k), out.end(), less);
  out.resize(k);
  return out;
}

// Coordinate pattern search: poll +-h along each axis, accept the first
// improvement, and contract h once a full sweep finds none.
SearchOutcome pattern_search(const Objective& f, Point x, double value, double step, const OracleConfig& cfg) {
  SearchOutcome out;
  constexpr int kMaxSweepsPerLevel = 500;
  double h = step;
  for (int level = 0; level < cfg.refine_iterations; ++level) {
    int sweeps = 0;
    bool improved = true;
    while (improved && sweeps < kMaxSweepsPerLevel) {
      improved = false;
      ++sweeps;
      for (std::size_t k = 0; k < x.size(); ++k) {
        for (double sign : {1.0, -1.0}) {
          Point trial = x;
          trial[k] += sign * h;
          const double v = f(trial);
          ++out.evaluations;
          if (v < value) {
            x = std::move(trial);
            value = v;
            improved = true;
            break;
          }
        }
      }
    }
    if (improved) out.converged = false;
    h *= cfg.refine_shrink;
  }
  out.x = std::move(x);
  out.value = value;
  return out;
}

SearchOutcome minimize(const Objective& f, const Sampler& draw, double step, const OracleConfig& cfg) {
  const int shards = std::max(1, cfg.shards);
  const int total = std::max(1, cfg.coarse_samples);
  const int keep = std::max(1, cfg.restarts);

  std::vector<std::future<std::vector<Candidate>>> jobs;
  for (int s = 0; s < shards; ++s) {
    const int count = total / shards + (s < total % shards ? 1 : 0);
    jobs.push_back(std::async(std::launch::async, sample_shard, std::cref(f), std::cref(draw), cfg.seed, s, count, keep));
  }
  std::vector<Candidate> pool;
  for (auto& j : jobs) {
    auto part = j.get();
    pool.insert(pool.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.value, a.shard, a.index) < std::tie(b.value, b.shard, b.index);
  });
  if (pool.size() > static_cast<std::size_t>(keep)) pool.resize(static_cast<std::size_t>(keep));

  SearchOutcome best;
  best.value = std::numeric_limits<double>::infinity();
  best.best_coarse = pool.front().value;
  long evaluations = total;
  bool converged = true;
  for (const Candidate& c : pool) {
    SearchOutcome r = pattern_search(f, c.x, c.value, step, cfg);
    evaluations += r.evaluations;
    converged = converged && r.converged;
    if (r.value < best.value) {
      best.x = std::move(r.x);
      best.value = r.value;
    }
  }
  best.evaluations = evaluations;
  best.converged = converged;
  return best;
}

Vector4c to_vector(const Point& x) {
  Vector4c v;
  for (int k = 0; k < 4; ++k) v(k) = Complex(x[static_cast<std::size_t>(2 * k)], x[static_cast<std::size_t>(2 * k + 1)]);
  return v;
}

Vector2c bloch(double theta, double phi) {
  return Vector2c(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
}

Point draw_bloch_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point x(4);
  x[0] = std::acos(1.0 - 2.0 * unit(rng));
  x[1] = 2.0 * std::numbers::pi * unit(rng);
  x[2] = std::acos(1.0 - 2.0 * unit(rng));
  x[3] = 2.0 * std::numbers::pi * unit(rng);
  return x;
}

}  // namespace

OracleResult<PureState2Q> brute_fidelity_global(const TwoQubitUnitary& u, const OracleConfig& cfg) {
  const Matrix4c m = u.matrix();
  const Objective f = [m](const Point& x) {
    const Vector4c v = to_vector(x);
    const double n2 = v.squaredNorm();
    if (!(n2 > 1e-300)) return std::numeric_limits<double>::infinity();
    return std::abs(v.dot(m * v)) / n2;
  };
  const Sampler draw = [](std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Point x(8);
    for (double& c : x) c = g(rng);
    return x;
  };
  const SearchOutcome r = minimize(f, draw, 0.25, cfg);
  return {r.value, PureState2Q::normalized(to_vector(r.x)), r.evaluations, r.converged, r.best_coarse};
}

OracleResult<ProductState> brute_fidelity_product(const TwoQubitUnitary& u, const OracleConfig& cfg) {
  const Matrix4c m = u.matrix();
  const Objective f = [m](const Point& x) {
    const Vector4c v = kron(bloch(x[0], x[1]), bloch(x[2], x[3]));
    return std::abs(v.dot(m * v));
  };
  const SearchOutcome r = minimize(f, draw_bloch_pair, 0.5, cfg);
  return {r.value, ProductState(bloch(r.x[0], r.x[1]), bloch(r.x[2], r.x[3])), r.evaluations, r.converged,
          r.best_coarse};
}

double brute_helstrom(const Priors& p, const PureState2Q& s1, const PureState2Q& s2) {
  const Vector4c& a = s1.amplitudes();
  const Vector4c& b = s2.amplitudes();
  const Matrix4c diff = p.q1() * a * a.adjoint() - p.q2() * b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(diff, Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();

  const double ov2 = std::norm(a.dot(b));
  const double closed = std::sqrt(std::max(0.0, 1.0 - 4.0 * p.q1() * p.q2() * ov2));
  if (std::abs(trace_norm - closed) > 1e-8)
    throw Error(ErrorCode::DisagreementError, "trace-norm routes disagree: eigenvalues " + std::to_string(trace_norm) +
                                                  " vs closed form " + std::to_string(closed));
  return 0.5 * (1.0 + trace_norm);
}

}  // namespace uni2q

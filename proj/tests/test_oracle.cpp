#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "support.hpp"
#include "uni2q/oracle.hpp"

using namespace uni2q;
using testsupport::kPi;

namespace {

OracleConfig light(std::uint64_t seed) {
  OracleConfig c;
  c.seed = seed;
  c.coarse_samples = 2000;
  c.restarts = 8;
  return c;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("same seed, same bits") {
  std::mt19937_64 rng(41);
  const TwoQubitUnitary u = testsupport::haar4(rng);
  const auto a = brute_fidelity_global(u, light(3));
  const auto b = brute_fidelity_global(u, light(3));
  CHECK(same_bits(a.value, b.value));
  CHECK(a.argmin.amplitudes() == b.argmin.amplitudes());
  CHECK(a.evaluations == b.evaluations);
  const auto p = brute_fidelity_product(u, light(3));
  const auto q = brute_fidelity_product(u, light(3));
  CHECK(same_bits(p.value, q.value));
  CHECK(p.argmin.alice() == q.argmin.alice());
}

TEST_CASE("argmin reproduces the reported value") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const TwoQubitUnitary u = testsupport::haar4(rng);
    const auto g = brute_fidelity_global(u, light(t));
    CHECK(std::abs(std::abs(overlap(u, g.argmin)) - g.value) < 1e-9);
    const auto p = brute_fidelity_product(u, light(t));
    CHECK(std::abs(std::abs(overlap(u, p.argmin.state())) - p.value) < 1e-9);
    CHECK(p.value >= g.value - 1e-9);
    CHECK(g.best_coarse >= g.value);
  }
}

TEST_CASE("global oracle finds the angular-spread distance") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    const TwoQubitUnitary u = testsupport::haar4(rng);
    Eigen::ComplexEigenSolver<Matrix4c> es(u.matrix());
    std::vector<double> angles;
    for (int k = 0; k < 4; ++k) angles.push_back(std::arg(es.eigenvalues()(k)));
    CHECK(std::abs(brute_fidelity_global(u).value - testsupport::circle_hull_distance(angles)) < 1e-6);
  }
}

TEST_CASE("Helstrom oracle on simple pairs") {
  const PureState2Q a(Vector4c(1, 0, 0, 0));
  const PureState2Q b(Vector4c(0, 1, 0, 0));
  CHECK(brute_helstrom(Priors::equal(), a, a) == doctest::Approx(0.5));
  CHECK(brute_helstrom(Priors::equal(), a, b) == doctest::Approx(1.0));
  CHECK(brute_helstrom(Priors(0.8, 0.2), a, a) == doctest::Approx(0.8));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "uni2q/discrimination.hpp"
#include "uni2q/gates.hpp"

using namespace uni2q;
using testsupport::kPi;

namespace {

OracleConfig light_oracle(std::uint64_t seed) {
  OracleConfig c;
  c.seed = seed;
  c.coarse_samples = 2000;
  c.restarts = 8;
  return c;
}

}  // namespace

TEST_CASE("identity versus a CNOT-class interaction") {
  const auto r = full_report(TwoQubitUnitary::identity(), interaction_unitary({kPi / 4, 0, 0}), Priors::equal());
  const double h = std::sqrt(0.5);
  CHECK(r.diagonal_form);
  CHECK(r.f_global == doctest::Approx(h).epsilon(1e-12));
  CHECK(r.f_local == doctest::Approx(h).epsilon(1e-12));
  CHECK(r.d_global == doctest::Approx(h).epsilon(1e-12));
  CHECK(r.p_success_global == doctest::Approx((1 + h) / 2).epsilon(1e-12));
  CHECK_FALSE(r.perfect_global);
  CHECK_FALSE(r.perfect_local);
  REQUIRE(r.min_repetitions.has_value());
  CHECK(*r.min_repetitions == 2);
}

TEST_CASE("identical unitaries") {
  const auto r = full_report(TwoQubitUnitary::identity(), TwoQubitUnitary::identity(), Priors::equal());
  CHECK(r.f_global == doctest::Approx(1.0));
  CHECK(r.d_global == doctest::Approx(0.0));
  CHECK(r.p_success_global == doctest::Approx(0.5));
  CHECK_FALSE(r.min_repetitions.has_value());
  try {
    (void)min_repetitions_for_perfect(TwoQubitUnitary::identity(), named_gate("LOCALPHASE", {0, 0}));
    FAIL("expected IdenticalUnitaries");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IdenticalUnitaries);
  }
}

TEST_CASE("diagonal phase gates on both sides") {
  const auto lp = named_gate("LOCALPHASE", {kPi / 2, kPi / 2});
  const auto r = full_report(TwoQubitUnitary::identity(), lp, Priors::equal());
  CHECK(r.perfect_global);
  CHECK_FALSE(r.perfect_local);
  CHECK(r.f_local == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.method_local == Method::LocalUnitary);

  const SingleQubitMinimum m = single_qubit_fidelity(SingleQubitUnitary(Matrix2c{{1, 0}, {0, Complex(0, 1)}}));
  CHECK(m.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("reported witnesses attain the reported values") {
  std::mt19937_64 rng(31);
  DiscriminationOptions opts;
  opts.oracle = light_oracle(7);
  for (int t = 0; t < 150; ++t) {
    const TwoQubitUnitary u1 = testsupport::haar4(rng);
    const bool diagonal = t % 3 != 0;
    const TwoQubitUnitary u2 = diagonal ? u1 * interaction_unitary(testsupport::random_chamber_point(rng))
                                        : testsupport::haar4(rng);
    const auto r = full_report(u1, u2, Priors::equal(), opts);
    CHECK(r.diagonal_form == diagonal);
    CHECK(std::abs(std::abs(overlap(r.product_unitary, r.optimal_input_global)) - r.f_global) < 1e-8);
    REQUIRE(r.optimal_input_local.has_value());
    const PureState2Q prod = r.optimal_input_local->state();
    CHECK(concurrence(prod) < 1e-8);
    CHECK(std::abs(std::abs(overlap(r.product_unitary, prod)) - r.f_local) < 1e-8);
    CHECK(r.f_global <= r.f_local + 1e-10);
    if (diagonal) CHECK(std::abs(r.f_global - r.f_local) < 1e-8);
    CHECK(r.d_global == distinguishability(r.priors, r.f_global));
    CHECK(r.p_success_local == success_probability_pure(r.priors, r.f_local));
  }
}

TEST_CASE("non-diagonal global value matches the angular-spread formula") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 200; ++t) {
    const TwoQubitUnitary u = testsupport::haar4(rng);
    Eigen::ComplexEigenSolver<Matrix4c> es(u.matrix());
    std::vector<double> angles;
    for (int k = 0; k < 4; ++k) angles.push_back(std::arg(es.eigenvalues()(k)));
    const auto g = fidelity_global(TwoQubitUnitary::identity(), u);
    CHECK(g.method == Method::Spectral);
    CHECK(g.value == doctest::Approx(testsupport::circle_hull_distance(angles)).epsilon(1e-10));
  }
}

TEST_CASE("strict mode rejects non-diagonal products") {
  DiscriminationOptions opts;
  opts.strict_diagonal = true;
  try {
    (void)full_report(TwoQubitUnitary::identity(), named_gate("CNOT"), Priors::equal(), opts);
    FAIL("expected NonDiagonalProduct");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDiagonalProduct);
  }
}

TEST_CASE("repetition count is minimal and agrees with the spread estimate") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    const InteractionVector d = testsupport::random_chamber_point(rng);
    if (d.vx < 0.02) continue;
    const TwoQubitUnitary w = interaction_unitary(d);
    const int n = min_repetitions_for_perfect(TwoQubitUnitary::identity(), w);
    const EigenphaseQuad e = eigenphases_from_d(d);
    CHECK(tensor_power_contains_origin(e, n));
    if (n > 1) CHECK_FALSE(tensor_power_contains_origin(e, n - 1));
    // Angular spread recomputed here from the sorted circle angles.
    std::vector<double> a{-e[0], -e[1], -e[2], -e[3]};
    std::sort(a.begin(), a.end());
    double gap = 2 * kPi - (a.back() - a.front());
    for (std::size_t k = 1; k < a.size(); ++k) gap = std::max(gap, a[k] - a[k - 1]);
    const double spread = 2 * kPi - gap;
    CHECK(n == std::max(1, static_cast<int>(std::ceil(kPi / spread - 1e-9))));
  }
}

TEST_CASE("pairwise chains decide containment like full enumeration") {
  // Compare the chain shortcut at N > 40 with the exhaustive rule on small
  // spectra scaled so the threshold sits near N = 50.
  for (double spread : {kPi / 49.5, kPi / 50.0, kPi / 50.5}) {
    const EigenphaseQuad e{{spread / 2, -spread / 2, -spread / 2, spread / 2}};
    const int expected = static_cast<int>(std::ceil(kPi / spread - 1e-9));
    CHECK(tensor_power_contains_origin(e, expected));
    CHECK_FALSE(tensor_power_contains_origin(e, expected - 1));
  }
}

TEST_CASE("repetition search is capped") {
  const TwoQubitUnitary w = interaction_unitary({1e-7, 0, 0});
  try {
    (void)min_repetitions_for_perfect(TwoQubitUnitary::identity(), w);
    FAIL("expected RepetitionLimit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RepetitionLimit);
  }
}

TEST_CASE("local-unitary products factorize into single-qubit chords") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 500; ++t) {
    const SingleQubitUnitary a = testsupport::haar2(rng);
    const SingleQubitUnitary b = testsupport::haar2(rng);
    const double expected = single_qubit_fidelity(a).value * single_qubit_fidelity(b).value;
    const auto brute = brute_fidelity_product(TwoQubitUnitary::local(a, b), light_oracle(static_cast<std::uint64_t>(t)));
    CHECK(std::abs(brute.value - expected) < 1e-6);
    CHECK(local_unitary_fidelity(a, b).value == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("distinguishability formula") {
  CHECK(distinguishability(Priors::equal(), 0.0) == doctest::Approx(1.0));
  CHECK(distinguishability(Priors::equal(), 1.0) == doctest::Approx(0.0));
  CHECK(distinguishability(Priors(0.2, 0.8), 0.5) == doctest::Approx(std::sqrt(1 - 4 * 0.16 * 0.25)));
  CHECK_THROWS_AS(distinguishability(Priors::equal(), -0.5), Error);
}

TEST_CASE("unequal priors are noted in the report") {
  const auto r = full_report(TwoQubitUnitary::identity(), interaction_unitary({0.3, 0.1, 0}), Priors(0.3, 0.7));
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("Bell-diagonal products outside the chamber still get the product minimum") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  DiscriminationOptions opts;
  opts.oracle = light_oracle(9);
  int fallbacks = 0;
  for (int t = 0; t < 200; ++t) {
    const InteractionVector d{u(rng), u(rng), u(rng)};
    const TwoQubitUnitary w = interaction_unitary(d);
    const auto local = fidelity_local(TwoQubitUnitary::identity(), w, opts);
    const auto brute = brute_fidelity_product(w, opts.oracle);
    CHECK(local.value <= brute.value + 1e-9);
    CHECK(std::abs(local.value - brute.value) < 1e-5);
    CHECK(local.value >= fidelity_global(TwoQubitUnitary::identity(), w).value - 1e-10);
    if (local.method == Method::Oracle) ++fallbacks;
  }
  MESSAGE("oracle fallbacks: " << fallbacks);
}

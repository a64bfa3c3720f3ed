#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "uni2q/gates.hpp"

using namespace uni2q;
using testsupport::kPi;
using testsupport::max_abs_diff;

namespace {

void check_d(const TwoQubitUnitary& w, double vx, double vy, double vz, double tol) {
  const CanonicalForm c = canonical_decompose(w);
  CHECK(std::abs(c.d.vx - vx) <= tol);
  CHECK(std::abs(c.d.vy - vy) <= tol);
  CHECK(std::abs(c.d.vz - vz) <= tol);
  CHECK(max_abs_diff(c.reconstruct(), w.matrix()) <= 1e-8);
}

}  // namespace

TEST_CASE("interaction unitary equals the Pauli exponential") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    const InteractionVector d{u(rng), u(rng), u(rng)};
    CHECK(max_abs_diff(interaction_unitary(d).matrix(), testsupport::interaction_by_exponential(d.vx, d.vy, d.vz)) <
          1e-12);
  }
}

TEST_CASE("SWAP corner is SWAP up to exp(-i pi/4)") {
  const Matrix4c w = interaction_unitary({kPi / 4, kPi / 4, kPi / 4}).matrix();
  const Matrix4c expected = std::polar(1.0, -kPi / 4) * named_gate("SWAP").matrix();
  CHECK(max_abs_diff(w, expected) < 1e-14);
}

TEST_CASE("eigenphases and interaction coefficients invert each other") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const InteractionVector d = testsupport::random_chamber_point(rng);
    const EigenphaseQuad e = eigenphases_from_d(d);
    CHECK(std::abs(e[0] + e[1] + e[2] + e[3]) < 1e-14);
    const InteractionVector back = d_from_eigenphases(e);
    CHECK(back.vx == doctest::Approx(d.vx).epsilon(1e-12));
    CHECK(back.vy == doctest::Approx(d.vy).epsilon(1e-12));
    CHECK(back.vz == doctest::Approx(d.vz).epsilon(1e-12));
    // The quad also reads back from the Bell diagonal of W[d].
    const EigenphaseQuad read = bell_eigenphases(interaction_unitary(d), 1e-12);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(wrap_angle(read[j] - e[j])) < 1e-12);
  }
  EigenphaseQuad bad{{0.1, 0.2, 0.3, 0.4}};
  CHECK_THROWS_AS(d_from_eigenphases(bad), Error);
}

TEST_CASE("named gates land on their Weyl coordinates") {
  check_d(named_gate("CNOT"), kPi / 4, 0, 0, 1e-10);
  check_d(named_gate("CZ"), kPi / 4, 0, 0, 1e-10);
  check_d(named_gate("SWAP"), kPi / 4, kPi / 4, kPi / 4, 1e-10);
  check_d(named_gate("ISWAP"), kPi / 4, kPi / 4, 0, 1e-10);
  check_d(named_gate("SQRT_SWAP"), kPi / 8, kPi / 8, kPi / 8, 1e-10);
  check_d(named_gate("IDENTITY"), 0, 0, 0, 1e-10);
  check_d(named_gate("XX", {0.3}), 0.3, 0, 0, 1e-10);
  check_d(named_gate("CPHASE", {kPi / 2}), kPi / 8, 0, 0, 1e-10);
  check_d(named_gate("LOCALPHASE", {0.4, 1.1}), 0, 0, 0, 1e-10);
}

TEST_CASE("Haar-random unitaries reconstruct and land in the chamber") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const TwoQubitUnitary w = testsupport::haar4(rng);
    const CanonicalForm c = canonical_decompose(w);
    CHECK(max_abs_diff(c.reconstruct(), w.matrix()) <= 1e-8);
    CHECK(c.d.in_weyl_chamber(1e-9));
  }
}

TEST_CASE("coordinates are invariant under local unitaries") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const TwoQubitUnitary w = testsupport::haar4(rng);
    const TwoQubitUnitary pre = TwoQubitUnitary::local(testsupport::haar2(rng), testsupport::haar2(rng));
    const TwoQubitUnitary post = TwoQubitUnitary::local(testsupport::haar2(rng), testsupport::haar2(rng));
    const InteractionVector a = canonical_decompose(w).d;
    const InteractionVector b = canonical_decompose(pre * w * post).d;
    CHECK(std::abs(a.vx - b.vx) < 1e-8);
    CHECK(std::abs(a.vy - b.vy) < 1e-8);
    CHECK(std::abs(a.vz - b.vz) < 1e-8);
  }
}

TEST_CASE("folding agrees with the decomposition") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const InteractionVector d{u(rng), u(rng), u(rng)};
    const InteractionVector f = fold_to_chamber(d);
    CHECK(f.in_weyl_chamber(1e-12));
    const InteractionVector c = canonical_decompose(interaction_unitary(d)).d;
    CHECK(std::abs(f.vx - c.vx) < 1e-8);
    CHECK(std::abs(f.vy - c.vy) < 1e-8);
    CHECK(std::abs(f.vz - c.vz) < 1e-8);
  }
}

TEST_CASE("Bell-diagonal detection") {
  CHECK(is_diagonal_form(interaction_unitary({0.3, 0.2, -0.1}), 1e-12));
  CHECK(is_diagonal_form(named_gate("SWAP"), 1e-12));
  CHECK_FALSE(is_diagonal_form(named_gate("CNOT"), 1e-9));
  try {
    (void)bell_eigenphases(named_gate("CNOT"), 1e-9);
    FAIL("CNOT is not Bell-diagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDiagonalProduct);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "uni2q/hull.hpp"

using namespace uni2q;
using testsupport::kPi;

namespace {

EigenphaseQuad quad(double a, double b, double c, double d) { return EigenphaseQuad{{a, b, c, d}}; }

EigenphaseQuad random_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  return quad(u(rng), u(rng), u(rng), u(rng));
}

// Brute force over the product chart on a grid.
double local_distance_by_grid(const EigenphaseQuad& e, int n) {
  double best = 1e300;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      const double s = double(a) / n, t = double(b) / n;
      const Complex p = 0.5 * (s * e.point(0) + (1 - s) * e.point(2) + t * e.point(1) + (1 - t) * e.point(3));
      best = std::min(best, std::abs(p));
    }
  return best;
}

}  // namespace

TEST_CASE("convex hull drops interior, duplicate and collinear points") {
  const std::vector<Complex> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}, {1, 1}, {1 + 1e-12, 1}};
  const Polygon h = convex_hull(pts, 1e-9);
  REQUIRE(h.size() == 4);
  double area = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const Complex a = h.vertices[k], b = h.vertices[(k + 1) % 4];
    area += a.real() * b.imag() - a.imag() * b.real();
  }
  CHECK(area / 2 == doctest::Approx(1.0));  // counterclockwise

  const std::vector<Complex> line{{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}};
  CHECK(convex_hull(line, 1e-9).size() == 2);
  const std::vector<Complex> same{{1, 0}, {1, 0}, {1, 1e-13}};
  CHECK(convex_hull(same, 1e-9).size() == 1);
}

TEST_CASE("origin containment for points, segments and polygons") {
  CHECK(contains_origin(Polygon{{{0, 0}}}));
  CHECK_FALSE(contains_origin(Polygon{{{1, 0}}}));
  CHECK(contains_origin(Polygon{{{-1, 0}, {1, 0}}}));
  CHECK_FALSE(contains_origin(Polygon{{{-1, 0.1}, {1, 0.1}}}));
  CHECK(contains_origin(Polygon{{{1, 0}, {0, 1}, {-1, -1}}}));
  CHECK(contains_origin(Polygon{{{0, 0}, {1, 0}, {0, 1}}}));  // on a vertex
  CHECK_FALSE(contains_origin(Polygon{{{1, 0}, {2, 0}, {1, 1}}}));
}

TEST_CASE("global distance equals cos of half the angular spread") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 1000; ++t) {
    const EigenphaseQuad e = random_quad(rng);
    const double expected = testsupport::circle_hull_distance({-e[0], -e[1], -e[2], -e[3]});
    const Nearest n = distance_to_origin(global_hull(e));
    CHECK(n.distance == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(n.point) == doctest::Approx(n.distance).epsilon(1e-12));
  }
}

TEST_CASE("local hull is the parallelogram of cross midpoints") {
  const EigenphaseQuad e = quad(0.3, -1.2, 2.0, 0.9);
  const Polygon h = local_hull(e);
  REQUIRE(h.size() == 4);
  for (auto [a, b] : {std::pair{0, 1}, {0, 3}, {2, 1}, {2, 3}}) {
    const Complex m = 0.5 * (e.point(a) + e.point(b));
    const bool found = std::any_of(h.vertices.begin(), h.vertices.end(), [&](Complex v) { return std::abs(v - m) < 1e-12; });
    CHECK(found);
  }
}

TEST_CASE("local distance matches a grid search over product weights") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const EigenphaseQuad e = random_quad(rng);
    const double grid = local_distance_by_grid(e, 400);
    const double exact = distance_to_origin(local_hull(e)).distance;
    CHECK(exact <= grid + 1e-12);
    CHECK(grid - exact < 5e-3);
    const LocalChartPoint c = nearest_on_local_chart(e, Complex(0, 0));
    CHECK(std::abs(c.point) == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("witness weights reproduce their target") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 500; ++t) {
    const EigenphaseQuad e = random_quad(rng);
    const HullAnalysis h = analyze(e);
    for (const WeightVector& w : {h.witness_global, h.witness_local}) {
      CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
      for (double x : w.w) CHECK(x >= -1e-15);
    }
    CHECK(std::abs(h.witness_global.combine(e) - h.nearest_point_global) < 1e-9);
    CHECK(std::abs(h.witness_local.combine(e) - h.nearest_point_local) < 1e-9);
    CHECK(h.witness_local[0] + h.witness_local[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(h.f_global <= h.f_local + 1e-12);
  }
  CHECK_THROWS_AS(witness_weights(quad(0, 0, 0, 0), Complex(0, 0), false), Error);
}

TEST_CASE("SWAP corner: product hull reaches the origin") {
  const EigenphaseQuad e = eigenphases_from_d({kPi / 4, kPi / 4, kPi / 4});
  const HullAnalysis h = analyze(e);
  CHECK(h.contains_origin_global);
  CHECK(h.contains_origin_local);
  CHECK(h.witness_local[0] == doctest::Approx(0.0));
  CHECK(h.witness_local[1] == doctest::Approx(0.25));
  CHECK(h.witness_local[2] == doctest::Approx(0.5));
  CHECK(h.witness_local[3] == doctest::Approx(0.25));
}

TEST_CASE("Weyl-chamber quads have equal global and product distances") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 500; ++t) {
    const HullAnalysis h = analyze(eigenphases_from_d(testsupport::random_chamber_point(rng)));
    CHECK(std::abs(h.f_global - h.f_local) < 1e-10);
    CHECK(h.contains_origin_global == h.contains_origin_local);
  }
}

TEST_CASE("vertex labels run A..D then P..S") {
  const EigenphaseQuad e = quad(0.1, 0.2, 0.3, 0.4);
  const auto v = labeled_vertices(e);
  REQUIRE(v.size() == 8);
  const char* names[] = {"A", "B", "C", "D", "P", "Q", "R", "S"};
  for (int k = 0; k < 8; ++k) CHECK(v[static_cast<std::size_t>(k)].label == names[k]);
  CHECK(std::abs(v[0].point - e.point(3)) < 1e-15);
  CHECK(std::abs(v[4].point - 0.5 * (e.point(2) + e.point(3))) < 1e-15);
}

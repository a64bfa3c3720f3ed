#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "uni2q/canonical.hpp"

namespace uni2q {

struct SpectrumPoint {
  double phase = 0.0;
  Complex point;
  int index = 1;  // 1-based Bell index
};

/// Convex polygon in the complex plane, counterclockwise, with duplicate
/// and collinear points removed. One vertex is a point, two a segment.
struct Polygon {
  std::vector<Complex> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
};

/// Weights over the four spectrum points, Bell order.
struct WeightVector {
  std::array<double, 4> w{};

  double operator[](int j) const { return w[static_cast<std::size_t>(j)]; }
  double sum() const { return w[0] + w[1] + w[2] + w[3]; }
  /// sum_j w_j exp(-i lambda_j)
  Complex combine(const EigenphaseQuad& e) const;
};

struct Nearest {
  double distance = 0.0;
  Complex point;
};

struct HullAnalysis {
  EigenphaseQuad eigenphases;
  Polygon global_hull;
  Polygon local_hull;
  bool contains_origin_global = false;
  bool contains_origin_local = false;
  double f_global = 1.0;
  double f_local = 1.0;
  WeightVector witness_global;
  WeightVector witness_local;
  Complex nearest_point_global;
  Complex nearest_point_local;
};

struct LabeledVertex {
  std::string label;
  Complex point;
};

std::array<SpectrumPoint, 4> spectrum_points(const EigenphaseQuad& e);

/// Andrew's monotone chain on a handful of points. Points closer than `tol`
/// are merged; vertices within `tol` of the line through their neighbours
/// are dropped.
Polygon convex_hull(std::span<const Complex> points, double tol);

/// Hull of the spectrum points exp(-i lambda_j).
Polygon global_hull(const EigenphaseQuad& e, double tol = 1e-9);

/// Product-input hull: midpoints of a point on [p1, p3] and a point on
/// [p2, p4], i.e. the parallelogram spanned by the four pairwise midpoints.
Polygon local_hull(const EigenphaseQuad& e, double tol = 1e-9);

/// Boundary counts as containment.
bool contains_origin(const Polygon& p, double tol = 1e-9);

/// Zero (with nearest point 0) when the origin is contained.
Nearest distance_to_origin(const Polygon& p, double tol = 1e-9);

/// Local chart: p(q13, q24) = [q13 p1 + (1-q13) p3 + q24 p2 + (1-q24) p4] / 2.
struct LocalChartPoint {
  double q13 = 0.5;
  double q24 = 0.5;
  Complex point;
};

/// Minimizes |p(q13, q24) - target| over [0,1]^2 in closed form. When the
/// minimizer is not unique, returns the one closest to the chart centre.
LocalChartPoint nearest_on_local_chart(const EigenphaseQuad& e, Complex target);

/// Weights reproducing `target` from the spectrum points. Global weights
/// use the sparsest support (vertex, then edge, then triangle) in index
/// order; local weights come from the chart and satisfy
/// w1 + w3 = w2 + w4 = 1/2. Throws TargetNotInHull beyond `tol`.
WeightVector witness_weights(const EigenphaseQuad& e, Complex target, bool local, double tol = 1e-9);

HullAnalysis analyze(const EigenphaseQuad& e, const Tolerances& tol = {});

/// A..D = exp(-i lambda_{4,1,2,3}); P..S = midpoints of DA, AB, BC, CD.
std::vector<LabeledVertex> labeled_vertices(const EigenphaseQuad& e);

}  // namespace uni2q

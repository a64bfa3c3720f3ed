#include "uni2q/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace uni2q {

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

Nearest nearest_on_segment(Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp(-dot(a, ab) / len2, 0.0, 1.0);
  const Complex p = a + s * ab;
  return {std::abs(p), p};
}

// Parameter of the point of [a, b] closest to t.
double segment_parameter(Complex a, Complex b, Complex t) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return 0.0;
  return std::clamp(dot(t - a, ab) / len2, 0.0, 1.0);
}

double chart_objective(Complex c, Complex u, Complex v, double q1, double q2) {
  return std::norm(c + q1 * u + q2 * v);
}

// argmin over s in [0,1] of |base + s dir|^2
double clamp_line(Complex base, Complex dir) {
  const double len2 = std::norm(dir);
  if (len2 == 0.0) return 0.5;
  return std::clamp(-dot(base, dir) / len2, 0.0, 1.0);
}

}  // namespace

Complex WeightVector::combine(const EigenphaseQuad& e) const {
  Complex z = 0.0;
  for (int j = 0; j < 4; ++j) z += (*this)[j] * e.point(j);
  return z;
}

std::array<SpectrumPoint, 4> spectrum_points(const EigenphaseQuad& e) {
  std::array<SpectrumPoint, 4> pts;
  for (int j = 0; j < 4; ++j) pts[static_cast<std::size_t>(j)] = {e[j], e.point(j), j + 1};
  return pts;
}

Polygon convex_hull(std::span<const Complex> points, double tol) {
  std::vector<Complex> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<Complex> pts;
  for (const Complex& p : sorted) {
    bool dup = false;
    for (auto it = pts.rbegin(); it != pts.rend() && p.real() - it->real() <= tol; ++it) {
      if (std::abs(p - *it) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  if (pts.size() <= 1) return Polygon{pts};

  // Turns within tol of straight count as collinear and are popped.
  auto not_left = [&](Complex o, Complex a, Complex b) { return cross(o, a, b) <= tol * std::abs(b - o); };

  const std::size_t n = pts.size();
  std::vector<Complex> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && not_left(h[k - 2], h[k - 1], pts[i])) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && not_left(h[k - 2], h[k - 1], pts[i])) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return Polygon{h};
}

Polygon global_hull(const EigenphaseQuad& e, double tol) {
  std::array<Complex, 4> pts;
  for (int j = 0; j < 4; ++j) pts[static_cast<std::size_t>(j)] = e.point(j);
  return convex_hull(pts, tol);
}

Polygon local_hull(const EigenphaseQuad& e, double tol) {
  const std::array<Complex, 4> mids = {
      0.5 * (e.point(0) + e.point(1)),
      0.5 * (e.point(0) + e.point(3)),
      0.5 * (e.point(2) + e.point(1)),
      0.5 * (e.point(2) + e.point(3)),
  };
  return convex_hull(mids, tol);
}

bool contains_origin(const Polygon& p, double tol) {
  const auto& v = p.vertices;
  if (v.empty()) return false;
  if (v.size() == 1) return std::abs(v[0]) <= tol;
  if (v.size() == 2) return nearest_on_segment(v[0], v[1]).distance <= tol;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex a = v[i];
    const Complex b = v[(i + 1) % v.size()];
    if (cross(a, b, Complex(0.0, 0.0)) < -tol * std::abs(b - a)) return false;
  }
  return true;
}

Nearest distance_to_origin(const Polygon& p, double tol) {
  const auto& v = p.vertices;
  if (v.empty()) return {std::numeric_limits<double>::infinity(), Complex(0.0, 0.0)};
  if (contains_origin(p, tol)) return {0.0, Complex(0.0, 0.0)};
  if (v.size() == 1) return {std::abs(v[0]), v[0]};
  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  Nearest best{std::numeric_limits<double>::infinity(), v[0]};
  for (std::size_t i = 0; i < edges; ++i) {
    const Nearest n = nearest_on_segment(v[i], v[(i + 1) % v.size()]);
    if (n.distance < best.distance) best = n;
  }
  return best;
}

LocalChartPoint nearest_on_local_chart(const EigenphaseQuad& e, Complex target) {
  const Complex p1 = e.point(0), p2 = e.point(1), p3 = e.point(2), p4 = e.point(3);
  // p(q) - target = c + q13 u + q24 v
  const Complex c = 0.5 * (p3 + p4) - target;
  const Complex u = 0.5 * (p1 - p3);
  const Complex v = 0.5 * (p2 - p4);

  Eigen::Matrix2d a;
  a << u.real(), v.real(), u.imag(), v.imag();
  const Eigen::Vector2d rhs(-c.real(), -c.imag());
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector2d sv = svd.singularValues();
  constexpr double rank_tol = 1e-12;

  double q1 = 0.5, q2 = 0.5;
  if (sv(0) <= rank_tol) {
    // Both segments degenerate: every chart point maps to the same place.
  } else if (sv(1) > rank_tol) {
    const Eigen::Vector2d q = a.colPivHouseholderQr().solve(rhs);
    if (q(0) >= 0.0 && q(0) <= 1.0 && q(1) >= 0.0 && q(1) <= 1.0) {
      q1 = q(0);
      q2 = q(1);
    } else {
      // Strictly convex: the minimizer sits on one of the four box edges.
      double best = std::numeric_limits<double>::infinity();
      for (double fixed : {0.0, 1.0}) {
        const double s2 = clamp_line(c + fixed * u, v);
        const double f2 = chart_objective(c, u, v, fixed, s2);
        if (f2 < best) best = f2, q1 = fixed, q2 = s2;
        const double s1 = clamp_line(c + fixed * v, u);
        const double f1 = chart_objective(c, u, v, s1, fixed);
        if (f1 < best) best = f1, q1 = s1, q2 = fixed;
      }
    }
  } else {
    // Rank one: the objective depends on s = n.q only.
    const Eigen::Vector2d n = svd.matrixV().col(0);
    const Eigen::Vector2d dir = svd.matrixU().col(0);
    const double s_lo = std::min(0.0, n(0)) + std::min(0.0, n(1));
    const double s_hi = std::max(0.0, n(0)) + std::max(0.0, n(1));
    const double s_star = std::clamp(dir.dot(rhs) / sv(0), s_lo, s_hi);
    const Eigen::Vector2d centre(0.5, 0.5);
    Eigen::Vector2d q0 = centre + (s_star - n.dot(centre)) * n;
    const Eigen::Vector2d m(-n(1), n(0));
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2; ++i) {
      if (std::abs(m(i)) < 1e-15) continue;
      double lo = (0.0 - q0(i)) / m(i);
      double hi = (1.0 - q0(i)) / m(i);
      if (lo > hi) std::swap(lo, hi);
      t_lo = std::max(t_lo, lo);
      t_hi = std::min(t_hi, hi);
    }
    const double t = t_lo <= t_hi ? std::clamp(0.0, t_lo, t_hi) : 0.5 * (t_lo + t_hi);
    q0 += t * m;
    q1 = std::clamp(q0(0), 0.0, 1.0);
    q2 = std::clamp(q0(1), 0.0, 1.0);
  }
  return {q1, q2, target + c + q1 * u + q2 * v};
}

WeightVector witness_weights(const EigenphaseQuad& e, Complex target, bool local, double tol) {
  if (local) {
    const LocalChartPoint cp = nearest_on_local_chart(e, target);
    if (std::abs(cp.point - target) > tol)
      throw Error(ErrorCode::TargetNotInHull, "target lies outside the local hull");
    WeightVector w;
    w.w = {cp.q13 / 2.0, cp.q24 / 2.0, (1.0 - cp.q13) / 2.0, (1.0 - cp.q24) / 2.0};
    return w;
  }

  std::array<Complex, 4> p;
  for (int j = 0; j < 4; ++j) p[static_cast<std::size_t>(j)] = e.point(j);

  for (std::size_t j = 0; j < 4; ++j) {
    if (std::abs(p[j] - target) <= tol) {
      WeightVector w;
      w.w[j] = 1.0;
      return w;
    }
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (std::abs(p[a] - p[b]) <= tol) continue;
      const double s = segment_parameter(p[a], p[b], target);
      if (std::abs(p[a] + s * (p[b] - p[a]) - target) <= tol) {
        WeightVector w;
        w.w[a] = 1.0 - s;
        w.w[b] = s;
        return w;
      }
    }
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      for (std::size_t c = b + 1; c < 4; ++c) {
        const double area = cross(p[a], p[b], p[c]);
        if (std::abs(area) <= tol) continue;
        double wa = cross(target, p[b], p[c]) / area;
        double wb = cross(p[a], target, p[c]) / area;
        double wc = cross(p[a], p[b], target) / area;
        if (std::min({wa, wb, wc}) < -tol) continue;
        wa = std::max(wa, 0.0);
        wb = std::max(wb, 0.0);
        wc = std::max(wc, 0.0);
        const double total = wa + wb + wc;
        WeightVector w;
        w.w[a] = wa / total;
        w.w[b] = wb / total;
        w.w[c] = wc / total;
        if (std::abs(w.combine(e) - target) <= tol) return w;
      }
    }
  }
  throw Error(ErrorCode::TargetNotInHull, "target lies outside the spectrum hull");
}

HullAnalysis analyze(const EigenphaseQuad& e, const Tolerances& tol) {
  HullAnalysis h;
  h.eigenphases = e;
  h.global_hull = global_hull(e, tol.geom);
  h.local_hull = local_hull(e, tol.geom);
  h.contains_origin_global = contains_origin(h.global_hull, tol.geom);
  h.contains_origin_local = contains_origin(h.local_hull, tol.geom);

  const Nearest ng = distance_to_origin(h.global_hull, tol.geom);
  const Nearest nl = distance_to_origin(h.local_hull, tol.geom);
  h.f_global = std::clamp(ng.distance, 0.0, 1.0);
  h.f_local = std::clamp(nl.distance, 0.0, 1.0);
  h.nearest_point_global = ng.point;
  h.nearest_point_local = nl.point;
  h.witness_global = witness_weights(e, ng.point, false, tol.geom);
  h.witness_local = witness_weights(e, nl.point, true, tol.geom);
  return h;
}

std::vector<LabeledVertex> labeled_vertices(const EigenphaseQuad& e) {
  const Complex a = e.point(3), b = e.point(0), c = e.point(1), d = e.point(2);
  return {
      {"A", a}, {"B", b}, {"C", c}, {"D", d},
      {"P", 0.5 * (d + a)}, {"Q", 0.5 * (a + b)}, {"R", 0.5 * (b + c)}, {"S", 0.5 * (c + d)},
  };
}

}  // namespace uni2q

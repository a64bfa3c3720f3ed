#include "uni2q/plot.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace uni2q {

namespace {

constexpr double kCentre = kCanvasSize / 2.0;

// Fixed three decimals; std::to_chars ignores the global locale.
std::string num(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  return std::string(buf, res.ptr);
}

std::pair<double, double> pixel(Complex z) { return {kCentre + kPlotRadius * z.real(), kCentre - kPlotRadius * z.imag()}; }

std::string xy(Complex z) {
  const auto [x, y] = pixel(z);
  return num(x) + "," + num(y);
}

void outline(std::ostringstream& out, const Polygon& p, const std::string& cls) {
  if (p.size() == 0) return;
  if (p.size() == 1) {
    const auto [x, y] = pixel(p.vertices[0]);
    out << "  <circle class=\"" << cls << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\"/>\n";
    return;
  }
  out << "  <" << (p.size() == 2 ? "polyline" : "polygon") << " class=\"" << cls << "\" points=\"";
  for (std::size_t k = 0; k < p.size(); ++k) out << (k ? " " : "") << xy(p.vertices[k]);
  out << "\"/>\n";
}

// Labels that land on the same pixel are merged into one, e.g. "A,B".
void labels(std::ostringstream& out, const std::vector<LabeledVertex>& vs, double push, const std::string& cls) {
  std::map<std::pair<std::string, std::string>, std::pair<Complex, std::string>> groups;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& v : vs) {
    const auto key = std::make_pair(num(v.point.real()), num(v.point.imag()));
    auto [it, fresh] = groups.try_emplace(key, v.point, v.label);
    if (fresh)
      order.push_back(key);
    else
      it->second.second += "," + v.label;
  }
  for (const auto& key : order) {
    const auto& [z, text] = groups[key];
    const double r = std::abs(z);
    const Complex dir = r > 1e-9 ? z / r : Complex(0.7071067811865476, 0.7071067811865476);
    const auto [x, y] = pixel(z + dir * push);
    out << "  <text class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\">" << text << "</text>\n";
  }
}

}  // namespace

std::string render_hull_svg(const HullAnalysis& h, bool include_local) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvasSize << "\" height=\"" << kCanvasSize
      << "\" viewBox=\"0 0 " << kCanvasSize << " " << kCanvasSize << "\">\n"
      << "  <style>\n"
      << "    .axis { stroke: #bbbbbb; stroke-width: 1; }\n"
      << "    .circle { fill: none; stroke: #444444; stroke-width: 1.5; }\n"
      << "    .global { fill: #1f77b4; fill-opacity: 0.12; stroke: #1f77b4; stroke-width: 2; }\n"
      << "    .local { fill: #d62728; fill-opacity: 0.10; stroke: #d62728; stroke-width: 2; stroke-dasharray: 8 5; }\n"
      << "    .spectrum { fill: #1f77b4; }\n"
      << "    .origin { fill: none; stroke: #000000; stroke-width: 1.5; }\n"
      << "    .nearest { stroke: #2ca02c; stroke-width: 2; }\n"
      << "    .nearest-local { stroke: #ff7f0e; stroke-width: 2; stroke-dasharray: 4 3; }\n"
      << "    text { font-family: sans-serif; font-size: 20px; text-anchor: middle; dominant-baseline: middle; }\n"
      << "    .label-local { fill: #d62728; font-size: 16px; }\n"
      << "  </style>\n"
      << "  <rect width=\"" << kCanvasSize << "\" height=\"" << kCanvasSize << "\" fill=\"#ffffff\"/>\n"
      << "  <line class=\"axis\" x1=\"40\" y1=\"400\" x2=\"760\" y2=\"400\"/>\n"
      << "  <line class=\"axis\" x1=\"400\" y1=\"40\" x2=\"400\" y2=\"760\"/>\n"
      << "  <circle class=\"circle\" cx=\"400\" cy=\"400\" r=\"" << num(kPlotRadius) << "\"/>\n";

  outline(out, h.global_hull, "global");
  if (include_local) outline(out, h.local_hull, "local");

  for (int j = 0; j < 4; ++j) {
    const auto [x, y] = pixel(h.eigenphases.point(j));
    out << "  <circle class=\"spectrum\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"5\"/>\n";
  }

  out << "  <circle class=\"origin\" cx=\"400\" cy=\"400\" r=\"5\"/>\n";
  if (!h.contains_origin_global)
    out << "  <line class=\"nearest\" x1=\"400\" y1=\"400\" x2=\"" << num(pixel(h.nearest_point_global).first)
        << "\" y2=\"" << num(pixel(h.nearest_point_global).second) << "\"/>\n";
  if (include_local && !h.contains_origin_local && std::abs(h.nearest_point_local - h.nearest_point_global) > 1e-9)
    out << "  <line class=\"nearest-local\" x1=\"400\" y1=\"400\" x2=\"" << num(pixel(h.nearest_point_local).first)
        << "\" y2=\"" << num(pixel(h.nearest_point_local).second) << "\"/>\n";

  const std::vector<LabeledVertex> all = labeled_vertices(h.eigenphases);
  labels(out, {all.begin(), all.begin() + 4}, 0.08, "label");
  if (include_local) labels(out, {all.begin() + 4, all.end()}, -0.07, "label-local");
  out << "  <text x=\"385\" y=\"420\">O</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace uni2q

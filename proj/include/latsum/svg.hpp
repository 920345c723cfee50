#pragma once

// SVG 1.1 rendering of planar lattice polygons with point markers.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "latsum/error.hpp"
#include "latsum/polytope.hpp"

namespace latsum::svg {

struct LabeledPolygon {
  std::string label;
  LatticePolytope polytope;
};

struct FigureSpec {
  std::vector<LabeledPolygon> polygons;
  std::int64_t xMin = 0, xMax = 0, yMin = 0, yMax = 0;
  std::vector<LatticePoint> bullets;  // realized points
  std::vector<LatticePoint> crosses;  // missing points
  bool markOrigin = true;
};

inline bool in_range(const FigureSpec& s, const LatticePoint& p) {
  return p.size() == 2 && p[0] >= s.xMin && p[0] <= s.xMax && p[1] >= s.yMin && p[1] <= s.yMax;
}

inline void validate(const FigureSpec& s) {
  if (s.xMin > s.xMax || s.yMin > s.yMax) throw DomainError("invalid_range", "empty figure range");
  auto check = [&](const LatticePoint& p) {
    if (!in_range(s, p)) throw DomainError("out_of_range", "figure coordinate outside the declared range");
  };
  for (const auto& poly : s.polygons) {
    if (poly.polytope.dim() != 2) throw DomainError("dimension_mismatch", "figures are planar");
    for (const auto& v : poly.polytope.vertices()) check(v);
  }
  for (const auto& p : s.bullets) check(p);
  for (const auto& p : s.crosses) check(p);
}

/// The sum P + Q with bullets on M cap P, M cap Q and the sumset, and crosses
/// on the points of M cap (P + Q) outside the sumset.
inline FigureSpec sum_figure(const LatticePolytope& p, const LatticePolytope& q, const std::string& lp = "P",
                             const std::string& lq = "P'") {
  if (p.dim() != 2 || q.dim() != 2) throw DomainError("dimension_mismatch", "figures are planar");
  FigureSpec s;
  const auto sum = minkowski_sum(p, q);
  s.polygons = {{lp, p}, {lq, q}, {lp + "+" + lq, sum}};
  const auto report = problem1_check(p, q);
  std::vector<LatticePoint> pts = lattice_points(p);
  for (const auto& x : lattice_points(q)) pts.push_back(x);
  for (const auto& x : lattice_points(sum))
    if (!std::binary_search(report.missing.begin(), report.missing.end(), x)) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  s.bullets = pts;
  s.crosses = report.missing;
  s.xMin = s.xMax = 0;
  s.yMin = s.yMax = 0;
  for (const auto& poly : s.polygons)
    for (const auto& v : poly.polytope.vertices()) {
      s.xMin = std::min(s.xMin, v[0]);
      s.xMax = std::max(s.xMax, v[0]);
      s.yMin = std::min(s.yMin, v[1]);
      s.yMax = std::max(s.yMax, v[1]);
    }
  --s.xMin, ++s.xMax, --s.yMin, ++s.yMax;
  return s;
}

namespace detail {

/// Counterclockwise order around the vertex centroid (exact comparisons).
inline std::vector<LatticePoint> cyclic_order(std::vector<LatticePoint> vs) {
  if (vs.size() < 3) return vs;
  const auto n = static_cast<std::int64_t>(vs.size());
  std::int64_t sx = 0, sy = 0;
  for (const auto& v : vs) sx += v[0], sy += v[1];
  // Work in coordinates scaled by n so the centroid is integral.
  auto half = [&](std::int64_t x, std::int64_t y) { return y > 0 || (y == 0 && x > 0) ? 0 : 1; };
  std::sort(vs.begin(), vs.end(), [&](const LatticePoint& a, const LatticePoint& b) {
    const std::int64_t ax = a[0] * n - sx, ay = a[1] * n - sy, bx = b[0] * n - sx, by = b[1] * n - sy;
    if (half(ax, ay) != half(bx, by)) return half(ax, ay) < half(bx, by);
    return ax * by - ay * bx > 0;
  });
  return vs;
}

constexpr int kUnit = 40;
constexpr int kMargin = 30;

inline const char* fill_color(std::size_t i) {
  static const char* colors[] = {"#9ecae1", "#a1d99b", "#fdd0a2", "#dadaeb"};
  return colors[i % 4];
}

}  // namespace detail

inline std::string render(const FigureSpec& s) {
  validate(s);
  using detail::kMargin;
  using detail::kUnit;
  const auto w = (s.xMax - s.xMin) * kUnit + 2 * kMargin;
  const auto h = (s.yMax - s.yMin) * kUnit + 2 * kMargin;
  auto X = [&](std::int64_t x) { return (x - s.xMin) * kUnit + kMargin; };
  auto Y = [&](std::int64_t y) { return (s.yMax - y) * kUnit + kMargin; };
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
    << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  o << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (auto x = s.xMin; x <= s.xMax; ++x)
    o << "<line x1=\"" << X(x) << "\" y1=\"" << Y(s.yMin) << "\" x2=\"" << X(x) << "\" y2=\"" << Y(s.yMax) << "\"/>\n";
  for (auto y = s.yMin; y <= s.yMax; ++y)
    o << "<line x1=\"" << X(s.xMin) << "\" y1=\"" << Y(y) << "\" x2=\"" << X(s.xMax) << "\" y2=\"" << Y(y) << "\"/>\n";
  o << "</g>\n";
  if (s.xMin <= 0 && 0 <= s.xMax && s.yMin <= 0 && 0 <= s.yMax) {
    o << "<g stroke=\"#555555\" stroke-width=\"1.5\">\n"
      << "<line x1=\"" << X(s.xMin) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(s.xMax) << "\" y2=\"" << Y(0) << "\"/>\n"
      << "<line x1=\"" << X(0) << "\" y1=\"" << Y(s.yMin) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(s.yMax) << "\"/>\n"
      << "</g>\n";
  }
  for (std::size_t i = 0; i < s.polygons.size(); ++i) {
    const auto& poly = s.polygons[i];
    o << "<polygon points=\"";
    const auto vs = detail::cyclic_order(poly.polytope.vertices());
    for (std::size_t k = 0; k < vs.size(); ++k) o << (k ? " " : "") << X(vs[k][0]) << ',' << Y(vs[k][1]);
    o << "\" fill=\"" << detail::fill_color(i) << "\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  o << "<g fill=\"black\">\n";
  for (const auto& p : s.bullets) o << "<circle cx=\"" << X(p[0]) << "\" cy=\"" << Y(p[1]) << "\" r=\"4\"/>\n";
  o << "</g>\n";
  o << "<g stroke=\"#c00000\" stroke-width=\"2.5\">\n";
  for (const auto& p : s.crosses) {
    const auto cx = X(p[0]), cy = Y(p[1]);
    o << "<line x1=\"" << cx - 6 << "\" y1=\"" << cy - 6 << "\" x2=\"" << cx + 6 << "\" y2=\"" << cy + 6 << "\"/>\n"
      << "<line x1=\"" << cx - 6 << "\" y1=\"" << cy + 6 << "\" x2=\"" << cx + 6 << "\" y2=\"" << cy - 6 << "\"/>\n";
  }
  o << "</g>\n";
  o << "<g font-family=\"serif\" font-size=\"16\" font-style=\"italic\">\n";
  if (s.markOrigin && in_range(s, {0, 0}))
    o << "<text x=\"" << X(0) - 16 << "\" y=\"" << Y(0) + 18 << "\" font-style=\"normal\" font-weight=\"bold\">O</text>\n";
  for (const auto& poly : s.polygons) {
    const auto& vs = poly.polytope.vertices();
    if (vs.empty() || poly.label.empty()) continue;
    // Right of the rightmost (then lowest) vertex.
    auto v = *std::max_element(vs.begin(), vs.end(), [](const auto& a, const auto& b) {
      return a[0] != b[0] ? a[0] < b[0] : a[1] > b[1];
    });
    o << "<text x=\"" << X(v[0]) + 8 << "\" y=\"" << Y(v[1]) + 18 << "\">" << poly.label << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace latsum::svg

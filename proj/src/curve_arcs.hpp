#pragma once

#include <algorithm>
#include <vector>

#include "liouville/curve_topo.hpp"

namespace liouville::detail {

// One passage of the curve through a crossing.
struct Visit {
  double param;
  std::size_t crossing;
  std::size_t edge;
  Point point;
};

inline std::vector<Visit> sorted_visits(const std::vector<Crossing>& xs) {
  std::vector<Visit> visits;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    visits.push_back({xs[i].param_a(), i, xs[i].edge_a, xs[i].point});
    visits.push_back({xs[i].param_b(), i, xs[i].edge_b, xs[i].point});
  }
  std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) { return a.param < b.param; });
  return visits;
}

// Curve vertices strictly between two visits, bracketed by the given end points.
inline std::vector<Point> arc_points(const PolyCurve& c, const Visit& a, const Visit& b, Point from, Point to) {
  const std::size_t n = c.size();
  std::vector<Point> pts{from};
  if (!(b.param > a.param && b.edge == a.edge)) {
    std::size_t k = (a.edge + 1) % n;
    while (true) {
      pts.push_back(c.vertices[k]);
      if (k == b.edge) break;
      k = (k + 1) % n;
    }
  }
  pts.push_back(to);
  return pts;
}

inline std::vector<Point> dedup(const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (auto p : pts)
    if (out.empty() || out.back() != p) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

}  // namespace liouville::detail

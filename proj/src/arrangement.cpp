#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "curve_arcs.hpp"
#include "liouville/curve_topo.hpp"

namespace liouville {
namespace {

using detail::Visit;

double shoelace(const std::vector<Point>& pts) {
  double a = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) a += geom::cross(pts[k], pts[(k + 1) % pts.size()]);
  return 0.5 * a;
}

double clearance(const PolyCurve& c, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.size(); ++k)
    best = std::min(best, geom::segment_distance(p, c.vertices[k], c.vertices[(k + 1) % c.size()]));
  return best;
}

// Point inside the face, as far from the curve as the candidates allow.
Point face_witness(const PolyCurve& c, const std::vector<Point>& walk, double diameter) {
  const std::size_t m = walk.size();
  const std::size_t stride = std::max<std::size_t>(1, m / 64);
  Point best{};
  double best_gap = -1.0;
  for (std::size_t k = 0; k < m; k += stride) {
    Point a = walk[k], b = walk[(k + 1) % m];
    double len = std::abs(b - a);
    if (len == 0.0) continue;
    Point normal = Point(0.0, 1.0) * (b - a) / len;
    for (double d = 0.05 * len; d < diameter; d *= 2.0) {
      Point p = 0.5 * (a + b) + d * normal;
      if (winding_number(walk, p) != 1) break;
      double gap = clearance(c, p);
      if (gap > best_gap) {
        best_gap = gap;
        best = p;
      }
    }
  }
  if (best_gap <= 0.0) throw Error(ErrorCode::ArrangementCorrupt, "no interior witness found for a bounded face");
  return best;
}

}  // namespace

Arrangement build_arrangement(const PolyCurve& input) {
  validate_curve(input);
  if (!input.corners.empty()) self_intersections(input);  // crossings must stay clear of corners
  Arrangement arr;
  arr.curve = round_corners(input);
  const PolyCurve& c = arr.curve;
  arr.crossings = self_intersections(c);
  const std::size_t K = arr.crossings.size();

  double x0 = c.vertices[0].real(), x1 = x0, y0 = c.vertices[0].imag(), y1 = y0;
  for (auto p : c.vertices) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  const double diameter = std::hypot(x1 - x0, y1 - y0);

  std::vector<std::vector<Point>> walks;
  if (K == 0) {
    std::vector<Point> w = c.vertices;
    std::vector<Point> r(w.rbegin(), w.rend());
    walks = shoelace(w) > 0.0 ? std::vector{w, r} : std::vector{r, w};
    arr.n_vertices = 1;
    arr.n_edges = 1;
  } else {
    const std::vector<Visit> visits = detail::sorted_visits(arr.crossings);
    const std::size_t V = visits.size();

    // Half-edge 2i runs along arc i (visit i -> i+1), 2i+1 runs back.
    std::vector<std::vector<Point>> hp(2 * V);
    std::vector<std::size_t> origin(2 * V), target(2 * V);
    std::vector<double> leave(2 * V);
    for (std::size_t i = 0; i < V; ++i) {
      const Visit& a = visits[i];
      const Visit& b = visits[(i + 1) % V];
      hp[2 * i] = detail::arc_points(c, a, b, a.point, b.point);
      hp[2 * i + 1] = std::vector<Point>(hp[2 * i].rbegin(), hp[2 * i].rend());
      origin[2 * i] = a.crossing;
      target[2 * i] = b.crossing;
      origin[2 * i + 1] = b.crossing;
      target[2 * i + 1] = a.crossing;
      leave[2 * i] = std::arg(c.edge(a.edge));
      leave[2 * i + 1] = std::arg(-c.edge(b.edge));
    }
    std::vector<std::vector<std::size_t>> around(K);
    for (std::size_t h = 0; h < 2 * V; ++h) around[origin[h]].push_back(h);
    for (auto& list : around) {
      if (list.size() != 4) throw Error(ErrorCode::ArrangementCorrupt, "crossing without four incident half-edges");
      std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) { return leave[a] < leave[b]; });
    }
    auto next = [&](std::size_t h) {
      const auto& list = around[target[h]];
      std::size_t twin = h ^ 1U;
      std::size_t pos = static_cast<std::size_t>(std::find(list.begin(), list.end(), twin) - list.begin());
      return list[(pos + 3) % 4];
    };
    std::vector<bool> used(2 * V, false);
    for (std::size_t h0 = 0; h0 < 2 * V; ++h0) {
      if (used[h0]) continue;
      std::vector<Point> walk;
      std::size_t h = h0;
      while (!used[h]) {
        used[h] = true;
        walk.insert(walk.end(), hp[h].begin(), hp[h].end() - 1);
        h = next(h);
      }
      if (h != h0) throw Error(ErrorCode::ArrangementCorrupt, "face walk did not close");
      walks.push_back(std::move(walk));
    }
    arr.n_vertices = K;
    arr.n_edges = V;
  }

  std::size_t unbounded = walks.size();
  for (std::size_t f = 0; f < walks.size(); ++f) {
    if (shoelace(walks[f]) < 0.0) {
      if (unbounded != walks.size()) throw Error(ErrorCode::ArrangementCorrupt, "more than one unbounded face");
      unbounded = f;
    }
  }
  if (unbounded == walks.size()) throw Error(ErrorCode::ArrangementCorrupt, "no unbounded face");
  const long euler = static_cast<long>(arr.n_vertices) - static_cast<long>(arr.n_edges) + static_cast<long>(walks.size());
  if (euler != 2) throw Error(ErrorCode::ArrangementCorrupt, "Euler characteristic " + std::to_string(euler));

  for (std::size_t f = 0; f < walks.size(); ++f) {
    if (f == unbounded) continue;
    Face face;
    face.boundary = walks[f];
    face.area = shoelace(walks[f]);
    face.witness = face_witness(c, walks[f], diameter);
    face.winding = winding_number(c.vertices, face.witness);
    arr.faces.push_back(std::move(face));
  }
  Face outer;
  outer.bounded = false;
  outer.boundary = walks[unbounded];
  outer.area = shoelace(walks[unbounded]);
  outer.witness = Point(x1 + diameter, y1 + diameter);
  outer.winding = 0;
  arr.faces.push_back(std::move(outer));
  return arr;
}

}  // namespace liouville

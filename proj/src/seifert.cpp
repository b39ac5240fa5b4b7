#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curve_arcs.hpp"
#include "liouville/curve_topo.hpp"

namespace liouville {
namespace {

bool is_simple(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      auto rel = geom::classify_segments(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]);
      if (rel != geom::SegmentRelation::Disjoint) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<SeifertCircle> seifert_decompose(const PolyCurve& input) {
  validate_curve(input);
  if (!input.corners.empty()) self_intersections(input);
  const PolyCurve c = round_corners(input);
  const auto crossings = self_intersections(c);
  const int total = rotation_index(input).index;
  std::vector<SeifertCircle> out;
  if (crossings.empty()) {
    out.push_back({c.vertices, static_cast<int>(std::lround(turning_number(c.vertices)))});
  } else {
    const auto visits = detail::sorted_visits(crossings);
    const std::size_t V = visits.size();
    // Smoothed strands leave each crossing a distance delta away from it.
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < V; ++i) {
      const auto& v = visits[i];
      double len = std::abs(c.edge(v.edge)), t = v.param - static_cast<double>(v.edge);
      delta = std::min({delta, t * len, (1.0 - t) * len});
      const auto& w = visits[(i + 1) % V];
      if (w.edge == v.edge && w.param > v.param) delta = std::min(delta, std::abs(w.point - v.point));
    }
    delta *= 0.25;
    std::vector<std::size_t> partner(V);
    for (std::size_t i = 0; i < V; ++i)
      for (std::size_t j = 0; j < V; ++j)
        if (j != i && visits[j].crossing == visits[i].crossing) partner[i] = j;
    auto unit = [&](std::size_t e) { return c.edge(e) / std::abs(c.edge(e)); };

    std::vector<bool> used(V, false);
    for (std::size_t start = 0; start < V; ++start) {
      if (used[start]) continue;
      std::vector<Point> loop;
      std::size_t arc = start;
      while (!used[arc]) {
        used[arc] = true;
        const auto& a = visits[arc];
        const auto& b = visits[(arc + 1) % V];
        auto pts = detail::arc_points(c, a, b, a.point + delta * unit(a.edge), b.point - delta * unit(b.edge));
        loop.insert(loop.end(), pts.begin(), pts.end());
        arc = partner[(arc + 1) % V];
      }
      if (arc != start) throw Error(ErrorCode::DecompositionCorrupt, "smoothing left an open strand");
      loop = detail::dedup(loop);
      if (loop.size() < 3 || !is_simple(loop))
        throw Error(ErrorCode::DecompositionCorrupt, "smoothed component is not a simple closed curve");
      out.push_back({loop, static_cast<int>(std::lround(turning_number(loop)))});
    }
  }
  int sum = 0;
  for (const auto& s : out) {
    if (std::abs(s.index) != 1) throw Error(ErrorCode::DecompositionCorrupt, "simple component with index " + std::to_string(s.index));
    sum += s.index;
  }
  if (sum != total)
    throw Error(ErrorCode::NumericalInconsistency, "Seifert indices sum to " + std::to_string(sum) + ", rotation index is " +
                                                       std::to_string(total));
  return out;
}

Extendability extendability_check(const PolyCurve& c, std::uint64_t seed) {
  Extendability ex;
  ex.rotation_index = rotation_index(c).index;
  ex.index_ok = ex.rotation_index >= 1;
  const Arrangement arr = build_arrangement(c);
  ex.blank = blank_word(arr, seed);
  ex.contraction = contract(ex.blank.word);
  ex.word_contracts = ex.contraction.fully_contracted;
  if (!ex.word_contracts) return ex;

  // Curve with the letter points spliced in; each contraction step cuts off
  // the arc between its end letters, closed by the chord along the ray.
  const PolyCurve& g = arr.curve;
  const std::size_t L = ex.blank.word.size();
  std::vector<std::size_t> order(L);
  for (std::size_t k = 0; k < L; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ex.blank.params[a] < ex.blank.params[b]; });
  std::vector<Point> pts;
  std::vector<std::size_t> pos(L);
  std::size_t next = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    pts.push_back(g.vertices[k]);
    while (next < L && ex.blank.params[order[next]] < static_cast<double>(k + 1)) {
      pos[order[next]] = pts.size();
      pts.push_back(ex.blank.points[order[next]]);
      ++next;
    }
  }
  int sum = 0;
  for (const auto& step : ex.contraction.steps) {
    const std::size_t M = pts.size();
    const std::size_t first = pos[step.removed.front()], last = pos[step.removed.back()];
    std::vector<Point> piece, rest;
    for (std::size_t k = first;; k = (k + 1) % M) {
      piece.push_back(pts[k]);
      if (k == last) break;
    }
    for (std::size_t k = last;; k = (k + 1) % M) {
      rest.push_back(pts[k]);
      if (k == first) break;
    }
    for (auto& p : pos) p = (p + M - last) % M;
    pts = std::move(rest);
    int r = static_cast<int>(std::lround(turning_number(detail::dedup(piece))));
    ex.piece_indices.push_back(r);
    sum += r;
  }
  int r = static_cast<int>(std::lround(turning_number(detail::dedup(pts))));
  ex.piece_indices.push_back(r);
  sum += r;
  ex.gluing_identity_holds = ex.rotation_index == sum - static_cast<int>(ex.piece_indices.size() - 1);
  return ex;
}

}  // namespace liouville

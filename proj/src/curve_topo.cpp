#include "liouville/curve_topo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace liouville {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) { return std::remainder(a, kTwoPi); }

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_draw(std::uint64_t& state) { return static_cast<double>(splitmix(state) >> 11) * 0x1p-53; }

double vertex_turn(const PolyCurve& c, std::size_t k) {
  const std::size_t n = c.size();
  return std::arg(c.edge(k) / c.edge((k + n - 1) % n));
}

// Exterior angle at a corner, with the +-pi tie resolved by which side of
// the incoming tangent line the outgoing arc lies on.
double exterior_angle(const PolyCurve& c, std::size_t v, double t_in, double t_out) {
  double eps = wrap(t_out - t_in);
  if (std::abs(eps) < kPi - 1e-9) return eps;
  const Point p = c.vertices[v];
  const Point probe = c.vertices[(v + 3) % c.size()];
  double side = geom::cross(std::polar(1.0, t_in), probe - p);
  if (std::abs(side) <= 1e-9 * std::abs(probe - p))
    throw Error(ErrorCode::TieBreakAmbiguous, "outgoing arc lies on the incoming tangent line at vertex " + std::to_string(v));
  return side > 0.0 ? kPi : -kPi;
}

bool edge_near_corner(const PolyCurve& c, std::size_t e) {
  const std::size_t n = c.size();
  for (const auto& k : c.corners) {
    for (std::size_t d = 0; d < 4; ++d)
      if ((k.vertex + n - 2 + d) % n == e) return true;
  }
  return false;
}

}  // namespace

const Corner* PolyCurve::corner_at(std::size_t v) const {
  for (const auto& k : corners)
    if (k.vertex == v) return &k;
  return nullptr;
}

void validate_curve(const PolyCurve& c) {
  const std::size_t n = c.size();
  if (n < 8) throw Error(ErrorCode::InvalidInput, "curve needs at least 8 vertices");
  for (const auto& p : c.vertices) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) throw Error(ErrorCode::InvalidInput, "non-finite vertex");
    if (!geom::on_lattice(p)) throw Error(ErrorCode::InvalidInput, "vertex off the snapping lattice or beyond 2^20");
  }
  for (std::size_t k = 0; k < n; ++k)
    if (c.vertices[k] == c.vertices[(k + 1) % n])
      throw Error(ErrorCode::InvalidInput, "zero-length edge at vertex " + std::to_string(k));
  std::set<std::size_t> seen;
  for (const auto& k : c.corners) {
    if (k.vertex >= n || !seen.insert(k.vertex).second) throw Error(ErrorCode::InvalidInput, "bad corner index");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (c.corner_at(k)) continue;
    if (std::abs(vertex_turn(c, k)) >= kMaxVertexTurn + c.turn_allowance)
      throw Error(ErrorCode::InvalidInput, "turning " + std::to_string(vertex_turn(c, k)) + " rad at unmarked vertex " +
                                               std::to_string(k));
  }
}

PolyCurve make_curve(std::vector<Point> vertices, std::vector<Corner> corners) {
  PolyCurve c;
  c.vertices.reserve(vertices.size());
  for (auto p : vertices) c.vertices.push_back(geom::snap(p));
  c.corners = std::move(corners);
  std::sort(c.corners.begin(), c.corners.end(), [](const Corner& a, const Corner& b) { return a.vertex < b.vertex; });
  validate_curve(c);
  double area = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) area += geom::cross(c.vertices[k], c.vertices[(k + 1) % c.size()]);
  c.ccw = area > 0.0;
  return c;
}

double turning_number(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Point a = pts[k] - pts[(k + n - 1) % n], b = pts[(k + 1) % n] - pts[k];
    total += std::arg(b / a);
  }
  return total / kTwoPi;
}

RotationReport rotation_index(const PolyCurve& c) {
  validate_curve(c);
  const std::size_t n = c.size();
  RotationReport r;
  for (std::size_t k = 0; k < n; ++k) {
    const Corner* corner = c.corner_at(k);
    if (!corner) {
      r.smooth_turning += vertex_turn(c, k);
      continue;
    }
    double e_in = std::arg(c.edge((k + n - 1) % n)), e_out = std::arg(c.edge(k));
    double t_in = std::isnan(corner->tangent_in) ? e_in : corner->tangent_in;
    double t_out = std::isnan(corner->tangent_out) ? e_out : corner->tangent_out;
    double eps = exterior_angle(c, k, t_in, t_out);
    r.smooth_turning += wrap(t_in - e_in) + wrap(e_out - t_out);
    r.exterior_angles.push_back(eps);
  }
  r.total_turning = r.smooth_turning;
  for (double e : r.exterior_angles) r.total_turning += e;
  double value = r.total_turning / kTwoPi;
  if (std::abs(value - std::round(value)) >= kIntegerGuard)
    throw Error(ErrorCode::NumericalInconsistency, "total turning / 2pi = " + std::to_string(value) + " is not an integer");
  r.index = static_cast<int>(std::lround(value));
  return r;
}

std::vector<Crossing> self_intersections(const PolyCurve& c) {
  validate_curve(c);
  const std::size_t n = c.size();
  std::vector<Crossing> out;
  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> boxes(n);
  for (std::size_t k = 0; k < n; ++k) {
    Point a = c.vertices[k], b = c.vertices[(k + 1) % n];
    boxes[k] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()), std::min(a.imag(), b.imag()),
                std::max(a.imag(), b.imag())};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (boxes[i].x1 < boxes[j].x0 || boxes[j].x1 < boxes[i].x0 || boxes[i].y1 < boxes[j].y0 || boxes[j].y1 < boxes[i].y0)
        continue;
      Point a = c.vertices[i], b = c.vertices[(i + 1) % n], p = c.vertices[j], q = c.vertices[(j + 1) % n];
      auto rel = geom::classify_segments(a, b, p, q);
      if (rel == geom::SegmentRelation::Disjoint) continue;
      if (rel == geom::SegmentRelation::Degenerate)
        throw Error(ErrorCode::NotGenericPosition,
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " touch without crossing");
      Crossing x;
      x.edge_a = i;
      x.edge_b = j;
      std::tie(x.t_a, x.t_b) = geom::crossing_params(a, b, p, q);
      x.point = a + x.t_a * (b - a);
      x.angle = std::asin(std::min(1.0, std::abs(geom::cross(b - a, q - p)) / (std::abs(b - a) * std::abs(q - p))));
      if (x.angle < kTransversalAngle)
        throw Error(ErrorCode::NotGenericPosition, "crossing angle " + std::to_string(x.angle) + " below 0.05 rad");
      if (edge_near_corner(c, i) || edge_near_corner(c, j))
        throw Error(ErrorCode::NotGenericPosition, "crossing within 2 edges of a corner");
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) { return x.param_a() < y.param_a(); });
  return out;
}

PolyCurve jitter(const PolyCurve& c, std::uint64_t seed, double magnitude) {
  validate_curve(c);
  const std::size_t n = c.size();
  double min_edge = std::abs(c.edge(0));
  for (std::size_t k = 1; k < n; ++k) min_edge = std::min(min_edge, std::abs(c.edge(k)));
  if (!(magnitude >= 0.0) || magnitude >= 0.1 * min_edge)
    throw Error(ErrorCode::InvalidInput, "jitter magnitude must be below 0.1 x minimum edge length");
  if (magnitude == 0.0) return c;
  const int before = rotation_index(c).index;
  PolyCurve out = c;
  std::uint64_t state = seed;
  for (auto& p : out.vertices) {
    double r = magnitude * std::sqrt(unit_draw(state));
    double a = kTwoPi * unit_draw(state);
    p = geom::snap(p + std::polar(r, a));
  }
  out.turn_allowance = c.turn_allowance + 4.0 * magnitude / min_edge;
  validate_curve(out);
  const int after = rotation_index(out).index;
  if (after != before)
    throw Error(ErrorCode::JitterTooLarge, "rotation index changed from " + std::to_string(before) + " to " + std::to_string(after));
  return out;
}

PolyCurve round_corners(const PolyCurve& c) {
  const std::size_t n = c.size();
  PolyCurve out = c;
  out.corners.clear();
  if (!c.corners.empty()) out.turn_allowance = std::max(c.turn_allowance, kPi - 0.1 - kMaxVertexTurn);
  for (const auto& k : c.corners) {
    Point p0 = c.vertices[(k.vertex + n - 2) % n], ctl = c.vertices[k.vertex], p2 = c.vertices[(k.vertex + 2) % n];
    for (int d = -1; d <= 1; ++d) {
      double s = 0.25 * (d + 2);
      Point b = (1 - s) * (1 - s) * p0 + 2 * s * (1 - s) * ctl + s * s * p2;
      out.vertices[(k.vertex + n + static_cast<std::size_t>(d + 1) - 1) % n] = geom::snap(b);
    }
  }
  return out;
}

double corner_angle_check(const PolyCurve& c) {
  if (c.corners.size() != 1)
    throw Error(ErrorCode::WrongArity, "expected exactly one corner, got " + std::to_string(c.corners.size()));
  return rotation_index(c).smooth_turning;
}

int winding_number(const std::vector<Point>& pts, Point p) {
  double total = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) total += std::arg((pts[(k + 1) % pts.size()] - p) / (pts[k] - p));
  return static_cast<int>(std::lround(total / kTwoPi));
}

namespace curves {
namespace {

PolyCurve sampled(std::size_t n, double offset, auto&& f) {
  std::vector<Point> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(kTwoPi * (static_cast<double>(k) + offset) / static_cast<double>(n));
  return make_curve(std::move(v));
}

}  // namespace

PolyCurve circle(std::size_t n, double radius) {
  return sampled(n, 0.0, [radius](double t) { return std::polar(radius, t); });
}

PolyCurve limacon(std::size_t n) {
  return sampled(n, 0.0, [](double t) { return (1.0 + 2.0 * std::cos(t)) * std::polar(1.0, t); });
}

PolyCurve figure_eight(std::size_t n) {
  return sampled(n, 0.5, [](double t) { return Point(std::sin(t), std::sin(t) * std::cos(t)); });
}

PolyCurve marked_square(std::size_t per_side) {
  const Point start[4] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  const Point dir[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Point> v;
  std::vector<Corner> corners;
  for (int s = 0; s < 4; ++s) {
    corners.push_back({v.size(), std::arg(dir[(s + 3) % 4]), std::arg(dir[s])});
    for (std::size_t k = 0; k < per_side; ++k)
      v.push_back(start[s] + dir[s] * (2.0 * static_cast<double>(k) / static_cast<double>(per_side)));
  }
  return make_curve(std::move(v), std::move(corners));
}

PolyCurve overlapping_band(std::size_t per_unit) {
  // Inward-winding band: the second turn sits 0.5 inside the first. A bulge
  // at phi = pi widens the single-cover part, and the whole picture is turned
  // by 0.6 rad so that the escape rays read the word a0- b1+ c0+ a1+ b0+.
  const double slope = -0.08, overlap = 1.5, end = kTwoPi + overlap, turn = 0.6;
  auto r_in = [=](double phi) { return 1.0 + slope * phi; };
  auto r_out = [=](double phi) { return 2.0 + slope * phi + 0.3 * std::exp(-std::pow((phi - kPi) / 0.5, 2)); };
  auto at = [=](double r, double phi) { return std::polar(r, phi + turn); };
  auto tangent = [=](auto&& r, double phi, double sign) {
    const double h = 1e-6;
    return std::arg(sign * (at(r(phi + h), phi + h) - at(r(phi - h), phi - h)));
  };
  const double u = static_cast<double>(per_unit);
  const std::size_t m = static_cast<std::size_t>(std::ceil(u));
  std::vector<Point> v;
  std::vector<Corner> corners;
  // radial edge out at phi = 0
  corners.push_back({v.size(), tangent(r_in, 0.0, -1.0), turn});
  for (std::size_t k = 0; k < m; ++k) v.push_back(at(1.0 + static_cast<double>(k) / static_cast<double>(m), 0.0));
  // outer arc
  corners.push_back({v.size(), turn, tangent(r_out, 0.0, 1.0)});
  std::size_t arc = static_cast<std::size_t>(std::ceil(u * 2.0 * end));
  for (std::size_t k = 0; k < arc; ++k) {
    double phi = end * static_cast<double>(k) / static_cast<double>(arc);
    v.push_back(at(r_out(phi), phi));
  }
  // radial edge in at phi = end
  corners.push_back({v.size(), tangent(r_out, end, 1.0), end + turn + kPi});
  for (std::size_t k = 0; k < m; ++k) v.push_back(at(r_out(end) - static_cast<double>(k) / static_cast<double>(m), end));
  // inner arc back to phi = 0
  corners.push_back({v.size(), end + turn + kPi, tangent(r_in, end, -1.0)});
  std::size_t inner = static_cast<std::size_t>(std::ceil(u * 1.0 * end));
  for (std::size_t k = 0; k < inner; ++k) {
    double phi = end * (1.0 - static_cast<double>(k) / static_cast<double>(inner));
    v.push_back(at(r_in(phi), phi));
  }
  return make_curve(std::move(v), std::move(corners));
}

PolyCurve touching_oval(std::size_t n) {
  if (n % 4 != 0) throw Error(ErrorCode::InvalidInput, "touching_oval needs n divisible by 4");
  return sampled(n, 0.0, [](double t) { return Point(std::cos(t), std::sin(t) * std::cos(t) * std::cos(t)); });
}

PolyCurve looped_curve(int m, double c, std::size_t n, double rotation, double scale, Point shift) {
  Point rot = std::polar(scale, rotation);
  return sampled(n, 0.5, [=](double t) { return shift + rot * (std::polar(1.0, t) + c * std::polar(1.0, m * t)); });
}

}  // namespace curves

}  // namespace liouville

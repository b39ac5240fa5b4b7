#include "liouville/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace liouville::geom {
namespace {

using i128 = __int128;

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;
// Shewchuk's first-stage bound for the 2x2 determinant.
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;

long long lattice(double v) { return std::llround(v / kSnapUnit); }

int exact_orient(Point a, Point b, Point c) {
  i128 ax = lattice(a.real()), ay = lattice(a.imag());
  i128 bx = lattice(b.real()) - ax, by = lattice(b.imag()) - ay;
  i128 cx = lattice(c.real()) - ax, cy = lattice(c.imag()) - ay;
  i128 det = bx * cy - by * cx;
  return (det > 0) - (det < 0);
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double snap(double v) { return std::nearbyint(v / kSnapUnit) * kSnapUnit; }

Point snap(Point p) { return {snap(p.real()), snap(p.imag())}; }

bool on_lattice(Point p) {
  return std::abs(p.real()) < kCoordLimit && std::abs(p.imag()) < kCoordLimit && snap(p.real()) == p.real() &&
         snap(p.imag()) == p.imag();
}

int orient2d(Point a, Point b, Point c) {
  double left = (b.real() - a.real()) * (c.imag() - a.imag());
  double right = (b.imag() - a.imag()) * (c.real() - a.real());
  double det = left - right;
  double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (std::abs(det) > bound) return sgn(det);
  if (on_lattice(a) && on_lattice(b) && on_lattice(c)) return exact_orient(a, b, c);
  return sgn(det);
}

SegmentRelation classify_segments(Point a, Point b, Point c, Point d) {
  int o1 = orient2d(a, b, c), o2 = orient2d(a, b, d);
  int o3 = orient2d(c, d, a), o4 = orient2d(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return SegmentRelation::Proper;
  auto within = [](Point p, Point q, Point r) {
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
  };
  if ((o1 == 0 && within(a, b, c)) || (o2 == 0 && within(a, b, d)) || (o3 == 0 && within(c, d, a)) ||
      (o4 == 0 && within(c, d, b)))
    return SegmentRelation::Degenerate;
  return SegmentRelation::Disjoint;
}

std::pair<double, double> crossing_params(Point a, Point b, Point c, Point d) {
  Point r = b - a, s = d - c, q = c - a;
  double den = cross(r, s);
  return {cross(q, s) / den, cross(q, r) / den};
}

double segment_distance(Point p, Point a, Point b) {
  Point ab = b - a;
  double len2 = std::norm(ab);
  double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return std::abs(p - (a + t * ab));
}

}  // namespace liouville::geom

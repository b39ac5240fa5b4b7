#pragma once

#include <complex>
#include <utility>

namespace liouville::geom {

using Point = std::complex<double>;

// Coordinates live on a 2^-40 lattice inside |x|, |y| < 2^20 so that orient2d
// can fall back to exact 128-bit integer arithmetic.
constexpr double kSnapUnit = 0x1p-40;
constexpr double kCoordLimit = 0x1p20;

double snap(double v);
Point snap(Point p);
bool on_lattice(Point p);

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear. Exact for
// lattice points; a floating-point filter settles the easy cases.
int orient2d(Point a, Point b, Point c);

enum class SegmentRelation { Disjoint, Proper, Degenerate };

// Proper: interiors cross at a single point. Degenerate: touching at an
// endpoint or overlapping collinearly.
SegmentRelation classify_segments(Point a, Point b, Point c, Point d);

// Parameters (s, t) of the crossing of a + s(b - a) and c + t(d - c).
std::pair<double, double> crossing_params(Point a, Point b, Point c, Point d);

// Distance from p to segment ab.
double segment_distance(Point p, Point a, Point b);

}  // namespace liouville::geom

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/predicates.hpp"

namespace liouville {

using geom::Point;

// One-sided tangent directions (angles) at a marked corner. NaN means "take
// the adjacent edge direction".
struct Corner {
  std::size_t vertex = 0;
  double tangent_in;
  double tangent_out;
};

// Closed polygonal curve; the last vertex connects to the first.
struct PolyCurve {
  std::vector<Point> vertices;
  std::vector<Corner> corners;
  bool ccw = true;  // informational only; nothing downstream trusts it
  // Extra per-vertex turning tolerated on jittered or corner-rounded copies.
  double turn_allowance = 0.0;

  std::size_t size() const { return vertices.size(); }
  Point edge(std::size_t k) const { return vertices[(k + 1) % size()] - vertices[k]; }
  const Corner* corner_at(std::size_t v) const;
};

constexpr double kMaxVertexTurn = 0.3;
constexpr double kTransversalAngle = 0.05;
constexpr double kIntegerGuard = 0.05;

// Snaps to the predicate lattice and validates.
PolyCurve make_curve(std::vector<Point> vertices, std::vector<Corner> corners = {});
void validate_curve(const PolyCurve& c);

// Sum of per-vertex turning angles of a raw closed polyline, divided by 2 pi.
double turning_number(const std::vector<Point>& pts);

struct RotationReport {
  int index = 0;
  double total_turning = 0.0;
  double smooth_turning = 0.0;
  std::vector<double> exterior_angles;  // one per corner, in corner order
};
RotationReport rotation_index(const PolyCurve& c);

struct Crossing {
  std::size_t edge_a = 0, edge_b = 0;  // edge_a < edge_b: first and second visit along the curve
  double t_a = 0.0, t_b = 0.0;
  Point point;
  double angle = 0.0;  // in (0, pi/2]

  double param_a() const { return static_cast<double>(edge_a) + t_a; }
  double param_b() const { return static_cast<double>(edge_b) + t_b; }
};
// Throws NotGenericPosition for touching, near-tangential or corner-adjacent
// crossings.
std::vector<Crossing> self_intersections(const PolyCurve& c);

// Deterministic vertex perturbation of the given radius; asserts the rotation
// index survives.
PolyCurve jitter(const PolyCurve& c, std::uint64_t seed, double magnitude);

// Replaces each marked corner by a quadratic Bezier over its 4 neighbouring
// edges. The result has no corners.
PolyCurve round_corners(const PolyCurve& c);

// phi(b-) - phi(b+): smooth turning of a curve with exactly one corner.
double corner_angle_check(const PolyCurve& c);

struct Face {
  bool bounded = true;
  Point witness;
  int winding = 0;
  double area = 0.0;
  std::vector<Point> boundary;  // boundary walk, face on the left
};

struct Arrangement {
  PolyCurve curve;  // corners already rounded
  std::vector<Crossing> crossings;
  std::vector<Face> faces;  // bounded faces first, unbounded last
  std::size_t n_vertices = 0, n_edges = 0;

  std::size_t bounded_faces() const { return faces.empty() ? 0 : faces.size() - 1; }
};
Arrangement build_arrangement(const PolyCurve& c);

// Winding number of the closed polyline around p.
int winding_number(const std::vector<Point>& pts, Point p);

struct Letter {
  int face = 0;
  int index = 0;
  int sign = 1;

  auto operator<=>(const Letter&) const = default;
};

struct BlankWord {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  std::string str() const;
  bool operator==(const BlankWord&) const = default;
};

std::string face_name(int face);
BlankWord parse_word(std::string_view text);
// Lexicographically minimal cyclic rotation.
BlankWord canonical(const BlankWord& w);
// Letters renamed in order of first appearance.
BlankWord rename_by_appearance(const BlankWord& w);

struct EscapeRay {
  int face = 0;
  Point origin;
  double angle = 0.0;
  double length = 0.0;
  int crossings = 0;
};

struct BlankResult {
  BlankWord word;                    // canonical rotation
  std::vector<double> params;        // curve parameter of each letter, aligned with word
  std::vector<Point> points;         // crossing point of each letter
  std::vector<EscapeRay> rays;
};
BlankResult blank_word(const Arrangement& arr, std::uint64_t seed);

struct ContractionStep {
  std::vector<std::size_t> removed;  // positions in the input word
  std::string removed_text;
  std::string result;
};

struct Contraction {
  bool fully_contracted = false;
  bool exhaustive = false;  // the greedy order stalled and a search took over
  std::vector<ContractionStep> steps;
  BlankWord remainder;
};
// Greedy leftmost-first contraction with an exhaustive fallback for words of
// at most 16 letters.
Contraction contract(const BlankWord& w);

struct SeifertCircle {
  std::vector<Point> points;
  int index = 0;  // +1 counterclockwise, -1 clockwise
};
std::vector<SeifertCircle> seifert_decompose(const PolyCurve& c);

struct Extendability {
  int rotation_index = 0;
  bool index_ok = false;
  bool word_contracts = false;
  BlankResult blank;
  Contraction contraction;
  // Rotation indices of the slices cut off by each contraction step, then of
  // what remains; only filled for contractible words.
  std::vector<int> piece_indices;
  bool gluing_identity_holds = false;
};
Extendability extendability_check(const PolyCurve& c, std::uint64_t seed);

namespace curves {

PolyCurve circle(std::size_t n, double radius = 1.0);
// r = 1 + 2 cos(theta); the inner loop crosses at the origin.
PolyCurve limacon(std::size_t n);
PolyCurve figure_eight(std::size_t n);
PolyCurve marked_square(std::size_t per_side);
// A band wound once around the origin and overlapping itself: three bounded
// faces of winding 0, 1 and 2 and two crossings. Bounds an immersed disk.
PolyCurve overlapping_band(std::size_t per_unit);
// Pinched oval whose two sides touch tangentially at the origin.
PolyCurve touching_oval(std::size_t n);
// e^{it} + c e^{imt}: m positively oriented loops glued along one curve.
PolyCurve looped_curve(int m, double c, std::size_t n, double rotation = 0.0, double scale = 1.0,
                       Point shift = {});

}  // namespace curves

}  // namespace liouville

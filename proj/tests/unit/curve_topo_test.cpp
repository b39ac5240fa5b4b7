#include "liouville/curve_topo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "liouville/holo_disk.hpp"
#include "liouville/line_transfer.hpp"

using namespace liouville;

namespace {


// Total turning / 2 pi of a smooth closed parametrization, from its first and
// second derivatives on a dense periodic grid.
double dense_turning(const std::function<Point(double)>& d1, const std::function<Point(double)>& d2) {
  const int n = 200000;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double t = 2 * kPi * (k + 0.5) / n;
    Point a = d1(t), b = d2(t);
    acc += geom::cross(a, b) / std::norm(a);
  }
  return acc / n;
}

bool equivalent(const BlankWord& a, const BlankWord& b) {
  if (a.size() != b.size()) return false;
  auto target = rename_by_appearance(b);
  for (std::size_t r = 0; r < a.size(); ++r) {
    BlankWord rot;
    for (std::size_t k = 0; k < a.size(); ++k) rot.letters.push_back(a.letters[(r + k) % a.size()]);
    if (rename_by_appearance(rot) == target) return true;
  }
  return a.size() == 0;
}

PolyCurve transformed(const PolyCurve& c, Point rot, Point shift, std::size_t roll) {
  std::vector<Point> v(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) v[k] = shift + rot * c.vertices[(k + roll) % c.size()];
  std::vector<Corner> corners;
  for (auto k : c.corners)
    corners.push_back({(k.vertex + c.size() - roll) % c.size(), k.tangent_in + std::arg(rot), k.tangent_out + std::arg(rot)});
  return make_curve(v, corners);
}

}  // namespace

TEST(Predicates, ExactOrientationOnLattice) {
  using geom::orient2d;
  EXPECT_EQ(orient2d({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orient2d({0, 0}, {1, 0}, {0, -1}), -1);
  // collinear points whose floating-point determinant is contaminated by rounding
  geom::Point a = geom::snap({0.1, 0.1}), b = geom::snap({0.1 + 0x1p-40 * 3, 0.1 + 0x1p-40 * 3});
  geom::Point c = geom::snap({0.1 + 0x1p-40 * 7, 0.1 + 0x1p-40 * 7});
  EXPECT_EQ(orient2d(a, b, c), 0);
  geom::Point d = c + geom::Point(0x1p-40, 0);
  EXPECT_EQ(orient2d(a, b, d), -1);
  EXPECT_EQ(geom::classify_segments({0, 0}, {2, 2}, {0, 2}, {2, 0}), geom::SegmentRelation::Proper);
  EXPECT_EQ(geom::classify_segments({0, 0}, {2, 0}, {1, 0}, {1, 1}), geom::SegmentRelation::Degenerate);
  EXPECT_EQ(geom::classify_segments({0, 0}, {1, 0}, {2, 1}, {3, 1}), geom::SegmentRelation::Disjoint);
}

TEST(CurveTopo, ValidationRejectsBadCurves) {
  EXPECT_THROW(make_curve({{0, 0}, {1, 0}, {1, 1}}), Error);
  std::vector<Point> sq{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
  EXPECT_THROW(make_curve(sq), Error);  // unmarked right angles
  sq[1] = sq[0];
  EXPECT_THROW(make_curve(sq, {{2, NAN, NAN}, {4, NAN, NAN}, {6, NAN, NAN}, {0, NAN, NAN}}), Error);
}

TEST(CurveTopo, RotationIndexFixtures) {
  EXPECT_EQ(rotation_index(curves::circle(256)).index, 1);

  double lim = dense_turning(
      [](double t) {
        Point z = std::polar(1.0, t);
        return Point(-2 * std::sin(t), 0) * z + (1 + 2 * std::cos(t)) * Point(0, 1) * z;
      },
      [](double t) {
        Point z = std::polar(1.0, t);
        double r = 1 + 2 * std::cos(t), r1 = -2 * std::sin(t), r2 = -2 * std::cos(t);
        return (r2 - r) * z + 2.0 * r1 * Point(0, 1) * z;
      });
  EXPECT_NEAR(lim, 2.0, 1e-6);
  EXPECT_EQ(rotation_index(curves::limacon(256)).index, static_cast<int>(std::lround(lim)));

  double eight = dense_turning([](double t) { return Point(std::cos(t), std::cos(2 * t)); },
                               [](double t) { return Point(-std::sin(t), -2 * std::sin(2 * t)); });
  EXPECT_NEAR(eight, 0.0, 1e-9);
  EXPECT_EQ(rotation_index(curves::figure_eight(256)).index, 0);

  auto sq = rotation_index(curves::marked_square(4));
  EXPECT_EQ(sq.index, 1);
  ASSERT_EQ(sq.exterior_angles.size(), 4u);
  for (double e : sq.exterior_angles) EXPECT_NEAR(e, kPi / 2, 1e-15);
}

TEST(CurveTopo, CuspTieBreakFollowsTurningSide) {
  // Cardioid r = 1 - cos(theta): tangent reverses at the origin and the curve
  // turns right there, so the exterior angle is -pi. Limacons r = 1 - a cos
  // with a < 1 have index 1, which the cusp limit keeps.
  const std::size_t n = 256;
  std::vector<Point> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double t = 2 * kPi * static_cast<double>(k) / n;
    v[k] = (1 - std::cos(t)) * std::polar(1.0, t);
  }
  auto c = make_curve(v, {{0, kPi, 0.0}});
  auto r = rotation_index(c);
  EXPECT_EQ(r.exterior_angles[0], -kPi);
  double limacon = dense_turning(
      [](double t) {
        Point z = std::polar(1.0, t);
        return Point(0.99 * std::sin(t), 0) * z + (1 - 0.99 * std::cos(t)) * Point(0, 1) * z;
      },
      [](double t) {
        Point z = std::polar(1.0, t);
        double rr = 1 - 0.99 * std::cos(t), r1 = 0.99 * std::sin(t), r2 = 0.99 * std::cos(t);
        return (r2 - rr) * z + 2.0 * r1 * Point(0, 1) * z;
      });
  EXPECT_EQ(r.index, std::lround(limacon));
  EXPECT_NEAR(r.smooth_turning, 3 * kPi, 0.05);

  // The mirror image runs clockwise and turns left at the cusp.
  for (auto& p : v) p = std::conj(p);
  auto m = rotation_index(make_curve(v, {{0, kPi, 0.0}}));
  EXPECT_EQ(m.exterior_angles[0], kPi);
  EXPECT_EQ(m.index, -1);
}

TEST(CurveTopo, RotationIndexInvariances) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(-kPi, kPi), sc(0.1, 10.0), sh(-5.0, 5.0);
  const std::vector<std::pair<PolyCurve, int>> cases{
      {curves::limacon(256), 2}, {curves::figure_eight(256), 0}, {curves::marked_square(8), 1}};
  for (const auto& [c, expect] : cases) {
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t roll = rng() % c.size();
      auto t = transformed(c, std::polar(sc(rng), ang(rng)), Point(sh(rng), sh(rng)), roll);
      EXPECT_EQ(rotation_index(t).index, expect);
    }
  }
}

TEST(CurveTopo, JitterPreservesIndex) {
  auto circle = curves::circle(128);
  double min_edge = std::abs(circle.edge(0));
  EXPECT_EQ(jitter(circle, 5, 0.0).vertices, circle.vertices);
  EXPECT_THROW(jitter(circle, 5, 0.2 * min_edge), Error);
  auto lim = curves::limacon(512);
  double lim_edge = std::abs(lim.edge(0));
  for (std::size_t k = 1; k < lim.size(); ++k) lim_edge = std::min(lim_edge, std::abs(lim.edge(k)));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto j = jitter(lim, seed, 0.09 * lim_edge);
    EXPECT_EQ(rotation_index(j).index, 2);
    EXPECT_EQ(rotation_index(jitter(circle, seed, 0.09 * min_edge)).index, 1);
  }
  EXPECT_EQ(jitter(circle, 3, 0.05 * min_edge).vertices, jitter(circle, 3, 0.05 * min_edge).vertices);
}

TEST(CurveTopo, JitterResolvesTangentialContact) {
  auto oval = curves::touching_oval(256);
  EXPECT_EQ(rotation_index(oval).index, 1);
  try {
    self_intersections(oval);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotGenericPosition);
  }
  double min_edge = std::abs(oval.edge(0));
  for (std::size_t k = 1; k < oval.size(); ++k) min_edge = std::min(min_edge, std::abs(oval.edge(k)));
  int separated = 0, crossed = 0, non_generic = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto j = jitter(oval, seed, 0.09 * min_edge);
    EXPECT_EQ(rotation_index(j).index, 1);
    try {
      auto xs = self_intersections(j);
      EXPECT_TRUE(xs.size() == 0 || xs.size() == 2) << xs.size();
      (xs.empty() ? separated : crossed)++;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotGenericPosition);
      ++non_generic;
    }
  }
  EXPECT_GT(separated, 0);
  EXPECT_GT(crossed, 0);
  EXPECT_LT(non_generic, 10);
}

TEST(CurveTopo, SelfIntersections) {
  EXPECT_TRUE(self_intersections(curves::circle(256)).empty());
  auto lim = self_intersections(curves::limacon(256));
  ASSERT_EQ(lim.size(), 1u);
  EXPECT_LT(std::abs(lim[0].point), 1e-3);
  auto eight = self_intersections(curves::figure_eight(256));
  ASSERT_EQ(eight.size(), 1u);
  EXPECT_LT(std::abs(eight[0].point), 1e-12);
  EXPECT_NEAR(eight[0].angle, kPi / 2, 1e-3);
  EXPECT_EQ(self_intersections(curves::overlapping_band(16)).size(), 2u);
}

TEST(CurveTopo, ArrangementFaces) {
  auto circle = build_arrangement(curves::circle(256));
  EXPECT_EQ(circle.faces.size(), 2u);
  EXPECT_EQ(circle.faces[0].winding, 1);

  auto lim = build_arrangement(curves::limacon(256));
  ASSERT_EQ(lim.faces.size(), 3u);
  std::multiset<int> w{lim.faces[0].winding, lim.faces[1].winding};
  EXPECT_EQ(w, (std::multiset<int>{1, 2}));

  auto eight = build_arrangement(curves::figure_eight(256));
  ASSERT_EQ(eight.faces.size(), 3u);
  w = {eight.faces[0].winding, eight.faces[1].winding};
  EXPECT_EQ(w, (std::multiset<int>{-1, 1}));

  auto band = build_arrangement(curves::overlapping_band(16));
  ASSERT_EQ(band.faces.size(), 4u);
  w = {band.faces[0].winding, band.faces[1].winding, band.faces[2].winding};
  EXPECT_EQ(w, (std::multiset<int>{0, 1, 2}));
  for (const auto& a : {circle, lim, eight, band}) {
    EXPECT_EQ(static_cast<long>(a.n_vertices) - static_cast<long>(a.n_edges) + static_cast<long>(a.faces.size()), 2);
    EXPECT_FALSE(a.faces.back().bounded);
  }
}

TEST(CurveTopo, WordParsingAndCanonicalForm) {
  auto w = parse_word("a0- b1+ c0+ a1+ b0+");
  EXPECT_EQ(w.str(), "a0- b1+ c0+ a1+ b0+");
  EXPECT_EQ(parse_word("b1+c0+a1+b0+a0-").str(), "b1+ c0+ a1+ b0+ a0-");
  EXPECT_EQ(canonical(parse_word("b1+ c0+ a1+ b0+ a0-")), w);
  EXPECT_EQ(face_name(25), "z");
  EXPECT_EQ(face_name(26), "aa");
  EXPECT_EQ(parse_word("aa3+").letters[0].face, 26);
  EXPECT_THROW(parse_word("a+"), Error);
  EXPECT_THROW(parse_word("A0+"), Error);
}

TEST(CurveTopo, ContractionExamples) {
  auto c = contract(parse_word("a0- b1+ c0+ a1+ b0+"));
  EXPECT_TRUE(c.fully_contracted);
  EXPECT_FALSE(c.exhaustive);
  ASSERT_EQ(c.steps.size(), 1u);
  EXPECT_EQ(c.steps[0].removed_text, "a1+ b0+ a0-");
  EXPECT_EQ(canonical(c.remainder).str(), "b1+ c0+");

  for (const char* s : {"a0+ b0-", "a0- b0+"}) {
    auto f = contract(parse_word(s));
    EXPECT_FALSE(f.fully_contracted) << s;
    EXPECT_TRUE(f.steps.empty());
  }
  EXPECT_TRUE(contract(BlankWord{}).fully_contracted);
  EXPECT_TRUE(contract(parse_word("a0+")).fully_contracted);
}

TEST(CurveTopo, ContractionSearchAfterGreedyStall) {
  // Greedy takes a1+ a0- (the shortest interval) and strands b0-; cutting
  // b1+ ... b0- first removes the same a-letters along the way.
  auto w = parse_word("a0- a1+ b0- c0+ b1+ a2+");
  auto c = contract(w);
  EXPECT_TRUE(c.fully_contracted);
}

TEST(CurveTopo, ContractionVerdictIsCanonical) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int faces = 1 + static_cast<int>(rng() % 4);
    const std::size_t len = 2 + rng() % 13;
    BlankWord w;
    std::vector<int> count(faces, 0);
    for (std::size_t k = 0; k < len; ++k) {
      int f = static_cast<int>(rng() % faces);
      w.letters.push_back({f, count[f]++, (rng() % 3 == 0) ? -1 : 1});
    }
    bool verdict = contract(w).fully_contracted;
    std::size_t r = rng() % len;
    BlankWord rot;
    for (std::size_t k = 0; k < len; ++k) rot.letters.push_back(w.letters[(r + k) % len]);
    EXPECT_EQ(contract(rot).fully_contracted, verdict) << w.str();
    std::vector<int> perm(faces);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    BlankWord ren = w;
    for (auto& l : ren.letters) l.face = perm[l.face];
    EXPECT_EQ(contract(ren).fully_contracted, verdict) << w.str();
  }
}

TEST(CurveTopo, BlankWordsOfFixtures) {
  auto circle = blank_word(build_arrangement(curves::circle(256)), 0);
  EXPECT_EQ(circle.word.str(), "a0+");

  auto lim = blank_word(build_arrangement(curves::limacon(256)), 0);
  std::set<int> names;
  for (const auto& l : lim.word.letters) {
    EXPECT_EQ(l.sign, 1);
    names.insert(l.face);
  }
  EXPECT_EQ(names.size(), 2u);
  EXPECT_TRUE(contract(lim.word).fully_contracted);

  auto eight = blank_word(build_arrangement(curves::figure_eight(256)), 0);
  ASSERT_EQ(eight.word.size(), 2u);
  EXPECT_NE(eight.word.letters[0].sign, eight.word.letters[1].sign);
  EXPECT_TRUE(equivalent(eight.word, parse_word("a0+ b0-")));
  EXPECT_FALSE(contract(eight.word).fully_contracted);
}

TEST(CurveTopo, OverlappingBandWord) {
  auto band = curves::overlapping_band(16);
  EXPECT_EQ(rotation_index(band).index, 1);
  for (std::uint64_t seed : {0u, 1u, 2u, 3u, 7u, 11u, 42u, 1234u}) {
    auto res = blank_word(build_arrangement(band), seed);
    EXPECT_TRUE(equivalent(res.word, parse_word("a0- b1+ c0+ a1+ b0+"))) << res.word.str();
    EXPECT_TRUE(contract(res.word).fully_contracted);
  }
}

TEST(CurveTopo, SeifertDecomposition) {
  auto band = seifert_decompose(curves::overlapping_band(16));
  ASSERT_EQ(band.size(), 3u);
  int sum = 0;
  for (const auto& s : band) sum += s.index;
  EXPECT_EQ(sum, 1);

  auto lim = seifert_decompose(curves::limacon(256));
  ASSERT_EQ(lim.size(), 2u);
  for (const auto& s : lim) EXPECT_EQ(s.index, 1);

  auto circle = seifert_decompose(curves::circle(64));
  ASSERT_EQ(circle.size(), 1u);
  EXPECT_EQ(circle[0].points.size(), 64u);
}

TEST(CurveTopo, GluedPositiveLoops) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    int m = 1 + static_cast<int>(rng() % 5);
    double c = m == 1 ? 0.3 : (1.5 + 1.0 * unit(rng)) / m;
    auto curve = curves::looped_curve(m, c, 512, 2 * kPi * unit(rng), 0.5 + 2 * unit(rng),
                                      Point(4 * unit(rng) - 2, 4 * unit(rng) - 2));
    auto arr = build_arrangement(curve);
    auto word = blank_word(arr, static_cast<std::uint64_t>(trial)).word;
    for (const auto& l : word.letters) EXPECT_EQ(l.sign, 1) << m << " " << c;
    auto parts = seifert_decompose(curve);
    EXPECT_EQ(static_cast<int>(parts.size()), m);
    for (const auto& p : parts) EXPECT_EQ(p.index, 1);
    EXPECT_EQ(rotation_index(curve).index, m);
  }
}

TEST(CurveTopo, ExtendabilityVerdicts) {
  auto eight = extendability_check(curves::figure_eight(256), 0);
  EXPECT_EQ(eight.rotation_index, 0);
  EXPECT_FALSE(eight.index_ok);
  EXPECT_FALSE(eight.word_contracts);

  auto band = extendability_check(curves::overlapping_band(16), 0);
  EXPECT_TRUE(band.index_ok);
  EXPECT_TRUE(band.word_contracts);
  EXPECT_TRUE(band.gluing_identity_holds);
  for (int r : band.piece_indices) EXPECT_GE(r, 1);

  auto lim = extendability_check(curves::limacon(256), 0);
  EXPECT_TRUE(lim.index_ok);
  EXPECT_TRUE(lim.word_contracts);
  EXPECT_TRUE(lim.contraction.steps.empty());
}

TEST(CurveTopo, ImmersionBoundariesAreExtendable) {
  for (double mu : {0.5, 2.0, 4.0}) {
    for (double x0 : {0.0, 0.7}) {
      auto u = [mu, x0](double x) { return std::log(2 * mu / (1 + mu * mu * (x - x0) * (x - x0))); };
      auto d = build_phi(analytic_completion(pull_back(u, 512).field.lambda()));
      auto curve = make_curve(boundary_values(d, 256));
      auto ex = extendability_check(curve, 3);
      EXPECT_EQ(ex.rotation_index, 1);
      EXPECT_TRUE(ex.index_ok && ex.word_contracts);
    }
  }
}

TEST(CurveTopo, SingularCornerFamily) {
  const std::size_t n = 512;
  for (double beta : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
    SingularField lam{PeriodicGrid::from_real(std::vector<double>(n, 0.0)), {{-kPi / 2, beta}}};
    auto bt = analytic_completion(lam);
    auto tr = trace_boundary(bt);
    auto curve = make_curve(tr.points, {{*tr.corner, tr.tangent_in, tr.tangent_out}});
    auto r = rotation_index(curve);
    EXPECT_EQ(r.index, 1);
    EXPECT_NEAR(r.exterior_angles[0], beta, 1e-2);
    EXPECT_NEAR(corner_angle_check(curve), 2 * kPi - beta, 1e-2);
    EXPECT_GE(corner_angle_check(curve), kPi - 1e-2);
  }
}

TEST(CurveTopo, CornerAngleCheckArity) {
  // corner with equal one-sided tangents: no exterior angle
  auto c = curves::circle(64);
  c.corners.push_back({0, kPi / 2, kPi / 2});
  EXPECT_NEAR(corner_angle_check(c), 2 * kPi, 1e-12);
  try {
    corner_angle_check(curves::marked_square(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongArity);
  }
}

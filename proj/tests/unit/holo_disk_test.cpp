#include "liouville/holo_disk.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "liouville/line_transfer.hpp"

using namespace liouville;

namespace {

LineFunction bubble(double mu, double x0) {
  return [mu, x0](double x) { return std::log(2.0 * mu / (1.0 + mu * mu * (x - x0) * (x - x0))); };
}

std::size_t bubble_grid(double mu) {
  std::size_t n = 512;
  while (static_cast<double>(n) < 32.0 * mu) n *= 2;
  return n;
}

SingularField zero_field(std::size_t n) { return {PeriodicGrid::from_real(std::vector<double>(n, 0.0)), {}}; }

cplx circumcenter(cplx a, cplx b, cplx c) {
  b -= a;
  c -= a;
  double d = 2.0 * (b.real() * c.imag() - b.imag() * c.real());
  double bb = std::norm(b), cc = std::norm(c);
  return a + cplx((c.imag() * bb - b.imag() * cc) / d, (b.real() * cc - c.real() * bb) / d);
}

}  // namespace

TEST(HoloDisk, FlatBoundaryGivesShiftedIdentity) {
  auto bt = analytic_completion(zero_field(64));
  for (std::size_t j = 0; j < 64; ++j) {
    EXPECT_EQ(bt.rho.values[j].real(), 0.0);
    EXPECT_NEAR(std::abs(bt.phi_boundary.values[j] - 1.0), 0.0, 1e-15);
  }
  auto d = build_phi(bt);
  EXPECT_NEAR(std::abs(d.coeffs[0] + 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d.coeffs[1] - 1.0), 0.0, 1e-14);
  for (std::size_t k = 2; k < d.coeffs.size(); ++k) EXPECT_LT(std::abs(d.coeffs[k]), 1e-14);
  EXPECT_NEAR(std::abs(d(cplx(1, 0))), 0.0, 1e-14);
  EXPECT_TRUE(d.immersion);
  auto k = boundary_curvature(bt);
  for (const auto& v : k.values) EXPECT_NEAR(v.real(), 1.0, 1e-14);
}

TEST(HoloDisk, CosineBoundaryData) {
  const std::size_t n = 128;
  SingularField lam{PeriodicGrid::sample(n, [](double t) { return std::cos(t); }), {}};
  auto bt = analytic_completion(lam);
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(bt.rho.values[j].real(), std::sin(bt.rho.theta(j)), 1e-14);
  EXPECT_LT(bt.negative_frequency_residue, 1e-10);
  auto d = build_phi(bt);
  // Phi' = e^z, so Phi = e^z - e.
  double fact = 1.0;
  for (std::size_t k = 1; k < 12; ++k) {
    fact *= static_cast<double>(k);
    EXPECT_NEAR(std::abs(d.coeffs[k] - 1.0 / fact), 0.0, 1e-14) << k;
  }
  auto mod = derivative_modulus_on_ring(d, 1.0, n);
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(mod[j], std::exp(std::cos(PeriodicGrid::angle(j, n))), 1e-8);
}

TEST(HoloDisk, AnchorConjugateHasNoNegativeFrequencies) {
  const std::size_t n = 256;
  for (double beta : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
    SingularField lam = zero_field(n);
    lam.anchors.push_back({-kPi / 2, beta});
    auto bt = analytic_completion(lam);
    EXPECT_LT(bt.anchor_conjugate_residue, 1e-8);
    EXPECT_TRUE(bt.warnings.empty());
    // |phi| = e^lambda away from the anchor
    for (std::size_t j = 0; j < n; ++j) {
      if (j == n / 4) continue;
      EXPECT_NEAR(std::abs(bt.phi_boundary.values[j]), std::exp(lam.at_node(j)), 1e-10 * std::exp(lam.at_node(j)));
    }
  }
}

TEST(HoloDisk, UnderResolvedLambdaIsRejected) {
  SingularField lam{PeriodicGrid::sample(64, [](double t) { return std::cos(31 * t); }), {}};
  try {
    analytic_completion(lam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderResolved);
  }
}

TEST(HoloDisk, BubbleFamilyImmersionDictionary) {
  for (double mu : {0.25, 1.0, 4.0}) {
    for (double x0 : {0.0, 1.0}) {
      const std::size_t n = 512;
      auto pb = pull_back(bubble(mu, x0), n);
      auto bt = analytic_completion(pb.field.lambda());
      auto d = build_phi(bt);
      auto mod = derivative_modulus_on_ring(d, 1.0, n);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == n / 4) continue;
        double x = stereo_project_angle(PeriodicGrid::angle(j, n));
        double lhs = mod[j] * 2 / (1 + x * x);
        EXPECT_NEAR(lhs, std::exp(bubble(mu, x0)(x)), 1e-6 * std::max(1.0, lhs)) << mu << " " << x0 << " " << j;
      }
      auto k = boundary_curvature(bt);
      for (const auto& v : k.values) EXPECT_NEAR(v.real(), 1.0, 1e-4);
      EXPECT_GT(min_derivative_on_lattice(d), 0.1);
      EXPECT_TRUE(d.immersion);
      EXPECT_NEAR(std::abs(d(cplx(1, 0))), 0.0, 1e-10);
      // degree-one Moebius image of the disk: the boundary is a unit circle
      auto b = boundary_values(d, 64);
      cplx c = circumcenter(b[0], b[21], b[42]);
      for (auto p : b) EXPECT_NEAR(std::abs(p - c), 1.0, 1e-9);
      if (x0 == 0.0) {
        double t = (mu - 1) / (mu + 1);
        EXPECT_NEAR(std::abs(d.derivative(0.0)), 1 - t * t, 1e-10);
      }
    }
  }
}

TEST(HoloDisk, SingularCornerFamilyGaussBonnet) {
  const std::size_t n = 512;
  for (double beta : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
    SingularField lam = zero_field(n);
    lam.anchors.push_back({-kPi / 2, beta});
    auto bt = analytic_completion(lam);
    auto k = boundary_curvature(bt);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == n / 4) continue;
      EXPECT_NEAR(k.values[j].real(), (1 - beta / kTwoPi) * std::exp(-lam.at_node(j)), 1e-12);
    }
    EXPECT_NEAR(curvature_mass(bt) + beta, kTwoPi, 1e-8);

    auto curve = trace_boundary(bt);
    EXPECT_LT(curve.closure_error, 1e-8);
    ASSERT_TRUE(curve.corner.has_value());
    EXPECT_EQ(*curve.corner, n / 4);
    double eps = std::remainder(curve.tangent_out - curve.tangent_in, kTwoPi);
    EXPECT_NEAR(eps, beta, 1e-2) << beta;
    EXPECT_NEAR(std::abs(curve.points[n / 2]), 0.0, 1e-14);
  }
}

TEST(HoloDisk, SingularFamilySeriesTripsResolutionGuard) {
  SingularField lam = zero_field(512);
  lam.anchors.push_back({-kPi / 2, 3 * kPi / 4});
  try {
    build_phi(analytic_completion(lam));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderResolved);
  }
}

TEST(HoloDisk, MobiusRecentering) {
  // order 64 keeps the truncated tail of the recentered series near 2^-64
  auto d = build_phi(analytic_completion(zero_field(128)));
  auto same = mobius_recenter(d, cplx(0, 1), 0.0);
  for (std::size_t k = 0; k < d.coeffs.size(); ++k) EXPECT_NEAR(std::abs(same.coeffs[k] - d.coeffs[k]), 0.0, 1e-14);

  auto rec = mobius_recenter(d, cplx(0, 1), 0.5);
  EXPECT_NEAR(std::abs(rec(cplx(1, 0))), 0.0, 1e-12);
  auto b = boundary_values(rec, 128);
  cplx c = circumcenter(b[0], b[43], b[86]);
  for (auto p : b) EXPECT_NEAR(std::abs(p - c), 1.0, 1e-10);
  EXPECT_TRUE(rec.immersion);

  // Length of the boundary image is parametrization-invariant.
  const std::size_t n = 256;
  SingularField lam{PeriodicGrid::sample(n, [](double t) { return 0.4 * std::cos(t) - 0.2 * std::sin(2 * t); }), {}};
  auto dm = build_phi(analytic_completion(lam));
  auto rm = mobius_recenter(dm, std::polar(1.0, 0.7), 0.3);
  auto length = [](const DiskMap& m) {
    auto v = derivative_modulus_on_ring(m, 1.0, 1024);
    double acc = 0;
    for (double x : v) acc += x;
    return acc * kTwoPi / 1024.0;
  };
  EXPECT_NEAR(length(rm), length(dm), 1e-9);

  EXPECT_THROW(mobius_recenter(d, cplx(0.5, 0), 0.5), Error);
  try {
    mobius_recenter(dm, cplx(0, 1), 0.999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderResolved);
  }
}

TEST(HoloDisk, BlaschkeFixtures) {
  auto id = blaschke_fixture({0.0}, 0.0);
  EXPECT_NEAR(std::abs(id.coeffs[1] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(id.coeffs[0]), 0.0, 1e-15);
  EXPECT_TRUE(id.immersion);
  EXPECT_FALSE(id.normalized_at_one);

  auto sq = blaschke_fixture({0.0, 0.0}, 0.0);
  EXPECT_NEAR(std::abs(sq.coeffs[2] - 1.0), 0.0, 1e-15);
  EXPECT_FALSE(sq.immersion);
  EXPECT_NEAR(min_derivative_on_lattice(sq), 0.0, 1e-14);

  auto b2 = blaschke_fixture({0.3, -0.3}, 0.0);
  EXPECT_FALSE(b2.immersion);
  EXPECT_LT(min_derivative_on_lattice(b2), 1e-12);
  // argument principle: winding of the boundary image around 0
  auto v = boundary_values(b2, 512);
  double turn = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) turn += std::arg(v[(j + 1) % v.size()] / v[j]);
  EXPECT_NEAR(turn / kTwoPi, 2.0, 1e-12);

  EXPECT_THROW(blaschke_fixture({cplx(0, 1)}, 0.0), Error);
}

TEST(HoloDisk, ConformalDistanceFlat) {
  auto d = build_phi(analytic_completion(zero_field(64)));
  auto r = conformal_distance(d, 1.0, -1.0, 256);
  EXPECT_NEAR(r.distance, 2.0, 2 * r.mesh_h);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ud(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    cplx p = std::polar(1.0, ud(rng)), q = std::polar(1.0, ud(rng));
    if (PeriodicGrid::nearest_index(std::arg(p), 128) == PeriodicGrid::nearest_index(std::arg(q), 128)) continue;
    double pq = conformal_distance(d, p, q, 128).distance;
    double qp = conformal_distance(d, q, p, 128).distance;
    EXPECT_NEAR(pq, qp, 1e-12);
    // flat metric: at least the chord between the snapped nodes
    double chord = std::abs(std::polar(1.0, PeriodicGrid::angle(PeriodicGrid::nearest_index(std::arg(p), 128), 128)) -
                            std::polar(1.0, PeriodicGrid::angle(PeriodicGrid::nearest_index(std::arg(q), 128), 128)));
    EXPECT_GE(pq, chord - 1e-9);
    EXPECT_LE(pq, chord * 1.1 + 4 * kTwoPi / 128);
  }
}

TEST(HoloDisk, ConformalDistanceTriangleInequality) {
  SingularField lam{PeriodicGrid::sample(128, [](double t) { return 0.5 * std::cos(t) + 0.3 * std::sin(3 * t); }), {}};
  auto d = build_phi(analytic_completion(lam));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ud(-kPi, kPi);
  const double tol = 2 * kTwoPi / 128;
  for (int i = 0; i < 10; ++i) {
    cplx p = std::polar(1.0, ud(rng)), q = std::polar(1.0, ud(rng)), s = std::polar(1.0, ud(rng));
    auto fp = conformal_distances_from(d, p, {q, s}, 128);
    auto fq = conformal_distances_from(d, q, {s}, 128);
    EXPECT_LE(fp[1], fp[0] + fq[0] + 2 * tol);
  }
}

TEST(HoloDisk, ConformalDistanceDegeneratesForConcentratingBubbles) {
  std::vector<double> ds;
  for (double mu : {1.0, 16.0, 256.0, 4096.0}) {
    const std::size_t n = bubble_grid(mu);
    auto pb = pull_back(bubble(mu, 0.0), n);
    auto d = build_phi(analytic_completion(pb.field.lambda()));
    ds.push_back(conformal_distance(d, 1.0, -1.0, 256).distance);
    // image is the unit disk, so the geodesic is the chord |Phi(1) - Phi(-1)|
    EXPECT_NEAR(ds.back(), 4 * mu / (1 + mu * mu), 0.05 * ds.back() + 2 * kTwoPi / 256 / mu);
  }
  for (std::size_t i = 1; i < ds.size(); ++i) EXPECT_LT(ds[i], ds[i - 1]);
  EXPECT_LT(ds.back(), 0.1 * ds.front());
}

TEST(HoloDisk, ConformalDistanceRefinement) {
  auto pb = pull_back(bubble(4.0, 0.5), 512);
  auto d = build_phi(analytic_completion(pb.field.lambda()));
  double coarse = conformal_distance(d, 1.0, -1.0, 128).distance;
  double fine = conformal_distance(d, 1.0, -1.0, 256).distance;
  EXPECT_LE(fine, coarse + kTwoPi / 128);
}

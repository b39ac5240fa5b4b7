#include "liouville/quant_lab.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace liouville;

namespace {

// mass of 2 mu / (1 + mu^2 (x - x0)^2) over [c - r, c + r]
double bubble_ball(double mu, double x0, double c, double r) {
  return 2.0 * (std::atan(mu * (c + r - x0)) - std::atan(mu * (c - r - x0)));
}

std::vector<SequenceMember> constant_ladder(int count) {
  return bubble_sequence(std::vector<BubbleParams>(static_cast<std::size_t>(count), BubbleParams{1.0, 0.0}));
}

}  // namespace

TEST(QuantLab, BubbleClosedForm) {
  EXPECT_NEAR(bubble_u({1.0, 0.0})(0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(bubble_u({4.0, 1.0})(1.5), std::log(8.0 / 5.0), 1e-15);
  auto b = bubble({1.0, 0.0});
  for (const auto& v : b.pullback.field.lambda().smooth.values) EXPECT_NEAR(v.real(), 0.0, 1e-12);
  auto m = bubble({4.0, 1.0});
  EXPECT_NEAR(line_integral([&](double x) { return std::exp(m.u(x)); }, bubble_grid({4.0, 1.0})), kTwoPi, 1e-6);
  EXPECT_THROW(validate(BubbleParams{0.0, 0.0}), Error);
  EXPECT_THROW(validate(BubbleParams{-1.0, 0.0}), Error);
  EXPECT_EQ(bubble_grid({1.0, 0.0}), 512u);
  EXPECT_EQ(bubble_grid({4096.0, 0.0}), 131072u);
}

TEST(QuantLab, VerifySolutionOnBubbles) {
  auto one = [](double) { return 1.0; };
  for (BubbleParams p : {BubbleParams{1.0, 0.0}, BubbleParams{0.25, -2.0}}) {
    auto r = verify_solution(bubble_u(p), one, bubble_grid(p));
    EXPECT_LT(r.sup, 1e-8) << p.mu;
    EXPECT_NEAR(r.Lambda, kTwoPi, 1e-8);
    EXPECT_NEAR(r.beta, 0.0, 1e-8);
    EXPECT_FALSE(r.singular_mismatch);
    EXPECT_TRUE(r.solves(1e-6));
  }
  // lambda = 1: the exponential term picks up a factor e
  auto shifted = [](double x) { return bubble_u({1.0, 0.0})(x) + 1.0; };
  auto r = verify_solution(shifted, one, 512);
  EXPECT_NEAR(r.sup, std::exp(1.0) - 1.0, 1e-8);
  EXPECT_NEAR(r.Lambda, kTwoPi * std::exp(1.0), 1e-8);
  EXPECT_TRUE(r.singular_mismatch);
  EXPECT_FALSE(r.solves(1e-4));
}

TEST(QuantLab, ConcentrationMatchesArctanMass) {
  auto seq = bubble_ladder(0, 12);
  auto p = concentration_scan(seq, kRadiusLadder);
  EXPECT_NEAR(p.center, 0.0, 1e-12);
  ASSERT_EQ(p.ks.size(), 13u);
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    for (std::size_t k = 0; k < 13; ++k) {
      double mu = std::ldexp(1.0, static_cast<int>(k));
      EXPECT_NEAR(p.alpha[i][k], 4.0 * std::atan(mu * p.radii[i]), 1e-9);
      if (i > 0) {
        EXPECT_LE(p.alpha[i][k], p.alpha[i - 1][k]);
      }
    }
  }
  EXPECT_NEAR(p.alpha[2][12], 4.0 * std::atan(409.6), 1e-3);

  auto big = concentration_scan(bubble_ladder(0, 3), {1e3, 1e2});
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(big.alpha[0][k], kTwoPi, 4e-3);

  auto flat = concentration_scan(constant_ladder(6), {0.9, 0.5, 0.1});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_NEAR(flat.alpha[i][k], flat.alpha[i][0], 1e-12);
      EXPECT_LT(flat.alpha[i][k], kPi);
    }
  }
}

TEST(QuantLab, ConcentrationOffCenterAndCsv) {
  auto seq = bubble_sequence({{2.0, 0.7}, {8.0, 0.7}, {32.0, 0.7}, {128.0, 0.7}});
  auto p = concentration_scan(seq, {0.3, 0.1, 0.02}, 0.6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      EXPECT_NEAR(p.alpha[i][k], bubble_ball(std::ldexp(2.0, 2 * static_cast<int>(k)), 0.7, 0.6, p.radii[i]), 1e-9);
  std::string csv = p.csv();
  EXPECT_EQ(csv.rfind("r,k,alpha\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
}

TEST(QuantLab, ConcentrationErrors) {
  auto seq = bubble_ladder(0, 4);
  EXPECT_THROW(concentration_scan(seq, {0.1, 0.2}), Error);
  EXPECT_THROW(concentration_scan(seq, {0.1, -0.1}), Error);
  // centers walk away by more than the smallest radius
  std::vector<BubbleParams> drifting;
  for (int k = 0; k < 8; ++k) drifting.push_back({std::ldexp(1.0, k + 4), 0.2 * k});
  try {
    concentration_scan(bubble_sequence(drifting), kRadiusLadder);
    FAIL() << "expected CenterUnstable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CenterUnstable);
  }
}

TEST(QuantLab, DetectBlowupSingleBubble) {
  auto set = detect_blowup(bubble_ladder(0, 12), kRadiusLadder);
  ASSERT_EQ(set.points.size(), 1u);
  EXPECT_NEAR(set.points[0].x, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(set.points[0].circle_point - cplx(0.0, 1.0)), 0.0, 1e-12);
  EXPECT_NEAR(set.points[0].mass, kTwoPi, kMassTolerance);
  EXPECT_GT(set.points[0].mass, kPi + 0.5);

  EXPECT_TRUE(detect_blowup(constant_ladder(8), kRadiusLadder).points.empty());
}

TEST(QuantLab, DetectBlowupTwoBubbles) {
  std::vector<double> mus;
  for (int k = 0; k <= 10; ++k) mus.push_back(std::ldexp(1.0, k));
  auto seq = two_bubble_sequence(mus);
  // K e^u splits into the two bubble densities
  for (double x : {-3.0, -1.0, 0.2, 1.0, 7.0}) {
    const auto& m = seq.back();
    double want = std::exp(bubble_u({1024.0, -1.0})(x)) + std::exp(bubble_u({1024.0, 1.0})(x));
    EXPECT_NEAR(m.K(x) * std::exp(m.u(x)), want, 1e-12 * std::max(1.0, want));
  }
  auto set = detect_blowup(seq, kRadiusLadder);
  ASSERT_EQ(set.points.size(), 2u);
  EXPECT_NEAR(set.points[0].x, -1.0, 1e-6);
  EXPECT_NEAR(set.points[1].x, 1.0, 1e-6);
  for (const auto& bp : set.points) EXPECT_NEAR(bp.mass, kTwoPi, kMassTolerance);
  // K grows like mu x^2 / 2 at infinity
  auto r = verify_solution(seq[4]);
  EXPECT_GT(r.kappa_bound, 1e10);
}

TEST(QuantLab, NonMonotoneTailIsInconclusive) {
  ConcentrationProfile p;
  p.radii = {0.4, 0.2, 0.1};
  p.ks = {0, 1, 2, 3, 4, 5, 6, 7};
  p.alpha.assign(3, {1, 2, 3, 4, 5, 6, 5, 6});
  try {
    blowup_at(p);
    FAIL() << "expected InconclusiveLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconclusiveLimit);
  }
  p.ks = {0, 1, 2};
  p.alpha.assign(3, {1, 2, 3});
  EXPECT_THROW(blowup_at(p), Error);
}

TEST(QuantLab, ClassifyBubbleLadderAsCaseTwo) {
  auto seq = bubble_ladder(0, 12);
  auto rep = classify_case(seq);
  EXPECT_EQ(rep.kind, SequenceCase::Two);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    double mu = std::ldexp(1.0, static_cast<int>(k));
    // mean of log |f'| for the disk automorphism with |f'(0)| = 4 mu / (1 + mu)^2
    EXPECT_NEAR(rep.lambda_bar[k], std::log(4.0 * mu / ((1.0 + mu) * (1.0 + mu))), 1e-8);
    EXPECT_NEAR(rep.Lambda[k], kTwoPi, 1e-6);
    EXPECT_NEAR(rep.beta[k], 0.0, 1e-6);
    if (k > 0) {
      EXPECT_LT(rep.lambda_bar[k], rep.lambda_bar[k - 1]);
    }
  }
  ASSERT_EQ(rep.blowup.points.size(), 1u);
  EXPECT_NEAR(std::abs(rep.blowup.points[0].circle_point - cplx(0.0, 1.0)), 0.0, 1e-12);
  EXPECT_GE(rep.blowup.points[0].mass, kPi);
}

TEST(QuantLab, ClassifyConstantAsCaseOne) {
  auto rep = classify_case(constant_ladder(6));
  EXPECT_EQ(rep.kind, SequenceCase::One);
  EXPECT_TRUE(rep.blowup.points.empty());
}

TEST(QuantLab, RecentredImmersionIsCaseTwo) {
  std::vector<double> ts;
  for (int k = 1; k <= 10; ++k) ts.push_back(1.0 - std::ldexp(1.0, -k));
  auto seq = recentred_sequence(1.0, ts);
  auto rep = classify_case(seq);
  EXPECT_EQ(rep.kind, SequenceCase::Two);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    EXPECT_NEAR(rep.lambda_bar[k], std::log1p(-ts[k] * ts[k]), 1e-8);
    // recentring moves mass around but keeps all of it
    EXPECT_NEAR(rep.Lambda[k], kTwoPi, 1e-6);
  }
  ASSERT_EQ(rep.blowup.points.size(), 1u);
  EXPECT_NEAR(rep.blowup.points[0].x, 1.0, 1e-6);
  EXPECT_GE(rep.blowup.points[0].mass, kPi - kMassTolerance);
  EXPECT_TRUE(verify_solution(seq.back()).solves(1e-6));
  EXPECT_THROW(recentred_sequence(cplx(0.0, -1.0), ts), Error);
}

TEST(QuantLab, SmallMassUnderCaseTwoIsTheoremViolation) {
  // case-2 trend in lambda_bar with only 0.45 of a bubble concentrating, on a
  // flat background of density 5
  auto seq = bubble_ladder(0, 12);
  for (auto& m : seq) m.K = [u = m.u](double x) { return 0.45 + 5.0 * std::exp(-u(x)) * (std::abs(x) < 1.0); };
  try {
    classify_case(seq);
    FAIL() << "expected TheoremViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TheoremViolation);
    EXPECT_EQ(severity(e.code()), Severity::Theorem);
  }
}

TEST(QuantLab, PinchingOfConcentratingBubbles) {
  std::vector<DiskMap> maps;
  for (double mu : {1.0, 16.0, 256.0, 4096.0}) maps.push_back(bubble_disk_map(mu));
  auto rep = pinching_probe(maps, {{1.0, -1.0}});
  ASSERT_EQ(rep.rows.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    double mu = std::pow(16.0, static_cast<double>(k));
    // the image is the unit disk, so the geodesic is the chord
    EXPECT_NEAR(rep.rows[k].distance, 4 * mu / (1 + mu * mu), 0.05 * rep.rows[k].distance + 2 * kTwoPi / 256 / mu);
    if (k > 0) {
      EXPECT_LT(rep.rows[k].distance, rep.rows[k - 1].distance);
    }
    EXPECT_NEAR(rep.rows[k].arc_gap, kTwoPi - 4.0 * std::atan(1.0 / mu), 1e-3) << mu;
  }
  ASSERT_EQ(rep.verdicts.size(), 1u);
  EXPECT_TRUE(rep.verdicts[0].pinched);
  EXPECT_LT(rep.verdicts[0].ratio, 0.1);
  EXPECT_TRUE(rep.verdicts[0].arc_audit_ok);

  std::vector<DiskMap> fixed(4, make_disk_map({0.0, 1.0}, false, true));
  auto flat = pinching_probe(fixed, {{1.0, -1.0}, {cplx(0.0, 1.0), cplx(0.6, -0.8)}});
  for (const auto& v : flat.verdicts) {
    EXPECT_FALSE(v.pinched);
    EXPECT_NEAR(v.ratio, 1.0, 1e-12);
  }
}

TEST(QuantLab, LambdaAuditOnBubblesAndDecoys) {
  auto fam = bubble_sequence({{1.0, 0.0}, {4.0, 1.0}, {0.25, -2.0}, {2.0, 3.0}});
  fam.push_back({[](double x) { return -3.0 * std::log1p(std::abs(x)); }, [](double) { return 1.0; }, 512, "decoy"});
  fam.push_back({[](double x) { return bubble_u({1.0, 0.0})(x) + 1.0; }, [](double) { return 1.0; }, 512, "shifted"});
  auto audit = lambda_audit(fam);
  EXPECT_EQ(audit.verified, 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(audit.entries[k].verified) << audit.entries[k].notice;
    EXPECT_NEAR(audit.entries[k].Lambda, kTwoPi, 1e-6);
    EXPECT_TRUE(audit.entries[k].slope_agrees) << audit.entries[k].slope;
  }
  EXPECT_FALSE(audit.entries[4].verified);
  EXPECT_FALSE(audit.entries[5].verified);
  EXPECT_FALSE(audit.entries[4].notice.empty());
}

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/holo_disk.hpp"
#include "liouville/line_transfer.hpp"

namespace liouville {

// u(x) = log(2 mu / (1 + mu^2 (x - x0)^2)).
struct BubbleParams {
  double mu = 1.0;
  double x0 = 0.0;
};

void validate(const BubbleParams& p);
LineFunction bubble_u(const BubbleParams& p);
// Power of two >= 512 resolving the bump on the circle: at least
// 32 max(mu, 1/mu) (1 + x0^2) nodes.
std::size_t bubble_grid(const BubbleParams& p);

struct Bubble {
  BubbleParams params;
  LineFunction u;
  PullBack pullback;
};
Bubble bubble(const BubbleParams& p);
Bubble bubble(const BubbleParams& p, std::size_t n);

// One member of a sequence (u_k, K_k) on the line, with the grid size that
// resolves it on the circle.
struct SequenceMember {
  LineFunction u;
  LineFunction K;
  std::size_t n = 512;
  std::string label;
};

std::vector<SequenceMember> bubble_sequence(const std::vector<BubbleParams>& params);
// mu_k = 2^k for k = first..last at x0.
std::vector<SequenceMember> bubble_ladder(int first, int last, double x0 = 0.0);
// u = u_{mu,-c} + u_{mu,c} with K = e^{-u} (-Delta)^{1/2} u = e^{-u_{mu,-c}} + e^{-u_{mu,c}},
// which solves the equation exactly and is unbounded at infinity.
std::vector<SequenceMember> two_bubble_sequence(const std::vector<double>& mus, double c = 1.0);
// lambda_k = log |m_k'| for m_k(z) = (z - t_k a) / (1 - t_k conj(a) z), |a| = 1: the
// identity immersion recentred toward a, read on the line with K = 1.
std::vector<SequenceMember> recentred_sequence(cplx a, const std::vector<double>& ts);

struct ResidualReport {
  std::size_t n = 0;
  double sup = 0.0;
  double l2 = 0.0;
  double Lambda = 0.0;
  double beta = 0.0;  // 2 pi - Lambda
  double dirac_mismatch = 0.0;
  bool singular_mismatch = false;  // defect with no anchor declared at -i
  double kappa_bound = 0.0;
  Warnings warnings;

  bool solves(double tol) const { return !singular_mismatch && sup < tol && dirac_mismatch < tol; }
};

ResidualReport verify_solution(const LineFunction& u, const LineFunction& K, std::size_t n);
ResidualReport verify_solution(const SequenceMember& m);

// alpha(r, k) = int_{B_r(x*)} K_k e^{u_k} dx, integrated over the matching arc
// of the circle.
struct ConcentrationProfile {
  std::vector<double> radii;  // decreasing
  std::vector<int> ks;
  std::vector<std::vector<double>> alpha;  // alpha[i][j] for radii[i], ks[j]
  double center = 0.0;
  bool absolute = false;

  // header r,k,alpha; one row per (r, k), radii outermost
  std::string csv() const;
};

double ball_mass(const SequenceMember& m, double center, double r, bool absolute);
// Local maxima of u on the member's circle grid, refined, strongest first;
// only those within a factor 1e3 of the global maximum of e^u.
std::vector<double> locate_centers(const SequenceMember& m, std::size_t max_count = 8);
// A missing center is placed at the argmax of e^u of the last member; every
// member in the last quartile must peak within radii.back() of it, else
// CenterUnstable.
ConcentrationProfile concentration_scan(const std::vector<SequenceMember>& seq, const std::vector<double>& radii,
                                        std::optional<double> center = std::nullopt, bool absolute = false);

struct BlowupPoint {
  double x = 0.0;
  cplx circle_point;
  double mass = 0.0;         // extrapolated to r -> 0
  double tail_max = 0.0;     // max over the last quartile of alpha(r_min, k)
  std::vector<double> limits;  // per radius, the k -> inf estimate
};

struct BlowupSet {
  std::vector<BlowupPoint> points;  // sorted by x
  std::vector<ConcentrationProfile> profiles;  // one per candidate examined
};

inline constexpr double kMassTolerance = 0.02;

// Nested-limit proxy on one profile: nullopt when the last-quartile max of
// alpha(r_min, .) stays below pi - tol. Needs 3 radii and 4 members; a tail
// that is not monotone in k is InconclusiveLimit.
std::optional<BlowupPoint> blowup_at(const ConcentrationProfile& p, double tol = kMassTolerance);
// Candidates from locate_centers on the last member, each scanned with |K|.
BlowupSet detect_blowup(const std::vector<SequenceMember>& seq, const std::vector<double>& radii,
                        double tol = kMassTolerance);

enum class SequenceCase { One, Two, Undecided };
std::string case_name(SequenceCase c);

struct SequenceReport {
  std::vector<double> lambda_bar;
  std::vector<double> Lambda;
  std::vector<double> beta;
  SequenceCase kind = SequenceCase::Undecided;
  BlowupSet blowup;
};

inline const std::vector<double> kRadiusLadder{0.4, 0.2, 0.1, 0.05};

// Circle mean of lambda = u o Pi - log(1 + sin theta).
double circle_mean_lambda(const SequenceMember& m);
// Case 2 when lambda_bar drops by more than 5 with a negative trend, case 1
// when it stays within 1 of lambda_bar_0. A declared case whose masses break
// the quantization bounds is a TheoremViolation.
SequenceReport classify_case(const std::vector<SequenceMember>& seq, const std::vector<double>& radii = kRadiusLadder,
                             double tol = kMassTolerance);

// Conformal factor of a bubble pulled back to the disk: Phi_mu with Phi(1) = 0.
DiskMap bubble_disk_map(double mu);

struct PinchRow {
  std::size_t k = 0;
  cplx p, q;
  double distance = 0.0;
  double mesh_tol = 0.0;  // |D at n - D at n/2|
  double arc_gap = 0.0;   // longer of the two boundary arcs between p and q, image length
};

struct PinchVerdict {
  cplx p, q;
  bool pinched = false;
  double ratio = 0.0;  // final / initial distance
  bool arc_audit_ok = true;
};

struct PinchReport {
  std::vector<PinchRow> rows;  // member-major
  std::vector<PinchVerdict> verdicts;  // one per pair
};

// Pinched: strictly decreasing by more than the mesh tolerance at every step
// and final < 0.1 x initial. A pinching trend hidden under the mesh tolerance
// is InconclusiveMesh. Pinched pairs away from -i are audited against
// arc_gap >= pi / kappa_bar - mesh_tol.
PinchReport pinching_probe(const std::vector<DiskMap>& maps, const std::vector<std::pair<cplx, cplx>>& pairs,
                           std::size_t n_angles = 256, double kappa_bar = 1.0);

struct AuditEntry {
  std::string label;
  bool verified = false;
  std::string notice;
  double residual = 0.0;
  double Lambda = 0.0;
  double slope = 0.0;
  bool slope_agrees = false;  // slope within 5% of Lambda / pi
};

struct LambdaAudit {
  std::vector<AuditEntry> entries;
  std::size_t verified = 0;
};

// Members failing verify_solution at 1e-4 are excluded with a notice. A verified
// member with Lambda < pi - 1e-3 is a TheoremViolation.
LambdaAudit lambda_audit(const std::vector<SequenceMember>& family);

}  // namespace liouville

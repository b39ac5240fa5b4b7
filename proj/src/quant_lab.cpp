#include "liouville/quant_lab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "liouville/parallel.hpp"
#include "quadrature.hpp"

namespace liouville {
namespace {

constexpr std::size_t kMaxGrid = std::size_t{1} << 22;

std::size_t grid_for(double spread) {
  std::size_t n = 512;
  while (static_cast<double>(n) < 32.0 * spread) {
    n *= 2;
    if (n > kMaxGrid) throw Error(ErrorCode::UnderResolved, "member needs more than 2^22 grid nodes");
  }
  return n;
}

// Lifts stereo_angle into (-pi/2, 3pi/2] so that it decreases along the line.
double lifted_angle(double x) {
  double t = stereo_angle(x);
  return t <= -kPi / 2 ? t + kTwoPi : t;
}

std::size_t last_quartile_start(std::size_t count) {
  std::size_t q = std::max<std::size_t>(3, (count + 3) / 4);
  return count - std::min(q, count);
}

double nearest(const std::vector<double>& xs, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (double c : xs)
    if (std::abs(c - x) < std::abs(best - x)) best = c;
  return best;
}

void check_drift(const std::vector<SequenceMember>& seq, double center, double r_min) {
  for (std::size_t k = last_quartile_start(seq.size()); k < seq.size(); ++k) {
    double c = nearest(locate_centers(seq[k]), center);
    if (!(std::abs(c - center) <= r_min))
      throw Error(ErrorCode::CenterUnstable, "member " + std::to_string(k) + " peaks at " + std::to_string(c) +
                                                 ", more than " + std::to_string(r_min) + " from " +
                                                 std::to_string(center));
  }
}

// k -> inf estimate of a monotone tail: Aitken when the last three steps look
// geometric, the tail maximum otherwise.
double tail_limit(const std::vector<double>& tail) {
  const std::size_t m = tail.size();
  double hi = *std::max_element(tail.begin(), tail.end());
  if (m < 3) return hi;
  double d1 = tail[m - 2] - tail[m - 3], d2 = tail[m - 1] - tail[m - 2];
  if (d1 == 0.0 || d1 * d2 <= 0.0) return hi;
  double rho = d2 / d1;
  if (rho >= 0.9) return hi;
  return tail[m - 1] + d2 * rho / (1.0 - rho);
}

}  // namespace

void validate(const BubbleParams& p) {
  if (!(p.mu > 0.0) || !std::isfinite(p.mu)) throw Error(ErrorCode::InvalidInput, "bubble scale must be positive and finite");
  if (!std::isfinite(p.x0)) throw Error(ErrorCode::InvalidInput, "bubble center must be finite");
}

LineFunction bubble_u(const BubbleParams& p) {
  validate(p);
  return [mu = p.mu, x0 = p.x0](double x) {
    double d = mu * (x - x0);
    return std::log(2.0 * mu) - std::log1p(d * d);
  };
}

std::size_t bubble_grid(const BubbleParams& p) {
  validate(p);
  return grid_for(std::max(p.mu, 1.0 / p.mu) * (1.0 + p.x0 * p.x0));
}

Bubble bubble(const BubbleParams& p) { return bubble(p, bubble_grid(p)); }

Bubble bubble(const BubbleParams& p, std::size_t n) {
  auto u = bubble_u(p);
  return {p, u, pull_back(u, n)};
}

std::vector<SequenceMember> bubble_sequence(const std::vector<BubbleParams>& params) {
  std::vector<SequenceMember> out;
  for (const auto& p : params) {
    std::ostringstream label;
    label << "bubble(mu=" << p.mu << ",x0=" << p.x0 << ")";
    out.push_back({bubble_u(p), [](double) { return 1.0; }, bubble_grid(p), label.str()});
  }
  return out;
}

std::vector<SequenceMember> bubble_ladder(int first, int last, double x0) {
  std::vector<BubbleParams> ps;
  for (int k = first; k <= last; ++k) ps.push_back({std::ldexp(1.0, k), x0});
  return bubble_sequence(ps);
}

std::vector<SequenceMember> two_bubble_sequence(const std::vector<double>& mus, double c) {
  std::vector<SequenceMember> out;
  for (double mu : mus) {
    auto left = bubble_u({mu, -c}), right = bubble_u({mu, c});
    std::ostringstream label;
    label << "two-bubble(mu=" << mu << ",c=" << c << ")";
    out.push_back({[=](double x) { return left(x) + right(x); },
                   [=](double x) { return std::exp(-left(x)) + std::exp(-right(x)); }, bubble_grid({mu, c}),
                   label.str()});
  }
  return out;
}

std::vector<SequenceMember> recentred_sequence(cplx a, const std::vector<double>& ts) {
  if (std::abs(std::abs(a) - 1.0) > 1e-12) throw Error(ErrorCode::InvalidInput, "recentring point must lie on the circle");
  if (std::abs(a + cplx(0.0, 1.0)) < 1e-3) throw Error(ErrorCode::PoleOfProjection, "recentring point too close to -i");
  std::vector<SequenceMember> out;
  for (double t : ts) {
    if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidRadius, "recentring parameter must lie in [0, 1)");
    auto u = [a, t](double x) {
      cplx z = stereo_inverse(x);
      return std::log1p(-t * t) - std::log(std::norm(1.0 - t * std::conj(a) * z)) + std::log(stereo_jacobian(x));
    };
    std::ostringstream label;
    label << "recentred(t=" << t << ")";
    out.push_back({u, [](double) { return 1.0; }, grid_for((1.0 + t) / (1.0 - t)), label.str()});
  }
  return out;
}

ResidualReport verify_solution(const LineFunction& u, const LineFunction& K, std::size_t n) {
  ResidualReport rep;
  rep.n = n;
  PullBack pb = pull_back(u, n);
  CurvatureData kd = sample_curvature(K, n);
  rep.kappa_bound = kd.kappa_bound;
  TransferResidual r;
  try {
    r = transfer_equation(pb.field, kd);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMismatch) throw;
    r = transfer_residual(pb.field, kd);
    rep.singular_mismatch = true;
    rep.warnings.push_back({"SingularMismatch", e.what()});
  }
  rep.sup = r.sup;
  rep.l2 = r.l2;
  rep.Lambda = r.Lambda;
  rep.beta = r.defect;
  rep.dirac_mismatch = r.dirac_mismatch;
  rep.warnings.insert(rep.warnings.end(), pb.warnings.begin(), pb.warnings.end());
  rep.warnings.insert(rep.warnings.end(), r.warnings.begin(), r.warnings.end());
  return rep;
}

ResidualReport verify_solution(const SequenceMember& m) { return verify_solution(m.u, m.K, m.n); }

std::string ConcentrationProfile::csv() const {
  std::ostringstream os;
  os << std::setprecision(17) << "r,k,alpha\n";
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t j = 0; j < ks.size(); ++j) os << radii[i] << ',' << ks[j] << ',' << alpha[i][j] << '\n';
  return os.str();
}

double ball_mass(const SequenceMember& m, double center, double r, bool absolute) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidRadius, "ball radius must be positive");
  const double hi = lifted_angle(center - r), lo = lifted_angle(center + r), mid = lifted_angle(center);
  auto g = [&](double phi) {
    double x = stereo_project_angle(phi);
    double k = m.K(x);
    return (absolute ? std::abs(k) : k) * std::exp(m.u(x)) / stereo_jacobian(x);
  };
  gsl_function f = detail::as_gsl(g);
  detail::QuadWorkspace ws;
  double pts[3] = {lo, mid, hi};
  double val = 0.0, err = 0.0;
  int status = gsl_integration_qagp(&f, pts, 3, 1e-13, 1e-11, detail::QuadWorkspace::kLimit, ws.w, &val, &err);
  if (status != GSL_SUCCESS && err > 1e-9 * std::max(1.0, std::abs(val)))
    throw Error(ErrorCode::NotIntegrable, "ball integral did not converge (error bound " + std::to_string(err) + ")");
  if (!std::isfinite(val)) throw Error(ErrorCode::NotIntegrable, "ball integral is not finite");
  return val;
}

std::vector<double> locate_centers(const SequenceMember& m, std::size_t max_count) {
  const std::size_t n = m.n, pole = n / 4;
  const double h = kTwoPi / static_cast<double>(n);
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> g(n, ninf);
  for (std::size_t j = 0; j < n; ++j)
    if (j != pole) g[j] = m.u(stereo_project_angle(PeriodicGrid::angle(j, n)));
  double top = *std::max_element(g.begin(), g.end());
  if (!std::isfinite(top)) throw Error(ErrorCode::InvalidInput, "u is not finite on the grid");
  std::vector<std::pair<double, double>> peaks;  // (value, x)
  for (std::size_t j = 0; j < n; ++j) {
    double a = g[(j + n - 1) % n], b = g[j], c = g[(j + 1) % n];
    if (j == pole || !(b > a && b >= c) || b < top - std::log(1e3)) continue;
    double shift = 0.0;
    double curv = a - 2.0 * b + c;
    if (std::isfinite(a) && std::isfinite(c) && curv < 0.0) shift = 0.5 * (a - c) / curv;
    peaks.push_back({b, stereo_project_angle(PeriodicGrid::angle(j, n) + shift * h)});
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const auto& p, const auto& q) { return p.first > q.first; });
  std::vector<double> out;
  for (std::size_t i = 0; i < peaks.size() && i < max_count; ++i) out.push_back(peaks[i].second);
  return out;
}

ConcentrationProfile concentration_scan(const std::vector<SequenceMember>& seq, const std::vector<double>& radii,
                                        std::optional<double> center, bool absolute) {
  if (seq.empty()) throw Error(ErrorCode::InvalidInput, "empty sequence");
  if (radii.empty()) throw Error(ErrorCode::InvalidInput, "no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error(ErrorCode::InvalidRadius, "radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw Error(ErrorCode::InvalidInput, "radii must be strictly decreasing");
  }
  ConcentrationProfile p;
  p.radii = radii;
  p.absolute = absolute;
  if (center) {
    p.center = *center;
  } else {
    auto cs = locate_centers(seq.back(), 1);
    if (cs.empty()) throw Error(ErrorCode::CenterUnstable, "no peak found on the last member");
    p.center = cs.front();
    check_drift(seq, p.center, radii.back());
  }
  p.ks.resize(seq.size());
  std::iota(p.ks.begin(), p.ks.end(), 0);
  p.alpha.assign(radii.size(), std::vector<double>(seq.size(), 0.0));
  parallel_for(seq.size(), [&](std::size_t k) {
    for (std::size_t i = 0; i < radii.size(); ++i) p.alpha[i][k] = ball_mass(seq[k], p.center, radii[i], absolute);
  });
  return p;
}

std::optional<BlowupPoint> blowup_at(const ConcentrationProfile& p, double tol) {
  const std::size_t R = p.radii.size(), K = p.ks.size();
  if (R < 3 || K < 4) throw Error(ErrorCode::InvalidInput, "need at least 3 radii and 4 sequence members");
  const std::size_t start = last_quartile_start(K);
  BlowupPoint bp;
  bp.x = p.center;
  bp.circle_point = stereo_inverse(p.center);
  for (std::size_t i = 0; i < R; ++i) {
    std::vector<double> tail(p.alpha[i].begin() + static_cast<std::ptrdiff_t>(start), p.alpha[i].end());
    bool up = false, down = false;
    for (std::size_t j = 1; j < tail.size(); ++j) {
      double d = tail[j] - tail[j - 1], eps = 1e-9 * std::max(1.0, std::abs(tail[j]));
      up = up || d > eps;
      down = down || d < -eps;
    }
    if (up && down)
      throw Error(ErrorCode::InconclusiveLimit, "alpha(r = " + std::to_string(p.radii[i]) + ", k) is not monotone over the last quartile");
    bp.limits.push_back(tail_limit(tail));
    if (i + 1 == R) bp.tail_max = *std::max_element(tail.begin(), tail.end());
  }
  if (bp.tail_max < kPi - tol) return std::nullopt;
  // Richardson in r on the two finest radii: alpha(r) ~ m + c r.
  const double r1 = p.radii[R - 2], r2 = p.radii[R - 1];
  bp.mass = (r1 * bp.limits[R - 1] - r2 * bp.limits[R - 2]) / (r1 - r2);
  return bp;
}

BlowupSet detect_blowup(const std::vector<SequenceMember>& seq, const std::vector<double>& radii, double tol) {
  if (seq.empty()) throw Error(ErrorCode::InvalidInput, "empty sequence");
  BlowupSet out;
  for (double c : locate_centers(seq.back())) {
    check_drift(seq, c, radii.back());
    out.profiles.push_back(concentration_scan(seq, radii, c, true));
    if (auto bp = blowup_at(out.profiles.back(), tol)) out.points.push_back(*bp);
  }
  std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

std::string case_name(SequenceCase c) {
  switch (c) {
    case SequenceCase::One: return "1";
    case SequenceCase::Two: return "2";
    case SequenceCase::Undecided: return "undecided";
  }
  return "undecided";
}

double circle_mean_lambda(const SequenceMember& m) {
  PullBack pb = pull_back(m.u, m.n);
  // anchor profiles have zero mean
  return mean(pb.field.lambda().smooth).real();
}

SequenceReport classify_case(const std::vector<SequenceMember>& seq, const std::vector<double>& radii, double tol) {
  if (seq.size() < 2) throw Error(ErrorCode::InvalidInput, "classification needs at least two members");
  SequenceReport rep;
  const std::size_t K = seq.size();
  rep.lambda_bar.resize(K);
  rep.Lambda.resize(K);
  rep.beta.resize(K);
  parallel_for(K, [&](std::size_t k) {
    const auto& m = seq[k];
    rep.lambda_bar[k] = circle_mean_lambda(m);
    rep.Lambda[k] = line_integral([&](double x) { return m.K(x) * std::exp(m.u(x)); }, m.n);
    rep.beta[k] = kTwoPi - rep.Lambda[k];
  });

  double drift = 0.0;
  for (double l : rep.lambda_bar) drift = std::max(drift, std::abs(l - rep.lambda_bar.front()));
  // least-squares trend against the member index
  double kbar = 0.5 * static_cast<double>(K - 1);
  double lbar = std::accumulate(rep.lambda_bar.begin(), rep.lambda_bar.end(), 0.0) / static_cast<double>(K);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    double dk = static_cast<double>(k) - kbar;
    sxy += dk * (rep.lambda_bar[k] - lbar);
    sxx += dk * dk;
  }
  double drop = rep.lambda_bar.front() - rep.lambda_bar.back();
  if (drop > 5.0 && sxy / sxx < 0.0)
    rep.kind = SequenceCase::Two;
  else if (drift < 1.0)
    rep.kind = SequenceCase::One;

  rep.blowup = detect_blowup(seq, radii, tol);
  for (const auto& bp : rep.blowup.points) {
    if (rep.kind == SequenceCase::Two && bp.mass < kPi - tol)
      throw Error(ErrorCode::TheoremViolation, "case 2 with blow-up mass " + std::to_string(bp.mass) + " < pi at x = " +
                                                   std::to_string(bp.x));
    if (rep.kind == SequenceCase::One && std::abs(bp.mass - kPi) > tol)
      throw Error(ErrorCode::TheoremViolation, "case 1 with interior blow-up mass " + std::to_string(bp.mass) +
                                                   " != pi at x = " + std::to_string(bp.x));
  }
  return rep;
}

DiskMap bubble_disk_map(double mu) {
  BubbleParams p{mu, 0.0};
  PullBack pb = pull_back(bubble_u(p), bubble_grid(p));
  return build_phi(analytic_completion(pb.field.lambda()));
}

PinchReport pinching_probe(const std::vector<DiskMap>& maps, const std::vector<std::pair<cplx, cplx>>& pairs,
                           std::size_t n_angles, double kappa_bar) {
  if (maps.size() < 2) throw Error(ErrorCode::InvalidInput, "pinching needs at least two maps");
  if (pairs.empty()) throw Error(ErrorCode::InvalidInput, "no point pairs");
  if (!(kappa_bar > 0.0)) throw Error(ErrorCode::InvalidInput, "curvature bound must be positive");
  const std::size_t P = pairs.size();
  PinchReport rep;
  rep.rows.resize(maps.size() * P);
  parallel_for(maps.size(), [&](std::size_t k) {
    const DiskMap& d = maps[k];
    std::size_t na = 4096;
    while (na < 8 * d.order()) na *= 2;
    const auto speed = derivative_modulus_on_ring(d, 1.0, na);
    const double h = kTwoPi / static_cast<double>(na);
    for (std::size_t i = 0; i < P; ++i) {
      auto [p, q] = pairs[i];
      PinchRow& row = rep.rows[k * P + i];
      row.k = k;
      row.p = p;
      row.q = q;
      row.distance = conformal_distance(d, p, q, n_angles).distance;
      row.mesh_tol = std::abs(row.distance - conformal_distance(d, p, q, n_angles / 2).distance);
      // image lengths of the two boundary arcs between p and q
      auto ccw = [](double from, double to) { return std::fmod(std::fmod(to - from, kTwoPi) + kTwoPi, kTwoPi); };
      const double a = std::arg(p), span = ccw(a, std::arg(q));
      double one = 0.0, total = 0.0;
      for (std::size_t j = 0; j < na; ++j) {
        total += speed[j] * h;
        if (ccw(a, PeriodicGrid::angle(j, na)) < span) one += speed[j] * h;
      }
      row.arc_gap = std::max(one, total - one);
    }
  });

  for (std::size_t i = 0; i < P; ++i) {
    PinchVerdict v;
    v.p = pairs[i].first;
    v.q = pairs[i].second;
    const PinchRow& first = rep.rows[i];
    const PinchRow& last = rep.rows[(maps.size() - 1) * P + i];
    v.ratio = first.distance > 0.0 ? last.distance / first.distance : 1.0;
    bool looks = v.ratio < 0.1, clear = true, rising = false;
    for (std::size_t k = 1; k < maps.size(); ++k) {
      const PinchRow& a = rep.rows[(k - 1) * P + i];
      const PinchRow& b = rep.rows[k * P + i];
      double gap = a.distance - b.distance, tol = std::max(a.mesh_tol, b.mesh_tol);
      if (gap < -tol) rising = true;
      if (gap <= tol) clear = false;
    }
    if (looks && !rising && !clear)
      throw Error(ErrorCode::InconclusiveMesh, "distance decrease is within the mesh tolerance");
    v.pinched = looks && clear;
    const cplx pole(0.0, -1.0);
    if (v.pinched && std::abs(v.p - pole) > 1e-6 && std::abs(v.q - pole) > 1e-6)
      v.arc_audit_ok = last.arc_gap >= kPi / kappa_bar - last.mesh_tol;
    rep.verdicts.push_back(v);
  }
  return rep;
}

LambdaAudit lambda_audit(const std::vector<SequenceMember>& family) {
  LambdaAudit audit;
  audit.entries.resize(family.size());
  parallel_for(family.size(), [&](std::size_t k) {
    const auto& m = family[k];
    AuditEntry& e = audit.entries[k];
    e.label = m.label;
    try {
      ResidualReport r = verify_solution(m);
      e.residual = std::max(r.sup, r.dirac_mismatch);
      e.Lambda = r.Lambda;
      if (!r.solves(1e-4)) {
        e.notice = "excluded: not a solution (residual " + std::to_string(e.residual) +
                   (r.singular_mismatch ? ", unmatched Dirac defect" : "") + ")";
        return;
      }
      e.verified = true;
      e.slope = asymptotic_slope(m.u).slope;
      e.slope_agrees = std::abs(e.slope - e.Lambda / kPi) <= 0.05 * e.Lambda / kPi;
    } catch (const Error& err) {
      e.verified = false;
      e.notice = std::string("excluded: ") + err.what();
    }
  });
  for (const auto& e : audit.entries) {
    if (!e.verified) continue;
    ++audit.verified;
    if (e.Lambda < kPi - 1e-3)
      throw Error(ErrorCode::TheoremViolation, e.label + " solves the equation with Lambda = " + std::to_string(e.Lambda) + " < pi");
  }
  return audit;
}

}  // namespace liouville

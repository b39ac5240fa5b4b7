#include "liouville/line_transfer.hpp"

#include <gsl/gsl_interp.h>

#include <array>
#include <cmath>
#include <memory>
#include <string>

#include "quadrature.hpp"

namespace liouville {
namespace {

constexpr double kPoleStep = 1e-5;

bool at_pole(double angle) {
  double d = std::remainder(angle + kPi / 2, kTwoPi);
  return std::abs(d) < 1e-12;
}

using detail::QuadWorkspace;

struct PvParams {
  const LineFunction* u;
  double x;
  double ux;
};

double pv_integrand(double t, void* p) {
  auto* q = static_cast<PvParams*>(p);
  const LineFunction& u = *q->u;
  return (2.0 * q->ux - u(q->x + t) - u(q->x - t)) / (t * t);
}

// (1/pi) int_eps^inf of the symmetrized difference quotient.
PvResult pv_truncated(const LineFunction& u, double x, double eps) {
  QuadWorkspace ws;
  PvParams p{&u, x, u(x)};
  gsl_function f{&pv_integrand, &p};
  // A tail like C/t makes qagiu return a finite but meaningless number, so
  // check that t f(t) decays before trusting it.
  double w1 = std::abs(1e6 * pv_integrand(1e6, &p)), w2 = std::abs(1e8 * pv_integrand(1e8, &p));
  if (!std::isfinite(w1) || !std::isfinite(w2) || (w1 > 1e-10 && w2 > 0.5 * w1))
    throw Error(ErrorCode::TailError, "integrand decays no faster than 1/t at x = " + std::to_string(x) +
                                          " (t f(t) ~ " + std::to_string(w2) + " at t = 1e8)");
  double near = 0.0, near_err = 0.0, far = 0.0, far_err = 0.0;
  int s1 = gsl_integration_qags(&f, eps, 1.0, 1e-13, 1e-12, QuadWorkspace::kLimit, ws.w, &near, &near_err);
  int s2 = gsl_integration_qagiu(&f, 1.0, 1e-12, 1e-11, QuadWorkspace::kLimit, ws.w, &far, &far_err);
  if (s1 != GSL_SUCCESS && near_err > 1e-8)
    throw Error(ErrorCode::TailError, "inner quadrature failed at x = " + std::to_string(x) +
                                          " (error bound " + std::to_string(near_err) + ")");
  if (s2 != GSL_SUCCESS || !std::isfinite(far) || far_err > 1e-7)
    throw Error(ErrorCode::TailError, "tail of the principal-value integral does not converge at x = " +
                                          std::to_string(x) + " (error bound " +
                                          std::to_string(far_err) + ")");
  return {(near + far) / kPi, (near_err + far_err) / kPi};
}

}  // namespace

double stereo_project(cplx z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidInput, "point is not on the unit circle");
  if (std::abs(z + cplx(0.0, 1.0)) < 1e-14)
    throw Error(ErrorCode::PoleOfProjection, "-i has no image on the line");
  return stereo_project_angle(std::arg(z));
}

cplx stereo_inverse(double x) {
  double d = 1.0 + x * x;
  return {2.0 * x / d, (1.0 - x * x) / d};
}

double stereo_project_angle(double theta) {
  double s = std::sin(theta), c = std::cos(theta);
  if (s < 0.0) {
    if (c == 0.0) throw Error(ErrorCode::PoleOfProjection, "-i has no image on the line");
    return (1.0 - s) / c;
  }
  return c / (1.0 + s);
}

double stereo_angle(double x) { return std::atan2(1.0 - x * x, 2.0 * x); }

double stereo_jacobian(double x) { return 2.0 / (1.0 + x * x); }

LineField::LineField(SingularField lambda) : lambda_(std::move(lambda)) {
  spectrum_ = analyze(lambda_.smooth);
}

double LineField::lambda_at(double theta) const {
  const std::size_t n = lambda_.smooth.n();
  double w = std::fmod(theta + kPi, kTwoPi);
  if (w < 0) w += kTwoPi;
  double u = w / kTwoPi * static_cast<double>(n);
  double nearest = std::round(u);
  if (std::abs(u - nearest) < 1e-12) return lambda_.at_node(static_cast<std::size_t>(nearest) % n);
  double acc = evaluate(spectrum_, theta).real();
  for (const auto& a : lambda_.anchors) {
    if (a.coeff == 0.0) continue;
    acc += a.coeff * log_profile(theta, a.angle);
  }
  return acc;
}

double LineField::u(double x) const { return lambda_at(stereo_angle(x)) + std::log(stereo_jacobian(x)); }

double LineField::pole_anchor() const {
  double c = 0.0;
  for (const auto& a : lambda_.anchors)
    if (at_pole(a.angle)) c += a.coeff;
  return c;
}

PullBack pull_back(const LineFunction& u, std::size_t n) {
  if (n < 8 || !is_power_of_two(n))
    throw Error(ErrorCode::InvalidInput, "grid size must be a power of two >= 8");

  // Tail fit u(x) ~ a - sigma log|x| + d / x on both sides.
  const int per_side = 40;
  double ata[3][3] = {}, atb[3] = {};
  std::vector<std::array<double, 4>> rows;
  for (int side : {-1, 1}) {
    for (int k = 0; k < per_side; ++k) {
      double x = side * std::pow(10.0, 2.0 + 2.0 * k / (per_side - 1));
      double ux = u(x);
      if (!std::isfinite(ux)) throw Error(ErrorCode::InvalidInput, "u is not finite at x = " + std::to_string(x));
      std::array<double, 4> r{1.0, std::log(std::abs(x)), 1.0 / x, ux};
      rows.push_back(r);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) ata[i][j] += r[i] * r[j];
        atb[i] += r[i] * ux;
      }
    }
  }
  // 3x3 normal equations by Cramer's rule.
  auto det3 = [](double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  double d = det3(ata);
  double coef[3];
  for (int c = 0; c < 3; ++c) {
    double m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = (j == c) ? atb[i] : ata[i][j];
    coef[c] = det3(m) / d;
  }
  double sigma = -coef[1];
  double rss = 0.0;
  for (const auto& r : rows) {
    double e = r[3] - (coef[0] + coef[1] * r[1] + coef[2] * r[2]);
    rss += e * e;
  }
  double fit_rms = std::sqrt(rss / static_cast<double>(rows.size()));

  Warnings warnings;
  if (fit_rms > 1e-3)
    warnings.push_back({"TailFit", "logarithmic tail fit residual " + std::to_string(fit_rms)});

  double c = (2.0 - sigma) * kPi;
  if (std::abs(c) < 1e-3) c = 0.0;
  const double pole = -kPi / 2;

  auto smooth_at = [&](double theta) {
    double x = stereo_project_angle(theta);
    double v = u(x) - std::log(stereo_jacobian(x));
    if (c != 0.0) v -= c * log_profile(theta, pole);
    return v;
  };

  // symmetric averages are even in the step; one Richardson pass kills the
  // quadratic term, which otherwise leaks into the half-Laplacian as n * step^2
  auto pole_avg = [&](double h) { return 0.5 * (smooth_at(pole - h) + smooth_at(pole + h)); };
  const double pole_value = (4.0 * pole_avg(kPoleStep) - pole_avg(2.0 * kPoleStep)) / 3.0;

  std::vector<double> v(n);
  const std::size_t pole_index = n / 4;
  for (std::size_t j = 0; j < n; ++j) {
    double theta = PeriodicGrid::angle(j, n);
    v[j] = (j == pole_index) ? pole_value : smooth_at(theta);
    if (!std::isfinite(v[j]))
      throw Error(ErrorCode::InvalidInput, "non-finite lambda at theta = " + std::to_string(theta));
  }

  SingularField sf{PeriodicGrid::from_real(std::move(v)), {}};
  if (c != 0.0) sf.anchors.push_back({pole, c});
  return PullBack{LineField(std::move(sf)), sigma, c, std::move(warnings)};
}

CurvatureData sample_curvature(const LineFunction& K, std::size_t n) {
  std::vector<double> v(n);
  const std::size_t pole_index = n / 4;
  double bound = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == pole_index) {
      v[j] = 0.5 * (K(-1e8) + K(1e8));
    } else {
      v[j] = K(stereo_project_angle(PeriodicGrid::angle(j, n)));
    }
    if (!std::isfinite(v[j])) throw Error(ErrorCode::InvalidInput, "curvature is not finite");
    bound = std::max(bound, std::abs(v[j]));
  }
  return {PeriodicGrid::from_real(std::move(v)), bound};
}

CurvatureData constant_curvature(double k, std::size_t n) {
  return {PeriodicGrid::from_real(std::vector<double>(n, k)), std::abs(k)};
}

CurvatureData curvature_from_field(const LineField& lf) {
  auto hl = singular_half_laplacian(lf.lambda());
  const std::size_t n = lf.n();
  std::vector<double> v(n);
  double bound = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double lam = lf.lambda().at_node(j);
    v[j] = std::isfinite(lam) ? std::exp(-lam) * (hl.smooth.values[j].real() + 1.0) : 0.0;
    bound = std::max(bound, std::abs(v[j]));
  }
  return {PeriodicGrid::from_real(std::move(v)), bound};
}

double line_integral(const LineFunction& f, std::size_t n) {
  if (n < 8 || !is_power_of_two(n))
    throw Error(ErrorCode::InvalidInput, "grid size must be a power of two >= 8");
  auto circle_side = [&](double x) { return f(x) / stereo_jacobian(x); };
  // The circle-side integrand must stay bounded as x -> +-inf.
  for (int side : {-1, 1}) {
    double a = circle_side(side * 1e6), b = circle_side(side * 1e8);
    if (!std::isfinite(a) || !std::isfinite(b) || std::abs(b) > 10.0 * std::abs(a) + 1e-12)
      throw Error(ErrorCode::NotIntegrable, "circle-side integrand is unbounded near -i");
  }
  const double h = kTwoPi / static_cast<double>(n);
  const std::size_t pole_index = n / 4;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double g;
    if (j == pole_index) {
      g = 0.5 * (circle_side(stereo_project_angle(-kPi / 2 - kPoleStep)) +
                 circle_side(stereo_project_angle(-kPi / 2 + kPoleStep)));
    } else {
      g = circle_side(stereo_project_angle(PeriodicGrid::angle(j, n)));
    }
    if (!std::isfinite(g)) throw Error(ErrorCode::NotIntegrable, "circle-side integrand is not finite");
    acc += g;
  }
  return acc * h;
}

double circle_integral(const PeriodicGrid& g) {
  double acc = 0.0;
  for (const auto& v : g.values) acc += v.real();
  return acc * kTwoPi / static_cast<double>(g.n());
}

double total_curvature(const LineField& lf, const CurvatureData& K) {
  const std::size_t n = lf.n();
  if (K.kappa.n() != n) throw Error(ErrorCode::InvalidInput, "curvature grid size differs from the field");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double lam = lf.lambda().at_node(j);
    if (!std::isfinite(lam)) continue;
    acc += K.kappa.values[j].real() * std::exp(lam);
  }
  return acc * kTwoPi / static_cast<double>(n);
}

TransferResidual transfer_residual(const LineField& lf, const CurvatureData& K) {
  TransferResidual r;
  auto hl = singular_half_laplacian(lf.lambda());
  r.warnings = hl.warnings;
  r.Lambda = total_curvature(lf, K);
  r.defect = kTwoPi - r.Lambda;

  double other_mass = 0.0;
  for (const auto& m : hl.masses) {
    if (at_pole(m.angle)) {
      r.anchor_declared = r.anchor_declared || m.mass != 0.0;
      r.declared_mass += m.mass;
    } else {
      other_mass += std::abs(m.mass);
    }
  }
  r.dirac_mismatch = std::abs(r.declared_mass - r.defect) + other_mass;

  const std::size_t n = lf.n();
  std::vector<double> res(n, 0.0);
  double sumsq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double lam = lf.lambda().at_node(j);
    if (!std::isfinite(lam)) continue;
    res[j] = hl.smooth.values[j].real() - K.kappa.values[j].real() * std::exp(lam) + 1.0;
    r.sup = std::max(r.sup, std::abs(res[j]));
    sumsq += res[j] * res[j];
  }
  r.l2 = std::sqrt(sumsq * kTwoPi / static_cast<double>(n));
  r.pointwise = PeriodicGrid::from_real(std::move(res));
  return r;
}

TransferResidual transfer_equation(const LineField& lf, const CurvatureData& K) {
  TransferResidual r = transfer_residual(lf, K);
  if (!r.anchor_declared && std::abs(r.defect) > 1e-6)
    throw Error(ErrorCode::SingularMismatch, "Dirac mass " + std::to_string(r.defect) +
                                                 " at -i but no anchor is declared there");
  return r;
}

double line_half_laplacian_via_circle(const LineField& lf, double x) {
  return line_half_laplacian_via_circle(lf, std::vector<double>{x}).front();
}

std::vector<double> line_half_laplacian_via_circle(const LineField& lf, const std::vector<double>& xs) {
  auto hl = singular_half_laplacian(lf.lambda());
  SpectralRep s = analyze(hl.smooth);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    out[i] = stereo_jacobian(x) * (evaluate(s, stereo_angle(x)).real() + 1.0);
  }
  return out;
}

PvResult pv_half_laplacian_line(const LineFunction& u, double x) {
  const double eps = 1e-2;
  PvResult i1 = pv_truncated(u, x, eps);
  PvResult i2 = pv_truncated(u, x, eps / 2);
  PvResult i3 = pv_truncated(u, x, eps / 4);
  // Truncation error expands in odd powers of eps; remove eps and eps^3.
  double j1 = 2.0 * i2.value - i1.value;
  double j2 = 2.0 * i3.value - i2.value;
  double value = (8.0 * j2 - j1) / 7.0;
  double err = i1.abserr + i2.abserr + i3.abserr + std::abs(j2 - j1) / 7.0;
  return {value, err};
}

SlopeFit asymptotic_slope(const LineFunction& u) {
  const int per_side = 100;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  std::vector<double> xs, ys;
  bool monotone = true;
  for (int side : {-1, 1}) {
    double prev = 0.0;
    for (int k = 0; k < per_side; ++k) {
      double x = side * std::pow(10.0, 2.0 + 2.0 * k / (per_side - 1));
      double y = u(x);
      if (!std::isfinite(y)) throw Error(ErrorCode::InvalidInput, "u is not finite at x = " + std::to_string(x));
      if (k > 0 && y > prev + 1e-12) monotone = false;
      prev = y;
      double f = -std::log1p(std::abs(x));
      xs.push_back(f);
      ys.push_back(y);
      sx += f;
      sy += y;
      sxx += f * f;
      sxy += f * y;
      ++count;
    }
  }
  SlopeFit fit;
  double denom = count * sxx - sx * sx;
  fit.slope = (count * sxy - sx * sy) / denom;
  double intercept = (sy - fit.slope * sx) / count;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - intercept - fit.slope * xs[i];
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / count);
  if (!monotone)
    fit.warnings.push_back({"FitWarning", "tail is not monotone; fit residual " + std::to_string(fit.residual)});
  return fit;
}

LineFunction table_evaluator(std::vector<double> x, std::vector<double> u) {
  if (x.size() != u.size() || x.size() < 3)
    throw Error(ErrorCode::InvalidInput, "table needs at least 3 matching (x, u) pairs");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(u[i])) throw Error(ErrorCode::InvalidInput, "non-finite table entry");
    if (i > 0 && !(x[i] > x[i - 1])) throw Error(ErrorCode::InvalidInput, "table x must be strictly increasing");
  }
  struct Table {
    std::vector<double> x, u;
    std::unique_ptr<gsl_interp, void (*)(gsl_interp*)> interp{nullptr, gsl_interp_free};
  };
  auto t = std::make_shared<Table>();
  t->x = std::move(x);
  t->u = std::move(u);
  t->interp.reset(gsl_interp_alloc(gsl_interp_cspline, t->x.size()));
  gsl_interp_init(t->interp.get(), t->x.data(), t->u.data(), t->x.size());

  return [t](double xq) {
    const auto& X = t->x;
    const auto& U = t->u;
    const std::size_t m = X.size();
    if (xq >= X.front() && xq <= X.back())
      return gsl_interp_eval(t->interp.get(), X.data(), U.data(), xq, nullptr);
    std::size_t a = xq > X.back() ? m - 2 : 1, b = xq > X.back() ? m - 1 : 0;
    // log-linear in |x| when both end samples share the query's sign
    if (X[a] * xq > 0 && X[b] * xq > 0 && std::abs(X[a]) != std::abs(X[b])) {
      double s = (U[b] - U[a]) / (std::log(std::abs(X[b])) - std::log(std::abs(X[a])));
      return U[b] + s * (std::log(std::abs(xq)) - std::log(std::abs(X[b])));
    }
    return U[b];
  };
}

}  // namespace liouville

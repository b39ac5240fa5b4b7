#include "liouville/holo_disk.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "liouville/fft.hpp"

namespace liouville {
namespace {

constexpr cplx kI(0.0, 1.0);

double wrap_positive(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

void require_in_disk(cplx z) {
  if (!(std::abs(z) <= 1.0 + 1e-12)) throw Error(ErrorCode::InvalidInput, "point outside the closed unit disk");
}

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Values of sum_k c_k r^k e^{ik theta_j} on the grid theta_j = 2 pi j / L - pi.
std::vector<cplx> ring_values(const std::vector<cplx>& c, double r, std::size_t L) {
  std::vector<cplx> folded(L, 0.0);
  double rk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    folded[k % L] += sign * rk * c[k];
    rk *= r;
    if (rk == 0.0) break;
  }
  return fft::backward(folded);
}

// Products of the anchor factors (1 - z e^{-i theta0})^{-c/pi} as a power series.
std::vector<cplx> binomial_series(double a, double theta0, std::size_t terms) {
  std::vector<cplx> b(terms);
  double mag = 1.0;
  for (std::size_t k = 0; k < terms; ++k) {
    if (k > 0) mag *= (static_cast<double>(k) - 1.0 + a) / static_cast<double>(k);
    b[k] = mag * std::polar(1.0, -static_cast<double>(k) * theta0);
  }
  return b;
}

std::vector<cplx> truncated_product(const std::vector<cplx>& x, const std::vector<cplx>& y, std::size_t terms) {
  std::size_t L = next_pow2(2 * terms);
  std::vector<cplx> a(L, 0.0), b(L, 0.0);
  std::copy_n(x.begin(), std::min(terms, x.size()), a.begin());
  std::copy_n(y.begin(), std::min(terms, y.size()), b.begin());
  auto fa = fft::forward(a), fb = fft::forward(b);
  for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
  auto p = fft::backward(fa);
  std::vector<cplx> out(terms);
  for (std::size_t i = 0; i < terms; ++i) out[i] = p[i] / static_cast<double>(L);
  return out;
}

// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> x, w;
};

GaussRule gauss_legendre(std::size_t m) {
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(m);
  GaussRule g;
  for (std::size_t i = 0; i < m; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(0.0, 1.0, i, &xi, &wi, t);
    g.x.push_back(xi);
    g.w.push_back(wi);
  }
  gsl_integration_glfixed_table_free(t);
  return g;
}

struct AnchorQuadParams {
  int m;
  double theta0;
  bool imag;
};

double anchor_pair_integrand(double theta, void* p) {
  auto* q = static_cast<AnchorQuadParams*>(p);
  Anchor unit{q->theta0, 1.0};
  double s = log_profile(theta, q->theta0);
  double c = anchor_conjugate(theta, unit);
  double cm = std::cos(q->m * theta), sm = std::sin(q->m * theta);
  // (s + i c) e^{i m theta}
  return q->imag ? s * sm + c * cm : s * cm - c * sm;
}

// Largest negative-frequency coefficient of s + i conj(s) for modes -1..-8,
// by adaptive quadrature over one period starting at the anchor.
double anchor_negative_frequency(const Anchor& a) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(1000);
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m) {
    double parts[2];
    for (int im = 0; im < 2; ++im) {
      AnchorQuadParams p{m, a.angle, im == 1};
      gsl_function f{&anchor_pair_integrand, &p};
      double r = 0.0, e = 0.0;
      gsl_integration_qags(&f, a.angle, a.angle + kTwoPi, 1e-13, 1e-11, 1000, w, &r, &e);
      parts[im] = r / kTwoPi;
    }
    worst = std::max(worst, std::hypot(parts[0], parts[1]));
  }
  gsl_integration_workspace_free(w);
  return worst;
}

}  // namespace

cplx DiskMap::operator()(cplx z) const {
  require_in_disk(z);
  return horner(coeffs, z);
}

cplx DiskMap::derivative(cplx z) const {
  require_in_disk(z);
  return horner(deriv_coeffs, z);
}

DiskMap make_disk_map(std::vector<cplx> coeffs, bool normalized_at_one, bool immersion) {
  DiskMap d;
  d.coeffs = std::move(coeffs);
  d.deriv_coeffs.resize(d.coeffs.size() > 1 ? d.coeffs.size() - 1 : 1, 0.0);
  for (std::size_t k = 1; k < d.coeffs.size(); ++k) d.deriv_coeffs[k - 1] = static_cast<double>(k) * d.coeffs[k];
  d.normalized_at_one = normalized_at_one;
  d.immersion = immersion;
  return d;
}

double tail_energy_fraction(const DiskMap& d) {
  double total = 0.0, tail = 0.0;
  const std::size_t half = d.order() / 2;
  for (std::size_t k = 0; k < d.coeffs.size(); ++k) {
    double e = std::norm(d.coeffs[k]);
    total += e;
    if (k > half) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

void check_resolution(const DiskMap& d) {
  double f = tail_energy_fraction(d);
  if (!(f < 1e-6))
    throw Error(ErrorCode::UnderResolved, "series tail carries " + std::to_string(f) + " of the energy (limit 1e-6)");
}

std::vector<double> derivative_modulus_on_ring(const DiskMap& d, double r, std::size_t n_angles) {
  auto v = ring_values(d.deriv_coeffs, r, n_angles);
  std::vector<double> out(n_angles);
  for (std::size_t j = 0; j < n_angles; ++j) out[j] = std::abs(v[j]);
  return out;
}

double min_derivative_on_lattice(const DiskMap& d) {
  double m = std::abs(d.deriv_coeffs.front());
  for (int i = 1; i <= 64; ++i) {
    auto ring = derivative_modulus_on_ring(d, i / 64.0, 256);
    m = std::min(m, *std::min_element(ring.begin(), ring.end()));
  }
  return m;
}

std::vector<cplx> boundary_values(const DiskMap& d, std::size_t n) { return ring_values(d.coeffs, 1.0, n); }

double anchor_conjugate(double theta, const Anchor& a) {
  double psi = wrap_positive(theta - a.angle);
  if (psi == 0.0 || std::abs(psi - kTwoPi) < 1e-14 || psi < 1e-14) return 0.0;
  return -(a.coeff / kTwoPi) * (psi - kPi);
}

double BoundaryTrace::rho_at_node(std::size_t j) const {
  double v = rho.values[j].real();
  for (const auto& a : lambda.anchors) v += anchor_conjugate(rho.theta(j), a);
  return v;
}

BoundaryTrace analytic_completion(const SingularField& lambda) {
  BoundaryTrace bt;
  bt.lambda = lambda;
  SpectralRep s = analyze(lambda.smooth);
  BandLimit bl = band_limit_check(s);
  if (!bl.ok)
    throw Error(ErrorCode::UnderResolved, "top 10% of the spectrum of lambda carries " +
                                              std::to_string(bl.tail_fraction * 100.0) + "% of the energy");
  bt.rho = hilbert(lambda.smooth);

  // lambda + i rho keeps only the Nyquist mode at negative frequency.
  double neg = 0.0, total = 0.0;
  for (int m = s.min_mode(); m <= s.max_mode(); ++m) {
    if (m == 0) continue;
    total += std::norm(s.at(m));
    if (m == s.min_mode()) neg += std::norm(s.at(m));
  }
  bt.negative_frequency_residue = total > 0.0 ? std::sqrt(neg / total) : 0.0;

  for (const auto& a : lambda.anchors) {
    if (a.coeff == 0.0) continue;
    bt.anchor_conjugate_residue = std::max(bt.anchor_conjugate_residue, std::abs(a.coeff) * anchor_negative_frequency(a));
  }
  if (bt.anchor_conjugate_residue > 1e-8)
    bt.warnings.push_back({"AnchorConjugate", "negative-frequency residue " + std::to_string(bt.anchor_conjugate_residue)});

  const std::size_t n = lambda.smooth.n();
  std::vector<cplx> phi(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lam = lambda.at_node(j);
    phi[j] = std::isfinite(lam) ? std::exp(cplx(lam, bt.rho_at_node(j))) : cplx(0.0);
  }
  bt.phi_boundary = PeriodicGrid::from_complex(std::move(phi));
  return bt;
}

DiskMap build_phi(const BoundaryTrace& bt) {
  const std::size_t n = bt.lambda.smooth.n();
  const std::size_t M = n / 2;
  const std::size_t N4 = 4 * n;

  SpectralRep ls = resize(analyze(bt.lambda.smooth), N4);
  SpectralRep rs = resize(analyze(bt.rho), N4);
  SpectralRep w;
  w.coeffs.resize(N4);
  for (std::size_t i = 0; i < N4; ++i) w.coeffs[i] = ls.coeffs[i] + kI * rs.coeffs[i];
  PeriodicGrid e = synthesize(w, false);
  for (auto& v : e.values) v = std::exp(v);
  SpectralRep E = analyze(e);

  double neg = 0.0, total = 0.0;
  for (int m = E.min_mode(); m <= E.max_mode(); ++m) {
    double en = std::norm(E.at(m));
    total += en;
    if (m < 0) neg += en;
  }
  if (total > 0.0 && neg / total > 1e-6)
    throw Error(ErrorCode::NotHolomorphic,
                "negative-frequency energy fraction " + std::to_string(neg / total) + " exceeds 1e-6");

  std::vector<cplx> deriv(M);
  for (std::size_t k = 0; k < M; ++k) deriv[k] = E.at(static_cast<int>(k));
  for (const auto& a : bt.lambda.anchors) {
    if (a.coeff == 0.0) continue;
    deriv = truncated_product(deriv, binomial_series(a.coeff / kPi, a.angle, M), M);
  }

  std::vector<cplx> coeffs(M + 1, 0.0);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    coeffs[k + 1] = deriv[k] / static_cast<double>(k + 1);
    sum += coeffs[k + 1];
  }
  coeffs[0] = -sum;
  DiskMap d = make_disk_map(std::move(coeffs), true, false);
  check_resolution(d);
  d.immersion = min_derivative_on_lattice(d) > 0.0;
  return d;
}

PeriodicGrid boundary_curvature(const BoundaryTrace& bt) {
  PeriodicGrid drho = derivative(bt.rho);
  double shift = 0.0;
  for (const auto& a : bt.lambda.anchors) shift += a.coeff / kTwoPi;
  const std::size_t n = drho.n();
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lam = bt.lambda.at_node(j);
    k[j] = std::isfinite(lam) ? std::exp(-lam) * (drho.values[j].real() - shift + 1.0) : 0.0;
  }
  return PeriodicGrid::from_real(std::move(k));
}

double curvature_mass(const BoundaryTrace& bt) {
  PeriodicGrid drho = derivative(bt.rho);
  double acc = 0.0;
  for (const auto& v : drho.values) acc += v.real();
  double total = 0.0;
  for (const auto& a : bt.lambda.anchors) total += a.coeff;
  return acc * kTwoPi / static_cast<double>(drho.n()) + kTwoPi - total;
}

BoundaryCurve trace_boundary(const BoundaryTrace& bt) {
  const std::size_t n = bt.lambda.smooth.n();
  const double h = kTwoPi / static_cast<double>(n);
  std::vector<Anchor> anchors;
  for (const auto& a : bt.lambda.anchors) {
    if (a.coeff == 0.0) continue;
    if (a.coeff >= kPi) throw Error(ErrorCode::NotIntegrable, "anchor coefficient >= pi makes |Phi'| non-integrable");
    anchors.push_back(a);
  }

  SpectralRep ls = analyze(bt.lambda.smooth);
  SpectralRep rs = analyze(bt.rho);

  auto anchor_factor = [&](double theta, const Anchor* skip) {
    cplx f = 1.0;
    for (const auto& a : anchors) {
      if (&a == skip) continue;
      f *= std::exp(cplx(a.coeff * log_profile(theta, a.angle), anchor_conjugate(theta, a)));
    }
    return f;
  };
  auto smooth_speed = [&](double theta) {
    cplx w(evaluate(ls, theta).real(), evaluate(rs, theta).real());
    return kI * std::polar(1.0, theta) * std::exp(w);
  };

  // Cells touching an anchor are integrated with a graded rule.
  std::vector<bool> special(n, false);
  for (const auto& a : anchors) {
    double u = wrap_positive(a.angle + kPi) / h;
    std::size_t cell = static_cast<std::size_t>(std::floor(u)) % n;
    special[cell] = true;
    if (std::abs(u - std::round(u)) < 1e-9) {
      std::size_t node = static_cast<std::size_t>(std::llround(u)) % n;
      special[node] = true;
      special[(node + n - 1) % n] = true;
    }
  }

  const GaussRule g8 = gauss_legendre(8);
  const GaussRule g24 = gauss_legendre(24);
  std::vector<cplx> increments(n, 0.0);

  // Regular cells: the smooth parts at the shifted nodes theta_j + h x_q come
  // from one phase-shifted synthesis per quadrature node.
  for (std::size_t q = 0; q < g8.x.size(); ++q) {
    double shift = h * g8.x[q];
    SpectralRep ls_q = ls, rs_q = rs;
    for (int m = ls.min_mode(); m <= ls.max_mode(); ++m) {
      cplx ph = std::polar(1.0, m * shift);
      if (m == ls.min_mode()) ph = std::cos(m * shift);
      ls_q.at(m) *= ph;  // Nyquist stays a cosine, matching evaluate()
      rs_q.at(m) *= ph;
    }
    PeriodicGrid lv = synthesize(ls_q, true), rv = synthesize(rs_q, true);
    for (std::size_t j = 0; j < n; ++j) {
      if (special[j]) continue;
      double theta = PeriodicGrid::angle(j, n) + shift;
      cplx w(lv.values[j].real(), rv.values[j].real());
      increments[j] += g8.w[q] * h * kI * std::polar(1.0, theta) * std::exp(w) * anchor_factor(theta, nullptr);
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (!special[j]) continue;
    double L = PeriodicGrid::angle(j, n), R = L + h;
    std::vector<double> cuts{L, R};
    for (const auto& a : anchors) {
      double t = L + wrap_positive(a.angle - L);
      if (t > L && t < R) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    auto anchor_at = [&](double t) -> const Anchor* {
      for (const auto& a : anchors)
        if (std::abs(std::remainder(t - a.angle, kTwoPi)) < 1e-12) return &a;
      return nullptr;
    };
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      double a0 = cuts[c], b0 = cuts[c + 1], mid = 0.5 * (a0 + b0);
      // Each half is graded toward its own end when an anchor sits there. With
      // t = span s^q the factor |t|^{-p} dt becomes q |span|^{-p} s^{q(1-p)-1} ds,
      // so the singular power is folded into the weight and never evaluated.
      for (int half = 0; half < 2; ++half) {
        double end = half == 0 ? a0 : b0;
        const Anchor* at = anchor_at(end);
        double p = at ? at->coeff / kPi : 0.0;
        double qexp = at ? 3.0 / (1.0 - p) : 1.0;
        double span = mid - end;  // signed
        // integral runs from end toward mid; orient from a0 to b0
        double sign = half == 0 ? 1.0 : -1.0;
        for (std::size_t k = 0; k < g24.x.size(); ++k) {
          double s = g24.x[k];
          double t = span * std::pow(s, qexp);
          double theta = end + t;
          cplx f = smooth_speed(theta) * anchor_factor(theta, at);
          double jac = span * qexp * std::pow(s, qexp - 1.0);
          if (at) {
            double half_t = 0.5 * t;
            double ratio = std::abs(half_t) < 1e-8 ? 1.0 : std::sin(half_t) / half_t;
            double psi = t > 0.0 ? t : kTwoPi + t;
            f *= std::polar(std::pow(std::abs(ratio), -p), -(at->coeff / kTwoPi) * (psi - kPi));
            jac = span * qexp * std::pow(std::abs(span), -p) * std::pow(s, qexp * (1.0 - p) - 1.0);
          }
          increments[j] += sign * g24.w[k] * jac * f;
        }
      }
    }
  }

  BoundaryCurve bc;
  bc.points.resize(n);
  cplx acc = 0.0, total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    bc.points[j] = acc;
    acc += increments[j];
  }
  total = acc;
  bc.closure_error = std::abs(total);
  cplx origin = bc.points[n / 2];
  for (auto& p : bc.points) p -= origin;

  if (anchors.size() == 1 && anchors[0].coeff > 0.0 && n >= 32) {
    double u = wrap_positive(anchors[0].angle + kPi) / h;
    if (std::abs(u - std::round(u)) < 1e-9) {
      std::size_t c = static_cast<std::size_t>(std::llround(u)) % n;
      bc.corner = c;
      auto fit = [&](long first, long last) {
        // Linear fit of edge direction against the edge's mid-angle, evaluated
        // at the corner.
        std::vector<double> xs, ys;
        double prev = 0.0;
        for (long e = first; e <= last; ++e) {
          std::size_t j0 = static_cast<std::size_t>((e % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n));
          std::size_t j1 = (j0 + 1) % n;
          double ang = std::arg(bc.points[j1] - bc.points[j0]);
          if (!ys.empty()) ang = prev + std::remainder(ang - prev, kTwoPi);
          prev = ang;
          xs.push_back(static_cast<double>(e - static_cast<long>(c)) + 0.5);
          ys.push_back(ang);
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0, m = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
          sx += xs[i];
          sy += ys[i];
          sxx += xs[i] * xs[i];
          sxy += xs[i] * ys[i];
        }
        double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        double icpt = (sy - slope * sx) / m;
        return icpt;
      };
      const long ci = static_cast<long>(c);
      bc.tangent_in = fit(ci - 10, ci - 4);
      bc.tangent_out = fit(ci + 3, ci + 9);
    }
  }
  return bc;
}

cplx mobius(cplx z, cplx a, double t) { return (z - t * a) / (1.0 - t * std::conj(a) * z); }

DiskMap mobius_recenter(const DiskMap& d, cplx a, double t) {
  if (std::abs(std::abs(a) - 1.0) > 1e-9) throw Error(ErrorCode::InvalidInput, "recentring point must lie on S^1");
  if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidInput, "t must lie in [0, 1)");
  const std::size_t M = d.order();
  const std::size_t N = std::max<std::size_t>(64, next_pow2(4 * (M + 1)));
  std::vector<cplx> v(N);
  for (std::size_t j = 0; j < N; ++j) {
    cplx z = std::polar(1.0, PeriodicGrid::angle(j, N));
    cplx w = mobius(z, a, t);
    w /= std::abs(w);
    v[j] = horner(d.coeffs, w);
  }
  SpectralRep s = analyze(PeriodicGrid::from_complex(std::move(v)));
  double neg = 0.0, beyond = 0.0, total = 0.0;
  for (int m = s.min_mode(); m <= s.max_mode(); ++m) {
    double e = std::norm(s.at(m));
    total += e;
    if (m < 0) neg += e;
    if (m > static_cast<int>(M)) beyond += e;
  }
  if (total > 0.0 && (neg + beyond) / total >= 1e-6)
    throw Error(ErrorCode::UnderResolved, "recentred map needs more than " + std::to_string(M) + " modes");
  std::vector<cplx> coeffs(M + 1);
  for (std::size_t k = 0; k <= M; ++k) coeffs[k] = s.at(static_cast<int>(k));
  cplx at_one = 0.0;
  for (const auto& c : coeffs) at_one += c;
  coeffs[0] -= at_one;
  DiskMap out = make_disk_map(std::move(coeffs), true, d.immersion);
  check_resolution(out);
  return out;
}

DiskMap blaschke_fixture(const std::vector<cplx>& zeros, double phase) {
  if (zeros.empty()) throw Error(ErrorCode::InvalidInput, "Blaschke product needs at least one zero");
  for (const auto& a : zeros)
    if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::InvalidInput, "Blaschke zero on or outside the unit circle");
  auto B = [&](cplx z) {
    cplx p = std::polar(1.0, phase);
    for (const auto& a : zeros) p *= (z - a) / (1.0 - std::conj(a) * z);
    return p;
  };
  for (std::size_t N = 64;; N *= 2) {
    SpectralRep s = analyze(PeriodicGrid::sample_complex(N, [&](double t) { return B(std::polar(1.0, t)); }));
    std::vector<cplx> coeffs(N / 2);
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < N / 2; ++k) {
      coeffs[k] = s.at(static_cast<int>(k));
      double e = std::norm(coeffs[k]);
      total += e;
      if (k > N / 4) tail += e;
    }
    if (tail / total < 1e-24 || N >= (1u << 16)) return make_disk_map(std::move(coeffs), false, zeros.size() == 1);
  }
}

}  // namespace liouville

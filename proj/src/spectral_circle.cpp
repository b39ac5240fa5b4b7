#include "liouville/spectral_circle.hpp"

#include <gsl/gsl_sf_clausen.h>

#include <cmath>
#include <limits>
#include <string>

#include "liouville/fft.hpp"

namespace liouville {
namespace {

double sign_of(int m) { return m > 0 ? 1.0 : (m < 0 ? -1.0 : 0.0); }

double alternating(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

void note_band_limit(const SpectralRep& s, const char* op, Warnings* warnings) {
  if (!warnings) return;
  BandLimit b = band_limit_check(s);
  if (!b.ok) {
    warnings->push_back({"BandLimit", std::string(op) + ": top 10% of spectrum carries " +
                                          std::to_string(b.tail_fraction * 100.0) +
                                          "% of the energy"});
  }
}

PeriodicGrid apply_multiplier(const PeriodicGrid& g, const std::function<cplx(int)>& mult,
                              const char* op, Warnings* warnings) {
  SpectralRep s = analyze(g);
  note_band_limit(s, op, warnings);
  for (int m = s.min_mode(); m <= s.max_mode(); ++m) s.at(m) *= mult(m);
  return synthesize(s, g.real);
}

double wrap_angle(double t) {
  t = std::fmod(t + kPi, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t - kPi;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double PeriodicGrid::angle(std::size_t j, std::size_t n) {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(n) - kPi;
}

std::size_t PeriodicGrid::nearest_index(double theta, std::size_t n) {
  double u = (wrap_angle(theta) + kPi) / kTwoPi * static_cast<double>(n);
  auto j = static_cast<long long>(std::llround(u));
  j %= static_cast<long long>(n);
  if (j < 0) j += static_cast<long long>(n);
  return static_cast<std::size_t>(j);
}

std::vector<double> PeriodicGrid::real_values() const {
  std::vector<double> v(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) v[j] = values[j].real();
  return v;
}

PeriodicGrid PeriodicGrid::from_real(std::vector<double> v) {
  PeriodicGrid g;
  g.values.assign(v.begin(), v.end());
  g.real = true;
  return g;
}

PeriodicGrid PeriodicGrid::from_complex(std::vector<cplx> v) {
  PeriodicGrid g;
  g.values = std::move(v);
  g.real = false;
  return g;
}

PeriodicGrid PeriodicGrid::sample(std::size_t n, const std::function<double(double)>& f) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(angle(j, n));
  return from_real(std::move(v));
}

PeriodicGrid PeriodicGrid::sample_complex(std::size_t n, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(angle(j, n));
  return from_complex(std::move(v));
}

void validate(const PeriodicGrid& g) {
  if (g.n() < 8 || !is_power_of_two(g.n()))
    throw Error(ErrorCode::InvalidInput,
                "grid size must be a power of two >= 8, got " + std::to_string(g.n()));
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (!std::isfinite(g.values[j].real()) || !std::isfinite(g.values[j].imag()))
      throw Error(ErrorCode::InvalidInput, "non-finite sample at index " + std::to_string(j));
    if (g.real && g.values[j].imag() != 0.0)
      throw Error(ErrorCode::InvalidInput, "real grid with imaginary part at index " + std::to_string(j));
  }
}

SpectralRep analyze(const PeriodicGrid& g) {
  validate(g);
  const std::size_t n = g.n();
  std::vector<cplx> f = fft::forward(g.values);
  SpectralRep s;
  s.coeffs.resize(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int m = s.min_mode(); m <= s.max_mode(); ++m) {
    std::size_t k = static_cast<std::size_t>((m + static_cast<int>(n)) % static_cast<int>(n));
    s.at(m) = alternating(m) * inv_n * f[k];
  }
  if (g.real) s.at(s.min_mode()) = s.at(s.min_mode()).real();
  return s;
}

PeriodicGrid synthesize(const SpectralRep& s, bool real) {
  const std::size_t n = s.n();
  if (n < 8 || !is_power_of_two(n))
    throw Error(ErrorCode::InvalidInput, "spectrum size must be a power of two >= 8");
  std::vector<cplx> c(n);
  for (int m = s.min_mode(); m <= s.max_mode(); ++m) {
    std::size_t k = static_cast<std::size_t>((m + static_cast<int>(n)) % static_cast<int>(n));
    c[k] = alternating(m) * s.at(m);
  }
  std::vector<cplx> v = fft::backward(c);
  if (real) {
    for (auto& x : v) x = x.real();
    return PeriodicGrid{std::move(v), true};
  }
  return PeriodicGrid{std::move(v), false};
}

cplx evaluate(const SpectralRep& s, double theta) {
  cplx acc = 0.0;
  for (int m = s.min_mode() + 1; m <= s.max_mode(); ++m) acc += s.at(m) * std::polar(1.0, m * theta);
  acc += s.at(s.min_mode()) * std::cos(static_cast<double>(s.min_mode()) * theta);
  return acc;
}

SpectralRep resize(const SpectralRep& s, std::size_t n_new) {
  if (n_new < 8 || !is_power_of_two(n_new))
    throw Error(ErrorCode::InvalidInput, "spectrum size must be a power of two >= 8");
  SpectralRep out;
  out.coeffs.assign(n_new, 0.0);
  if (n_new >= s.n()) {
    for (int m = s.min_mode() + 1; m <= s.max_mode(); ++m) out.at(m) = s.at(m);
    cplx nyq = s.at(s.min_mode());
    if (n_new == s.n()) {
      out.at(s.min_mode()) = nyq;
    } else {
      out.at(s.min_mode()) = 0.5 * nyq;
      out.at(-s.min_mode()) = 0.5 * nyq;
    }
  } else {
    for (int m = out.min_mode() + 1; m <= out.max_mode(); ++m) out.at(m) = s.at(m);
    // Fold the two modes that meet at the new Nyquist frequency.
    out.at(out.min_mode()) = s.at(out.min_mode()) + s.at(-out.min_mode());
  }
  return out;
}

cplx mean(const PeriodicGrid& g) {
  cplx acc = 0.0;
  for (const auto& v : g.values) acc += v;
  return acc / static_cast<double>(g.n());
}

double parseval_energy(const SpectralRep& s) {
  double e = 0.0;
  for (const auto& c : s.coeffs) e += std::norm(c);
  return e;
}

BandLimit band_limit_check(const SpectralRep& s) {
  const double cutoff = 0.9 * static_cast<double>(s.n() / 2);
  double total = 0.0, tail = 0.0;
  for (int m = s.min_mode(); m <= s.max_mode(); ++m) {
    if (m == 0) continue;
    double e = std::norm(s.at(m));
    total += e;
    if (std::abs(m) > cutoff) tail += e;
  }
  BandLimit b;
  if (total > 0.0) b.tail_fraction = tail / total;
  // a tail at rounding level says nothing about resolution
  const double floor = 1e-26 * std::max(1.0, total + std::norm(s.at(0)));
  b.ok = b.tail_fraction <= 0.01 || tail <= floor;
  return b;
}

PeriodicGrid half_laplacian(const PeriodicGrid& g, Warnings* warnings) {
  return apply_multiplier(g, [](int m) { return cplx(std::abs(m)); }, "half_laplacian", warnings);
}

PeriodicGrid hilbert(const PeriodicGrid& g, Warnings* warnings) {
  const int nyq = -static_cast<int>(g.n() / 2);
  return apply_multiplier(
      g, [nyq](int m) { return m == nyq ? cplx(0.0) : cplx(0.0, -sign_of(m)); }, "hilbert", warnings);
}

PeriodicGrid derivative(const PeriodicGrid& g, Warnings* warnings) {
  const int nyq = -static_cast<int>(g.n() / 2);
  return apply_multiplier(
      g, [nyq](int m) { return m == nyq ? cplx(0.0) : cplx(0.0, m); }, "derivative", warnings);
}

PeriodicGrid poisson_extend(const PeriodicGrid& g, double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw Error(ErrorCode::InvalidRadius, "radius must lie in [0, 1), got " + std::to_string(r));
  return apply_multiplier(g, [r](int m) { return cplx(std::pow(r, std::abs(m))); }, "poisson_extend",
                          nullptr);
}

PeriodicGrid green_convolve(const PeriodicGrid& f, Warnings* warnings) {
  validate(f);
  cplx avg = mean(f);
  if (std::abs(avg) > 1e-8)
    throw Error(ErrorCode::NotSolvable,
                "right-hand side has mean " + std::to_string(std::abs(avg)) + " > 1e-8");
  return apply_multiplier(
      f, [](int m) { return m == 0 ? cplx(0.0) : cplx(1.0 / std::abs(m)); }, "green_convolve",
      warnings);
}

double log_profile(double theta, double theta0) {
  // 2(1 - cos t) = (2 sin(t/2))^2, without the cancellation near t = 0
  return -std::log(std::abs(2.0 * std::sin(0.5 * (theta - theta0)))) / kPi;
}

double log_profile_integral(double a, double b, double theta0) {
  // log(2(1 - cos t)) = 2 log|2 sin(t/2)| and Cl2(x) = -int_0^x log|2 sin(t/2)| dt.
  return (gsl_sf_clausen(b - theta0) - gsl_sf_clausen(a - theta0)) / kPi;
}

PeriodicGrid log_profile_cell_averages(std::size_t n, double theta0) {
  const double h = kTwoPi / static_cast<double>(n);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    double t = PeriodicGrid::angle(j, n);
    v[j] = log_profile_integral(t - 0.5 * h, t + 0.5 * h, theta0) / h;
  }
  return PeriodicGrid::from_real(std::move(v));
}

SpectralRep analyze_cell_averages(const PeriodicGrid& averages) {
  SpectralRep s = analyze(averages);
  const double h = kTwoPi / static_cast<double>(s.n());
  for (int m = s.min_mode(); m <= s.max_mode(); ++m) {
    if (m == 0) continue;
    double x = 0.5 * m * h;
    s.at(m) /= std::sin(x) / x;
  }
  return s;
}

double SingularField::operator()(double theta) const {
  double acc = 0.0;
  for (const auto& a : anchors) {
    if (a.coeff == 0.0) continue;
    if (std::cos(theta - a.angle) == 1.0) return a.coeff > 0 ? std::numeric_limits<double>::infinity()
                                                            : -std::numeric_limits<double>::infinity();
    acc += a.coeff * log_profile(theta, a.angle);
  }
  const std::size_t n = smooth.n();
  double u = (wrap_angle(theta) + kPi) / kTwoPi * static_cast<double>(n);
  double nearest = std::round(u);
  if (std::abs(u - nearest) < 1e-12) {
    return acc + smooth.values[static_cast<std::size_t>(nearest) % n].real();
  }
  return acc + evaluate(analyze(smooth), theta).real();
}

double SingularField::at_node(std::size_t j) const {
  const std::size_t n = smooth.n();
  double theta = PeriodicGrid::angle(j, n);
  double acc = smooth.values[j].real();
  for (const auto& a : anchors) {
    if (a.coeff == 0.0) continue;
    if (PeriodicGrid::nearest_index(a.angle, n) == j &&
        std::abs(wrap_angle(a.angle - theta)) < 1e-12)
      return a.coeff > 0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
    acc += a.coeff * log_profile(theta, a.angle);
  }
  return acc;
}

SingularHalfLaplacian singular_half_laplacian(const SingularField& sf) {
  SingularHalfLaplacian out;
  out.smooth = half_laplacian(sf.smooth, &out.warnings);
  double shift = 0.0;
  for (const auto& a : sf.anchors) {
    shift += a.coeff / kTwoPi;
    out.masses.push_back({a.angle, a.coeff});
  }
  for (auto& v : out.smooth.values) v -= shift;
  const double h = kTwoPi / static_cast<double>(sf.smooth.n());
  for (std::size_t i = 0; i < sf.anchors.size(); ++i) {
    for (std::size_t k = i + 1; k < sf.anchors.size(); ++k) {
      if (std::abs(wrap_angle(sf.anchors[i].angle - sf.anchors[k].angle)) < 2.0 * h)
        out.warnings.push_back({"IllConditioned", "anchors closer than two grid cells"});
    }
  }
  return out;
}

}  // namespace liouville

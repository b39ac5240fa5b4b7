#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "liouville/errors.hpp"

namespace liouville {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Samples of a 2pi-periodic function at theta_j = 2 pi j / n - pi. With n a
// power of two >= 8 the points -i, 1, i, -1 are all grid nodes.
struct PeriodicGrid {
  std::vector<cplx> values;
  bool real = true;

  std::size_t n() const { return values.size(); }
  double theta(std::size_t j) const { return angle(j, values.size()); }
  std::vector<double> real_values() const;

  static double angle(std::size_t j, std::size_t n);
  // Index of the node at angle theta (nearest, modulo the period).
  static std::size_t nearest_index(double theta, std::size_t n);
  static PeriodicGrid from_real(std::vector<double> v);
  static PeriodicGrid from_complex(std::vector<cplx> v);
  static PeriodicGrid sample(std::size_t n, const std::function<double(double)>& f);
  static PeriodicGrid sample_complex(std::size_t n, const std::function<cplx(double)>& f);
};

// Throws InvalidInput unless n is a power of two >= 8 and every value is finite.
void validate(const PeriodicGrid& g);
bool is_power_of_two(std::size_t n);

// Coefficients u^(m) = (1/2pi) int u e^{-im theta}, m = -n/2 .. n/2-1, stored
// in ascending order of m.
struct SpectralRep {
  std::vector<cplx> coeffs;

  std::size_t n() const { return coeffs.size(); }
  int min_mode() const { return -static_cast<int>(coeffs.size() / 2); }
  int max_mode() const { return static_cast<int>(coeffs.size() / 2) - 1; }
  cplx at(int m) const { return coeffs[static_cast<std::size_t>(m - min_mode())]; }
  cplx& at(int m) { return coeffs[static_cast<std::size_t>(m - min_mode())]; }
};

SpectralRep analyze(const PeriodicGrid& g);
PeriodicGrid synthesize(const SpectralRep& s, bool real);

// Trigonometric interpolant at an arbitrary angle; the Nyquist mode is read as
// u^(-n/2) cos(n theta / 2) so real data interpolates to real values.
cplx evaluate(const SpectralRep& s, double theta);
// Zero-pads (n_new > n) or truncates (n_new < n) the spectrum. The Nyquist
// coefficient is split evenly between +-n/2 when padding.
SpectralRep resize(const SpectralRep& s, std::size_t n_new);

cplx mean(const PeriodicGrid& g);
double parseval_energy(const SpectralRep& s);

struct BandLimit {
  double tail_fraction = 0.0;  // energy share of |m| > 0.9 n/2, mean excluded
  bool ok = true;
};
// Top 10% of the spectrum carrying more than 1% of the oscillating energy.
BandLimit band_limit_check(const SpectralRep& s);

// Operators. A band-limit warning is appended when `warnings` is non-null.
PeriodicGrid half_laplacian(const PeriodicGrid& g, Warnings* warnings = nullptr);
PeriodicGrid hilbert(const PeriodicGrid& g, Warnings* warnings = nullptr);
PeriodicGrid derivative(const PeriodicGrid& g, Warnings* warnings = nullptr);
PeriodicGrid poisson_extend(const PeriodicGrid& g, double r);
PeriodicGrid green_convolve(const PeriodicGrid& f, Warnings* warnings = nullptr);

// s_{theta0}(theta) = -(1/2pi) log(2(1 - cos(theta - theta0))).
double log_profile(double theta, double theta0);
// Exact integral of s_{theta0} over [a, b] via the Clausen function.
double log_profile_integral(double a, double b, double theta0);
// Cell averages of s_{theta0} over [theta_j - h/2, theta_j + h/2].
PeriodicGrid log_profile_cell_averages(std::size_t n, double theta0);
// Fourier coefficients recovered from cell averages: the averaging multiplies
// u^(m) by sinc(m h / 2), which is divided back out.
SpectralRep analyze_cell_averages(const PeriodicGrid& averages);

struct Anchor {
  double angle = 0.0;
  double coeff = 0.0;
};

struct SingularField {
  PeriodicGrid smooth;
  std::vector<Anchor> anchors;

  // smooth(theta) + sum c s_{theta0}(theta); +-inf exactly at an anchor.
  double operator()(double theta) const;
  // Value at node j; anchors sitting on node j contribute +-inf.
  double at_node(std::size_t j) const;
};

struct DiracMass {
  double angle = 0.0;
  double mass = 0.0;
};

struct SingularHalfLaplacian {
  PeriodicGrid smooth;
  std::vector<DiracMass> masses;
  Warnings warnings;
};

// Each anchor (theta0, c) contributes c (delta_{theta0} - 1/2pi): the constant
// goes into the smooth part, the Dirac mass is carried symbolically.
SingularHalfLaplacian singular_half_laplacian(const SingularField& sf);

}  // namespace liouville

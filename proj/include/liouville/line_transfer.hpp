#pragma once

#include <functional>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/spectral_circle.hpp"

namespace liouville {

using LineFunction = std::function<double(double)>;

// Pi(z) = Re z / (1 + Im z) maps S^1 \ {-i} onto the line, i -> 0, 1 -> 1.
double stereo_project(cplx z);
cplx stereo_inverse(double x);
// Pi(e^{i theta}), accurate on both sides of the pole at theta = -pi/2.
double stereo_project_angle(double theta);
// Angle of Pi^{-1}(x) in (-pi, pi].
double stereo_angle(double x);
// 1 + sin(theta(x)) = 2 / (1 + x^2): the Jacobian factor |d theta / dx|.
double stereo_jacobian(double x);

// lambda on the circle with u(x) = lambda(theta(x)) + log(2 / (1 + x^2)).
class LineField {
 public:
  explicit LineField(SingularField lambda);

  const SingularField& lambda() const { return lambda_; }
  const SpectralRep& smooth_spectrum() const { return spectrum_; }
  std::size_t n() const { return lambda_.smooth.n(); }

  double lambda_at(double theta) const;
  double u(double x) const;
  // Anchor coefficient carried at -i (0 when none is declared).
  double pole_anchor() const;

 private:
  SingularField lambda_;
  SpectralRep spectrum_;
};

struct PullBack {
  LineField field;
  double tail_slope = 0.0;   // sigma in u ~ -sigma log|x|
  double anchor_coeff = 0.0;  // (2 - sigma) pi, zeroed below 1e-3
  Warnings warnings;
};

// lambda(theta) = u(Pi(theta)) - log(1 + sin theta). A logarithmic tail of u
// other than -2 log|x| becomes an anchor at -i; the node at -i itself holds the
// limit of the smooth part.
PullBack pull_back(const LineFunction& u, std::size_t n);

struct CurvatureData {
  PeriodicGrid kappa;  // K o Pi on the circle grid
  double kappa_bound = 0.0;
};

CurvatureData sample_curvature(const LineFunction& K, std::size_t n);
CurvatureData constant_curvature(double k, std::size_t n);
// kappa = e^{-lambda} ((-Delta)^{1/2} lambda + 1) on the smooth part, so the
// pulled-back equation holds exactly on the grid for an anchor-free field.
CurvatureData curvature_from_field(const LineField& lf);

// int_R f dx as int_{S^1} f(Pi(theta)) (1 + x^2)/2 dtheta, trapezoid rule.
double line_integral(const LineFunction& f, std::size_t n);
// Trapezoid rule for a circle integrand already sampled on the grid.
double circle_integral(const PeriodicGrid& g);
// int K e^u dx = int kappa e^lambda dtheta, skipping anchor nodes where e^lambda
// is singular.
double total_curvature(const LineField& lf, const CurvatureData& K);

struct TransferResidual {
  double sup = 0.0;
  double l2 = 0.0;
  double Lambda = 0.0;        // measured int kappa e^lambda
  double defect = 0.0;        // 2 pi - Lambda
  double declared_mass = 0.0;  // anchor coefficient at -i
  double dirac_mismatch = 0.0;
  bool anchor_declared = false;
  PeriodicGrid pointwise;
  Warnings warnings;
};

// Residual of (-Delta)^{1/2} lambda = kappa e^lambda - 1 + (2 pi - Lambda) delta_{-i}.
// The Dirac term is compared against the anchor at -i, never differenced.
TransferResidual transfer_residual(const LineField& lf, const CurvatureData& K);
// As transfer_residual, but a defect with no declared anchor is a SingularMismatch.
TransferResidual transfer_equation(const LineField& lf, const CurvatureData& K);

// ((-Delta)^{1/2} u)(x) reconstructed from the circle side:
// (2 / (1 + x^2)) ((-Delta)^{1/2} lambda + 1) away from -i.
double line_half_laplacian_via_circle(const LineField& lf, double x);
std::vector<double> line_half_laplacian_via_circle(const LineField& lf, const std::vector<double>& xs);

struct PvResult {
  double value = 0.0;
  double abserr = 0.0;
};

// (1/pi) int_0^inf (2u(x) - u(x+t) - u(x-t)) / t^2 dt with the inner piece
// excised at eps in {1e-2, 5e-3, 2.5e-3} and Richardson-extrapolated.
PvResult pv_half_laplacian_line(const LineFunction& u, double x);

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;
  Warnings warnings;
};

// Least-squares slope s in u(x) ~ C - s log(1 + |x|) on 1e2 <= |x| <= 1e4.
SlopeFit asymptotic_slope(const LineFunction& u);

// Monotone table evaluator: cubic spline inside, log-linear extrapolation in
// |x| beyond either end.
LineFunction table_evaluator(std::vector<double> x, std::vector<double> u);

}  // namespace liouville

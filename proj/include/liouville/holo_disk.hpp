#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/spectral_circle.hpp"

namespace liouville {

// Phi(z) = sum_k coeffs[k] z^k on the closed unit disk.
struct DiskMap {
  std::vector<cplx> coeffs;
  std::vector<cplx> deriv_coeffs;
  bool normalized_at_one = true;
  bool immersion = false;

  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
};

// Fills deriv_coeffs from coeffs.
DiskMap make_disk_map(std::vector<cplx> coeffs, bool normalized_at_one, bool immersion);
// Tail energy sum_{k > M/2} |c_k|^2 relative to the total.
double tail_energy_fraction(const DiskMap& d);
// Throws UnderResolved when the tail fraction reaches 1e-6.
void check_resolution(const DiskMap& d);

// |Phi'| at radius r for the n_angles angles theta_j = 2 pi j / n - pi, via
// coefficient folding and one FFT.
std::vector<double> derivative_modulus_on_ring(const DiskMap& d, double r, std::size_t n_angles);
// Minimum of |Phi'| over radii i/64 (i = 0..64) and 256 angles.
double min_derivative_on_lattice(const DiskMap& d);
// Samples Phi(e^{i theta_j}) for the n grid angles.
std::vector<cplx> boundary_values(const DiskMap& d, std::size_t n);

struct BoundaryTrace {
  SingularField lambda;
  // Conjugate of the smooth part; each anchor (theta0, c) adds the sawtooth
  // -(c / 2pi)(psi - pi), psi = (theta - theta0) mod 2pi.
  PeriodicGrid rho;
  // e^{lambda + i rho} at the nodes; 0 at anchor nodes.
  PeriodicGrid phi_boundary;
  double negative_frequency_residue = 0.0;
  double anchor_conjugate_residue = 0.0;
  Warnings warnings;

  double rho_at_node(std::size_t j) const;
};

double anchor_conjugate(double theta, const Anchor& a);

// rho = H(lambda_smooth) plus the closed-form conjugate of every anchor.
// Throws UnderResolved when the smooth part trips the band-limit guard.
BoundaryTrace analytic_completion(const SingularField& lambda);

// Phi' from the non-negative frequencies of e^{lambda + i rho} (computed on a
// 4x oversampled grid), integrated termwise and shifted so Phi(1) = 0. Series
// order M = n/2. Anchors enter as binomial factors (1 - z e^{-i theta0})^{-c/pi}.
DiskMap build_phi(const BoundaryTrace& bt);

// kappa = e^{-lambda} (d rho / d theta + 1); 0 at anchor nodes where e^lambda
// is infinite.
PeriodicGrid boundary_curvature(const BoundaryTrace& bt);
// int kappa e^lambda dtheta = int (d rho / d theta + 1) dtheta.
double curvature_mass(const BoundaryTrace& bt);

// Boundary image traced by integrating dPhi/dtheta = i e^{i theta} phi along
// each grid cell (Gauss-Legendre, graded near anchors). Starts at Phi(1) = 0.
struct BoundaryCurve {
  std::vector<cplx> points;  // one per grid node
  std::optional<std::size_t> corner;
  double tangent_in = 0.0;   // directions (angles) of the one-sided tangents
  double tangent_out = 0.0;
  double closure_error = 0.0;
};
BoundaryCurve trace_boundary(const BoundaryTrace& bt);

// f(z) = (z - t a) / (1 - t conj(a) z); t = 0 is the identity (no rotation).
cplx mobius(cplx z, cplx a, double t);
DiskMap mobius_recenter(const DiskMap& d, cplx a, double t);

// Degree-n Blaschke product e^{i phase} prod (z - a_k) / (1 - conj(a_k) z).
DiskMap blaschke_fixture(const std::vector<cplx>& zeros, double phase);

struct DistanceMesh {
  std::size_t n_angles = 0;
  std::vector<double> radii;  // ring radii, radii[0] = 1
};
// Polar graded mesh: boundary spacing 2 pi / n_angles, radial steps growing by
// 1.15 toward the center.
DistanceMesh graded_mesh(std::size_t n_angles);

struct DistanceResult {
  double distance = 0.0;
  double mesh_h = 0.0;
  Warnings warnings;
};

// Shortest path in the metric |Phi'| |dz| over the graded mesh between the
// boundary nodes nearest p and q.
DistanceResult conformal_distance(const DiskMap& d, cplx p, cplx q, std::size_t n_angles);
// All-pairs variant from one source, for symmetric and triangle checks.
std::vector<double> conformal_distances_from(const DiskMap& d, cplx p, const std::vector<cplx>& qs,
                                             std::size_t n_angles);

}  // namespace liouville

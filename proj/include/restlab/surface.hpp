#pragma once
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "restlab/grid.hpp"

namespace restlab {

enum class SurfaceKind { Circle, Sphere, FlatSegment, Paraboloid };

// Quadrature discretization of a measure (S, dsigma) in R^N, N <= 3.
// Nodes store 3 coordinates; only the first ambient_dim are meaningful.
struct SurfaceQuadrature {
  int ambient_dim = 2;
  SurfaceKind kind = SurfaceKind::Circle;
  bool curvature_nonvanishing = true;
  std::vector<std::array<double, 3>> nodes;
  std::vector<double> weights;
  double node_spacing = 0.0;  // typical nearest-neighbor distance

  int node_count() const { return static_cast<int>(nodes.size()); }
  double total_weight() const;
  // plane waves sampled this coarsely alias beyond |x| ~ pi/node_spacing
  double aliasing_radius() const { return M_PI / node_spacing; }
};

// K equispaced unit-circle nodes, weights 2pi/K. Trapezoid rule on a smooth
// periodic integrand: spectrally accurate.
SurfaceQuadrature circle_quadrature(int K);

// Fibonacci lattice on the unit 2-sphere, equal weights 4pi/K. Quadrature
// error O(K^{-1/2})-ish; this is the documented accuracy bottleneck.
SurfaceQuadrature sphere_quadrature(int K);

// Flat counterexample: midpoint nodes on {0} x [-l, l] in R^2, weights 2l/K.
SurfaceQuadrature flat_segment_quadrature(int K, double half_length);

// Truncated paraboloid (xi, -|xi|^2) over a uniform lattice of [-xi_max, xi_max)^d
// (left-closed: xi_j = -xi_max + j*delta), carrying the push-forward of Lebesgue
// measure: weight = delta^d, NOT induced surface area.
SurfaceQuadrature paraboloid_quadrature(int d, double xi_max, int nodes_per_axis);

// dsigma_hat(x) = sum_k w_k e^{i x.xi_k}
cd fourier_transform_of_measure(const SurfaceQuadrature& quad, const std::array<double, 3>& x);

// Least-squares slope of log(rms over directions of |dsigma_hat(r*dir)|) vs log r.
// Radii must span a decade and stay below the aliasing radius; curved surfaces
// need >= 8 directions (dsigma_hat oscillates; single-ray log fits are meaningless).
double decay_fit(const SurfaceQuadrature& quad, const std::vector<double>& radii,
                 const std::vector<std::array<double, 3>>& directions);

}  // namespace restlab

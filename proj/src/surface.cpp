#include "restlab/surface.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace restlab {

double SurfaceQuadrature::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

SurfaceQuadrature circle_quadrature(int K) {
  if (K < 8) throw std::invalid_argument("circle_quadrature: need K >= 8");
  SurfaceQuadrature q;
  q.ambient_dim = 2;
  q.kind = SurfaceKind::Circle;
  q.curvature_nonvanishing = true;
  q.nodes.resize(K);
  q.weights.assign(K, 2.0 * M_PI / K);
  for (int k = 0; k < K; ++k) {
    double th = 2.0 * M_PI * k / K;
    q.nodes[k] = {std::cos(th), std::sin(th), 0.0};
  }
  q.node_spacing = 2.0 * M_PI / K;  // arc length between neighbors
  return q;
}

SurfaceQuadrature sphere_quadrature(int K) {
  if (K < 64) throw std::invalid_argument("sphere_quadrature: need K >= 64");
  SurfaceQuadrature q;
  q.ambient_dim = 3;
  q.kind = SurfaceKind::Sphere;
  q.curvature_nonvanishing = true;
  q.nodes.resize(K);
  q.weights.assign(K, 4.0 * M_PI / K);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < K; ++i) {
    // offset-1/2 lattice: z symmetric about 0, so sum_k w_k xi_k ~ 0
    double z = 1.0 - (2.0 * i + 1.0) / K;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    q.nodes[i] = {rho * std::cos(phi), rho * std::sin(phi), z};
  }
  q.node_spacing = std::sqrt(4.0 * M_PI / K);  // side of the area cell per node
  return q;
}

SurfaceQuadrature flat_segment_quadrature(int K, double half_length) {
  if (K < 8) throw std::invalid_argument("flat_segment_quadrature: need K >= 8");
  if (!(half_length > 0)) throw std::invalid_argument("flat_segment_quadrature: bad half_length");
  SurfaceQuadrature q;
  q.ambient_dim = 2;
  q.kind = SurfaceKind::FlatSegment;
  q.curvature_nonvanishing = false;
  double step = 2.0 * half_length / K;
  q.nodes.resize(K);
  q.weights.assign(K, step);
  for (int k = 0; k < K; ++k) q.nodes[k] = {0.0, -half_length + (k + 0.5) * step, 0.0};
  q.node_spacing = step;
  return q;
}

SurfaceQuadrature paraboloid_quadrature(int d, double xi_max, int nodes_per_axis) {
  if (d != 1 && d != 2) throw std::invalid_argument("paraboloid_quadrature: d must be 1 or 2");
  if (!(xi_max > 0)) throw std::invalid_argument("paraboloid_quadrature: xi_max must be > 0");
  if (nodes_per_axis < 8) throw std::invalid_argument("paraboloid_quadrature: need >= 8 nodes per axis");
  SurfaceQuadrature q;
  q.ambient_dim = d + 1;
  q.kind = SurfaceKind::Paraboloid;
  q.curvature_nonvanishing = true;
  const double delta = 2.0 * xi_max / nodes_per_axis;
  const double w = std::pow(delta, d);
  if (d == 1) {
    for (int j = 0; j < nodes_per_axis; ++j) {
      double xi = -xi_max + j * delta;
      q.nodes.push_back({xi, -xi * xi, 0.0});
      q.weights.push_back(w);
    }
  } else {
    for (int j1 = 0; j1 < nodes_per_axis; ++j1)
      for (int j2 = 0; j2 < nodes_per_axis; ++j2) {
        double a = -xi_max + j1 * delta, b = -xi_max + j2 * delta;
        q.nodes.push_back({a, b, -(a * a + b * b)});
        q.weights.push_back(w);
      }
  }
  // neighbors separate fastest along the steep rim, ~ delta*sqrt(1+4 xi_max^2)
  q.node_spacing = delta * std::sqrt(1.0 + 4.0 * xi_max * xi_max);
  return q;
}

cd fourier_transform_of_measure(const SurfaceQuadrature& quad, const std::array<double, 3>& x) {
  double re = 0.0, im = 0.0;
  const int K = quad.node_count();
  for (int k = 0; k < K; ++k) {
    const auto& xi = quad.nodes[k];
    double ph = x[0] * xi[0] + x[1] * xi[1] + x[2] * xi[2];
    re += quad.weights[k] * std::cos(ph);
    im += quad.weights[k] * std::sin(ph);
  }
  return {re, im};
}

double decay_fit(const SurfaceQuadrature& quad, const std::vector<double>& radii,
                 const std::vector<std::array<double, 3>>& directions) {
  if (radii.size() < 2) throw std::invalid_argument("decay_fit: need >= 2 radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw std::invalid_argument("decay_fit: radii must increase");
  if (radii.back() < 10.0 * radii.front() * (1.0 - 1e-12))
    throw std::invalid_argument("decay_fit: radii must span at least a decade");
  if (radii.back() > quad.aliasing_radius())
    throw std::invalid_argument("decay_fit: radii exceed the quadrature aliasing radius");
  if (quad.curvature_nonvanishing && directions.size() < 8)
    throw std::invalid_argument("decay_fit: curved surfaces need >= 8 directions");
  if (directions.empty()) throw std::invalid_argument("decay_fit: need directions");

  // least squares of log(rms |dsigma_hat|) against log r
  std::vector<double> lx, ly;
  for (double r : radii) {
    double s2 = 0.0;
    for (const auto& d : directions) {
      cd v = fourier_transform_of_measure(quad, {r * d[0], r * d[1], r * d[2]});
      s2 += std::norm(v);
    }
    double rms = std::sqrt(s2 / directions.size());
    lx.push_back(std::log(r));
    ly.push_back(std::log(rms));
  }
  double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace restlab

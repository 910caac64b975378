#include "restlab/extension.hpp"

#include <cmath>
#include <stdexcept>

namespace restlab {

namespace {

// every surface node must sit inside the grid's resolvable frequency band
void check_resolvable(const GridSpec& g, const SurfaceQuadrature& quad) {
  if (quad.ambient_dim != g.dim)
    throw std::invalid_argument("surface ambient dimension does not match grid dimension");
  const double band = M_PI / g.spacing;
  for (const auto& xi : quad.nodes)
    for (int a = 0; a < g.dim; ++a)
      if (std::abs(xi[a]) >= band)
        throw std::invalid_argument("surface node outside the grid's resolvable frequency band");
}

double node_dot(const std::vector<double>& x, const std::array<double, 3>& xi) {
  double s = 0.0;
  for (size_t a = 0; a < x.size(); ++a) s += x[a] * xi[a];
  return s;
}

}  // namespace

std::vector<cd> restriction_apply(const Field& f, const SurfaceQuadrature& quad) {
  check_resolvable(f.grid, quad);
  const std::int64_t nodes = f.grid.node_count();
  if (static_cast<std::int64_t>(f.values.size()) != nodes)
    throw std::invalid_argument("restriction_apply: value count does not match grid");
  const double cell = std::pow(f.grid.spacing, f.grid.dim);
  std::vector<cd> out(quad.node_count());
  for (int k = 0; k < quad.node_count(); ++k) {
    cd acc = 0.0;
    for (std::int64_t j = 0; j < nodes; ++j) {
      double ph = node_dot(node_point(f.grid, j), quad.nodes[k]);
      acc += f.values[j] * std::exp(cd(0.0, -ph));
    }
    out[k] = cell * acc;
  }
  return out;
}

Field extension_apply(const std::vector<cd>& g, const SurfaceQuadrature& quad,
                      const GridSpec& grid) {
  check_resolvable(grid, quad);
  if (static_cast<int>(g.size()) != quad.node_count())
    throw std::invalid_argument("extension_apply: value count does not match quadrature");
  Field out = make_field(grid);
  const std::int64_t nodes = grid.node_count();
  for (std::int64_t j = 0; j < nodes; ++j) {
    std::vector<double> x = node_point(grid, j);
    cd acc = 0.0;
    for (int k = 0; k < quad.node_count(); ++k)
      acc += quad.weights[k] * g[k] * std::exp(cd(0.0, node_dot(x, quad.nodes[k])));
    out.values[j] = acc;
  }
  return out;
}

FactoredOperator build_weighted_operator(const Field& W1, const Field& W2,
                                         const SurfaceQuadrature& quad) {
  if (!(W1.grid == W2.grid)) throw std::invalid_argument("weight grids differ");
  check_resolvable(W1.grid, quad);
  const std::int64_t nodes = W1.grid.node_count();
  const int K = quad.node_count();
  const double root_cell = std::pow(W1.grid.spacing, 0.5 * W1.grid.dim);
  FactoredOperator op;
  op.grid = W1.grid;
  op.left_factor.resize(nodes, K);
  op.right_factor.resize(nodes, K);
  for (std::int64_t j = 0; j < nodes; ++j) {
    std::vector<double> x = node_point(W1.grid, j);
    for (int k = 0; k < K; ++k) {
      cd wave = std::sqrt(quad.weights[k]) * root_cell *
                std::exp(cd(0.0, node_dot(x, quad.nodes[k])));
      op.left_factor(j, k) = W1.values[j] * wave;
      op.right_factor(j, k) = std::conj(W2.values[j]) * wave;
    }
  }
  return op;
}

Field ts_apply(const Field& f, const SurfaceQuadrature& quad) {
  return extension_apply(restriction_apply(f, quad), quad, f.grid);
}

}  // namespace restlab

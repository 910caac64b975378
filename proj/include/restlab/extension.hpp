#pragma once
#include <Eigen/Dense>

#include "restlab/grid.hpp"
#include "restlab/surface.hpp"

namespace restlab {

// Weighted surface-convolution operator W1 * (conv with dsigma_hat) * W2 kept
// in rank-K factored form M = A C^*; the sqrt(h^dim) in both factors makes M
// act on plain value vectors while matching the L2(h^dim) operator.
struct FactoredOperator {
  GridSpec grid;
  Eigen::MatrixXcd left_factor;   // nodes x K: A[x,k] = W1(x) sqrt(w_k) e^{i x.xi_k} sqrt(h^dim)
  Eigen::MatrixXcd right_factor;  // nodes x K: C[x,k] = conj(W2(x)) sqrt(w_k) e^{i x.xi_k} sqrt(h^dim)

  // nodes x nodes M = A C^*; only for small grids / oracle tests
  Eigen::MatrixXcd dense() const { return left_factor * right_factor.adjoint(); }
};

// fhat(xi_k) = h^dim sum_x f(x) e^{-i x.xi_k} per surface node (direct sums;
// nodes are off-lattice so no FFT applies)
std::vector<cd> restriction_apply(const Field& f, const SurfaceQuadrature& quad);

// (sum_k w_k g_k e^{i x.xi_k}) sampled on the grid; adjoint of restriction
// under the (w_k, h^dim) weighted inner products
Field extension_apply(const std::vector<cd>& g, const SurfaceQuadrature& quad,
                      const GridSpec& grid);

FactoredOperator build_weighted_operator(const Field& W1, const Field& W2,
                                         const SurfaceQuadrature& quad);

// extension(restriction(f)) = convolution of f with dsigma_hat
Field ts_apply(const Field& f, const SurfaceQuadrature& quad);

}  // namespace restlab

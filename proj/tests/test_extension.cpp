#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "restlab/extension.hpp"
#include "restlab/linalg.hpp"
#include "restlab/schatten.hpp"

using namespace restlab;

namespace {

Field random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Field f = make_field(g);
  for (auto& v : f.values) v = cd(nd(rng), nd(rng));
  return f;
}

// per-axis closed form of h * sum_j e^{i x_j d} on x_j = -L + j h
cd dirichlet_factor(const GridSpec& g, double d) {
  cd acc = 0.0;
  for (int j = 0; j < g.points_per_axis; ++j) acc += std::exp(cd(0.0, g.node_coord(j) * d));
  return g.spacing * acc;
}

}  // namespace

TEST_CASE("restriction: zero, plane wave, Dirichlet leakage") {
  GridSpec g = make_grid(2, 16, 4.0);
  auto quad = circle_quadrature(16);

  Field zero = make_field(g);
  for (cd v : restriction_apply(zero, quad)) CHECK(std::abs(v) == 0.0);

  // plane wave at surface node k0: peak = box volume, leakage = the
  // geometric-sum (Dirichlet kernel) product, exactly
  const int k0 = 5;
  Field f = make_field(g);
  for (std::int64_t j = 0; j < g.node_count(); ++j) {
    auto x = node_point(g, j);
    f.values[j] =
        std::exp(cd(0.0, x[0] * quad.nodes[k0][0] + x[1] * quad.nodes[k0][1]));
  }
  auto vals = restriction_apply(f, quad);
  CHECK(std::abs(vals[k0] - cd(64.0)) < 1e-9);  // (2L)^2
  for (int k = 0; k < quad.node_count(); ++k) {
    cd expect = dirichlet_factor(g, quad.nodes[k0][0] - quad.nodes[k][0]) *
                dirichlet_factor(g, quad.nodes[k0][1] - quad.nodes[k][1]);
    CHECK(std::abs(vals[k] - expect) < 1e-9);
  }
}

TEST_CASE("restriction: Gaussian closed form at the nodes") {
  GridSpec g = make_grid(2, 64, 8.0);
  Field f = make_field(g);
  for (std::int64_t j = 0; j < g.node_count(); ++j) {
    auto x = node_point(g, j);
    f.values[j] = std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
  }
  // integral transform of e^{-|x|^2/2} in 2-d is 2 pi e^{-|xi|^2/2}
  auto quad = circle_quadrature(8);
  auto vals = restriction_apply(f, quad);
  const double oracle = 2.0 * M_PI * std::exp(-0.5);
  for (cd v : vals) CHECK(std::abs(v - cd(oracle)) <= 1e-6 * oracle);
}

TEST_CASE("restriction rejects unresolvable nodes") {
  GridSpec g = make_grid(2, 8, 4.0);  // band pi/h = pi
  auto p = paraboloid_quadrature(1, 2.0, 16);  // second coordinate reaches -4
  Field f = make_field(g);
  CHECK_THROWS_AS(restriction_apply(f, p), std::invalid_argument);
  CHECK_THROWS_AS(extension_apply(std::vector<cd>(16), p, g), std::invalid_argument);
}

TEST_CASE("extension: constant density reproduces dsigma_hat") {
  GridSpec g = make_grid(2, 16, 4.0);
  auto quad = circle_quadrature(12);
  Field e = extension_apply(std::vector<cd>(12, cd(1.0)), quad, g);
  for (std::int64_t j = 0; j < g.node_count(); ++j) {
    auto x = node_point(g, j);
    cd expect = fourier_transform_of_measure(quad, {x[0], x[1], 0.0});
    CHECK(std::abs(e.values[j] - expect) < 1e-12);
  }
  CHECK_THROWS_AS(extension_apply(std::vector<cd>(11), quad, g), std::invalid_argument);
}

TEST_CASE("restriction/extension adjointness is exact") {
  GridSpec g = make_grid(2, 16, 4.0);
  auto quad = circle_quadrature(8);
  Field f = random_field(g, 21);
  std::mt19937_64 rng(22);
  std::normal_distribution<double> nd;
  std::vector<cd> gv(quad.node_count());
  for (auto& v : gv) v = cd(nd(rng), nd(rng));

  auto rf = restriction_apply(f, quad);
  cd lhs = 0.0;
  for (int k = 0; k < quad.node_count(); ++k) lhs += quad.weights[k] * std::conj(rf[k]) * gv[k];
  cd rhs = inner_product(f, extension_apply(gv, quad, g));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
}

TEST_CASE("ts_apply: delta convolution, positivity, linearity") {
  GridSpec g = make_grid(2, 16, 4.0);
  auto quad = circle_quadrature(12);

  // delta at the origin -> output proportional to dsigma_hat(x)
  Field delta = make_field(g);
  const std::int64_t origin = 8 * 16 + 8;  // node (0,0)
  delta.values[origin] = 1.0;
  Field out = ts_apply(delta, quad);
  const double cell = g.spacing * g.spacing;
  for (std::int64_t j = 0; j < g.node_count(); ++j) {
    auto x = node_point(g, j);
    cd expect = cell * fourier_transform_of_measure(quad, {x[0], x[1], 0.0});
    CHECK(std::abs(out.values[j] - expect) < 1e-12);
  }

  // <f, T_S f> >= 0 and linearity
  Field f1 = random_field(g, 31), f2 = random_field(g, 32);
  CHECK(inner_product(f1, ts_apply(f1, quad)).real() >= 0.0);
  CHECK(std::abs(inner_product(f1, ts_apply(f1, quad)).imag()) < 1e-10);
  Field sum = f1;
  for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += cd(0.5, 1.5) * f2.values[i];
  Field t1 = ts_apply(f1, quad), t2 = ts_apply(f2, quad), ts = ts_apply(sum, quad);
  double worst = 0.0;
  for (size_t i = 0; i < ts.values.size(); ++i)
    worst = std::max(worst, std::abs(ts.values[i] - t1.values[i] - cd(0.5, 1.5) * t2.values[i]));
  CHECK(worst < 1e-12 * lq_norm(t1, INFINITY));
}

TEST_CASE("factored operator: shape, hermitian PSD case, rank bound") {
  GridSpec g = make_grid(2, 4, 2.0);  // 16 nodes
  auto quad = circle_quadrature(8);   // smallest K the circle builder admits
  Field one = make_field(g);
  for (auto& v : one.values) v = 1.0;
  auto op = build_weighted_operator(one, one, quad);
  CHECK(op.left_factor.rows() == 16);
  CHECK(op.left_factor.cols() == 8);

  Eigen::MatrixXcd M = op.dense();
  CHECK((M - M.adjoint()).norm() <= 1e-12 * M.norm());
  Eigen::VectorXd ev = hermitian_eigenvalues(M);
  CHECK(ev.minCoeff() >= -1e-10 * M.norm());

  // rank <= K: at most K singular values above the zero cut
  auto sv = singular_values(M);
  int nonzero = 0;
  for (double s : sv.values)
    if (s > 1e-10 * sv.values[0]) ++nonzero;
  CHECK(nonzero <= quad.node_count());

  // W2 = 0 -> zero operator
  Field zero = make_field(g);
  auto z = build_weighted_operator(one, zero, quad);
  CHECK(z.dense().norm() == 0.0);

  Field other = make_field(make_grid(2, 8, 2.0));
  CHECK_THROWS_AS(build_weighted_operator(one, other, quad), std::invalid_argument);
}

TEST_CASE("hermitian PSD for conjugate weights with a complex phase") {
  GridSpec g = make_grid(2, 8, 3.0);
  auto quad = circle_quadrature(8);
  Field w = make_field(g), wbar = make_field(g);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (std::int64_t j = 0; j < g.node_count(); ++j) {
    w.values[j] = cd(nd(rng), nd(rng));
    wbar.values[j] = std::conj(w.values[j]);
  }
  Eigen::MatrixXcd M = build_weighted_operator(w, wbar, quad).dense();
  CHECK((M - M.adjoint()).norm() <= 1e-12 * M.norm());
  CHECK(hermitian_eigenvalues(M).minCoeff() >= -1e-10 * M.norm());
}

TEST_CASE("trace-class bound from the Hilbert-Schmidt factorization") {
  GridSpec g = make_grid(2, 12, 3.0);
  auto quad = circle_quadrature(10);
  for (unsigned seed : {41u, 42u, 43u, 44u, 45u}) {
    Field w1 = random_field(g, seed), w2 = random_field(g, seed + 100);
    auto op = build_weighted_operator(w1, w2, quad);
    double s1 = schatten_norm(singular_values(op), 1.0);
    double bound = lq_norm(w1, 2.0) * lq_norm(w2, 2.0) * quad.total_weight();
    CHECK(s1 <= bound * (1.0 + 1e-10));
  }
}

#pragma once
#include <complex>
#include <cstdint>
#include <vector>

namespace restlab {

using cd = std::complex<double>;

// Uniform periodic grid covering [-L, L)^dim, nodes x_j = -L + j*spacing.
struct GridSpec {
  int dim = 1;
  int points_per_axis = 0;
  double box_halfwidth = 0.0;  // L
  double spacing = 0.0;        // derived: 2L / points_per_axis

  std::int64_t node_count() const;
  double node_coord(int j) const { return -box_halfwidth + spacing * j; }
  // centered dual lattice: xi_m = m*pi/L with m = k - n/2, k in [0, n)
  double freq_coord(int k) const;
  GridSpec dual() const;  // the grid the dft lives on
  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int dim, int points_per_axis, double box_halfwidth);

// Complex function sampled on a grid, row-major over axes.
struct Field {
  GridSpec grid;
  std::vector<cd> values;
};

Field make_field(const GridSpec& g);  // zero field

// Unitary continuum-normalized DFT onto the centered dual lattice:
//   fhat(xi_m) = (h/sqrt(2pi))^dim * sum_j f(x_j) e^{-i x_j . xi_m}.
// Discrete Plancherel is exact: lq_norm(f,2) == lq_norm(dft(f),2)
// (cell weights h^dim vs (pi/L)^dim). Requires even points_per_axis.
Field dft(const Field& f);
Field idft(const Field& F);

// (sum_x |f|^q h^dim)^(1/q); q = infinity means max modulus.
double lq_norm(const Field& f, double q);

struct SpaceTimeField {
  std::vector<double> times;  // strictly increasing, uniform step
  std::vector<Field> slices;
  double dt() const;
};

// (sum_t dt * lq_norm(slice,q)^p)^(1/p); infinity exponents via suprema.
double mixed_norm(const SpaceTimeField& stf, double p, double q);

// coordinates of the node at a flattened row-major index (last axis fastest)
std::vector<double> node_point(const GridSpec& g, std::int64_t flat);

// h^dim * sum_x conj(a(x)) b(x)
cd inner_product(const Field& a, const Field& b);

namespace detail {
// raw in-place FFTW transform (no normalization/centering), fft index order
void fft_pow(std::vector<cd>& data, int dim, int points_per_axis, int sign);
}

}  // namespace restlab

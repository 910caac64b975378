#pragma once
#include <vector>

#include <Eigen/Dense>

#include "restlab/grid.hpp"

namespace restlab {

// Free Schrodinger group e^{it Laplacian}: Fourier multiplier e^{-i t |xi|^2}.
// Exactly unitary on the discrete torus, so the group law holds to roundoff.
Field free_evolve(const Field& u, double t);

// Gamma_V = dt * sum_t U(-t) mult(V(t,.)) U(t) materialized on the grid nodes.
// Hermitian for real V, PSD for V >= 0 (sum of conjugated PSD terms).
struct GammaOperator {
  GridSpec grid;
  Eigen::MatrixXcd matrix;  // node basis, node_count x node_count
};

// Rectangle rule in time (makes time-shift covariance exact for shifts that
// are multiples of dt). Dense materialization is capped at 4096 spatial nodes;
// larger grids throw.
GammaOperator gamma_operator(const SpaceTimeField& V);

struct OrthonormalSystem {
  std::vector<Field> functions;   // u_j, all on one grid
  std::vector<cd> coefficients;   // nu_j
};

// max_{i<=j} |<u_i,u_j> - delta_ij|; zero for an exactly orthonormal family
double orthonormality_defect(const OrthonormalSystem& system);

// pointwise sum_j nu_j |e^{it Laplacian} u_j(x)|^2, one slice per time
SpaceTimeField density(const OrthonormalSystem& system, const std::vector<double>& times);

// Smooth dyadic multiplier bank on the dual lattice. Block j_low is the
// low-frequency block (all |xi| <= 2^{j_low}); block j for j_low < j <= j_high
// is a raised-cosine bump in log2|xi| supported on [2^{j-1}, 2^{j+1}].
// The profiles telescope: sum_j profile_j(xi) = 1 exactly for |xi| <= 2^{j_high}
// (the covered band), and at most two adjacent blocks overlap anywhere.
struct LittlewoodPaleyBank {
  GridSpec grid;
  int j_low = 0;
  std::vector<std::vector<double>> profiles;  // profiles[i] <-> block j_low + i

  int j_high() const { return j_low + static_cast<int>(profiles.size()) - 1; }
};

LittlewoodPaleyBank littlewood_paley_bank(const GridSpec& grid, int j_low, int j_high);

// P_j u = idft(profile_j . dft(u)); j is the dyadic block index
Field littlewood_paley_apply(const LittlewoodPaleyBank& bank, const Field& u, int j);

// mixed_norm in L^p_t L^q_x of t -> e^{it Laplacian} u over the given window
double strichartz_lhs(const Field& u, double p, double q, const std::vector<double>& times);

}  // namespace restlab

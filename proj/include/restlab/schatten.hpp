#pragma once
#include <Eigen/Dense>
#include <functional>

#include "restlab/extension.hpp"
#include "restlab/grid.hpp"

namespace restlab {

struct SingularSpectrum {
  std::vector<double> values;  // nonincreasing, >= 0
};

// Factored path: QR both factors, then SVD the K x K triangular product
// (AC^* = Q_A R_A R_C^* Q_C^* with orthonormal Q's) — grid size never enters
// the small SVD, and absolute accuracy stays near machine precision down the
// whole spectrum. Values below 1e-10*mu_1 are reported as 0.
SingularSpectrum singular_values(const FactoredOperator& op);
// Dense oracle path: full SVD.
SingularSpectrum singular_values(const Eigen::MatrixXcd& m);

// ell^alpha norm of the spectrum; alpha = infinity gives mu_1
double schatten_norm(const SingularSpectrum& spec, double alpha);

// sup_n n^{1/alpha} mu_n (n 1-based), alpha in [1, infinity)
double weak_schatten_quasinorm(const SingularSpectrum& spec, double alpha);

// tr(M^power); factored path reduces to the K x K matrix C^*A by cyclicity
cd trace_power(const FactoredOperator& op, int power);
cd trace_power(const Eigen::MatrixXcd& m, int power);

using Kernel = std::function<cd(const std::vector<double>&, const std::vector<double>&)>;

// || W1 G W2 ||_S2 from the kernel: sqrt of the double cell-weighted sum of
// |W1(x)|^2 |G(x,y)|^2 |W2(y)|^2
double hs_norm_from_kernel(const Field& W1, const Kernel& kernel, const Field& W2);

}  // namespace restlab

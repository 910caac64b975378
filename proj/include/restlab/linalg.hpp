#pragma once
#include <Eigen/Dense>
#include <utility>

namespace restlab {

// Eigenvalues of a Hermitian matrix, ascending. Routed to LAPACK zheevd when
// available (Eigen's own QR is noticeably slower at the sizes the experiments
// use); falls back to Eigen::SelfAdjointEigenSolver otherwise.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H);

// Same, but also returns the eigenvector matrix (columns, same order).
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eigensystem(const Eigen::MatrixXcd& H);

// Real symmetric variant (dsyevd); the semiclassical kernels are real and at
// K ~ 2000 the complex solver wastes a 4x flop factor.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& H);

}  // namespace restlab

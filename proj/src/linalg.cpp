#include "restlab/linalg.hpp"

#include <stdexcept>

#ifdef RESTLAB_HAVE_LAPACKE
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace restlab {

namespace {

void check_square_hermitian(const Eigen::MatrixXcd& H) {
  if (H.rows() != H.cols()) throw std::invalid_argument("hermitian eig: matrix not square");
}

}  // namespace

#ifdef RESTLAB_HAVE_LAPACKE

static Eigen::VectorXd zheevd(Eigen::MatrixXcd& A, char jobz) {
  const lapack_int n = static_cast<lapack_int>(A.rows());
  Eigen::VectorXd w(n);
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n, A.data(), n, w.data());
  if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
  return w;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H) {
  check_square_hermitian(H);
  Eigen::MatrixXcd A = H;
  return zheevd(A, 'N');
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eigensystem(const Eigen::MatrixXcd& H) {
  check_square_hermitian(H);
  Eigen::MatrixXcd A = H;
  Eigen::VectorXd w = zheevd(A, 'V');
  return {std::move(w), std::move(A)};
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& H) {
  if (H.rows() != H.cols()) throw std::invalid_argument("symmetric eig: matrix not square");
  Eigen::MatrixXd A = H;
  const lapack_int n = static_cast<lapack_int>(A.rows());
  Eigen::VectorXd w(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, A.data(), n, w.data());
  if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
  return w;
}

#else

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H) {
  check_square_hermitian(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eig failed");
  return es.eigenvalues();
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eigensystem(const Eigen::MatrixXcd& H) {
  check_square_hermitian(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eig failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& H) {
  if (H.rows() != H.cols()) throw std::invalid_argument("symmetric eig: matrix not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("symmetric eig failed");
  return es.eigenvalues();
}

#endif

}  // namespace restlab

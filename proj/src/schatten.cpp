#include "restlab/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace restlab {

namespace {

constexpr double kZeroCut = 1e-10;  // reporting floor: this far below mu_1 is machine noise

SingularSpectrum sorted_spectrum(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  if (!v.empty() && v.front() > 0.0) {
    const double cut = kZeroCut * v.front();
    for (double& x : v)
      if (x < cut) x = 0.0;
  }
  return SingularSpectrum{std::move(v)};
}

}  // namespace

SingularSpectrum singular_values(const FactoredOperator& op) {
  const Eigen::MatrixXcd& A = op.left_factor;
  const Eigen::MatrixXcd& C = op.right_factor;
  if (A.rows() != C.rows() || A.cols() != C.cols())
    throw std::invalid_argument("singular_values: malformed factored operator");
  // product SVD: A C^* = Q_A (R_A R_C^*) Q_C^* with orthonormal Q factors, so
  // the singular values are those of the small triangular product. Unlike the
  // Gram-matrix route (eigenvalues of Ga^{1/2} Gc Ga^{1/2}) this never squares
  // the conditioning — absolute accuracy stays near eps * ||A|| ||C|| all the
  // way down the spectrum instead of degrading like (mu_1 / mu_k)^2.
  const int r = static_cast<int>(std::min(A.rows(), A.cols()));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qa(A), qc(C);
  Eigen::MatrixXcd Ra =
      Eigen::MatrixXcd(qa.matrixQR().topRows(r).triangularView<Eigen::Upper>());
  Eigen::MatrixXcd Rc =
      Eigen::MatrixXcd(qc.matrixQR().topRows(r).triangularView<Eigen::Upper>());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Ra * Rc.adjoint());
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("product SVD failed to converge");
  std::vector<double> sv(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
  return sorted_spectrum(std::move(sv));
}

SingularSpectrum singular_values(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  if (svd.info() != Eigen::Success) throw std::runtime_error("dense SVD failed to converge");
  std::vector<double> sv(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return SingularSpectrum{std::move(sv)};
}

double schatten_norm(const SingularSpectrum& spec, double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("schatten_norm: alpha must be >= 1");
  if (std::isinf(alpha)) return spec.values.empty() ? 0.0 : spec.values.front();
  double acc = 0.0;
  for (double v : spec.values) acc += std::pow(v, alpha);
  return std::pow(acc, 1.0 / alpha);
}

double weak_schatten_quasinorm(const SingularSpectrum& spec, double alpha) {
  if (alpha < 1.0 || std::isinf(alpha))
    throw std::invalid_argument("weak_schatten_quasinorm: alpha must be in [1, infinity)");
  if (spec.values.empty()) return 0.0;
  const double cut = kZeroCut * spec.values.front();
  double best = 0.0;
  for (size_t i = 0; i < spec.values.size(); ++i) {
    if (spec.values[i] < cut) break;  // nonincreasing: rest are numerical zero
    best = std::max(best, std::pow(double(i + 1), 1.0 / alpha) * spec.values[i]);
  }
  return best;
}

cd trace_power(const FactoredOperator& op, int power) {
  if (power < 1) throw std::invalid_argument("trace_power: power must be >= 1");
  // tr (AC^*)^m = tr (C^*A)^m — K x K regardless of grid size
  Eigen::MatrixXcd R = op.right_factor.adjoint() * op.left_factor;
  return trace_power(R, power);
}

cd trace_power(const Eigen::MatrixXcd& m, int power) {
  if (power < 1) throw std::invalid_argument("trace_power: power must be >= 1");
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_power: matrix not square");
  if (power == 1) return m.trace();
  Eigen::MatrixXcd p = m;
  for (int i = 2; i < power; ++i) p = p * m;
  // tr(p*m) without the final product
  return (p.transpose().cwiseProduct(m)).sum();
}

double hs_norm_from_kernel(const Field& W1, const Kernel& kernel, const Field& W2) {
  if (!(W1.grid == W2.grid)) throw std::invalid_argument("hs_norm_from_kernel: grid mismatch");
  const std::int64_t nodes = W1.grid.node_count();
  const double cell = std::pow(W1.grid.spacing, W1.grid.dim);
  double acc = 0.0;
  for (std::int64_t i = 0; i < nodes; ++i) {
    const double wi = std::norm(W1.values[i]);
    if (wi == 0.0) continue;
    std::vector<double> x = node_point(W1.grid, i);
    for (std::int64_t j = 0; j < nodes; ++j) {
      const double wj = std::norm(W2.values[j]);
      if (wj == 0.0) continue;
      acc += wi * std::norm(kernel(x, node_point(W1.grid, j))) * wj;
    }
  }
  return std::sqrt(cell * cell * acc);
}

}  // namespace restlab

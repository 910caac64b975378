#include "restlab/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace restlab {

namespace {

// |xi|^2 at every flattened dual-lattice index (row-major, last axis fastest)
std::vector<double> xi_squared_table(const GridSpec& g) {
  const std::int64_t count = g.node_count();
  std::vector<double> out(count);
  for (std::int64_t flat = 0; flat < count; ++flat) {
    std::int64_t rest = flat;
    double s = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double xi = g.freq_coord(static_cast<int>(rest % g.points_per_axis));
      s += xi * xi;
      rest /= g.points_per_axis;
    }
    out[flat] = s;
  }
  return out;
}

void check_uniform_times(const std::vector<double>& times, const char* who) {
  for (size_t i = 2; i < times.size(); ++i) {
    const double d0 = times[1] - times[0], di = times[i] - times[i - 1];
    if (std::abs(di - d0) > 1e-9 * std::max(1.0, std::abs(d0)))
      throw std::invalid_argument(std::string(who) + ": nonuniform time step");
  }
}

}  // namespace

Field free_evolve(const Field& u, double t) {
  Field fhat = dft(u);
  const std::vector<double> xisq = xi_squared_table(u.grid);
  for (size_t k = 0; k < fhat.values.size(); ++k)
    fhat.values[k] *= std::exp(cd(0.0, -t * xisq[k]));
  Field out = idft(fhat);
  out.grid = u.grid;  // dual().dual() can drift an ulp for non-dyadic L
  return out;
}

GammaOperator gamma_operator(const SpaceTimeField& V) {
  if (V.slices.size() < 2) throw std::invalid_argument("gamma_operator: need >= 2 time slices");
  if (V.slices.size() != V.times.size())
    throw std::invalid_argument("gamma_operator: times/slices mismatch");
  check_uniform_times(V.times, "gamma_operator");
  const GridSpec g = V.slices.front().grid;
  for (const Field& s : V.slices)
    if (!(s.grid == g)) throw std::invalid_argument("gamma_operator: slices on different grids");
  const std::int64_t count = g.node_count();
  if (count > 4096)
    throw std::runtime_error("gamma_operator: dense materialization capped at 4096 nodes");
  const double dt = V.dt();
  const int n = g.points_per_axis;

  // Assemble in the frequency basis, where each conjugated slice is a phase
  // sandwich of a convolution (Toeplitz-by-axis) matrix:
  //   S[k,l] += dt * e^{+i t |xi_k|^2} (FFT(V_t)[m_k - m_l mod n] / count) e^{-i t |xi_l|^2},
  // then rotate to the node basis with the plain-order DFT matrix
  //   G[k,j] = e^{-2 pi i (j . m_k)/n} / n^{dim/2},  m_k = flat digits - n/2.
  // Both S and G here omit the (-1)^{sum m} centering signs of dft(); the two
  // omissions are conjugate by the same diagonal sign matrix and cancel, so
  // G^H S G is exactly the node-basis operator.
  const std::vector<double> xisq = xi_squared_table(g);
  std::vector<int> digit(static_cast<size_t>(count) * g.dim);
  for (std::int64_t flat = 0; flat < count; ++flat) {
    std::int64_t rest = flat;
    for (int a = g.dim - 1; a >= 0; --a) {
      digit[flat * g.dim + a] = static_cast<int>(rest % n);
      rest /= n;
    }
  }
  std::vector<std::int64_t> stride(g.dim, 1);
  for (int a = g.dim - 2; a >= 0; --a) stride[a] = stride[a + 1] * n;

  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(count, count);
  std::vector<cd> vhat(count), phase(count);
  for (size_t tidx = 0; tidx < V.slices.size(); ++tidx) {
    vhat = V.slices[tidx].values;
    detail::fft_pow(vhat, g.dim, n, -1);
    for (cd& v : vhat) v /= static_cast<double>(count);
    const double t = V.times[tidx];
    for (std::int64_t k = 0; k < count; ++k) phase[k] = std::exp(cd(0.0, t * xisq[k]));
    for (std::int64_t l = 0; l < count; ++l) {  // column-major fill
      const cd pl = dt * std::conj(phase[l]);
      for (std::int64_t k = 0; k < count; ++k) {
        std::int64_t diff = 0;
        for (int a = 0; a < g.dim; ++a) {
          int da = digit[k * g.dim + a] - digit[l * g.dim + a];
          if (da < 0) da += n;
          diff += da * stride[a];
        }
        S(k, l) += phase[k] * vhat[diff] * pl;
      }
    }
  }

  Eigen::MatrixXcd G(count, count);
  const double scale = std::pow(static_cast<double>(n), -0.5 * g.dim);
  for (std::int64_t j = 0; j < count; ++j) {
    for (std::int64_t k = 0; k < count; ++k) {
      double arg = 0.0;
      for (int a = 0; a < g.dim; ++a)
        arg += static_cast<double>(digit[j * g.dim + a]) * (digit[k * g.dim + a] - n / 2);
      G(k, j) = scale * std::exp(cd(0.0, -2.0 * M_PI * arg / n));
    }
  }

  GammaOperator out;
  out.grid = g;
  out.matrix = G.adjoint() * (S * G);
  return out;
}

double orthonormality_defect(const OrthonormalSystem& system) {
  if (system.functions.empty())
    throw std::invalid_argument("orthonormality_defect: empty system");
  double worst = 0.0;
  for (size_t i = 0; i < system.functions.size(); ++i)
    for (size_t j = i; j < system.functions.size(); ++j) {
      const cd ip = inner_product(system.functions[i], system.functions[j]);
      worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

SpaceTimeField density(const OrthonormalSystem& system, const std::vector<double>& times) {
  if (system.functions.empty()) throw std::invalid_argument("density: empty system");
  if (system.functions.size() != system.coefficients.size())
    throw std::invalid_argument("density: functions/coefficients mismatch");
  const GridSpec g = system.functions.front().grid;
  for (const Field& u : system.functions)
    if (!(u.grid == g)) throw std::invalid_argument("density: functions on different grids");

  // evolve via one forward transform per function, one inverse per (j, t)
  std::vector<Field> hats;
  hats.reserve(system.functions.size());
  for (const Field& u : system.functions) hats.push_back(dft(u));
  const std::vector<double> xisq = xi_squared_table(g);

  SpaceTimeField out;
  out.times = times;
  out.slices.reserve(times.size());
  Field mult = make_field(g.dual());
  for (double t : times) {
    Field slice = make_field(g);
    for (size_t j = 0; j < hats.size(); ++j) {
      for (size_t k = 0; k < mult.values.size(); ++k)
        mult.values[k] = hats[j].values[k] * std::exp(cd(0.0, -t * xisq[k]));
      Field ujt = idft(mult);
      ujt.grid = g;
      for (size_t x = 0; x < slice.values.size(); ++x)
        slice.values[x] += system.coefficients[j] * std::norm(ujt.values[x]);
    }
    out.slices.push_back(std::move(slice));
  }
  return out;
}

namespace {

// raised-cosine ramp: 0 for s<=0, 1 for s>=1, sin^2(pi s/2) between
double ramp(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double c = std::sin(0.5 * M_PI * s);
  return c * c;
}

}  // namespace

LittlewoodPaleyBank littlewood_paley_bank(const GridSpec& grid, int j_low, int j_high) {
  if (grid.node_count() <= 0) throw std::invalid_argument("littlewood_paley_bank: empty grid");
  if (j_high <= j_low)
    throw std::invalid_argument("littlewood_paley_bank: need j_high > j_low");
  const std::int64_t count = grid.node_count();
  LittlewoodPaleyBank bank;
  bank.grid = grid;
  bank.j_low = j_low;
  bank.profiles.assign(j_high - j_low + 1, std::vector<double>(count));
  const std::vector<double> xisq = xi_squared_table(grid);
  for (std::int64_t k = 0; k < count; ++k) {
    // log2|xi|; |xi| = 0 sits below every ramp and lands in the low block
    const double y = xisq[k] > 0.0 ? 0.5 * std::log2(xisq[k]) : -1e300;
    bank.profiles[0][k] = 1.0 - ramp(y - j_low);
    for (int j = j_low + 1; j <= j_high; ++j)
      bank.profiles[j - j_low][k] = ramp(y - (j - 1)) - ramp(y - j);
  }
  return bank;
}

Field littlewood_paley_apply(const LittlewoodPaleyBank& bank, const Field& u, int j) {
  if (!(u.grid == bank.grid))
    throw std::invalid_argument("littlewood_paley_apply: field grid differs from bank grid");
  if (j < bank.j_low || j > bank.j_high())
    throw std::out_of_range("littlewood_paley_apply: block index outside bank range");
  Field fhat = dft(u);
  const std::vector<double>& prof = bank.profiles[j - bank.j_low];
  for (size_t k = 0; k < fhat.values.size(); ++k) fhat.values[k] *= prof[k];
  Field out = idft(fhat);
  out.grid = u.grid;
  return out;
}

double strichartz_lhs(const Field& u, double p, double q, const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("strichartz_lhs: empty time window");
  const Field fhat = dft(u);
  const std::vector<double> xisq = xi_squared_table(u.grid);
  SpaceTimeField evolved;
  evolved.times = times;
  evolved.slices.reserve(times.size());
  Field mult = make_field(u.grid.dual());
  for (double t : times) {
    for (size_t k = 0; k < mult.values.size(); ++k)
      mult.values[k] = fhat.values[k] * std::exp(cd(0.0, -t * xisq[k]));
    Field ut = idft(mult);
    ut.grid = u.grid;
    evolved.slices.push_back(std::move(ut));
  }
  return mixed_norm(evolved, p, q);
}

}  // namespace restlab

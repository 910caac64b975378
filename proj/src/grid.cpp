#include "restlab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace restlab {

std::int64_t GridSpec::node_count() const {
  std::int64_t c = 1;
  for (int a = 0; a < dim; ++a) c *= points_per_axis;
  return c;
}

double GridSpec::freq_coord(int k) const {
  return (k - points_per_axis / 2) * M_PI / box_halfwidth;
}

GridSpec GridSpec::dual() const {
  // spacing pi/L, covering [-pi/h, pi/h)
  return make_grid(dim, points_per_axis, M_PI / spacing);
}

GridSpec make_grid(int dim, int points_per_axis, double box_halfwidth) {
  if (dim < 1) throw std::invalid_argument("make_grid: dim must be >= 1");
  if (points_per_axis < 2) throw std::invalid_argument("make_grid: need >= 2 points per axis");
  if (!(box_halfwidth > 0)) throw std::invalid_argument("make_grid: box_halfwidth must be > 0");
  GridSpec g;
  g.dim = dim;
  g.points_per_axis = points_per_axis;
  g.box_halfwidth = box_halfwidth;
  g.spacing = 2.0 * box_halfwidth / points_per_axis;
  return g;
}

Field make_field(const GridSpec& g) { return Field{g, std::vector<cd>(g.node_count())}; }

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex fftw_plan_mutex;

void run_fftw(std::vector<cd>& data, const GridSpec& g, int sign) {
  std::vector<int> dims(g.dim, g.points_per_axis);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft(g.dim, dims.data(), reinterpret_cast<fftw_complex*>(data.data()),
                         reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
}

void check_even(const GridSpec& g) {
  if (g.points_per_axis % 2 != 0)
    throw std::invalid_argument("dft: points_per_axis must be even (centered dual lattice)");
}

// Map between fft order (index p = m mod n) and centered order (index k = m + n/2),
// applying the alternating sign (-1)^(sum of m_axis) that converts the FFT phase
// e^{-2pi i jm/n} into the grid phase e^{-i x_j xi_m} for x_j = -L + jh.
void fold_to_centered(const std::vector<cd>& fft_out, std::vector<cd>& out, const GridSpec& g,
                      double scale) {
  const int n = g.points_per_axis;
  const std::int64_t total = g.node_count();
  for (std::int64_t k = 0; k < total; ++k) {
    std::int64_t rem = k, src = 0, stride = 1;
    int msum = 0;
    for (int a = g.dim - 1; a >= 0; --a) {
      int ka = static_cast<int>(rem % n);
      rem /= n;
      int m = ka - n / 2;
      msum += m;
      src += stride * ((m % n + n) % n);
      stride *= n;
    }
    double sgn = (msum % 2 == 0) ? 1.0 : -1.0;
    out[k] = scale * sgn * fft_out[src];
  }
}

void fold_from_centered(const std::vector<cd>& centered, std::vector<cd>& fft_in,
                        const GridSpec& g) {
  const int n = g.points_per_axis;
  const std::int64_t total = g.node_count();
  for (std::int64_t k = 0; k < total; ++k) {
    std::int64_t rem = k, dst = 0, stride = 1;
    int msum = 0;
    for (int a = g.dim - 1; a >= 0; --a) {
      int ka = static_cast<int>(rem % n);
      rem /= n;
      int m = ka - n / 2;
      msum += m;
      dst += stride * ((m % n + n) % n);
      stride *= n;
    }
    double sgn = (msum % 2 == 0) ? 1.0 : -1.0;
    fft_in[dst] = sgn * centered[k];
  }
}

}  // namespace

Field dft(const Field& f) {
  check_even(f.grid);
  if (static_cast<std::int64_t>(f.values.size()) != f.grid.node_count())
    throw std::invalid_argument("dft: value count does not match grid");
  std::vector<cd> buf = f.values;
  run_fftw(buf, f.grid, FFTW_FORWARD);
  Field out{f.grid.dual(), std::vector<cd>(buf.size())};
  const double scale = std::pow(f.grid.spacing / std::sqrt(2.0 * M_PI), f.grid.dim);
  fold_to_centered(buf, out.values, f.grid, scale);
  return out;
}

Field idft(const Field& F) {
  check_even(F.grid);
  if (static_cast<std::int64_t>(F.values.size()) != F.grid.node_count())
    throw std::invalid_argument("idft: value count does not match grid");
  Field out{F.grid.dual(), std::vector<cd>(F.values.size())};
  std::vector<cd> buf(F.values.size());
  fold_from_centered(F.values, buf, F.grid);
  run_fftw(buf, F.grid, FFTW_BACKWARD);
  // inverse Riemann sum weight (dxi/sqrt(2pi))^dim; with dxi*h = 2pi/n the
  // round trip against dft() is exact (no 1/n needed beyond this factor)
  const double scale = std::pow(F.grid.spacing / std::sqrt(2.0 * M_PI), F.grid.dim);
  for (size_t i = 0; i < buf.size(); ++i) out.values[i] = scale * buf[i];
  return out;
}

double lq_norm(const Field& f, double q) {
  if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (const cd& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const double cell = std::pow(f.grid.spacing, f.grid.dim);
  double acc = 0.0;
  for (const cd& v : f.values) acc += std::pow(std::abs(v), q);
  return std::pow(cell * acc, 1.0 / q);
}

double SpaceTimeField::dt() const {
  if (times.size() < 2) throw std::invalid_argument("SpaceTimeField: need >= 2 time slices");
  return times[1] - times[0];
}

std::vector<double> node_point(const GridSpec& g, std::int64_t flat) {
  std::vector<double> pt(g.dim);
  for (int a = g.dim - 1; a >= 0; --a) {
    pt[a] = g.node_coord(static_cast<int>(flat % g.points_per_axis));
    flat /= g.points_per_axis;
  }
  return pt;
}

cd inner_product(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  cd acc = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) acc += std::conj(a.values[i]) * b.values[i];
  return acc * std::pow(a.grid.spacing, a.grid.dim);
}

namespace detail {
void fft_pow(std::vector<cd>& data, int dim, int points_per_axis, int sign) {
  GridSpec g;
  g.dim = dim;
  g.points_per_axis = points_per_axis;
  run_fftw(data, g, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
}
}  // namespace detail

double mixed_norm(const SpaceTimeField& stf, double p, double q) {
  if (p < 1.0 || q < 1.0) throw std::invalid_argument("mixed_norm: exponents must be >= 1");
  if (stf.slices.empty()) throw std::invalid_argument("mixed_norm: empty field");
  if (stf.slices.size() != stf.times.size())
    throw std::invalid_argument("mixed_norm: times/slices mismatch");
  for (size_t i = 2; i < stf.times.size(); ++i) {
    double d0 = stf.times[1] - stf.times[0], di = stf.times[i] - stf.times[i - 1];
    if (std::abs(di - d0) > 1e-9 * std::max(1.0, std::abs(d0)))
      throw std::invalid_argument("mixed_norm: nonuniform time step");
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Field& s : stf.slices) m = std::max(m, lq_norm(s, q));
    return m;
  }
  const double step = stf.slices.size() > 1 ? stf.dt() : 1.0;
  double acc = 0.0;
  for (const Field& s : stf.slices) acc += step * std::pow(lq_norm(s, q), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace restlab

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "restlab/experiments.hpp"
#include "restlab/extension.hpp"
#include "restlab/grid.hpp"
#include "restlab/propagator.hpp"
#include "restlab/region.hpp"
#include "restlab/schatten.hpp"
#include "restlab/surface.hpp"

namespace py = pybind11;
using namespace restlab;

namespace {

using complex_array = py::array_t<cd, py::array::c_style | py::array::forcecast>;

Field to_field(const GridSpec& g, const complex_array& values) {
  if (values.size() != g.node_count())
    throw std::invalid_argument("value array length does not match the grid node count");
  Field f;
  f.grid = g;
  f.values.assign(values.data(), values.data() + values.size());
  return f;
}

py::array_t<cd> from_values(const std::vector<cd>& v) {
  py::array_t<cd> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> from_real(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> nodes_array(const SurfaceQuadrature& q) {
  py::array_t<double> out({static_cast<py::ssize_t>(q.nodes.size()), py::ssize_t(3)});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t k = 0; k < w.shape(0); ++k)
    for (py::ssize_t a = 0; a < 3; ++a) w(k, a) = q.nodes[k][a];
  return out;
}

SpaceTimeField to_spacetime(const GridSpec& g, const std::vector<double>& times,
                            const complex_array& slices) {
  if (slices.ndim() != 2) throw std::invalid_argument("slices must be a 2-d array");
  if (static_cast<size_t>(slices.shape(0)) != times.size())
    throw std::invalid_argument("slices rows must match the number of times");
  if (slices.shape(1) != g.node_count())
    throw std::invalid_argument("slices columns must match the grid node count");
  SpaceTimeField stf;
  stf.times = times;
  auto r = slices.unchecked<2>();
  for (py::ssize_t t = 0; t < r.shape(0); ++t) {
    Field f = make_field(g);
    for (py::ssize_t j = 0; j < r.shape(1); ++j) f.values[j] = r(t, j);
    stf.slices.push_back(std::move(f));
  }
  return stf;
}

const char* kind_name(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Circle: return "circle";
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::FlatSegment: return "flat";
    case SurfaceKind::Paraboloid: return "paraboloid";
  }
  return "?";
}

SurfaceKind kind_from_name(const std::string& s) {
  if (s == "circle") return SurfaceKind::Circle;
  if (s == "sphere") return SurfaceKind::Sphere;
  if (s == "flat") return SurfaceKind::FlatSegment;
  if (s == "paraboloid") return SurfaceKind::Paraboloid;
  throw std::invalid_argument("unknown surface kind '" + s +
                              "' (expected circle, sphere, flat, or paraboloid)");
}

SingularSpectrum spectrum_from_array(const py::array_t<double>& values) {
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end(), std::greater<double>());
  return SingularSpectrum{std::move(v)};
}

py::array_t<double> rows_array(const ExperimentReport& rep) {
  const py::ssize_t R = static_cast<py::ssize_t>(rep.rows.size());
  const py::ssize_t C = static_cast<py::ssize_t>(rep.columns.size());
  py::array_t<double> out({R, C});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < R; ++i)
    for (py::ssize_t j = 0; j < C; ++j) w(i, j) = rep.rows[i][j];
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical laboratory for restriction-extension operators, Schatten norms, "
            "and Strichartz-type inequalities";

  // ---- grids and fields -----------------------------------------------------
  py::class_<GridSpec>(m, "GridSpec")
      .def_readonly("dim", &GridSpec::dim)
      .def_readonly("points_per_axis", &GridSpec::points_per_axis)
      .def_readonly("box_halfwidth", &GridSpec::box_halfwidth)
      .def_readonly("spacing", &GridSpec::spacing)
      .def_property_readonly("node_count", &GridSpec::node_count)
      .def("node_coord", &GridSpec::node_coord, py::arg("j"))
      .def("freq_coord", &GridSpec::freq_coord, py::arg("k"))
      .def("dual", &GridSpec::dual)
      .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; },
           py::is_operator())
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(dim=" + std::to_string(g.dim) +
               ", points_per_axis=" + std::to_string(g.points_per_axis) +
               ", box_halfwidth=" + std::to_string(g.box_halfwidth) + ")";
      });

  m.def("make_grid", &make_grid, py::arg("dim"), py::arg("points_per_axis"),
        py::arg("box_halfwidth"),
        "uniform periodic grid on [-L, L)^dim with nodes x_j = -L + j*spacing");

  m.def("node_point",
        [](const GridSpec& g, std::int64_t flat) { return from_real(node_point(g, flat)); },
        py::arg("grid"), py::arg("flat"),
        "coordinates of the node at a flattened row-major index");

  m.def("dft",
        [](const GridSpec& g, const complex_array& v) {
          return from_values(dft(to_field(g, v)).values);
        },
        py::arg("grid"), py::arg("values"),
        "unitary continuum-normalized DFT onto the centered dual lattice");
  m.def("idft",
        [](const GridSpec& g, const complex_array& v) {
          return from_values(idft(to_field(g, v)).values);
        },
        py::arg("grid"), py::arg("values"),
        "inverse of dft; grid is the dual lattice the coefficients live on");

  m.def("lq_norm",
        [](const GridSpec& g, const complex_array& v, double q) {
          return lq_norm(to_field(g, v), q);
        },
        py::arg("grid"), py::arg("values"), py::arg("q"),
        "(sum |f|^q h^dim)^(1/q); q = inf gives the max modulus");

  m.def("inner_product",
        [](const GridSpec& g, const complex_array& a, const complex_array& b) {
          return inner_product(to_field(g, a), to_field(g, b));
        },
        py::arg("grid"), py::arg("a"), py::arg("b"), "h^dim * sum conj(a) b");

  // ---- free propagator ------------------------------------------------------
  m.def("free_evolve",
        [](const GridSpec& g, const complex_array& v, double t) {
          return from_values(free_evolve(to_field(g, v), t).values);
        },
        py::arg("grid"), py::arg("values"), py::arg("t"),
        "free Schrodinger group: Fourier multiplier exp(-i t |xi|^2), exactly unitary");

  m.def("strichartz_lhs",
        [](const GridSpec& g, const complex_array& v, double p, double q,
           const std::vector<double>& times) {
          return strichartz_lhs(to_field(g, v), p, q, times);
        },
        py::arg("grid"), py::arg("values"), py::arg("p"), py::arg("q"), py::arg("times"),
        "L^p_t L^q_x mixed norm of the free evolution over the given time window");

  m.def("gamma_operator",
        [](const GridSpec& g, const std::vector<double>& times, const complex_array& slices) {
          return gamma_operator(to_spacetime(g, times, slices)).matrix;
        },
        py::arg("grid"), py::arg("times"), py::arg("slices"),
        "dense node-basis matrix of Gamma_V = dt * sum_t U(-t) mult(V(t)) U(t); "
        "slices is (num_times, node_count)");

  py::class_<LittlewoodPaleyBank>(m, "LittlewoodPaleyBank")
      .def_readonly("j_low", &LittlewoodPaleyBank::j_low)
      .def_property_readonly("j_high", &LittlewoodPaleyBank::j_high)
      .def_property_readonly("profiles",
                             [](const LittlewoodPaleyBank& b) {
                               py::list out;
                               for (const auto& p : b.profiles) out.append(from_real(p));
                               return out;
                             })
      .def("apply",
           [](const LittlewoodPaleyBank& b, const complex_array& v, int j) {
             return from_values(littlewood_paley_apply(b, to_field(b.grid, v), j).values);
           },
           py::arg("values"), py::arg("j"), "dyadic block projection P_j applied to values");

  m.def("littlewood_paley_bank", &littlewood_paley_bank, py::arg("grid"), py::arg("j_low"),
        py::arg("j_high"),
        "smooth telescoping dyadic multiplier bank on the grid's dual lattice");

  // ---- surfaces ---------------------------------------------------------------
  py::class_<SurfaceQuadrature>(m, "SurfaceQuadrature")
      .def_readonly("ambient_dim", &SurfaceQuadrature::ambient_dim)
      .def_property_readonly("kind",
                             [](const SurfaceQuadrature& q) { return kind_name(q.kind); })
      .def_readonly("curvature_nonvanishing", &SurfaceQuadrature::curvature_nonvanishing)
      .def_readonly("node_spacing", &SurfaceQuadrature::node_spacing)
      .def_property_readonly("nodes", &nodes_array)
      .def_property_readonly("weights",
                             [](const SurfaceQuadrature& q) { return from_real(q.weights); })
      .def_property_readonly("node_count", &SurfaceQuadrature::node_count)
      .def_property_readonly("total_weight", &SurfaceQuadrature::total_weight)
      .def_property_readonly("aliasing_radius", &SurfaceQuadrature::aliasing_radius)
      .def("__repr__", [](const SurfaceQuadrature& q) {
        return std::string("SurfaceQuadrature(kind='") + kind_name(q.kind) +
               "', nodes=" + std::to_string(q.node_count()) + ")";
      });

  m.def("circle_quadrature", &circle_quadrature, py::arg("K"),
        "K equispaced unit-circle nodes, weights 2pi/K (spectrally accurate)");
  m.def("sphere_quadrature", &sphere_quadrature, py::arg("K"),
        "Fibonacci lattice on the unit 2-sphere, equal weights 4pi/K");
  m.def("flat_segment_quadrature", &flat_segment_quadrature, py::arg("K"),
        py::arg("half_length"), "midpoint nodes on the flat segment {0} x [-l, l]");
  m.def("paraboloid_quadrature", &paraboloid_quadrature, py::arg("d"), py::arg("xi_max"),
        py::arg("nodes_per_axis"),
        "truncated paraboloid (xi, -|xi|^2) carrying the push-forward of Lebesgue measure");

  m.def("fourier_transform_of_measure",
        [](const SurfaceQuadrature& q, const std::array<double, 3>& x) {
          return fourier_transform_of_measure(q, x);
        },
        py::arg("quad"), py::arg("x"), "dsigma_hat(x) = sum_k w_k exp(i x.xi_k)");

  m.def("decay_fit", &decay_fit, py::arg("quad"), py::arg("radii"), py::arg("directions"),
        "log-log slope of the direction-RMS of |dsigma_hat| against radius");

  // ---- extension / restriction ---------------------------------------------
  m.def("restriction_apply",
        [](const GridSpec& g, const complex_array& v, const SurfaceQuadrature& quad) {
          return from_values(restriction_apply(to_field(g, v), quad));
        },
        py::arg("grid"), py::arg("values"), py::arg("quad"),
        "Fourier transform of the field sampled at the surface nodes");

  m.def("extension_apply",
        [](const complex_array& coeffs, const SurfaceQuadrature& quad, const GridSpec& g) {
          std::vector<cd> c(coeffs.data(), coeffs.data() + coeffs.size());
          return from_values(extension_apply(c, quad, g).values);
        },
        py::arg("coeffs"), py::arg("quad"), py::arg("grid"),
        "weighted superposition of surface plane waves sampled on the grid");

  m.def("ts_apply",
        [](const GridSpec& g, const complex_array& v, const SurfaceQuadrature& quad) {
          return from_values(ts_apply(to_field(g, v), quad).values);
        },
        py::arg("grid"), py::arg("values"), py::arg("quad"),
        "extension(restriction(f)): convolution with dsigma_hat");

  py::class_<FactoredOperator>(m, "FactoredOperator")
      .def_readonly("grid", &FactoredOperator::grid)
      .def_readonly("left_factor", &FactoredOperator::left_factor)
      .def_readonly("right_factor", &FactoredOperator::right_factor)
      .def("dense", &FactoredOperator::dense,
           "nodes x nodes matrix A C^*; only for small grids / oracle checks");

  m.def("build_weighted_operator",
        [](const GridSpec& g, const complex_array& W1, const complex_array& W2,
           const SurfaceQuadrature& quad) {
          return build_weighted_operator(to_field(g, W1), to_field(g, W2), quad);
        },
        py::arg("grid"), py::arg("W1"), py::arg("W2"), py::arg("quad"),
        "rank-K factored form of W1 * (conv with dsigma_hat) * W2");

  // ---- Schatten ---------------------------------------------------------------
  m.def("singular_values",
        [](const FactoredOperator& op) { return from_real(singular_values(op).values); },
        py::arg("op"),
        "nonincreasing singular values via the QR-product SVD (grid size never "
        "enters the small SVD)");
  m.def("singular_values",
        [](const Eigen::MatrixXcd& mat) { return from_real(singular_values(mat).values); },
        py::arg("matrix"), "dense oracle path: full SVD");

  m.def("schatten_norm",
        [](const py::array_t<double>& values, double alpha) {
          return schatten_norm(spectrum_from_array(values), alpha);
        },
        py::arg("values"), py::arg("alpha"),
        "ell^alpha norm of a singular value sequence; alpha = inf gives mu_1");
  m.def("weak_schatten_quasinorm",
        [](const py::array_t<double>& values, double alpha) {
          return weak_schatten_quasinorm(spectrum_from_array(values), alpha);
        },
        py::arg("values"), py::arg("alpha"), "sup_n n^(1/alpha) mu_n (n 1-based)");

  m.def("trace_power",
        [](const FactoredOperator& op, int power) { return trace_power(op, power); },
        py::arg("op"), py::arg("power"),
        "tr(M^power) through the K x K reduction C^* A (grid size never enters)");
  m.def("trace_power",
        [](const Eigen::MatrixXcd& mat, int power) { return trace_power(mat, power); },
        py::arg("matrix"), py::arg("power"));

  // ---- exponent region --------------------------------------------------------
  m.def("compact_alpha", &compact_alpha, py::arg("N"), py::arg("p"),
        "optimal Schatten exponent (N-1)p / (2N - (N+1)p) for the compact-surface "
        "orthonormal estimate");
  m.def("dual_exponent", &dual_exponent, py::arg("p"), "Holder conjugate p/(p-1)");
  m.def("scaling_partner", &scaling_partner, py::arg("d"), py::arg("q"),
        "p solving 2/p + d/q = 1; q = d returns inf");

  m.def("classify_mixed",
        [](int d, double q, double alpha) {
          const RegionVerdict v = classify_mixed({d, q, alpha});
          return py::make_tuple(verdict_name(v.verdict), v.reason);
        },
        py::arg("d"), py::arg("q"), py::arg("alpha"),
        "('VALID'|'FAIL'|'OPEN', reason slug) for the mixed estimate at (d, q, alpha)");

  m.def("region_boundary",
        [](int d) {
          const RegionBoundary b = region_boundary(d);
          py::list vertices, edges;
          for (const auto& v : b.vertices) vertices.append(py::make_tuple(v[0], v[1]));
          for (const auto& e : b.edges) {
            py::dict ed;
            ed["from"] = py::make_tuple(e.from[0], e.from[1]);
            ed["to"] = py::make_tuple(e.to[0], e.to[1]);
            ed["style"] = e.style;
            edges.append(ed);
          }
          py::dict out;
          out["d"] = b.d;
          out["vertices"] = vertices;
          out["edges"] = edges;
          out["excluded_vertex"] = py::make_tuple(b.excluded_vertex[0], b.excluded_vertex[1]);
          return out;
        },
        py::arg("d"),
        "valid-region boundary polygon in the (1/q, 1/alpha) plane for d >= 3");

  // ---- experiments ------------------------------------------------------------
  py::class_<ExperimentReport>(m, "ExperimentReport")
      .def_readonly("columns", &ExperimentReport::columns)
      .def_property_readonly("rows", &rows_array)
      .def_property_readonly("metadata",
                             [](const ExperimentReport& r) {
                               py::dict d;
                               for (const auto& [k, v] : r.metadata)
                                 d[py::str(k)] = v;
                               return d;
                             })
      .def_property_readonly("fitted",
                             [](const ExperimentReport& r) {
                               py::dict d;
                               for (const auto& f : r.fitted)
                                 d[py::str(f.name)] = py::make_tuple(f.value, f.stderr_);
                               return d;
                             })
      .def_readonly("flagged", &ExperimentReport::flagged)
      .def_readonly("flag_reason", &ExperimentReport::flag_reason)
      .def("column",
           [](const ExperimentReport& r, const std::string& name) {
             for (size_t c = 0; c < r.columns.size(); ++c)
               if (r.columns[c] == name) {
                 std::vector<double> out;
                 for (const auto& row : r.rows) out.push_back(row[c]);
                 return from_real(out);
               }
             throw std::invalid_argument("no column named '" + name + "'");
           },
           py::arg("name"), "one named column as an array")
      .def("__repr__", [](const ExperimentReport& r) {
        return "ExperimentReport(rows=" + std::to_string(r.rows.size()) +
               ", columns=" + std::to_string(r.columns.size()) +
               (r.flagged ? ", flagged" : "") + ")";
      });

  m.def("decay_scan", &decay_scan, py::arg("quad"), py::arg("radii"), py::arg("directions"),
        "|dsigma_hat| decay table plus fitted log-log slope");

  m.def("schatten_scan",
        [](const std::string& kind, const std::vector<int>& K_list, const GridSpec& g,
           double weight_width) {
          return schatten_scan(kind_from_name(kind), K_list, g, weight_width);
        },
        py::arg("kind"), py::arg("K_list"), py::arg("grid"), py::arg("weight_width"),
        "Schatten norms of W * T_S * W as the surface quadrature refines");

  m.def("semiclassical_scan", &semiclassical_scan, py::arg("quad"), py::arg("h_list"),
        py::arg("p"), "spectrum of the ball-indicator kernel gamma_h on the surface nodes");

  m.def("orthonormal_ratio", &orthonormal_ratio, py::arg("quad"), py::arg("M_list"),
        py::arg("p"), py::arg("box_radius") = 450.0, py::arg("dr") = 0.05,
        "density growth for M orthonormal circle harmonics vs the coefficient bound");

  m.def("noncompactness_probe",
        [](const GridSpec& g, const complex_array& W, const complex_array& phi,
           const std::vector<int>& n_list, double tau, const std::vector<double>& times) {
          return noncompactness_probe(to_field(g, W), to_field(g, phi), n_list, tau, times);
        },
        py::arg("grid"), py::arg("W"), py::arg("phi"), py::arg("n_list"), py::arg("tau"),
        py::arg("times"),
        "<phi_n, Gamma_{W^2} phi_n> along a free-evolution orbit plus a time-localized "
        "contrast run");

  py::class_<TranslationExperiment>(m, "TranslationExperiment")
      .def_readonly("copies", &TranslationExperiment::copies)
      .def_readonly("separation", &TranslationExperiment::separation)
      .def_readonly("power", &TranslationExperiment::power)
      .def_property_readonly("times",
                             [](const TranslationExperiment& e) { return e.v.times; });

  m.def("make_translation_bump", &make_translation_bump, py::arg("grid"), py::arg("sigma"),
        py::arg("dt"), py::arg("copies"), py::arg("separation"),
        "cos^2(pi t) window times a Gaussian bump, sampled on midpoint times");

  m.def("translation_scaling", &translation_scaling, py::arg("experiment"),
        py::arg("T_schedule"),
        "tr Gamma_V^m for translated-copy potentials vs the diagonal prediction");

  m.def("decoupling_decay", &decoupling_decay, py::arg("experiment"), py::arg("t_list"),
        "Schatten norm of A_v U(t) A_v against the t = 0 baseline");

  m.def("refined_strichartz_check",
        [](const GridSpec& g, const complex_array& u, double p, double q,
           const std::vector<double>& window) {
          const RefinedStrichartz r = refined_strichartz_check(to_field(g, u), p, q, window);
          return py::make_tuple(r.lhs, r.rhs1, r.rhs2);
        },
        py::arg("grid"), py::arg("u"), py::arg("p"), py::arg("q"), py::arg("window"),
        "(lhs, rhs1, rhs2) of the refined estimate chain for one profile");

  m.def("refined_family_scan", &refined_family_scan, py::arg("grid"), py::arg("trials"),
        py::arg("seed"), py::arg("band"), py::arg("p"), py::arg("q"), py::arg("window"),
        "seeded band-limited family study; fitted['max_ratio'] is the empirical constant");
}

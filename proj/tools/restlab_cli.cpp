// Command-line front end: every experiment in the library is a subcommand
// that writes one CSV (plus an optional gnuplot sibling). Parameters come
// from built-in defaults, overridden by a --config JSON file, overridden by
// flags. The effective config is echoed into the CSV's provenance block so
// any output file can be reproduced by feeding that line back to --config.
//
// Exit codes: 0 success, 2 config error, 3 flagged run (a diagnostic
// threshold tripped; the CSV is still written), 4 numerical failure.
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "restlab/csvio.hpp"
#include "restlab/experiments.hpp"
#include "restlab/grid.hpp"
#include "restlab/region.hpp"
#include "restlab/surface.hpp"

using json = nlohmann::json;
using namespace restlab;

namespace {

struct CliError {
  int code;
  std::string message;
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string piece;
  for (char c : text) {
    if (c == ',') {
      out.push_back(piece);
      piece.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      piece += c;
    }
  }
  out.push_back(piece);
  return out;
}

long long parse_int(const std::string& key, const std::string& text) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (...) {
    throw CliError{2, "ill-typed value for key " + key + ": '" + text + "' is not an integer"};
  }
  if (pos != text.size())
    throw CliError{2, "ill-typed value for key " + key + ": '" + text + "' is not an integer"};
  return v;
}

double parse_real(const std::string& key, const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (...) {
    throw CliError{2, "ill-typed value for key " + key + ": '" + text + "' is not a number"};
  }
  if (pos != text.size() || std::isnan(v))
    throw CliError{2, "ill-typed value for key " + key + ": '" + text + "' is not a number"};
  return v;
}

// json cannot hold IEEE infinities (they would serialize as null), so
// infinite reals are stored as the string "inf" and decoded on read.
json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  return "inf";
}

double json_to_real(const json& v) {
  if (v.is_string()) return std::numeric_limits<double>::infinity();
  return v.get<double>();
}

json flag_to_json(const std::string& key, const std::string& text, const json& model) {
  if (model.is_string()) return text;
  if (model.is_number_unsigned()) {
    long long v = parse_int(key, text);
    if (v < 0) throw CliError{2, "ill-typed value for key " + key + ": must be nonnegative"};
    return static_cast<json::number_unsigned_t>(v);
  }
  if (model.is_number_integer()) return parse_int(key, text);
  if (model.is_number_float()) return real_to_json(parse_real(key, text));
  if (model.is_array()) {
    json arr = json::array();
    for (const std::string& piece : split_commas(text))
      arr.push_back(flag_to_json(key, piece, model[0]));
    return arr;
  }
  throw CliError{2, "key " + key + " cannot be set from a flag"};
}

json coerce_file_value(const std::string& key, const json& v, const json& model) {
  if (model.is_string()) {
    if (!v.is_string()) throw CliError{2, "ill-typed value for key " + key + ": expected a string"};
    return v;
  }
  if (model.is_boolean()) {
    if (!v.is_boolean()) throw CliError{2, "ill-typed value for key " + key + ": expected a boolean"};
    return v;
  }
  if (model.is_number_unsigned()) {
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0))
      throw CliError{2, "ill-typed value for key " + key + ": expected a nonnegative integer"};
    return static_cast<json::number_unsigned_t>(v.get<long long>());
  }
  if (model.is_number_integer()) {
    if (!v.is_number_integer())
      throw CliError{2, "ill-typed value for key " + key + ": expected an integer"};
    return v;
  }
  if (model.is_number_float()) {
    if (v.is_string()) {
      if (v.get<std::string>() == "inf") return v;
      throw CliError{2, "ill-typed value for key " + key + ": expected a number or \"inf\""};
    }
    if (!v.is_number()) throw CliError{2, "ill-typed value for key " + key + ": expected a number"};
    return v.get<double>();
  }
  if (model.is_array()) {
    if (!v.is_array()) throw CliError{2, "ill-typed value for key " + key + ": expected an array"};
    json arr = json::array();
    for (const json& e : v) arr.push_back(coerce_file_value(key, e, model[0]));
    return arr;
  }
  throw CliError{2, "unsupported config key: " + key};
}

std::vector<double> real_list(const json& cfg, const std::string& key) {
  std::vector<double> out;
  for (const json& e : cfg.at(key)) out.push_back(json_to_real(e));
  return out;
}

std::vector<int> int_list(const json& cfg, const std::string& key) {
  std::vector<int> out;
  for (const json& e : cfg.at(key)) out.push_back(e.get<int>());
  return out;
}

std::vector<double> time_window(double halfwidth, double dt) {
  if (!(halfwidth > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("window and dt must be positive");
  const long steps = std::lround(2.0 * halfwidth / dt);
  std::vector<double> ts(steps + 1);
  for (long i = 0; i <= steps; ++i) ts[i] = -halfwidth + i * dt;
  return ts;
}

SurfaceQuadrature make_surface(const std::string& name, int K) {
  if (name == "circle") return circle_quadrature(K);
  if (name == "sphere") return sphere_quadrature(K);
  if (name == "flat") return flat_segment_quadrature(K, 1.0);
  throw CliError{2, "unknown surface: " + name + " (expected circle, sphere, or flat)"};
}

Field gaussian_field(const GridSpec& g, double width, bool normalize) {
  Field f = make_field(g);
  for (std::int64_t j = 0; j < g.node_count(); ++j) {
    double r2 = 0.0;
    for (double x : node_point(g, j)) r2 += x * x;
    f.values[j] = std::exp(-r2 / (2.0 * width * width));
  }
  if (normalize) {
    const double nrm = lq_norm(f, 2.0);
    for (cd& v : f.values) v /= nrm;
  }
  return f;
}

// ---- subcommand table ------------------------------------------------------

struct RunOutput {
  std::optional<ExperimentReport> report;  // numeric experiments
  CsvTable table;                          // region (string cells)
  PlotSpec plot;
};

json decay_defaults() {
  return {{"surface", "circle"}, {"K", 0},      {"k_min", 0},
          {"k_max", 0},          {"k_step", 0}, {"directions", 8},
          {"seed", json::number_unsigned_t{0}}};
}

void decay_resolve(json& c) {
  const std::string s = c.at("surface");
  const bool sphere = s == "sphere";
  if (c.at("K").get<long long>() == 0) c["K"] = sphere ? 16384 : 1024;
  if (c.at("k_min").get<long long>() == 0) c["k_min"] = 3;
  if (c.at("k_max").get<long long>() == 0) c["k_max"] = sphere ? 35 : 33;
  if (c.at("k_step").get<long long>() == 0) c["k_step"] = 2;
}

RunOutput run_decay(const json& c) {
  const std::string surface = c.at("surface");
  SurfaceQuadrature quad = make_surface(surface, c.at("K").get<int>());
  std::vector<double> radii;
  for (long long k = c.at("k_min").get<long long>(); k <= c.at("k_max").get<long long>();
       k += c.at("k_step").get<long long>())
    radii.push_back(surface == "sphere" ? (k + 0.5) * M_PI : k * M_PI + M_PI / 4.0);

  std::vector<std::array<double, 3>> dirs;
  const int nd = c.at("directions").get<int>();
  if (quad.kind == SurfaceKind::FlatSegment) {
    dirs.push_back({1.0, 0.0, 0.0});  // normal to the segment: no curvature, no decay
  } else if (quad.kind == SurfaceKind::Circle) {
    for (int i = 0; i < nd; ++i) {
      const double a = 2.0 * M_PI * i / nd + 0.37;
      dirs.push_back({std::cos(a), std::sin(a), 0.0});
    }
  } else {
    for (int i = 0; i < nd; ++i) {  // golden-angle spiral
      const double z = 1.0 - 2.0 * (i + 0.5) / nd;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = 2.399963229728653 * i;
      dirs.push_back({r * std::cos(a), r * std::sin(a), z});
    }
  }

  RunOutput out;
  out.report = decay_scan(quad, radii, dirs);
  out.plot = {"surface-measure decay: rms |d sigma^| vs radius", 1, {2}, true, true, {}};
  return out;
}

json schatten_defaults() {
  return {{"surface", "circle"}, {"K_list", json::array({16, 32, 64})},
          {"dim", 2},            {"n", 32},
          {"L", 6.0},            {"width", 1.0},
          {"seed", json::number_unsigned_t{0}}};
}

RunOutput run_schatten(const json& c) {
  const std::string s = c.at("surface");
  SurfaceKind kind;
  if (s == "circle")
    kind = SurfaceKind::Circle;
  else if (s == "sphere")
    kind = SurfaceKind::Sphere;
  else
    throw CliError{2, "unknown surface: " + s + " (expected circle or sphere)"};
  GridSpec g = make_grid(c.at("dim").get<int>(), c.at("n").get<int>(), c.at("L").get<double>());
  RunOutput out;
  out.report = schatten_scan(kind, int_list(c, "K_list"), g, c.at("width").get<double>());
  out.plot = {"Schatten norms of the weighted extension vs quadrature size", 1, {2, 3, 4, 5},
              false, true, {}};
  return out;
}

json semiclassical_defaults() {
  return {{"surface", "circle"},
          {"K", 2048},
          {"h_list", json::array({0.2, 0.1, 0.05, 0.02})},
          {"p", 1.2},
          {"seed", json::number_unsigned_t{0}}};
}

RunOutput run_semiclassical(const json& c) {
  SurfaceQuadrature quad = make_surface(c.at("surface"), c.at("K").get<int>());
  RunOutput out;
  out.report = semiclassical_scan(quad, real_list(c, "h_list"), c.at("p").get<double>());
  out.plot = {"semiclassical kernel: large-eigenvalue count vs h", 1, {3}, true, true, {}};
  return out;
}

json noncompact_defaults() {
  return {{"n", 2880},  {"L", 432.0},     {"window", 64.0},
          {"dt", 0.25}, {"tau", 1.0},     {"max_shift", 8},
          {"width", 1.0}, {"seed", json::number_unsigned_t{0}}};
}

RunOutput run_noncompact(const json& c) {
  GridSpec g = make_grid(1, c.at("n").get<int>(), c.at("L").get<double>());
  Field W = gaussian_field(g, c.at("width").get<double>(), false);
  Field phi = gaussian_field(g, 1.0, true);
  std::vector<int> shifts;
  for (int i = 0; i <= c.at("max_shift").get<int>(); ++i) shifts.push_back(i);
  RunOutput out;
  out.report = noncompactness_probe(W, phi, shifts, c.at("tau").get<double>(),
                                    time_window(c.at("window").get<double>(),
                                                c.at("dt").get<double>()));
  out.plot = {"probe value and single-cell contrast vs shift", 1, {2, 3}, false, false, {}};
  return out;
}

json translate_defaults() {
  return {{"n", 3072},   {"L", 384.0},
          {"sigma", 0.5}, {"dt", 0.0078125},
          {"copies", 8},  {"separation", 2.0},
          {"T_schedule", json::array({2.0, 4.0, 8.0, 16.0})},
          {"seed", json::number_unsigned_t{0}}};
}

RunOutput run_translate(const json& c) {
  GridSpec g = make_grid(1, c.at("n").get<int>(), c.at("L").get<double>());
  TranslationExperiment exp =
      make_translation_bump(g, c.at("sigma").get<double>(), c.at("dt").get<double>(),
                            c.at("copies").get<int>(), c.at("separation").get<double>());
  RunOutput out;
  out.report = translation_scaling(exp, real_list(c, "T_schedule"));
  out.plot = {"off-diagonal remainder ratio vs copy spacing T", 2, {6}, true, false, {}};
  return out;
}

json decoupling_defaults() {
  return {{"n", 1536},    {"L", 192.0},
          {"sigma", 0.5}, {"dt", 0.0078125},
          {"t_list", json::array({0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 20.0})},
          {"seed", json::number_unsigned_t{0}}};
}

RunOutput run_decoupling(const json& c) {
  GridSpec g = make_grid(1, c.at("n").get<int>(), c.at("L").get<double>());
  TranslationExperiment exp = make_translation_bump(
      g, c.at("sigma").get<double>(), c.at("dt").get<double>(), 1, 2.0);
  RunOutput out;
  out.report = decoupling_decay(exp, real_list(c, "t_list"));
  out.plot = {"|| A U(t) A || in S^{3/2} relative to t = 0", 1, {3}, false, false, {}};
  return out;
}

json orthonormal_defaults() {
  return {{"K", 2048},
          {"M_list", json::array({1, 2, 4, 8, 16, 32, 64})},
          {"p", 1.2},
          {"box_radius", 450.0},
          {"dr", 0.05},
          {"seed", json::number_unsigned_t{0}}};
}

RunOutput run_orthonormal(const json& c) {
  SurfaceQuadrature quad = circle_quadrature(c.at("K").get<int>());
  RunOutput out;
  out.report = orthonormal_ratio(quad, int_list(c, "M_list"), c.at("p").get<double>(),
                                 c.at("box_radius").get<double>(), c.at("dr").get<double>());
  out.plot = {"orthonormal-family L^{p'/2} mass vs M, with both bounds", 1, {2, 3, 4}, true,
              true, {}};
  return out;
}

json refined_defaults() {
  return {{"n", 256},     {"L", 16.0}, {"band", 8.0},  {"trials", 200},
          {"p", 6.0},     {"q", 6.0},  {"window", 4.0}, {"dt", 0.01},
          {"seed", json::number_unsigned_t{7}}};
}

RunOutput run_refined(const json& c) {
  GridSpec g = make_grid(1, c.at("n").get<int>(), c.at("L").get<double>());
  RunOutput out;
  out.report = refined_family_scan(
      g, c.at("trials").get<int>(), c.at("seed").get<std::uint64_t>(),
      c.at("band").get<double>(), c.at("p").get<double>(), c.at("q").get<double>(),
      time_window(c.at("window").get<double>(), c.at("dt").get<double>()));
  out.plot = {"refined estimate: lhs / block-sum bound per trial", 1, {5}, false, false, {}};
  return out;
}

json region_defaults() {
  return {{"d", 3},          {"q", 0.0},         {"alpha", 0.0},
          {"sweep", false},  {"q_min", 0.0},     {"q_max", 0.0},
          {"alpha_min", 1.0}, {"alpha_max", 26.0}, {"points", 50},
          {"seed", json::number_unsigned_t{0}}};
}

RunOutput run_region(const json& c) {
  RunOutput out;
  out.table.columns = {"d", "q", "alpha", "verdict", "reason"};
  const int d = c.at("d").get<int>();
  auto add = [&](double q, double alpha) {
    RegionVerdict v = classify_mixed({d, q, alpha});
    out.table.rows.push_back({std::to_string(d), format_double(q),
                              std::isfinite(alpha) ? format_double(alpha) : "inf",
                              verdict_name(v.verdict), v.reason});
  };
  if (c.at("sweep").get<bool>()) {
    double q_min = json_to_real(c.at("q_min"));
    double q_max = json_to_real(c.at("q_max"));
    if (q_min == 0.0) q_min = std::max(1.0, d - 0.5);
    if (q_max == 0.0) q_max = d + 4.5;
    const double a_min = json_to_real(c.at("alpha_min"));
    const double a_max = json_to_real(c.at("alpha_max"));
    const int pts = c.at("points").get<int>();
    if (pts < 2) throw CliError{2, "ill-typed value for key points: need at least 2"};
    for (int i = 0; i < pts; ++i)
      for (int j = 0; j < pts; ++j)
        add(q_min + (q_max - q_min) * i / (pts - 1), a_min + (a_max - a_min) * j / (pts - 1));
  } else {
    const double qv = json_to_real(c.at("q"));
    const double av = json_to_real(c.at("alpha"));
    if (qv == 0.0) throw CliError{2, "missing required key: q"};
    if (qv < 1.0) throw CliError{2, "ill-typed value for key q: must be >= 1"};
    if (av == 0.0) throw CliError{2, "missing required key: alpha"};
    add(qv, av);
  }
  out.plot = {"classifier queries in the (1/q, 1/alpha) plane", 2, {3}, false, false, {}, ""};
  out.plot.using_expr = "(1.0/column(2)):(strcol(3) eq \"inf\" ? 0.0 : 1.0/column(3))";
  if (d >= 3) {
    RegionBoundary b = region_boundary(d);
    out.plot.overlay = b.vertices;
    out.plot.overlay.push_back(b.vertices.front());  // close the polygon
  }
  return out;
}

// ----------------------------------------------------------------------------

struct SubcommandState {
  json defaults;
  std::map<std::string, std::string> raw;  // flag text by key
  std::map<std::string, CLI::Option*> opts;
  std::map<std::string, bool> flag_bools;
  std::string config_path;
  std::string out_path;
  bool emit_plot = false;
  RunOutput (*runner)(const json&) = nullptr;
  void (*resolve)(json&) = nullptr;
};

int run_main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for restriction / Schatten / Strichartz experiments"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"decay", "fit the decay exponent of the surface-measure Fourier transform"},
      {"schatten-scan", "Schatten norms of the weighted extension as the quadrature refines"},
      {"semiclassical", "eigenvalue counts of the semiclassical optimizer kernel"},
      {"noncompact", "shift-invariant probe demonstrating the compactness obstruction"},
      {"translate-scaling", "trace scaling of Gamma_V under translated potential copies"},
      {"decoupling", "Schatten-norm decay of A U(t) A against the time offset"},
      {"orthonormal", "growth of the orthonormal-family space-time mass in M"},
      {"refined", "seeded family study of the refined Strichartz inequality"},
      {"region", "classify mixed Schatten-Strichartz exponents / sweep the region map"},
  };

  std::map<std::string, SubcommandState> state;
  state["decay"] = {decay_defaults(), {}, {}, {}, "", "", false, run_decay, decay_resolve};
  state["schatten-scan"] = {schatten_defaults(), {}, {}, {}, "", "", false, run_schatten, nullptr};
  state["semiclassical"] = {semiclassical_defaults(), {}, {}, {}, "", "", false,
                            run_semiclassical, nullptr};
  state["noncompact"] = {noncompact_defaults(), {}, {}, {}, "", "", false, run_noncompact,
                         nullptr};
  state["translate-scaling"] = {translate_defaults(), {}, {}, {}, "", "", false, run_translate,
                                nullptr};
  state["decoupling"] = {decoupling_defaults(), {}, {}, {}, "", "", false, run_decoupling,
                         nullptr};
  state["orthonormal"] = {orthonormal_defaults(), {}, {}, {}, "", "", false, run_orthonormal,
                          nullptr};
  state["refined"] = {refined_defaults(), {}, {}, {}, "", "", false, run_refined, nullptr};
  state["region"] = {region_defaults(), {}, {}, {}, "", "", false, run_region, nullptr};

  for (const auto& [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    SubcommandState& st = state[name];
    for (const auto& [key, model] : st.defaults.items()) {
      if (model.is_boolean()) {
        st.opts[key] = sub->add_flag("--" + key, st.flag_bools[key]);
      } else {
        st.opts[key] = sub->add_option("--" + key, st.raw[key]);
      }
    }
    sub->add_option("--config", st.config_path, "JSON file with parameter keys");
    sub->add_option("--out", st.out_path, "output CSV path (default: <experiment>.csv)");
    sub->add_flag("--emit-plot", st.emit_plot, "write a gnuplot script next to the CSV");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  SubcommandState& st = state[name];

  try {
    json cfg = st.defaults;
    if (!st.config_path.empty()) {
      std::ifstream f(st.config_path);
      if (!f) throw CliError{2, "cannot read config file: " + st.config_path};
      json file;
      try {
        file = json::parse(f);
      } catch (const json::parse_error& e) {
        throw CliError{2, std::string("config file is not valid JSON: ") + e.what()};
      }
      if (!file.is_object()) throw CliError{2, "config root must be a JSON object"};
      for (const auto& [k, v] : file.items()) {
        if (!st.defaults.contains(k)) throw CliError{2, "unknown config key: " + k};
        cfg[k] = coerce_file_value(k, v, st.defaults.at(k));
      }
    }
    for (const auto& [key, opt] : st.opts) {
      if (opt->count() == 0) continue;
      if (st.defaults.at(key).is_boolean())
        cfg[key] = st.flag_bools.at(key);
      else
        cfg[key] = flag_to_json(key, st.raw.at(key), st.defaults.at(key));
    }
    if (st.resolve) st.resolve(cfg);

    RunOutput out = st.runner(cfg);

    Provenance prov;
    prov.experiment = name;
    prov.config_json = cfg.dump();
    prov.seed = cfg.at("seed").get<std::uint64_t>();

    std::string body;
    if (out.report) {
      for (const auto& row : out.report->rows)
        for (double v : row)
          if (!std::isfinite(v))
            throw std::runtime_error("non-finite value in the report; run not trustworthy");
      out.table = to_table(*out.report);
      body = render_csv(out.table, prov, &*out.report);
    } else {
      body = render_csv(out.table, prov, nullptr);
    }

    const std::string out_path = st.out_path.empty() ? name + ".csv" : st.out_path;
    write_text_file(out_path, body);
    std::cout << "wrote " << out_path << " (" << out.table.rows.size() << " rows)\n";

    if (st.emit_plot) {
      std::string gp_path = out_path;
      if (gp_path.size() > 4 && gp_path.substr(gp_path.size() - 4) == ".csv")
        gp_path = gp_path.substr(0, gp_path.size() - 4) + ".gp";
      else
        gp_path += ".gp";
      const size_t slash = out_path.find_last_of('/');
      const std::string base = slash == std::string::npos ? out_path : out_path.substr(slash + 1);
      write_text_file(gp_path, render_gnuplot(out.table, base, out.plot));
      std::cout << "wrote " << gp_path << "\n";
    }

    if (out.report && out.report->flagged) {
      std::cerr << "flagged: " << out.report->flag_reason << "\n";
      return 3;
    }
    return 0;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_main(argc, argv); }

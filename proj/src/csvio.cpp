#include "restlab/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace restlab {

std::string csv_escape(const std::string& field) {
  bool needs_quotes = false;
  for (char c : field)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs_quotes = true;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable to_table(const ExperimentReport& rep) {
  CsvTable t;
  t.columns = rep.columns;
  t.rows.reserve(rep.rows.size());
  for (const auto& row : rep.rows) {
    if (row.size() != rep.columns.size())
      throw std::runtime_error("report row width does not match its header");
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(format_double(v));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::string render_csv(const CsvTable& table, const Provenance& prov,
                       const ExperimentReport* rep) {
  std::string out;
  out += "# restlab ";
  out += kArtifactVersion;
  out += "\n# experiment: " + prov.experiment + "\n";
  out += "# seed: " + std::to_string(prov.seed) + "\n";
  out += "# config: " + prov.config_json + "\n";
  if (rep) {
    for (const auto& f : rep->fitted) {
      out += "# fitted: " + f.name + " = " + format_double(f.value);
      if (f.stderr_ > 0.0) out += " (stderr " + format_double(f.stderr_) + ")";
      out += "\n";
    }
    for (const auto& [k, v] : rep->metadata) out += "# " + k + ": " + v + "\n";
    if (rep->flagged) out += "# flag: " + rep->flag_reason + "\n";
  }
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv row width does not match its header");
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_csv(const ExperimentReport& rep, const Provenance& prov) {
  return render_csv(to_table(rep), prov, &rep);
}

std::string render_gnuplot(const CsvTable& table, const std::string& csv_basename,
                           const PlotSpec& spec) {
  auto col_name = [&](int c) -> std::string {
    if (c < 1 || c > static_cast<int>(table.columns.size()))
      throw std::runtime_error("plot column index out of range");
    return table.columns[c - 1];
  };
  std::string out;
  out += "# companion plot for " + csv_basename + "; run: gnuplot <this file>\n";
  out += "set datafile separator comma\n";
  out += "set key noenhanced top left\n";
  out += "set title \"" + spec.title + "\" noenhanced\n";
  out += "set xlabel \"" + col_name(spec.xcol) + "\" noenhanced\n";
  if (spec.logx) out += "set logscale x\n";
  if (spec.logy) out += "set logscale y\n";
  if (!spec.overlay.empty()) {
    out += "$overlay << EOD\n";
    for (const auto& pt : spec.overlay)
      out += format_double(pt[0]) + " " + format_double(pt[1]) + "\n";
    out += "EOD\n";
  }
  out += "plot ";
  if (!spec.using_expr.empty()) {
    out += "\"" + csv_basename + "\" using " + spec.using_expr + " with points title \"queries\"";
  } else {
    for (size_t i = 0; i < spec.ycols.size(); ++i) {
      if (i) out += ", \\\n     ";
      out += "\"" + csv_basename + "\" using " + std::to_string(spec.xcol) + ":" +
             std::to_string(spec.ycols[i]) + " with linespoints title \"" +
             col_name(spec.ycols[i]) + "\"";
    }
  }
  if (!spec.overlay.empty())
    out += ", \\\n     $overlay using 1:2 with lines dashtype 2 title \"boundary\"";
  out += "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output path: " + path);
  f << content;
  if (!f.good()) throw std::runtime_error("short write to: " + path);
}

}  // namespace restlab

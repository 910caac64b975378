#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "restlab/experiments.hpp"

namespace restlab {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Everything a reader needs to reproduce the file: the experiment name, the
// seed, and the full config echoed as one JSON line (feed it back through
// --config). No timestamps or hostnames — identical configs must produce
// byte-identical files.
struct Provenance {
  std::string experiment;
  std::string config_json;  // canonical (sorted-key) JSON object
  std::uint64_t seed = 0;
};

// Tabular payload with string cells; covers reports whose columns are not all
// numeric (the region classifier emits verdict/reason words).
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180 field quoting: wrap in double quotes when the field contains a
// comma, quote, or newline; embedded quotes are doubled.
std::string csv_escape(const std::string& field);

// %.12g rendering used for every numeric cell (shortest round-trippable-ish
// form that still diffs cleanly in golden files)
std::string format_double(double v);

CsvTable to_table(const ExperimentReport& rep);

// Full file content: '#' provenance block (version, experiment, seed, config
// echo, fitted values, flag line when set), then header, then rows.
std::string render_csv(const CsvTable& table, const Provenance& prov,
                       const ExperimentReport* rep = nullptr);
std::string render_csv(const ExperimentReport& rep, const Provenance& prov);

// Companion gnuplot script. References the CSV by basename (the pair is
// relocatable); never encodes an image format.
struct PlotSpec {
  std::string title;
  int xcol = 1;                 // 1-based CSV column index
  std::vector<int> ycols = {2};
  bool logx = false;
  bool logy = false;
  std::vector<std::array<double, 2>> overlay;  // optional polyline, drawn as a dashed line
  std::string using_expr;  // when set, one scatter clause with this gnuplot `using` expression
};

std::string render_gnuplot(const CsvTable& table, const std::string& csv_basename,
                           const PlotSpec& spec);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace restlab

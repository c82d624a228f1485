// Copyright 2026 The Graphon Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphon/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace graphon {
namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string_view::npos
                                      ? std::string_view::npos
                                      : at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && end == tok.data() + tok.size() && !tok.empty();
}

bool parse_index(std::string_view tok, Index& out) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size() || tok.empty()) {
    return false;
  }
  out = static_cast<Index>(v);
  return true;
}

StepGraphon checked_step(MatrixX<double> m) {
  const Index n = m.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!(v >= -1 && v <= 1)) {
        throw ValidationError("entry (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ") = " + fmt17(v) +
                              " is outside [-1,1]");
      }
      if (j > i && m(i, j) != m(j, i)) {
        throw ValidationError(
            "asymmetric entries at (" + std::to_string(i + 1) + "," +
            std::to_string(j + 1) + ")/(" + std::to_string(j + 1) + "," +
            std::to_string(i + 1) + "): " + fmt17(m(i, j)) + " vs " +
            fmt17(m(j, i)));
      }
    }
  }
  return StepGraphon(std::move(m));
}

StepGraphon parse_csv_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_lines;
  const auto lines = split(text, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = trim(lines[ln]);
    if (line.empty()) continue;
    std::vector<double> row;
    for (std::string_view tok : split(line, ',')) {
      tok = trim(tok);
      double v = 0;
      if (!parse_double(tok, v)) {
        throw FormatError("row " + std::to_string(rows.size() + 1) +
                              ": invalid number '" + std::string(tok) + "'",
                          ln + 1);
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("row " + std::to_string(rows.size() + 1) + " has " +
                            std::to_string(row.size()) + " values, expected " +
                            std::to_string(rows.front().size()),
                        ln + 1);
    }
    rows.push_back(std::move(row));
    row_lines.push_back(ln + 1);
  }
  if (rows.empty()) throw FormatError("empty matrix", 0);
  const Index n = static_cast<Index>(rows.size());
  if (static_cast<Index>(rows.front().size()) != n) {
    throw FormatError("matrix has " + std::to_string(n) + " rows but " +
                          std::to_string(rows.front().size()) + " columns",
                      row_lines.back());
  }
  MatrixX<double> m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return checked_step(std::move(m));
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

StepGraphon parse_json_matrix(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what(),
                      line_of_offset(text, e.byte));
  }
  try {
    const Index n = doc.at("n").get<Index>();
    const json& values = doc.at("values");
    if (n < 1) throw FormatError("\"n\" must be positive", 0);
    if (!values.is_array() || static_cast<Index>(values.size()) != n) {
      throw FormatError("\"values\" must hold n = " + std::to_string(n) +
                            " rows",
                        0);
    }
    MatrixX<double> m(n, n);
    for (Index i = 0; i < n; ++i) {
      const json& row = values[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != n) {
        throw FormatError("row " + std::to_string(i + 1) + " must hold " +
                              std::to_string(n) + " values",
                          0);
      }
      for (Index j = 0; j < n; ++j) {
        m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
      }
    }
    return checked_step(std::move(m));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed matrix JSON: ") + e.what(), 0);
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

MatrixFormat matrix_format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? MatrixFormat::kJson : MatrixFormat::kCsv;
}

StepGraphon parse_step_matrix(std::string_view text, MatrixFormat format) {
  return format == MatrixFormat::kJson ? parse_json_matrix(text)
                                       : parse_csv_matrix(text);
}

StepGraphon load_step_matrix(const std::filesystem::path& path) {
  return load_step_matrix(path, matrix_format_for(path));
}

StepGraphon load_step_matrix(const std::filesystem::path& path,
                             MatrixFormat format) {
  const std::string text = read_text_file(path);
  try {
    return parse_step_matrix(text, format);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.line());
  }
}

std::string format_step_matrix(const MatrixX<double>& values,
                               MatrixFormat format) {
  std::string out;
  if (format == MatrixFormat::kCsv) {
    for (Index i = 0; i < values.rows(); ++i) {
      for (Index j = 0; j < values.cols(); ++j) {
        if (j) out += ",";
        out += fmt17(values(i, j));
      }
      out += "\n";
    }
    return out;
  }
  out = "{\"n\": " + std::to_string(values.rows()) + ", \"values\": [\n";
  for (Index i = 0; i < values.rows(); ++i) {
    out += "  [";
    for (Index j = 0; j < values.cols(); ++j) {
      if (j) out += ", ";
      out += fmt17(values(i, j));
    }
    out += i + 1 < values.rows() ? "],\n" : "]\n";
  }
  return out + "]}\n";
}

void save_step_matrix(const std::filesystem::path& path,
                      const MatrixX<double>& values, MatrixFormat format) {
  write_text_file(path, format_step_matrix(values, format));
}

SimpleGraph parse_graph(std::string_view text) {
  const auto lines = split(text, '\n');
  std::optional<SimpleGraph> g;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    if (!g) {
      Index n = 0;
      if (line.substr(0, 2) != "n=" || !parse_index(trim(line.substr(2)), n) ||
          n < 1) {
        throw FormatError("expected header 'n=<count>'", ln + 1);
      }
      g.emplace(n);
      continue;
    }
    std::vector<std::string_view> toks;
    for (std::string_view t : split(line, ' ')) {
      t = trim(t);
      if (!t.empty()) toks.push_back(t);
    }
    Index u = 0;
    Index v = 0;
    if (toks.size() != 2 || !parse_index(toks[0], u) ||
        !parse_index(toks[1], v)) {
      throw FormatError("expected 'u v', got '" + std::string(line) + "'",
                        ln + 1);
    }
    try {
      g->add_edge(u, v);
    } catch (const GraphError& e) {
      throw GraphError(e.kind(), std::string(e.what()) + " (line " +
                                     std::to_string(ln + 1) + ")");
    }
  }
  if (!g) throw FormatError("missing header 'n=<count>'", 0);
  return *std::move(g);
}

SimpleGraph load_graph(const std::filesystem::path& path) {
  return parse_graph(read_text_file(path));
}

std::string format_graph(const SimpleGraph& g) {
  std::string out = "n=" + std::to_string(g.n()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  }
  return out;
}

void save_graph(const std::filesystem::path& path, const SimpleGraph& g) {
  write_text_file(path, format_graph(g));
}

std::string cut_norm_json(const CutNormResult& r) {
  const json doc = {{"value", r.value},
                    {"exact", r.exact},
                    {"rows", r.rows},
                    {"cols", r.cols}};
  return doc.dump(2) + "\n";
}

std::string validation_json(const ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"x", v.x},
                          {"y", v.y},
                          {"value", std::isfinite(v.value) ? json(v.value)
                                                           : json(nullptr)},
                          {"reason", v.reason}});
  }
  const json doc = {{"ok", r.ok()},
                    {"points", r.points},
                    {"max_asymmetry", r.max_asymmetry},
                    {"min_value", r.min_value},
                    {"max_value", r.max_value},
                    {"asymmetric", r.asymmetry_count},
                    {"out_of_range", r.range_count},
                    {"evaluation_errors", r.eval_error_count},
                    {"violations", std::move(violations)}};
  return doc.dump(2) + "\n";
}

GraphonSource parse_builtin_source(std::string_view text) {
  GraphonSource s;
  s.kind = GraphonSource::Kind::kBuiltin;
  const auto colon = text.find(':');
  s.builtin = std::string(trim(text.substr(0, colon)));
  if (colon != std::string_view::npos) {
    for (std::string_view tok : split(text.substr(colon + 1), ',')) {
      double v = 0;
      if (!parse_double(trim(tok), v)) {
        throw DomainError("invalid builtin parameter '" + std::string(tok) +
                          "'");
      }
      s.params.push_back(v);
    }
  }
  return s;
}

GraphonSpec make_graphon(const GraphonSource& source) {
  switch (source.kind) {
    case GraphonSource::Kind::kBuiltin:
      return GraphonSpec::builtin(source.builtin, source.params);
    case GraphonSource::Kind::kExpression: {
      if (source.symmetrize) {
        return symmetrize(expr::parse_expression(source.expression),
                          source.clamp);
      }
      return GraphonSpec::expression(source.expression, source.clamp);
    }
    case GraphonSource::Kind::kStepFile:
      return GraphonSpec::step(load_step_matrix(source.step_path),
                               source.step_path.filename().string());
  }
  throw DomainError("unknown graphon source");
}

ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid config JSON: ") + e.what(),
                      line_of_offset(json_text, e.byte));
  }
  if (!doc.is_object()) throw FormatError("config must be a JSON object", 0);

  ExperimentConfig cfg;
  try {
    int sources = 0;
    if (doc.contains("expr")) {
      ++sources;
      GraphonSource s;
      s.kind = GraphonSource::Kind::kExpression;
      s.expression = doc["expr"].get<std::string>();
      cfg.graphon = s;
    }
    if (doc.contains("builtin")) {
      ++sources;
      GraphonSource s = parse_builtin_source(doc["builtin"].get<std::string>());
      if (doc.contains("params")) {
        s.params = doc["params"].get<std::vector<double>>();
      }
      cfg.graphon = s;
    }
    if (doc.contains("step")) {
      ++sources;
      GraphonSource s;
      s.kind = GraphonSource::Kind::kStepFile;
      s.step_path = doc["step"].get<std::string>();
      if (s.step_path.is_relative()) s.step_path = base_dir / s.step_path;
      if (!std::filesystem::exists(s.step_path)) {
        throw IoError("step file '" + s.step_path.string() +
                      "' does not exist");
      }
      cfg.graphon = s;
    }
    if (sources > 1) {
      throw DomainError(
          "config names more than one graphon source (expr/builtin/step)");
    }
    if (cfg.graphon) {
      cfg.graphon->clamp = doc.value("clamp", false);
      cfg.graphon->symmetrize = doc.value("symmetrize", false);
    }
    if (doc.contains("n")) cfg.n = doc["n"].get<Index>();
    if (doc.contains("ns")) cfg.ns = doc["ns"].get<std::vector<Index>>();
    if (doc.contains("k")) cfg.k = doc["k"].get<int>();
    if (doc.contains("draws")) cfg.draws = doc["draws"].get<Index>();
    if (doc.contains("p")) cfg.p = doc["p"].get<double>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("restarts")) cfg.restarts = doc["restarts"].get<int>();
    if (doc.contains("threads")) cfg.threads = doc["threads"].get<unsigned>();
    if (doc.contains("grid")) {
      cfg.quadrature.base_grid = doc["grid"].get<Index>();
      cfg.quadrature_set = true;
    }
    if (doc.contains("max_refinements")) {
      cfg.quadrature.max_refinements = doc["max_refinements"].get<int>();
      cfg.quadrature_set = true;
    }
    if (doc.contains("tol")) {
      cfg.quadrature.tol = doc["tol"].get<double>();
      cfg.quadrature_set = true;
    }
    if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
    if (doc.contains("format")) {
      const json& f = doc["format"];
      if (f.is_array()) {
        cfg.formats = f.get<std::vector<std::string>>();
      } else {
        for (std::string_view tok : split(f.get<std::string>(), ',')) {
          cfg.formats.emplace_back(trim(tok));
        }
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed config: ") + e.what(), 0);
  }
  cfg.quadrature.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.parent_path());
}

std::filesystem::path resolve_output_path(const std::filesystem::path& path) {
  if (path.is_absolute()) return path;
  if (const char* dir = std::getenv("GRAPHON_LAB_OUT"); dir && *dir) {
    return std::filesystem::path(dir) / path;
  }
  return path;
}

}  // namespace graphon

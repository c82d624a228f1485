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

#ifndef GRAPHON_IO_HPP_
#define GRAPHON_IO_HPP_

// File formats.
//
// Step matrices: CSV with n rows of n comma-separated decimals, or JSON
// {"n": n, "values": [[...], ...]}. Decimals are written with 17
// significant digits, which round-trips every double.
//
// Graphs: a header line "n=<count>" followed by one "u v" line per edge,
// vertices 0-based.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphon/core.hpp"
#include "graphon/norms.hpp"
#include "graphon/quadrature.hpp"

namespace graphon {

enum class MatrixFormat { kCsv, kJson };

// By extension: ".json" is JSON, anything else CSV.
MatrixFormat matrix_format_for(const std::filesystem::path& path);

// Signed kernels are accepted (entries in [-1,1]); symmetry is required.
// Errors: FormatError with a line number, ValidationError for asymmetric or
// out-of-range entries (1-based indices in the message).
StepGraphon parse_step_matrix(std::string_view text, MatrixFormat format);
StepGraphon load_step_matrix(const std::filesystem::path& path);
StepGraphon load_step_matrix(const std::filesystem::path& path,
                             MatrixFormat format);

std::string format_step_matrix(const MatrixX<double>& values,
                               MatrixFormat format);
void save_step_matrix(const std::filesystem::path& path,
                      const MatrixX<double>& values, MatrixFormat format);

// Errors: FormatError for malformed lines, GraphError (self-loop, duplicate
// edge, vertex out of range) with the line number in the message.
SimpleGraph parse_graph(std::string_view text);
SimpleGraph load_graph(const std::filesystem::path& path);
std::string format_graph(const SimpleGraph& g);
void save_graph(const std::filesystem::path& path, const SimpleGraph& g);

std::string cut_norm_json(const CutNormResult& r);
std::string validation_json(const ValidationReport& r);

// Where a graphon comes from in a config file or on the command line.
struct GraphonSource {
  enum class Kind { kBuiltin, kExpression, kStepFile };
  Kind kind = Kind::kBuiltin;
  std::string builtin;  // catalog name
  std::vector<double> params;
  std::string expression;
  bool clamp = false;
  bool symmetrize = false;
  std::filesystem::path step_path;
};

// "name" or "name:p1,p2" (e.g. "constant:0.5").
GraphonSource parse_builtin_source(std::string_view text);

GraphonSpec make_graphon(const GraphonSource& source);

// JSON config mirroring the command-line flags:
//   {"expr": "x*y"} | {"builtin": "constant:0.5"} | {"step": "path.csv"},
//   "clamp", "symmetrize", "n", "ns", "k", "draws", "p", "seed", "grid",
//   "max_refinements", "tol", "restarts", "threads", "out", "format".
struct ExperimentConfig {
  std::optional<GraphonSource> graphon;
  std::optional<Index> n;
  std::vector<Index> ns;
  std::optional<int> k;
  std::optional<Index> draws;
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<unsigned> threads;
  QuadratureSpec quadrature;
  bool quadrature_set = false;
  std::optional<std::string> out;
  std::vector<std::string> formats;
};

// Relative step paths are resolved against base_dir. Throws if more than one
// graphon source is given or a referenced file does not exist.
ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

// Relative output paths are placed under $GRAPHON_LAB_OUT when it is set.
std::filesystem::path resolve_output_path(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace graphon

#endif  // GRAPHON_IO_HPP_

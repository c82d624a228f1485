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

#include <cstdlib>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "graphon/io.hpp"
#include "graphon/sampling.hpp"
#include "json.hpp"

namespace graphon {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "graphon_lab_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

template <typename E>
std::string message_of(auto&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

TEST_CASE("matrix loading examples") {
  const auto s = parse_step_matrix("0,1\n1,0", MatrixFormat::kCsv);
  CHECK(s.values() == (MatrixX<double>(2, 2) << 0, 1, 1, 0).finished());

  const std::string asym = message_of<ValidationError>(
      [] { (void)parse_step_matrix("0,1\n0,0", MatrixFormat::kCsv); });
  CHECK(asym.find("(1,2)/(2,1)") != std::string::npos);

  try {
    (void)parse_step_matrix("0,1\n1\n", MatrixFormat::kCsv);
    FAIL("accepted ragged rows");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("matrix parser diagnostics") {
  CHECK(message_of<ValidationError>([] {
          (void)parse_step_matrix("0,2\n2,0", MatrixFormat::kCsv);
        }).find("(1,2)") != std::string::npos);
  try {
    (void)parse_step_matrix("0,1\n1,abc\n", MatrixFormat::kCsv);
    FAIL("accepted");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("abc") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_step_matrix("0,1,0\n1,0,0\n", MatrixFormat::kCsv),
                  FormatError);
  CHECK_THROWS_AS((void)parse_step_matrix("\n\n", MatrixFormat::kCsv),
                  FormatError);
  CHECK_THROWS_AS((void)parse_step_matrix("{\"n\": 2, \"values\": [[0,1]]}",
                                          MatrixFormat::kJson),
                  FormatError);
  try {
    (void)parse_step_matrix("{\n\"n\": 2,\n\"values\": [[0,1],[1,0]\n",
                            MatrixFormat::kJson);
    FAIL("accepted");
  } catch (const FormatError& e) {
    CHECK(e.line() >= 3);
  }
  CHECK_THROWS_AS((void)parse_step_matrix(
                      "{\"n\": 2, \"values\": [[0,1],[0.5,0]]}",
                      MatrixFormat::kJson),
                  ValidationError);
  // Signed differences are representable.
  CHECK_NOTHROW((void)parse_step_matrix("-0.5,0.5\n0.5,-1", MatrixFormat::kCsv));
  CHECK_NOTHROW((void)parse_step_matrix(" 0 , 1 \r\n 1 , 0 \r\n", MatrixFormat::kCsv));
}

TEST_CASE("matrix formats round-trip bit for bit") {
  const fs::path dir = scratch_dir("matrix");
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (Index n : {1, 3, 7}) {
    MatrixX<double> m(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(gen);
    }
    m(0, 0) = 1.0 / 3;
    for (auto f : {MatrixFormat::kCsv, MatrixFormat::kJson}) {
      CHECK(parse_step_matrix(format_step_matrix(m, f), f).values() == m);
    }
    save_step_matrix(dir / "m.csv", m, MatrixFormat::kCsv);
    save_step_matrix(dir / "m.json", m, MatrixFormat::kJson);
    CHECK(load_step_matrix(dir / "m.csv").values() == m);
    CHECK(load_step_matrix(dir / "m.json").values() == m);
  }
  CHECK(matrix_format_for("a/b.json") == MatrixFormat::kJson);
  CHECK(matrix_format_for("a/b.csv") == MatrixFormat::kCsv);
  CHECK_THROWS_AS((void)load_step_matrix(dir / "missing.csv"), IoError);
}

TEST_CASE("graph files") {
  const fs::path dir = scratch_dir("graph");
  const SimpleGraph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  save_graph(dir / "k3.txt", k3);
  CHECK(load_graph(dir / "k3.txt") == k3);
  CHECK(format_graph(k3) == "n=3\n0 1\n0 2\n1 2\n");

  auto kind_of = [](const char* text) {
    try {
      (void)parse_graph(text);
    } catch (const GraphError& e) {
      return e.kind();
    }
    FAIL("accepted");
    return GraphError::Kind::kSelfLoop;
  };
  CHECK(kind_of("n=5\n2 2\n") == GraphError::Kind::kSelfLoop);
  CHECK(kind_of("n=5\n0 7\n") == GraphError::Kind::kVertexOutOfRange);
  CHECK(kind_of("n=5\n0 1\n1 0\n") == GraphError::Kind::kDuplicateEdge);
  CHECK(message_of<GraphError>([] { (void)parse_graph("n=5\n0 1\n2 2\n"); })
            .find("line 3") != std::string::npos);
  CHECK_THROWS_AS((void)parse_graph("0 1\n"), FormatError);
  CHECK_THROWS_AS((void)parse_graph("n=3\n0 1 2\n"), FormatError);
  CHECK_THROWS_AS((void)parse_graph("n=3\n0 x\n"), FormatError);
  CHECK_THROWS_AS((void)parse_graph(""), FormatError);
  CHECK(parse_graph("# comment\nn=2\n\n0 1\n").edge_count() == 1);
}

TEST_CASE("sampled graphs round-trip") {
  SamplerConfig cfg;
  cfg.n = 40;
  cfg.seed = 12;
  cfg.graphon = GraphonSpec::builtin("xy");
  const SimpleGraph g = sample_graph(cfg);
  CHECK(parse_graph(format_graph(g)) == g);
}

TEST_CASE("cut norm and validation JSON") {
  CutNormResult r;
  r.value = 0.125;
  r.rows = {0};
  r.cols = {1};
  r.exact = true;
  const auto doc = nlohmann::json::parse(cut_norm_json(r));
  CHECK(doc["value"] == 0.125);
  CHECK(doc["rows"] == nlohmann::json::array({0}));
  CHECK(doc["cols"] == nlohmann::json::array({1}));
  CHECK(doc["exact"] == true);

  const auto v = nlohmann::json::parse(
      validation_json(validate_graphon(GraphonSpec::expression("x"), 50, 1)));
  CHECK(v["ok"] == false);
  CHECK(v["asymmetric"].get<int>() > 0);
  CHECK_FALSE(v["violations"].empty());
}

TEST_CASE("graphon sources") {
  const auto b = parse_builtin_source("constant:0.25");
  CHECK(b.builtin == "constant");
  CHECK(b.params == std::vector<double>{0.25});
  CHECK(make_graphon(b).as_constant() == 0.25);
  CHECK(parse_builtin_source("xy").params.empty());
  CHECK_THROWS_AS((void)parse_builtin_source("constant:abc"), DomainError);

  GraphonSource e;
  e.kind = GraphonSource::Kind::kExpression;
  e.expression = "x";
  e.symmetrize = true;
  CHECK(make_graphon(e)(0.2, 0.6) == doctest::Approx(0.4));
}

TEST_CASE("config parsing") {
  const fs::path dir = scratch_dir("config");
  save_step_matrix(dir / "s.csv",
                   (MatrixX<double>(2, 2) << 0, 1, 1, 0).finished(),
                   MatrixFormat::kCsv);
  const auto c = parse_config(
      R"({"step": "s.csv", "ns": [4, 8], "k": 2, "seed": 9, "grid": 128,
          "tol": 1e-5, "format": "csv,svg", "out": "r"})",
      dir);
  REQUIRE(c.graphon);
  CHECK(c.graphon->kind == GraphonSource::Kind::kStepFile);
  CHECK(c.graphon->step_path == dir / "s.csv");
  CHECK(c.ns == std::vector<Index>{4, 8});
  CHECK(c.k == 2);
  CHECK(c.seed == 9u);
  CHECK(c.quadrature_set);
  CHECK(c.quadrature.base_grid == 128);
  CHECK(c.quadrature.tol == 1e-5);
  CHECK(c.formats == std::vector<std::string>{"csv", "svg"});
  CHECK(c.out == "r");

  const auto e = parse_config(R"({"expr": "x*y", "clamp": true,
                                  "format": ["json"]})", dir);
  CHECK(e.graphon->expression == "x*y");
  CHECK(e.graphon->clamp);
  CHECK(e.formats == std::vector<std::string>{"json"});

  CHECK_THROWS_AS((void)parse_config(R"({"expr": "x", "builtin": "xy"})", dir),
                  DomainError);
  CHECK_THROWS_AS((void)parse_config(R"({"step": "missing.csv"})", dir),
                  IoError);
  CHECK_THROWS_AS((void)parse_config("{", dir), FormatError);
  CHECK_THROWS_AS((void)parse_config(R"({"k": "two"})", dir), FormatError);
  CHECK_THROWS_AS((void)parse_config(R"({"grid": 1})", dir), DomainError);

  write_text_file(dir / "c.json", R"({"builtin": "constant:0.5", "n": 3})");
  const auto f = load_config(dir / "c.json");
  CHECK(f.graphon->params == std::vector<double>{0.5});
  CHECK(f.n == 3);
}

TEST_CASE("output directory from the environment") {
  ::unsetenv("GRAPHON_LAB_OUT");
  CHECK(resolve_output_path("a/b.csv") == fs::path("a/b.csv"));
  ::setenv("GRAPHON_LAB_OUT", "/tmp/graphon_out", 1);
  CHECK(resolve_output_path("b.csv") == fs::path("/tmp/graphon_out/b.csv"));
  CHECK(resolve_output_path("/abs/b.csv") == fs::path("/abs/b.csv"));
  ::unsetenv("GRAPHON_LAB_OUT");
}

}  // namespace
}  // namespace graphon

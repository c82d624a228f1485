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

#ifndef GRAPHON_CORE_HPP_
#define GRAPHON_CORE_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphon/expr.hpp"
#include "graphon/quadrature.hpp"
#include "graphon/step.hpp"

namespace graphon {

enum class Builtin {
  kConstant,     // W = p
  kProduct,      // W = x y
  kMinMax,       // W = min(x,y) (1 - max(x,y))
  kOneMinusMax,  // W = 1 - max(x,y)
};

struct BuiltinInfo {
  Builtin id;
  std::string_view name;
  int arity;
  std::optional<double> lipschitz;  // nullopt when not catalogued
};

// Catalog of built-in graphons, in a fixed order.
const std::vector<BuiltinInfo>& builtin_catalog();
const BuiltinInfo& builtin_info(std::string_view name);

enum class GraphonKind {
  kBuiltin,
  kExpression,
  kStep,
  kProduct,     // lazy W o W'
  kDifference,  // W - W', signed
};

// A kernel on [0,1]^2: built-in, expression, step function, or a lazy
// product or difference of other specs. Copies share one immutable node.
class GraphonSpec {
 public:
  struct Node;

  static GraphonSpec builtin(std::string_view name,
                             std::vector<double> params = {});
  static GraphonSpec constant(double p);
  static GraphonSpec expression(std::string_view source, bool clamp = false);
  static GraphonSpec expression(expr::Expr ast, bool clamp = false,
                                std::string label = {});
  static GraphonSpec symmetrized_expression(expr::Expr ast, bool clamp);
  static GraphonSpec step(StepGraphon s, std::string label = "step");
  static GraphonSpec step_kernel(StepKernel s, std::string label = "kernel");
  static GraphonSpec product(GraphonSpec a, GraphonSpec b,
                             QuadratureSpec q = {});
  static GraphonSpec difference(GraphonSpec a, GraphonSpec b);

  GraphonKind kind() const;
  const std::string& label() const;
  GraphonSpec relabeled(std::string label) const;

  // Unchecked pointwise value. Product nodes integrate over z with the
  // refinement policy of their QuadratureSpec.
  double operator()(double x, double y) const;

  std::optional<double> as_constant() const;
  std::optional<Builtin> builtin_id() const;
  const std::vector<double>& builtin_params() const;
  // Exact step representation when one exists: steps, constants (1x1) and
  // products/differences of step-representable specs.
  std::optional<StepKernel> as_step() const;
  // Least common multiple of the grids of all step parts, if any.
  std::optional<Index> step_resolution() const;
  // True for differences (values in [-1,1]); proper graphons are in [0,1].
  bool is_signed() const;
  // Symmetry known by construction (not verified pointwise).
  bool known_symmetric() const;
  // Whether evaluation clamps to [0,1].
  bool clamped() const;

  // Operands of product and difference nodes; throw for other kinds.
  const GraphonSpec& lhs() const;
  const GraphonSpec& rhs() const;
  const QuadratureSpec& product_quadrature() const;
  // Parsed expression of expression nodes; throws for other kinds.
  const expr::Expr& ast() const;
  bool symmetrized() const;
  // Identity of the base of a product power chain (the node itself for
  // non-products). Products of two specs with the same base are symmetric.
  const void* power_base() const;

 private:
  explicit GraphonSpec(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// W(x, y) with a domain check; the step convention is that of block_index.
double evaluate(const GraphonSpec& w, double x, double y);

struct Edge {
  Index u;
  Index v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on vertices 0..n-1.
class SimpleGraph {
 public:
  explicit SimpleGraph(Index n);
  SimpleGraph(Index n, const std::vector<Edge>& edges);

  // Throws GraphError on self-loops, duplicates and out-of-range vertices.
  void add_edge(Index u, Index v);
  bool has_edge(Index u, Index v) const;

  Index n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Normalized (u < v), in lexicographic order.
  const std::set<Edge>& edges() const { return edges_; }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  Index n_;
  std::set<Edge> edges_;
};

// One latent coordinate per vertex. When stratified, xs[i] lies in the i-th
// block [i/n, (i+1)/n) of the uniform grid.
class LatentPoints {
 public:
  LatentPoints(std::vector<double> xs, bool stratified);

  Index n() const { return static_cast<Index>(xs_.size()); }
  const std::vector<double>& xs() const { return xs_; }
  bool stratified() const { return stratified_; }

  friend bool operator==(const LatentPoints&, const LatentPoints&) = default;

 private:
  std::vector<double> xs_;
  bool stratified_;
};

// W_G: the step graphon whose blocks are the adjacency matrix of g.
StepGraphon canonical_graphon(const SimpleGraph& g);

// Inverse of canonical_graphon on 0/1 matrices with zero diagonal.
SimpleGraph graph_from_canonical(const StepGraphon& s);

struct Violation {
  double x;
  double y;
  double value;
  std::string reason;
};

struct ValidationReport {
  Index points = 0;
  double max_asymmetry = 0;
  double min_value = 0;
  double max_value = 0;
  std::size_t asymmetry_count = 0;
  std::size_t range_count = 0;
  std::size_t eval_error_count = 0;
  std::vector<Violation> violations;  // first few offenders

  bool ok() const {
    return asymmetry_count == 0 && range_count == 0 && eval_error_count == 0;
  }
  std::string summary() const;
};

inline constexpr double kSymmetryTolerance = 1e-12;

// Checks range and symmetry at the four corners plus `samples` points of a
// randomly shifted low-discrepancy (R2) sequence.
ValidationReport validate_graphon(const GraphonSpec& w, Index samples,
                                  std::uint64_t seed);

// Throws ValidationError listing the offending points.
void require_valid(const ValidationReport& report);

}  // namespace graphon

#endif  // GRAPHON_CORE_HPP_

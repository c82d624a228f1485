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

#include "graphon/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "graphon/error.hpp"
#include "graphon/random.hpp"

namespace graphon {

struct GraphonSpec::Node {
  GraphonKind kind;
  std::string label;

  Builtin builtin = Builtin::kConstant;
  std::vector<double> params;

  expr::Expr ast;
  bool clamp = false;
  bool symmetrized = false;

  // Step nodes, and the exact materialization of product/difference nodes
  // whose operands are step-representable.
  std::optional<StepKernel> step;
  bool symmetric = false;

  std::optional<GraphonSpec> lhs;
  std::optional<GraphonSpec> rhs;
  QuadratureSpec quadrature;
  const void* power_base = nullptr;
};

namespace {

const std::vector<BuiltinInfo> kCatalog = {
    {Builtin::kConstant, "constant", 1, 0.0},
    {Builtin::kProduct, "xy", 0, 1.0},
    {Builtin::kMinMax, "minmax", 0, std::nullopt},
    {Builtin::kOneMinusMax, "one_minus_max", 0, 1.0},
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double eval_builtin(Builtin id, const std::vector<double>& params, double x,
                    double y) {
  switch (id) {
    case Builtin::kConstant:
      return params[0];
    case Builtin::kProduct:
      return x * y;
    case Builtin::kMinMax:
      return std::min(x, y) * (1 - std::max(x, y));
    case Builtin::kOneMinusMax:
      return 1 - std::max(x, y);
  }
  return 0;
}

// The same step function written on a grid of size n.
StepKernel on_grid(const StepKernel& s, Index n) {
  return s.n() == n ? s : s.refined(n / s.n());
}

}  // namespace

const std::vector<BuiltinInfo>& builtin_catalog() { return kCatalog; }

const BuiltinInfo& builtin_info(std::string_view name) {
  for (const auto& info : kCatalog) {
    if (info.name == name) return info;
  }
  std::string known;
  for (const auto& info : kCatalog) {
    known += (known.empty() ? "" : ", ") + std::string(info.name);
  }
  throw DomainError("unknown builtin graphon '" + std::string(name) +
                    "' (known: " + known + ")");
}

GraphonSpec GraphonSpec::builtin(std::string_view name,
                                 std::vector<double> params) {
  const BuiltinInfo& info = builtin_info(name);
  if (static_cast<int>(params.size()) != info.arity) {
    throw DomainError("builtin '" + std::string(name) + "' takes " +
                      std::to_string(info.arity) + " parameter(s)");
  }
  auto node = std::make_shared<Node>();
  node->kind = GraphonKind::kBuiltin;
  node->builtin = info.id;
  node->symmetric = true;
  switch (info.id) {
    case Builtin::kConstant:
      if (!(params[0] >= 0 && params[0] <= 1)) {
        throw DomainError("constant graphon value must lie in [0,1]");
      }
      node->label = "constant(" + format_number(params[0]) + ")";
      break;
    case Builtin::kProduct:
      node->label = "x*y";
      break;
    case Builtin::kMinMax:
      node->label = "min(x,y)*(1-max(x,y))";
      break;
    case Builtin::kOneMinusMax:
      node->label = "1-max(x,y)";
      break;
  }
  node->params = std::move(params);
  return GraphonSpec(std::move(node));
}

GraphonSpec GraphonSpec::constant(double p) { return builtin("constant", {p}); }

GraphonSpec GraphonSpec::expression(std::string_view source, bool clamp) {
  return expression(expr::parse_expression(source), clamp,
                    std::string(source));
}

GraphonSpec GraphonSpec::expression(expr::Expr ast, bool clamp,
                                    std::string label) {
  auto node = std::make_shared<Node>();
  node->kind = GraphonKind::kExpression;
  node->label = label.empty() ? expr::print_expression(ast) : std::move(label);
  node->ast = std::move(ast);
  node->clamp = clamp;
  return GraphonSpec(std::move(node));
}

GraphonSpec GraphonSpec::symmetrized_expression(expr::Expr ast, bool clamp) {
  auto node = std::make_shared<Node>();
  node->kind = GraphonKind::kExpression;
  node->label = "sym(" + expr::print_expression(ast) + ")";
  node->ast = std::move(ast);
  node->clamp = clamp;
  node->symmetrized = true;
  node->symmetric = true;
  return GraphonSpec(std::move(node));
}

GraphonSpec GraphonSpec::step(StepGraphon s, std::string label) {
  auto node = std::make_shared<Node>();
  node->kind = GraphonKind::kStep;
  node->label = std::move(label);
  node->step = std::move(s);
  node->symmetric = true;
  return GraphonSpec(std::move(node));
}

GraphonSpec GraphonSpec::step_kernel(StepKernel s, std::string label) {
  auto node = std::make_shared<Node>();
  node->kind = GraphonKind::kStep;
  node->label = std::move(label);
  node->symmetric = s.is_symmetric();
  node->step = std::move(s);
  return GraphonSpec(std::move(node));
}

GraphonSpec GraphonSpec::product(GraphonSpec a, GraphonSpec b,
                                 QuadratureSpec q) {
  q.validate();
  auto node = std::make_shared<Node>();
  node->kind = GraphonKind::kProduct;
  node->label = "prod(" + a.label() + "," + b.label() + ")";
  node->quadrature = q;
  node->symmetric = a.known_symmetric() && b.known_symmetric() &&
                    a.power_base() == b.power_base();
  node->power_base = node->symmetric ? a.power_base() : nullptr;
  auto sa = a.as_step();
  auto sb = b.as_step();
  if (sa && sb) {
    const Index n = lcm_index(sa->n(), sb->n());
    MatrixX<double> m =
        step_product(on_grid(*sa, n).values(), on_grid(*sb, n).values());
    if (node->symmetric) {
      mirror_upper(m);
    } else {
      node->symmetric = m == m.transpose();
    }
    node->step = StepKernel(std::move(m));
  }
  node->lhs = std::move(a);
  node->rhs = std::move(b);
  return GraphonSpec(std::move(node));
}

GraphonSpec GraphonSpec::difference(GraphonSpec a, GraphonSpec b) {
  auto node = std::make_shared<Node>();
  node->kind = GraphonKind::kDifference;
  node->label = "diff(" + a.label() + "," + b.label() + ")";
  node->symmetric = a.known_symmetric() && b.known_symmetric();
  auto sa = a.as_step();
  auto sb = b.as_step();
  if (sa && sb) {
    const Index n = lcm_index(sa->n(), sb->n());
    node->step =
        StepKernel(on_grid(*sa, n).values() - on_grid(*sb, n).values());
  }
  node->lhs = std::move(a);
  node->rhs = std::move(b);
  return GraphonSpec(std::move(node));
}

GraphonKind GraphonSpec::kind() const { return node_->kind; }
const std::string& GraphonSpec::label() const { return node_->label; }

GraphonSpec GraphonSpec::relabeled(std::string label) const {
  auto node = std::make_shared<Node>(*node_);
  node->label = std::move(label);
  if (node->power_base == node_.get()) node->power_base = node.get();
  return GraphonSpec(std::move(node));
}

double GraphonSpec::operator()(double x, double y) const {
  const Node& n = *node_;
  switch (n.kind) {
    case GraphonKind::kBuiltin:
      return eval_builtin(n.builtin, n.params, x, y);
    case GraphonKind::kExpression: {
      double v = n.symmetrized
                     ? (expr::eval_ast(n.ast, x, y) + expr::eval_ast(n.ast, y, x)) / 2
                     : expr::eval_ast(n.ast, x, y);
      if (n.clamp) v = std::clamp(v, 0.0, 1.0);
      return v;
    }
    case GraphonKind::kStep:
      return n.step->at(x, y);
    case GraphonKind::kProduct: {
      if (n.step) return n.step->at(x, y);
      const GraphonSpec& a = *n.lhs;
      const GraphonSpec& b = *n.rhs;
      const Index segments =
          std::lcm(a.step_resolution().value_or(1), b.step_resolution().value_or(1));
      auto integrand = [&](double z) { return a(x, z) * b(z, y); };
      Index per_segment = std::max<Index>(1, n.quadrature.base_grid / segments);
      return refine_until_converged(
                 [&](Index m) { return midpoint_sum_1d(integrand, segments, m); },
                 per_segment, n.quadrature, "product integral")
          .value;
    }
    case GraphonKind::kDifference:
      if (n.step) return n.step->at(x, y);
      return (*n.lhs)(x, y) - (*n.rhs)(x, y);
  }
  return 0;
}

std::optional<double> GraphonSpec::as_constant() const {
  if (node_->kind == GraphonKind::kBuiltin &&
      node_->builtin == Builtin::kConstant) {
    return node_->params[0];
  }
  return std::nullopt;
}

std::optional<Builtin> GraphonSpec::builtin_id() const {
  if (node_->kind == GraphonKind::kBuiltin) return node_->builtin;
  return std::nullopt;
}

const std::vector<double>& GraphonSpec::builtin_params() const {
  return node_->params;
}

std::optional<StepKernel> GraphonSpec::as_step() const {
  if (node_->step) return node_->step;
  if (auto p = as_constant()) return StepKernel::constant(1, *p);
  return std::nullopt;
}

std::optional<Index> GraphonSpec::step_resolution() const {
  const Node& n = *node_;
  switch (n.kind) {
    case GraphonKind::kStep:
      return n.step->n();
    case GraphonKind::kProduct:
    case GraphonKind::kDifference: {
      auto a = n.lhs->step_resolution();
      auto b = n.rhs->step_resolution();
      if (!a && !b) return std::nullopt;
      return std::lcm(a.value_or(1), b.value_or(1));
    }
    default:
      return std::nullopt;
  }
}

bool GraphonSpec::is_signed() const {
  const Node& n = *node_;
  switch (n.kind) {
    case GraphonKind::kDifference:
      return true;
    case GraphonKind::kStep:
      return !n.step->is_proper();
    case GraphonKind::kProduct:
      return n.lhs->is_signed() || n.rhs->is_signed();
    default:
      return false;
  }
}

bool GraphonSpec::known_symmetric() const { return node_->symmetric; }
bool GraphonSpec::clamped() const { return node_->clamp; }

const GraphonSpec& GraphonSpec::lhs() const {
  if (!node_->lhs) throw DomainError("'" + label() + "' has no operands");
  return *node_->lhs;
}

const GraphonSpec& GraphonSpec::rhs() const {
  if (!node_->rhs) throw DomainError("'" + label() + "' has no operands");
  return *node_->rhs;
}

const QuadratureSpec& GraphonSpec::product_quadrature() const {
  return node_->quadrature;
}

const expr::Expr& GraphonSpec::ast() const {
  if (node_->kind != GraphonKind::kExpression) {
    throw DomainError("'" + label() + "' is not an expression");
  }
  return node_->ast;
}

bool GraphonSpec::symmetrized() const { return node_->symmetrized; }

const void* GraphonSpec::power_base() const {
  return node_->power_base ? node_->power_base : node_.get();
}

double evaluate(const GraphonSpec& w, double x, double y) {
  if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1)) {
    throw DomainError("point (" + format_number(x) + ", " + format_number(y) +
                      ") is outside the unit square");
  }
  return w(x, y);
}

SimpleGraph::SimpleGraph(Index n) : n_(n) {
  if (n < 1) throw DomainError("graph needs at least one vertex");
}

SimpleGraph::SimpleGraph(Index n, const std::vector<Edge>& edges)
    : SimpleGraph(n) {
  for (const auto& e : edges) add_edge(e.u, e.v);
}

void SimpleGraph::add_edge(Index u, Index v) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw GraphError(GraphError::Kind::kVertexOutOfRange,
                     "edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") references a vertex outside 0.." +
                         std::to_string(n_ - 1));
  }
  if (u == v) {
    throw GraphError(GraphError::Kind::kSelfLoop,
                     "self-loop at vertex " + std::to_string(u));
  }
  if (!edges_.insert({std::min(u, v), std::max(u, v)}).second) {
    throw GraphError(GraphError::Kind::kDuplicateEdge,
                     "duplicate edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ")");
  }
}

bool SimpleGraph::has_edge(Index u, Index v) const {
  return edges_.count({std::min(u, v), std::max(u, v)}) > 0;
}

LatentPoints::LatentPoints(std::vector<double> xs, bool stratified)
    : xs_(std::move(xs)), stratified_(stratified) {
  const double n = static_cast<double>(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const double x = xs_[i];
    const bool in_unit = x >= 0 && x < 1;
    const bool in_stratum = x >= static_cast<double>(i) / n &&
                            x < static_cast<double>(i + 1) / n;
    if (!in_unit || (stratified_ && !in_stratum)) {
      throw InvariantError("latent point " + std::to_string(i) + " = " +
                           format_number(x) + " is outside its stratum");
    }
  }
}

StepGraphon canonical_graphon(const SimpleGraph& g) {
  MatrixX<double> s = MatrixX<double>::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) {
    s(e.u, e.v) = 1;
    s(e.v, e.u) = 1;
  }
  return StepGraphon(std::move(s));
}

SimpleGraph graph_from_canonical(const StepGraphon& s) {
  SimpleGraph g(s.n());
  for (Index i = 0; i < s.n(); ++i) {
    if (s(i, i) != 0) {
      throw InvariantError("canonical graphon has a nonzero diagonal block " +
                           std::to_string(i));
    }
    for (Index j = i + 1; j < s.n(); ++j) {
      if (s(i, j) == 1) {
        g.add_edge(i, j);
      } else if (s(i, j) != 0) {
        throw InvariantError("canonical graphon entry (" + std::to_string(i) +
                             "," + std::to_string(j) + ") is not 0/1");
      }
    }
  }
  return g;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << (ok() ? "pass" : "fail") << ": " << points << " points, max asymmetry "
      << max_asymmetry << ", range [" << min_value << ", " << max_value << "]";
  if (asymmetry_count) out << ", " << asymmetry_count << " asymmetric";
  if (range_count) out << ", " << range_count << " out of range";
  if (eval_error_count) out << ", " << eval_error_count << " evaluation errors";
  for (const auto& v : violations) {
    out << "\n  (" << format_number(v.x) << ", " << format_number(v.y)
        << "): " << v.reason;
  }
  return out.str();
}

ValidationReport validate_graphon(const GraphonSpec& w, Index samples,
                                  std::uint64_t seed) {
  if (samples < 1) throw DomainError("validation needs at least one sample");
  constexpr std::size_t kMaxListed = 10;
  // R2 sequence: additive recurrence on the inverse powers of the plastic
  // number, shifted by a random offset.
  constexpr double kPlastic = 1.32471795724474602596;
  constexpr double kAlpha1 = 1.0 / kPlastic;
  constexpr double kAlpha2 = 1.0 / (kPlastic * kPlastic);
  const CounterRng rng(seed, Stream::kValidation);
  const double shift1 = rng.uniform(0);
  const double shift2 = rng.uniform(1);

  std::vector<std::pair<double, double>> pts = {
      {0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (Index i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i + 1);
    double a = shift1 + t * kAlpha1;
    double b = shift2 + t * kAlpha2;
    pts.emplace_back(a - std::floor(a), b - std::floor(b));
  }

  const double lo = w.is_signed() ? -1.0 : 0.0;
  ValidationReport report;
  report.points = static_cast<Index>(pts.size());
  report.min_value = std::numeric_limits<double>::infinity();
  report.max_value = -std::numeric_limits<double>::infinity();
  auto record = [&](double x, double y, double v, std::string reason) {
    if (report.violations.size() < kMaxListed) {
      report.violations.push_back({x, y, v, std::move(reason)});
    }
  };
  for (const auto& [x, y] : pts) {
    double v1 = 0;
    double v2 = 0;
    try {
      v1 = w(x, y);
      v2 = w(y, x);
    } catch (const Error& e) {
      ++report.eval_error_count;
      record(x, y, std::nan(""), e.what());
      continue;
    }
    for (double v : {v1, v2}) {
      report.min_value = std::min(report.min_value, v);
      report.max_value = std::max(report.max_value, v);
    }
    const double asym = std::abs(v1 - v2);
    if (!(asym <= kSymmetryTolerance)) {
      ++report.asymmetry_count;
      record(x, y, v1, "asymmetric: W(y,x) = " + format_number(v2));
    }
    report.max_asymmetry = std::max(report.max_asymmetry, asym);
    if (!(v1 >= lo && v1 <= 1)) {
      ++report.range_count;
      record(x, y, v1, "value " + format_number(v1) + " outside [" +
                           format_number(lo) + ", 1]");
    }
  }
  return report;
}

void require_valid(const ValidationReport& report) {
  if (!report.ok()) throw ValidationError(report.summary());
}

}  // namespace graphon

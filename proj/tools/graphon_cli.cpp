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

// graphon: command-line front end for the graphon_lab library.

#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphon/algebra.hpp"
#include "graphon/core.hpp"
#include "graphon/experiments.hpp"
#include "graphon/io.hpp"
#include "graphon/norms.hpp"
#include "graphon/sampling.hpp"
#include "json.hpp"

namespace {

using namespace graphon;

struct SourceFlags {
  std::string expr;
  std::string builtin;
  std::string step;
  bool clamp = false;
  bool symmetrize = false;

  bool any() const { return !expr.empty() || !builtin.empty() || !step.empty(); }

  GraphonSource source() const {
    const int count = !expr.empty() + !builtin.empty() + !step.empty();
    if (count > 1) {
      throw DomainError("give exactly one of --graphon-expr, --graphon-builtin "
                        "and --graphon-step");
    }
    GraphonSource s;
    if (!builtin.empty()) {
      s = parse_builtin_source(builtin);
    } else if (!expr.empty()) {
      s.kind = GraphonSource::Kind::kExpression;
      s.expression = expr;
    } else {
      s.kind = GraphonSource::Kind::kStepFile;
      s.step_path = step;
    }
    s.clamp = clamp;
    s.symmetrize = symmetrize;
    return s;
  }
};

struct Options {
  SourceFlags graphon;
  SourceFlags other;  // second operand of product / norm
  std::string config;
  Index n = 0;
  std::vector<Index> ns;
  int k = 1;
  Index draws = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  Index grid = QuadratureSpec{}.base_grid;
  int max_refinements = QuadratureSpec{}.max_refinements;
  double tol = QuadratureSpec{}.tol;
  int restarts = 50;
  unsigned threads = 1;
  std::string out;
  std::string format;
  Index samples = 1000;
  bool iid = false;
  bool timing = false;
  bool l1 = false;
  bool cut = false;

  CLI::App* app = nullptr;
  bool given(const std::string& flag) const {
    const CLI::Option* opt = app->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  }

  QuadratureSpec quadrature() const {
    QuadratureSpec q;
    q.base_grid = grid;
    q.max_refinements = max_refinements;
    q.tol = tol;
    q.validate();
    return q;
  }
};

void add_source_flags(CLI::App* app, SourceFlags& f, const std::string& prefix,
                      const std::string& what) {
  app->add_option("--" + prefix + "-expr", f.expr,
                  what + " as an expression in x and y");
  app->add_option("--" + prefix + "-builtin", f.builtin,
                  what + " from the catalog, e.g. constant:0.5, xy, minmax, "
                         "one_minus_max");
  app->add_option("--" + prefix + "-step", f.step,
                  what + " as a step matrix file (.csv or .json)");
  app->add_flag("--" + prefix + "-clamp", f.clamp,
                "clamp expression values to [0,1]");
  app->add_flag("--" + prefix + "-symmetrize", f.symmetrize,
                "use (f(x,y) + f(y,x)) / 2");
}

void add_common(CLI::App* app, Options& o) {
  add_source_flags(app, o.graphon, "graphon", "graphon");
  app->add_option("--config", o.config, "JSON config file; flags override it");
  app->add_option("--n", o.n, "block / vertex count");
  app->add_option("--k", o.k, "power");
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--grid", o.grid, "quadrature base grid");
  app->add_option("--max-refinements", o.max_refinements,
                  "quadrature grid doublings");
  app->add_option("--tol", o.tol, "quadrature tolerance");
  app->add_option("--threads", o.threads, "worker threads");
  app->add_option("--out", o.out, "output path (stdout when omitted)");
  app->add_option("--format", o.format, "output format(s): csv, json, svg");
}

// Fills options not given on the command line from the config file.
void apply_config(Options& o) {
  if (o.config.empty()) return;
  const ExperimentConfig c = load_config(o.config);
  auto take = [&](const char* flag, auto& dst, const auto& src) {
    if (!o.given(flag) && src) dst = *src;
  };
  take("--n", o.n, c.n);
  take("--k", o.k, c.k);
  take("--draws", o.draws, c.draws);
  take("--p", o.p, c.p);
  take("--seed", o.seed, c.seed);
  take("--restarts", o.restarts, c.restarts);
  take("--threads", o.threads, c.threads);
  take("--out", o.out, c.out);
  if (!o.given("--ns") && !c.ns.empty()) o.ns = c.ns;
  if (c.quadrature_set) {
    if (!o.given("--grid")) o.grid = c.quadrature.base_grid;
    if (!o.given("--max-refinements")) {
      o.max_refinements = c.quadrature.max_refinements;
    }
    if (!o.given("--tol")) o.tol = c.quadrature.tol;
  }
  if (!o.given("--format") && !c.formats.empty()) {
    o.format.clear();
    for (const auto& f : c.formats) o.format += (o.format.empty() ? "" : ",") + f;
  }
  if (!o.graphon.any() && c.graphon) {
    const GraphonSource& s = *c.graphon;
    switch (s.kind) {
      case GraphonSource::Kind::kBuiltin: {
        o.graphon.builtin = s.builtin;
        for (std::size_t i = 0; i < s.params.size(); ++i) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", s.params[i]);
          o.graphon.builtin += (i ? "," : ":") + std::string(buf);
        }
        break;
      }
      case GraphonSource::Kind::kExpression:
        o.graphon.expr = s.expression;
        break;
      case GraphonSource::Kind::kStepFile:
        o.graphon.step = s.step_path.string();
        break;
    }
    if (!o.given("--graphon-clamp")) o.graphon.clamp = s.clamp;
    if (!o.given("--graphon-symmetrize")) o.graphon.symmetrize = s.symmetrize;
  }
}

GraphonSpec require_graphon(const SourceFlags& f, const std::string& prefix) {
  if (!f.any()) {
    throw DomainError("missing graphon: give --" + prefix + "-expr, --" +
                      prefix + "-builtin or --" + prefix + "-step");
  }
  return make_graphon(f.source());
}

Index require_n(const Options& o) {
  if (o.n < 1) throw DomainError("--n must be given and >= 1");
  return o.n;
}

std::vector<std::string> split_formats(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

MatrixFormat matrix_format(const Options& o) {
  if (!o.format.empty()) {
    const auto f = split_formats(o.format);
    if (f.size() != 1 || (f[0] != "csv" && f[0] != "json")) {
      throw DomainError("matrix output format must be csv or json");
    }
    return f[0] == "json" ? MatrixFormat::kJson : MatrixFormat::kCsv;
  }
  return o.out.empty() ? MatrixFormat::kCsv : matrix_format_for(o.out);
}

void emit_text(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const auto resolved = resolve_output_path(path);
  write_text_file(resolved, text);
  std::cerr << "wrote " << resolved.string() << "\n";
}

// "<stem>.se<ext>" next to the main output.
std::filesystem::path sibling(const std::string& out, const std::string& tag) {
  std::filesystem::path p(out);
  return p.parent_path() / (p.stem().string() + "." + tag + p.extension().string());
}

void emit_matrix(const Options& o, const MatrixX<double>& m) {
  emit_text(o.out, format_step_matrix(m, matrix_format(o)));
}

// Materialized products come out exactly; lazy ones as n-block averages.
void emit_product(const Options& o, const ProductGraphon& p) {
  std::cerr << (p.is_graphon ? "graphon" : "kernel") << " " << p.value.label()
            << "\n";
  if (auto s = p.value.as_step(); s && !o.given("--n")) {
    emit_matrix(o, s->values());
  } else {
    emit_matrix(o, discretize_kernel(p.value, require_n(o), o.quadrature())
                       .values());
  }
}

int run_validate(const Options& o) {
  const ValidationReport r =
      validate_graphon(require_graphon(o.graphon, "graphon"), o.samples, o.seed);
  emit_text(o.out, validation_json(r));
  if (!r.ok()) std::cerr << r.summary() << "\n";
  return r.ok() ? 0 : 1;
}

SamplerConfig sampler(const Options& o) {
  SamplerConfig cfg;
  cfg.n = require_n(o);
  cfg.seed = o.seed;
  cfg.graphon = require_graphon(o.graphon, "graphon");
  cfg.iid_latents = o.iid;
  return cfg;
}

int run_sample(const Options& o) {
  emit_text(o.out, format_graph(sample_graph(sampler(o))));
  return 0;
}

int run_expect(const Options& o) {
  const ExpectedGraphon e = expected_graphon(
      require_graphon(o.graphon, "graphon"), require_n(o), o.quadrature());
  emit_matrix(o, e.step.values());
  return 0;
}

int run_mc_expect(const Options& o) {
  if (o.draws < 1) throw DomainError("--draws must be given and >= 1");
  const MonteCarloEstimate mc =
      mc_expected_graphon(sampler(o), o.draws, o.threads);
  const MatrixFormat f = matrix_format(o);
  if (o.out.empty()) {
    std::cout << format_step_matrix(mc.mean.values(), f) << "\n"
              << format_step_matrix(mc.standard_error, f);
  } else {
    emit_text(o.out, format_step_matrix(mc.mean.values(), f));
    emit_text(sibling(o.out, "se"),
              format_step_matrix(mc.standard_error, f));
  }
  return 0;
}

int run_product(const Options& o) {
  const GraphonSpec a = require_graphon(o.graphon, "graphon");
  const GraphonSpec b = o.other.any() ? require_graphon(o.other, "with") : a;
  emit_product(o, product(a, b, o.quadrature()));
  return 0;
}

int run_power(const Options& o) {
  emit_product(o, power(require_graphon(o.graphon, "graphon"), o.k,
                        o.quadrature()));
  return 0;
}

int run_norm(const Options& o) {
  if (o.l1 == o.cut) throw DomainError("give exactly one of --l1 and --cut");
  const QuadratureSpec q = o.quadrature();
  const GraphonSpec a = require_graphon(o.graphon, "graphon");
  const GraphonSpec d =
      o.other.any() ? GraphonSpec::difference(a, require_graphon(o.other, "with"))
                    : a;
  nlohmann::json doc;
  if (o.l1) {
    const QuadratureResult r =
        l1_distance_estimate(d, GraphonSpec::constant(0), q);
    doc = {{"l1", r.value}, {"error_estimate", r.error_estimate},
           {"grid", r.grid}};
    emit_text(o.out, doc.dump(2) + "\n");
    return 0;
  }
  if (auto s = d.as_step()) {
    emit_text(o.out, cut_norm_json(cut_norm(*s, o.restarts, o.seed)));
    return 0;
  }
  const Index m = o.given("--n") ? o.n : 16;
  const CutInterval c = cut_distance_upper_via_discretization(d, m, q);
  doc = {{"discretization_interval", true},
         {"m", m},
         {"lower", c.lower},
         {"upper", c.upper},
         {"center", c.center},
         {"l1_error", c.l1_error},
         {"rows", c.discretized.rows},
         {"cols", c.discretized.cols}};
  emit_text(o.out, doc.dump(2) + "\n");
  return 0;
}

int run_sweep(const Options& o, bool theorem) {
  SweepOptions so;
  so.threads = o.threads;
  so.cut_restarts = o.restarts;
  const ConvergenceReport r =
      theorem ? run_theorem_sweep(require_graphon(o.graphon, "graphon"), o.k,
                                  o.ns, o.quadrature(), o.seed, so)
              : run_counterexample_sweep(o.p, o.ns, o.draws < 1 ? 1 : o.draws,
                                         o.seed, so);
  EmitOptions eo;
  eo.include_timing = o.timing;
  int status = r.complete ? 0 : 2;
  if (!r.complete) std::cerr << "sweep incomplete: " << r.error << "\n";
  if (o.out.empty()) {
    if (r.rows.empty()) throw Error("empty sweep");
    const auto formats = split_formats(o.format.empty() ? "csv" : o.format);
    if (formats.size() != 1 || formats[0] == "svg") {
      throw DomainError("stdout output takes a single csv or json format");
    }
    std::cout << (formats[0] == "json" ? report_json(r, eo) : report_csv(r, eo));
    return status;
  }
  std::set<ReportFormat> formats;
  for (const auto& f : split_formats(o.format.empty() ? "csv,json,svg" : o.format)) {
    formats.insert(parse_report_format(f));
  }
  for (const auto& path :
       emit_report(r, formats, resolve_output_path(o.out), eo)) {
    std::cerr << "wrote " << path.string() << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical graphon toolkit"};
  app.require_subcommand(1);

  Options o;
  o.app = &app;
  auto* validate = app.add_subcommand("validate", "check range and symmetry");
  validate->add_option("--samples", o.samples, "quasi-random test points");
  auto* sample = app.add_subcommand("sample", "sample a graph (edge list)");
  sample->add_flag("--iid", o.iid, "i.i.d. latents instead of stratified");
  auto* expect = app.add_subcommand("expect", "expected graphon E(W_Gn)");
  auto* mc = app.add_subcommand("mc-expect", "Monte-Carlo expected graphon");
  mc->add_option("--draws", o.draws, "number of sampled graphs");
  mc->add_flag("--iid", o.iid, "i.i.d. latents instead of stratified");
  auto* prod = app.add_subcommand("product", "graphon product");
  add_source_flags(prod, o.other, "with", "second factor");
  auto* pow = app.add_subcommand("power", "k-fold graphon power");
  auto* norm = app.add_subcommand("norm", "L1 or cut norm");
  norm->add_flag("--l1", o.l1, "L1 norm");
  norm->add_flag("--cut", o.cut, "cut norm");
  norm->add_option("--restarts", o.restarts, "heuristic restarts for n > 24");
  add_source_flags(norm, o.other, "with", "subtrahend");
  auto* sweep = app.add_subcommand("sweep", "convergence sweeps");
  sweep->require_subcommand(1);
  auto* theorem = sweep->add_subcommand("theorem", "expected-graphon sweep");
  auto* counter = sweep->add_subcommand("counterexample",
                                        "sampled constant-p graphons");
  for (auto* s : {theorem, counter}) {
    add_common(s, o);
    s->add_option("--ns", o.ns, "sizes, strictly increasing")->delimiter(',');
    s->add_option("--restarts", o.restarts, "heuristic restarts for n > 24");
    s->add_flag("--timing", o.timing, "include wall times in reports");
  }
  counter->add_option("--p", o.p, "edge probability");
  counter->add_option("--draws", o.draws, "draws per n");
  for (auto* s : {validate, sample, expect, mc, prod, pow, norm}) {
    add_common(s, o);
  }

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = app.get_subcommands().front();
  bool is_theorem = false;
  if (active == sweep) {
    active = sweep->get_subcommands().front();
    is_theorem = active == theorem;
  }
  o.app = active;

  try {
    apply_config(o);
    if (active == validate) return run_validate(o);
    if (active == sample) return run_sample(o);
    if (active == expect) return run_expect(o);
    if (active == mc) return run_mc_expect(o);
    if (active == prod) return run_product(o);
    if (active == pow) return run_power(o);
    if (active == norm) return run_norm(o);
    return run_sweep(o, is_theorem);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

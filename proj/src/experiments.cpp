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

#include "graphon/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>

#include "graphon/algebra.hpp"
#include "graphon/norms.hpp"
#include "graphon/parallel.hpp"
#include "graphon/random.hpp"
#include "graphon/sampling.hpp"

namespace graphon {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_ns(const std::vector<Index>& ns, Index min_n) {
  if (ns.empty()) throw DomainError("empty sweep");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < min_n) {
      throw DomainError("sweep sizes must be >= " + std::to_string(min_n));
    }
    if (i > 0 && ns[i] <= ns[i - 1]) {
      throw DomainError("sweep sizes must be strictly increasing");
    }
  }
}

// Midpoint samples of the limit kernel, computed once per grid size and
// shared by every n of a sweep.
class LimitGrids {
 public:
  explicit LimitGrids(GraphonSpec limit) : limit_(std::move(limit)) {}

  const GraphonSpec& spec() const { return limit_; }

  std::shared_ptr<const MatrixX<double>> at(Index m) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = grids_[m];
    if (!slot) {
      slot = std::make_shared<const MatrixX<double>>(sample_on_grid(limit_, m));
    }
    return slot;
  }

  // ||p - limit||_1, exact when the limit is a step function.
  double l1_to(const StepKernel& p, const QuadratureSpec& q) {
    if (auto s = limit_.as_step()) return l1_distance(p, *s);
    const Index grid = aligned_grid(limit_, q.base_grid, p.n());
    return refine_until_converged(
               [&](Index m) {
                 const auto lim = at(m);
                 return (refine_blocks(p.values(), m / p.n()) - *lim)
                            .cwiseAbs()
                            .sum() /
                        static_cast<double>(m * m);
               },
               grid, q, "l1 distance to " + limit_.label())
        .value;
  }

 private:
  GraphonSpec limit_;
  std::mutex mutex_;
  std::map<Index, std::shared_ptr<const MatrixX<double>>> grids_;
};

StepKernel symmetric_power(const StepGraphon& s, int k) {
  return power(GraphonSpec::step(s), k).value.as_step().value();
}

}  // namespace

void ConvergenceReport::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    if (i > 0 && r.n <= rows[i - 1].n) {
      throw InvariantError("report rows must be strictly increasing in n");
    }
    for (double d : {r.l1_expected_vs_limit, r.l1_sampled_vs_limit,
                     r.cutnorm_sampled_vs_limit}) {
      if (!(d >= 0)) throw InvariantError("report distances must be >= 0");
    }
  }
}

QuadratureSpec sweep_quadrature(const QuadratureSpec& q,
                                const std::vector<Index>& ns) {
  QuadratureSpec out = q;
  if (!ns.empty()) {
    const Index n_max = *std::max_element(ns.begin(), ns.end());
    out.tol = std::min(q.tol, 0.01 / static_cast<double>(n_max));
  }
  return out;
}

ConvergenceReport run_theorem_sweep(const GraphonSpec& w, int k,
                                    const std::vector<Index>& ns,
                                    const QuadratureSpec& q,
                                    std::uint64_t seed,
                                    const SweepOptions& options) {
  if (k < 1) throw DomainError("sweep needs k >= 1");
  check_ns(ns, 2);
  q.validate();
  const QuadratureSpec qs = sweep_quadrature(q, ns);

  ConvergenceReport report;
  report.kind = SweepKind::kTheorem;
  report.label = w.label();
  report.k = k;
  report.seed = seed;
  report.quadrature = qs;

  LimitGrids limit(power(w, k, qs).value);
  std::vector<SweepRow> rows(ns.size());
  std::vector<std::string> errors(ns.size());

  parallel_for(ns.size(), options.threads, [&](std::size_t idx) {
    const Index n = ns[idx];
    const auto t0 = Clock::now();
    SweepRow row;
    row.n = n;
    try {
      const StepGraphon expected = expected_graphon(w, n, qs).step;
      row.l1_expected_vs_limit = limit.l1_to(symmetric_power(expected, k), qs);

      SamplerConfig cfg;
      cfg.n = n;
      cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(n),
                             Stream::kSweepSeed);
      cfg.graphon = w;
      const StepKernel sampled =
          symmetric_power(canonical_graphon(sample_graph(cfg)), k);
      row.l1_sampled_vs_limit = limit.l1_to(sampled, qs);

      const MatrixX<double> limit_blocks =
          symmetric_cell_averages(limit.spec(), n, qs);
      const StepKernel diff(sampled.values() - limit_blocks);
      const CutNormResult cut = cut_norm(diff, options.cut_restarts, cfg.seed);
      row.cutnorm_sampled_vs_limit = cut.value;
      row.cut_exact = cut.exact;
    } catch (const QuadratureError& e) {
      errors[idx] = "n = " + std::to_string(n) + ": " + e.what();
    }
    row.wall_time = seconds_since(t0);
    rows[idx] = std::move(row);
  });

  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!errors[i].empty()) {
      report.complete = false;
      report.error = errors[i];
      break;
    }
    report.rows.push_back(std::move(rows[i]));
  }
  report.validate();
  return report;
}

ConvergenceReport run_counterexample_sweep(double p,
                                           const std::vector<Index>& ns,
                                           Index draws_per_n,
                                           std::uint64_t seed,
                                           const SweepOptions& options) {
  if (!(p > 0 && p < 1)) throw DomainError("counterexample needs p in (0,1)");
  if (draws_per_n < 1) throw DomainError("counterexample needs draws >= 1");
  check_ns(ns, 1);
  const GraphonSpec w = GraphonSpec::constant(p);

  ConvergenceReport report;
  report.kind = SweepKind::kCounterexample;
  report.label = w.label();
  report.k = 1;
  report.seed = seed;
  report.draws_per_n = draws_per_n;
  report.rows.resize(ns.size());

  parallel_for(ns.size(), options.threads, [&](std::size_t idx) {
    const Index n = ns[idx];
    const auto t0 = Clock::now();
    SweepRow& row = report.rows[idx];
    row.n = n;
    row.l1_expected_vs_limit = l1_distance(expected_graphon(w, n).step,
                                           StepKernel::constant(1, p));
    const std::uint64_t n_seed =
        derive_seed(seed, static_cast<std::uint64_t>(n), Stream::kSweepSeed);
    row.cut_exact = n <= kCutNormExactBudget;
    for (Index d = 0; d < draws_per_n; ++d) {
      SamplerConfig cfg;
      cfg.n = n;
      cfg.seed = draw_seed(n_seed, d);
      cfg.graphon = w;
      const StepGraphon sampled = canonical_graphon(sample_graph(cfg));
      const StepKernel diff(sampled.values().array() - p);
      row.draw_l1.push_back(step_l1_norm(diff.values()));
      row.draw_cut.push_back(
          cut_norm(diff, options.cut_restarts, cfg.seed).value);
    }
    auto mean = [](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    row.l1_sampled_vs_limit = mean(row.draw_l1);
    row.cutnorm_sampled_vs_limit = mean(row.draw_cut);
    row.wall_time = seconds_since(t0);
  });
  report.validate();
  return report;
}

}  // namespace graphon

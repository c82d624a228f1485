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

#ifndef GRAPHON_EXPERIMENTS_HPP_
#define GRAPHON_EXPERIMENTS_HPP_

// Convergence sweeps.
//
// Theorem sweep: e_n = ||E(W_{G_n})^k - W^k||_1 along a list of n. The
// expected graphon is the cell-average step function with zero diagonal,
// so for Lipschitz W each off-diagonal cell contributes at most its
// oscillation and the diagonal blocks at most sup W / n, giving
// e_n <= (sqrt(2) L + sup W) / n.
//
// Counterexample sweep: canonical graphons of graphs sampled from a
// constant p. Every cell of W_{G_n} - p is 1 - p or -p, so the L1 distance
// does not vanish, while the cut norm does.

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "graphon/core.hpp"
#include "graphon/quadrature.hpp"

namespace graphon {

enum class SweepKind { kTheorem, kCounterexample };

struct SweepRow {
  Index n = 0;
  double l1_expected_vs_limit = 0;
  double l1_sampled_vs_limit = 0;
  double cutnorm_sampled_vs_limit = 0;
  bool cut_exact = false;
  double wall_time = 0;  // seconds
  // Counterexample sweeps keep every draw.
  std::vector<double> draw_l1;
  std::vector<double> draw_cut;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct ConvergenceReport {
  SweepKind kind = SweepKind::kTheorem;
  std::string label;
  int k = 1;
  std::uint64_t seed = 0;
  Index draws_per_n = 1;
  QuadratureSpec quadrature;
  std::vector<SweepRow> rows;
  bool complete = true;
  std::string error;  // why the sweep stopped early, when incomplete

  // Rows strictly increasing in n, all distances >= 0.
  void validate() const;

  friend bool operator==(const ConvergenceReport&,
                         const ConvergenceReport&) = default;
};

struct SweepOptions {
  unsigned threads = 1;
  int cut_restarts = 50;  // heuristic restarts when n > the exact budget
};

// Quadrature actually used by a theorem sweep: the tolerance is tightened to
// at most 0.01 / max(ns), one order below the smallest e_n we expect to
// resolve.
QuadratureSpec sweep_quadrature(const QuadratureSpec& q,
                                const std::vector<Index>& ns);

// Records per n the expected-graphon distance, plus the L1 distance and the
// cut norm of the n-block discretization of W_{G_n}^k - W^k for one sampled
// graph. Quadrature failures stop the sweep and flag it incomplete.
ConvergenceReport run_theorem_sweep(const GraphonSpec& w, int k,
                                    const std::vector<Index>& ns,
                                    const QuadratureSpec& q,
                                    std::uint64_t seed,
                                    const SweepOptions& options = {});

ConvergenceReport run_counterexample_sweep(double p,
                                           const std::vector<Index>& ns,
                                           Index draws_per_n,
                                           std::uint64_t seed,
                                           const SweepOptions& options = {});

enum class ReportFormat { kCsv, kJson, kSvg };

ReportFormat parse_report_format(std::string_view name);

struct EmitOptions {
  // Wall times vary run to run; they are left out unless requested so that
  // reports are byte-reproducible.
  bool include_timing = false;
};

std::string report_csv(const ConvergenceReport& r, const EmitOptions& o = {});
std::string report_json(const ConvergenceReport& r, const EmitOptions& o = {});
ConvergenceReport report_from_json(std::string_view text);
// Log-log chart of the distances against n with a reference 1/n line.
std::string report_svg(const ConvergenceReport& r);

// Writes <base>.csv / .json / .svg for the requested formats and returns
// the paths written. Throws Error("empty sweep") for a report without rows
// and IoError naming the path on write failures.
std::vector<std::filesystem::path> emit_report(
    const ConvergenceReport& r, const std::set<ReportFormat>& formats,
    const std::filesystem::path& base, const EmitOptions& o = {});

}  // namespace graphon

#endif  // GRAPHON_EXPERIMENTS_HPP_

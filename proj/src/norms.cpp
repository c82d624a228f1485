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

#include "graphon/norms.hpp"

#include <numeric>

#include "graphon/algebra.hpp"
#include "graphon/random.hpp"

namespace graphon {
namespace {

constexpr int kMaxAlternations = 1000;

std::vector<Index> all_indices(Index n) {
  std::vector<Index> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

Eigen::VectorXd row_sums(const MatrixX<double>& a,
                         const std::vector<Index>& rows) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(a.cols());
  for (Index i : rows) r += a.row(i).transpose();
  return r;
}

Eigen::VectorXd col_sums(const MatrixX<double>& a,
                         const std::vector<Index>& cols) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(a.rows());
  for (Index j : cols) c += a.col(j);
  return c;
}

}  // namespace

CutNormResult cut_norm_exact(const StepKernel& s) {
  return cut_norm_exact(s.values());
}

CutNormResult cut_norm_lower_bound(const StepKernel& s, int restarts,
                                   std::uint64_t seed) {
  if (restarts < 1) throw DomainError("cut norm heuristic needs restarts >= 1");
  const MatrixX<double>& a = s.values();
  const Index n = s.n();
  const CounterRng rng(seed, Stream::kCutRestart);

  CutNormResult best;
  best.value = -1;
  for (int restart = 0; restart < restarts; ++restart) {
    std::vector<Index> rows;
    if (restart == 0) {
      rows = all_indices(n);
    } else {
      for (Index i = 0; i < n; ++i) {
        if (rng.bits(static_cast<std::uint64_t>(restart),
                     static_cast<std::uint64_t>(i)) >> 63) {
          rows.push_back(i);
        }
      }
    }
    auto [value, cols] = detail::best_columns(row_sums(a, rows));
    for (int it = 0; it < kMaxAlternations; ++it) {
      auto [row_value, new_rows] = detail::best_columns(col_sums(a, cols));
      auto [col_value, new_cols] = detail::best_columns(row_sums(a, new_rows));
      if (!(col_value > value)) break;
      value = col_value;
      rows = std::move(new_rows);
      cols = std::move(new_cols);
    }
    const double exact_value = cut_value(a, rows, cols);
    if (exact_value > best.value) {
      best.value = exact_value;
      best.rows = rows;
      best.cols = cols;
    }
  }
  best.exact = false;
  return best;
}

CutNormResult cut_norm(const StepKernel& s, int restarts, std::uint64_t seed) {
  if (s.n() <= kCutNormExactBudget) return cut_norm_exact(s);
  return cut_norm_lower_bound(s, restarts, seed);
}

double l1_distance(const StepKernel& a, const StepKernel& b) {
  const Index n = lcm_index(a.n(), b.n());
  if (a.n() == n && b.n() == n) return step_l1_norm(a.values() - b.values());
  return step_l1_norm(refine_blocks(a.values(), n / a.n()) -
                      refine_blocks(b.values(), n / b.n()));
}

QuadratureResult l1_distance_estimate(const GraphonSpec& a,
                                      const GraphonSpec& b,
                                      const QuadratureSpec& q) {
  q.validate();
  const auto sa = a.as_step();
  const auto sb = b.as_step();
  if (sa && sb) {
    return {l1_distance(*sa, *sb), 0, lcm_index(sa->n(), sb->n())};
  }
  const Index grid =
      aligned_grid(a, q.base_grid, b.step_resolution().value_or(1));
  return refine_until_converged(
      [&](Index m) {
        return (sample_on_grid(a, m) - sample_on_grid(b, m)).cwiseAbs().sum() /
               static_cast<double>(m * m);
      },
      grid, q, "l1_distance(" + a.label() + ", " + b.label() + ")");
}

double l1_distance(const GraphonSpec& a, const GraphonSpec& b,
                   const QuadratureSpec& q) {
  return l1_distance_estimate(a, b, q).value;
}

CutInterval cut_distance_upper_via_discretization(const GraphonSpec& a,
                                                  Index m,
                                                  const QuadratureSpec& q) {
  CutInterval out;
  const StepKernel d = discretize_kernel(a, m, q);
  out.discretized = cut_norm_exact(d);
  out.center = out.discretized.value;
  out.l1_error = l1_distance(a, GraphonSpec::step_kernel(d), q);
  out.lower = std::max(0.0, out.center - out.l1_error);
  out.upper = out.center + out.l1_error;
  return out;
}

}  // namespace graphon

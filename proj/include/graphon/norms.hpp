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

#ifndef GRAPHON_NORMS_HPP_
#define GRAPHON_NORMS_HPP_

// L1 distance and cut norm.
//
// The cut norm of a kernel W is sup over measurable U, V of |int_{UxV} W|.
// For a step kernel with blocks A on the n-grid, write u_i, v_j in [0,1]
// for the fraction of block i (j) covered by U (V). Then
//   int_{UxV} W = (1/n^2) sum_ij u_i A_ij v_j,
// a bilinear function of (u, v) on the unit cube. A bilinear function
// attains its extrema over a box at vertices, so the supremum is reached by
// unions of whole blocks: u, v in {0,1}^n. For a fixed row set S the best
// column set takes every column whose partial sum r_j = sum_{i in S} A_ij
// has the sign being maximized, which gives
//   ||W||_cut = max_S max(sum_j r_j^+, sum_j r_j^-) / n^2.
// cut_norm_exact enumerates all 2^n row sets; beyond the budget the
// alternating heuristic returns a certified lower bound.

#include <cstdint>
#include <vector>

#include "graphon/core.hpp"
#include "graphon/quadrature.hpp"
#include "graphon/step.hpp"

namespace graphon {

inline constexpr Index kCutNormExactBudget = 24;

struct CutNormResult {
  double value = 0;
  std::vector<Index> rows;  // S, 0-based block indices
  std::vector<Index> cols;  // T
  bool exact = false;

  friend bool operator==(const CutNormResult&, const CutNormResult&) = default;
};

// |sum_{i in S, j in T} A_ij| / n^2 in a fixed summation order.
template <typename Derived>
double cut_value(const Eigen::MatrixBase<Derived>& a,
                 const std::vector<Index>& rows,
                 const std::vector<Index>& cols) {
  double sum = 0;
  for (Index i : rows) {
    for (Index j : cols) sum += static_cast<double>(a(i, j));
  }
  const double n = static_cast<double>(a.rows());
  return std::abs(sum) / (n * n);
}

namespace detail {

// Best column set for row partial sums r: returns (value * n^2, columns).
template <typename Vector>
std::pair<double, std::vector<Index>> best_columns(const Vector& r) {
  double pos = 0;
  double neg = 0;
  for (Index j = 0; j < r.size(); ++j) {
    if (r[j] > 0) pos += r[j];
    if (r[j] < 0) neg -= r[j];
  }
  std::vector<Index> cols;
  const bool take_positive = pos >= neg;
  for (Index j = 0; j < r.size(); ++j) {
    if (take_positive ? r[j] > 0 : r[j] < 0) cols.push_back(j);
  }
  return {take_positive ? pos : neg, std::move(cols)};
}

}  // namespace detail

// Exact cut norm of a square step matrix by enumeration of row sets in
// depth-first order, each partial sum built from at most n row additions.
// Throws BudgetError if n > kCutNormExactBudget.
template <typename Derived>
CutNormResult cut_norm_exact(const Eigen::MatrixBase<Derived>& a) {
  const Index n = a.rows();
  if (n != a.cols() || n < 1) {
    throw DomainError("cut norm needs a non-empty square matrix");
  }
  if (n > kCutNormExactBudget) {
    throw BudgetError("exact cut norm enumerates 2^n row sets; n = " +
                      std::to_string(n) + " exceeds the budget of " +
                      std::to_string(kCutNormExactBudget) +
                      " (use cut_norm_lower_bound)");
  }
  const MatrixX<double> m = a.template cast<double>();
  // partial.col(d) holds the row sum of the current set at depth d.
  MatrixX<double> partial = MatrixX<double>::Zero(n, n + 1);
  std::vector<Index> stack;
  double best = -1;
  std::vector<Index> best_rows;

  auto visit = [&](Index depth) {
    double pos = 0;
    double neg = 0;
    for (Index j = 0; j < n; ++j) {
      const double r = partial(j, depth);
      if (r > 0) pos += r;
      if (r < 0) neg -= r;
    }
    const double v = std::max(pos, neg);
    if (v > best) {
      best = v;
      best_rows = stack;
    }
  };

  // Iterative DFS over subsets in increasing-index order.
  visit(0);
  Index next = 0;
  for (;;) {
    if (next < n) {
      const Index depth = static_cast<Index>(stack.size());
      partial.col(depth + 1) = partial.col(depth) + m.row(next).transpose();
      stack.push_back(next);
      visit(depth + 1);
      ++next;
    } else {
      if (stack.empty()) break;
      next = stack.back() + 1;
      stack.pop_back();
    }
  }

  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (Index i : best_rows) r += m.row(i).transpose();
  CutNormResult out;
  out.cols = detail::best_columns(r).second;
  out.rows = std::move(best_rows);
  out.value = cut_value(m, out.rows, out.cols);
  out.exact = true;
  return out;
}

CutNormResult cut_norm_exact(const StepKernel& s);

// Alternating maximization: for fixed rows choose the best columns, for
// fixed columns choose the best rows, until no improvement. Restart 0
// starts from all rows, later restarts from seeded random row sets. Every
// candidate is evaluated exactly, so the result never exceeds the cut norm.
CutNormResult cut_norm_lower_bound(const StepKernel& s, int restarts,
                                   std::uint64_t seed);

// Exact when n <= kCutNormExactBudget, otherwise the lower bound.
CutNormResult cut_norm(const StepKernel& s, int restarts = 50,
                       std::uint64_t seed = 0);

// ||a - b||_1; exact on the common refinement when both are steps,
// otherwise a refined midpoint sum of |a - b|.
QuadratureResult l1_distance_estimate(const GraphonSpec& a,
                                      const GraphonSpec& b,
                                      const QuadratureSpec& q = {});
double l1_distance(const GraphonSpec& a, const GraphonSpec& b,
                   const QuadratureSpec& q = {});

// Exact L1 distance of two step kernels on their common refinement.
double l1_distance(const StepKernel& a, const StepKernel& b);

struct CutInterval {
  double lower = 0;
  double upper = 0;
  double center = 0;     // cut norm of the discretization
  double l1_error = 0;   // ||a - discretize(a, m)||_1
  CutNormResult discretized;
};

// The cut norm is 1-Lipschitz in the L1 norm, so the cut norm of a lies
// within l1_error of the cut norm of its m-block discretization.
CutInterval cut_distance_upper_via_discretization(const GraphonSpec& a,
                                                  Index m,
                                                  const QuadratureSpec& q = {});

}  // namespace graphon

#endif  // GRAPHON_NORMS_HPP_

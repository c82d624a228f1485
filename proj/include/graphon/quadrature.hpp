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

#ifndef GRAPHON_QUADRATURE_HPP_
#define GRAPHON_QUADRATURE_HPP_

// Midpoint rule on uniform grids with refinement by grid doubling. This is
// the only integration scheme in the library: every L1 integral, cell
// average and product integral is a Riemann sum of this form.

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "graphon/error.hpp"
#include "graphon/step.hpp"

namespace graphon {

class GraphonSpec;

struct QuadratureSpec {
  Index base_grid = 256;   // points per axis on the first pass
  int max_refinements = 4;  // grid doublings after the first pass
  double tol = 1e-4;        // absolute tolerance on successive estimates

  void validate() const {
    if (base_grid < 2) throw DomainError("quadrature base_grid must be >= 2");
    if (max_refinements < 1) {
      throw DomainError("quadrature max_refinements must be >= 1");
    }
    if (!(tol > 0)) throw DomainError("quadrature tol must be > 0");
  }

  friend bool operator==(const QuadratureSpec&,
                         const QuadratureSpec&) = default;
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;  // |last - previous|
  Index grid = 0;             // points per axis of the final pass
};

// Runs estimate(grid) on grid, 2*grid, ... until two successive estimates
// agree to q.tol. Throws QuadratureError when max_refinements is exhausted.
template <typename Estimator>
QuadratureResult refine_until_converged(Estimator&& estimate, Index grid,
                                        const QuadratureSpec& q,
                                        const std::string& what) {
  double previous = estimate(grid);
  for (int r = 0; r < q.max_refinements; ++r) {
    grid *= 2;
    const double current = estimate(grid);
    const double err = std::abs(current - previous);
    if (err <= q.tol) return {current, err, grid};
    if (r + 1 >= q.max_refinements) {
      throw QuadratureError(what + " did not converge to tol " +
                                std::to_string(q.tol) + " at grid " +
                                std::to_string(grid),
                            previous, current);
    }
    previous = current;
  }
  throw QuadratureError(what + ": max_refinements must be >= 1", previous,
                        previous);
}

// Midpoint sum over an m x m grid of [0,1]^2, summed column by column in
// fixed order.
template <typename F>
double midpoint_sum_2d(F&& f, Index m) {
  const double h = 1.0 / static_cast<double>(m);
  double total = 0;
  for (Index a = 0; a < m; ++a) {
    const double x = (static_cast<double>(a) + 0.5) * h;
    double column = 0;
    for (Index b = 0; b < m; ++b) {
      column += f(x, (static_cast<double>(b) + 0.5) * h);
    }
    total += column;
  }
  return total * h * h;
}

// Integral of f over [0,1]^2. GraphonSpec arguments go to the overload in
// algebra.hpp, which is exact on constant and step parts.
template <typename F>
  requires(!std::is_same_v<std::remove_cvref_t<F>, GraphonSpec>)
QuadratureResult integrate2d(F&& f, const QuadratureSpec& q) {
  q.validate();
  return refine_until_converged(
      [&](Index m) { return midpoint_sum_2d(f, m); }, q.base_grid, q,
      "integrate2d");
}

// Integral of f over [0,1], split into `segments` equal pieces each
// integrated by the midpoint rule on `per_segment` points. Aligning the
// segments with the discontinuities of step integrands makes the sum exact
// on their step parts.
template <typename F>
double midpoint_sum_1d(F&& f, Index segments, Index per_segment) {
  const Index m = segments * per_segment;
  const double h = 1.0 / static_cast<double>(m);
  double total = 0;
  for (Index s = 0; s < segments; ++s) {
    double part = 0;
    for (Index t = 0; t < per_segment; ++t) {
      part += f((static_cast<double>(s * per_segment + t) + 0.5) * h);
    }
    total += part;
  }
  return total * h;
}

}  // namespace graphon

#endif  // GRAPHON_QUADRATURE_HPP_

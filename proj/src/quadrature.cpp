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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphon/algebra.hpp"
#include "graphon/error.hpp"

namespace graphon {
namespace {

// Block sums of an (n*g) x (n*g) matrix divided by g^2.
MatrixX<double> block_means(const MatrixX<double>& fine, Index n, Index g) {
  MatrixX<double> out(n, n);
  const double area = static_cast<double>(g * g);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      out(i, j) = fine.block(i * g, j * g, g, g).sum() / area;
    }
  }
  return out;
}

// Cell averages of a step function on the n-grid, computed on the common
// refinement so every fine cell is a whole block of both grids.
MatrixX<double> exact_cell_averages(const StepKernel& s, Index n) {
  if (n % s.n() == 0) return refine_blocks(s.values(), n / s.n());
  const Index fine = lcm_index(s.n(), n);
  return block_means(refine_blocks(s.values(), fine / s.n()), n, fine / n);
}

}  // namespace

Index aligned_grid(const GraphonSpec& w, Index base, Index multiple_of) {
  const Index unit = std::lcm(w.step_resolution().value_or(1), multiple_of);
  return std::max<Index>(1, (base + unit - 1) / unit) * unit;
}

MatrixX<double> sample_on_grid(const GraphonSpec& w, Index m) {
  const double h = 1.0 / static_cast<double>(m);
  auto mid = [h](Index a) { return (static_cast<double>(a) + 0.5) * h; };

  if (auto c = w.as_constant()) return MatrixX<double>::Constant(m, m, *c);
  if (auto s = w.as_step()) {
    std::vector<Index> block(static_cast<std::size_t>(m));
    for (Index a = 0; a < m; ++a) block[a] = block_index(mid(a), s->n());
    MatrixX<double> out(m, m);
    for (Index b = 0; b < m; ++b) {
      for (Index a = 0; a < m; ++a) out(a, b) = (*s)(block[a], block[b]);
    }
    return out;
  }
  switch (w.kind()) {
    case GraphonKind::kProduct: {
      MatrixX<double> out =
          step_product(sample_on_grid(w.lhs(), m), sample_on_grid(w.rhs(), m));
      if (w.known_symmetric()) mirror_upper(out);
      return out;
    }
    case GraphonKind::kDifference:
      return sample_on_grid(w.lhs(), m) - sample_on_grid(w.rhs(), m);
    default: {
      MatrixX<double> out(m, m);
      if (w.known_symmetric()) {
        for (Index b = 0; b < m; ++b) {
          for (Index a = 0; a <= b; ++a) out(a, b) = w(mid(a), mid(b));
        }
        mirror_upper(out);
      } else {
        for (Index b = 0; b < m; ++b) {
          for (Index a = 0; a < m; ++a) out(a, b) = w(mid(a), mid(b));
        }
      }
      return out;
    }
  }
}

QuadratureResult integrate2d(const GraphonSpec& w, const QuadratureSpec& q) {
  q.validate();
  if (auto c = w.as_constant()) return {*c, 0, 1};
  if (auto s = w.as_step()) return {s->values().mean(), 0, s->n()};
  return refine_until_converged(
      [&](Index m) {
        return sample_on_grid(w, m).sum() / static_cast<double>(m * m);
      },
      aligned_grid(w, q.base_grid), q, "integrate2d(" + w.label() + ")");
}

MatrixX<double> cell_averages(const GraphonSpec& w, Index n,
                              const QuadratureSpec& q) {
  if (n < 1) throw DomainError("cell averages need n >= 1");
  q.validate();
  if (auto s = w.as_step()) return exact_cell_averages(*s, n);

  // Per-cell subgrid g, chosen so n*g is aligned with every step part.
  const Index res = w.step_resolution().value_or(1);
  const Index unit = res / std::gcd(res, n);
  const Index first = (std::max<Index>(1, (q.base_grid + n - 1) / n) + unit -
                       1) / unit * unit;
  MatrixX<double> previous = block_means(sample_on_grid(w, n * first), n, first);
  Index g = first;
  for (int r = 0; r < q.max_refinements; ++r) {
    g *= 2;
    MatrixX<double> current = block_means(sample_on_grid(w, n * g), n, g);
    Index wi = 0;
    Index wj = 0;
    const double worst = (current - previous).cwiseAbs().maxCoeff(&wi, &wj);
    if (worst <= q.tol) {
      if (w.known_symmetric()) mirror_upper(current);
      return current;
    }
    if (r + 1 >= q.max_refinements) {
      throw QuadratureError("cell average (" + std::to_string(wi) + "," +
                                std::to_string(wj) + ") of " + w.label() +
                                " did not converge",
                            previous(wi, wj), current(wi, wj));
    }
    previous = std::move(current);
  }
  return previous;
}

}  // namespace graphon

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

#ifndef GRAPHON_ALGEBRA_HPP_
#define GRAPHON_ALGEBRA_HPP_

// Graphon products, powers and discretization, plus the grid machinery
// they share with the norm computations.
//
// The product W o W' is the kernel of the composed integral operators,
//   (W o W')(x, y) = int_0^1 W(x, z) W'(z, y) dz.
// For step functions on a common n-grid the z-integral splits into n blocks
// of width 1/n, so the product is again a step function with matrix
// (1/n) A B. Analytic products stay lazy until a grid is chosen.

#include "graphon/core.hpp"
#include "graphon/quadrature.hpp"
#include "graphon/step.hpp"

namespace graphon {

struct ProductGraphon {
  GraphonSpec value;
  // Products of distinct graphons are generally asymmetric kernels; only
  // results known (or verified) symmetric are graphons.
  bool is_graphon = false;

  bool materialized() const { return value.as_step().has_value(); }
};

// Constants multiply, steps are multiplied exactly (on the least common
// multiple grid when sizes differ), anything else is a lazy product.
ProductGraphon product(const GraphonSpec& a, const GraphonSpec& b,
                       const QuadratureSpec& q = {});

// Left-folded k-fold product; the exact matrix (1/n)^(k-1) A^k for steps.
ProductGraphon power(const GraphonSpec& w, int k, const QuadratureSpec& q = {});

// Smallest grid size >= base that is a multiple of `multiple_of` and of the
// resolution of every step part of w, so midpoint sums are exact on them.
Index aligned_grid(const GraphonSpec& w, Index base, Index multiple_of = 1);

// Values of w at the midpoints ((a + 1/2)/m, (b + 1/2)/m). Lazy products
// are computed with the m-point midpoint rule in z, i.e. as (1/m) A B.
MatrixX<double> sample_on_grid(const GraphonSpec& w, Index m);

// Integral of w over [0,1]^2 with the refinement policy of q.
QuadratureResult integrate2d(const GraphonSpec& w, const QuadratureSpec& q);

// n x n matrix of cell averages n^2 int_{I_ij} w, diagonal included.
// Exact for step-representable specs; otherwise midpoint sums refined until
// every cell moves by at most q.tol.
MatrixX<double> cell_averages(const GraphonSpec& w, Index n,
                              const QuadratureSpec& q);

// Step kernel of cell averages on the m-grid.
StepKernel discretize_kernel(const GraphonSpec& w, Index m,
                             const QuadratureSpec& q = {});

// Mirrored cell averages of a symmetric kernel. Throws InvariantError when
// mirrored averages differ by more than kCellSymmetryTolerance.
inline constexpr double kCellSymmetryTolerance = 1e-9;
MatrixX<double> symmetric_cell_averages(const GraphonSpec& w, Index m,
                                        const QuadratureSpec& q = {});

// As discretize_kernel for symmetric w; throws InvariantError otherwise.
StepGraphon discretize(const GraphonSpec& w, Index m,
                       const QuadratureSpec& q = {});

}  // namespace graphon

#endif  // GRAPHON_ALGEBRA_HPP_

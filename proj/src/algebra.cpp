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

#include "graphon/algebra.hpp"

#include "graphon/error.hpp"

namespace graphon {
namespace {

GraphonSpec step_spec(MatrixX<double> m, bool symmetric, std::string label) {
  if (symmetric) {
    mirror_upper(m);
    return GraphonSpec::step(StepGraphon(std::move(m)), std::move(label));
  }
  return GraphonSpec::step_kernel(StepKernel(std::move(m)), std::move(label));
}

}  // namespace

ProductGraphon product(const GraphonSpec& a, const GraphonSpec& b,
                       const QuadratureSpec& q) {
  const auto ca = a.as_constant();
  const auto cb = b.as_constant();
  if (ca && cb) return {GraphonSpec::constant(*ca * *cb), true};

  GraphonSpec lazy = GraphonSpec::product(a, b, q);
  if (auto s = lazy.as_step()) {
    // Step products are checked exactly, so verified symmetry counts.
    const bool symmetric = lazy.known_symmetric() || s->is_symmetric();
    return {step_spec(s->values(), symmetric, lazy.label()), symmetric};
  }
  return {lazy, lazy.known_symmetric()};
}

ProductGraphon power(const GraphonSpec& w, int k, const QuadratureSpec& q) {
  if (k < 1) throw DomainError("power needs k >= 1");
  if (k == 1) return {w, w.known_symmetric()};
  const std::string label = "pow(" + w.label() + "," + std::to_string(k) + ")";

  if (auto c = w.as_constant()) {
    double v = *c;
    for (int i = 1; i < k; ++i) v *= *c;
    return {GraphonSpec::constant(v), true};
  }
  if (auto s = w.as_step()) {
    const bool symmetric = w.known_symmetric();
    MatrixX<double> acc = s->values();
    for (int i = 1; i < k; ++i) {
      acc = step_product(acc, s->values());
      if (symmetric) mirror_upper(acc);
    }
    return {step_spec(std::move(acc), symmetric, label), symmetric};
  }
  GraphonSpec acc = w;
  for (int i = 1; i < k; ++i) acc = GraphonSpec::product(acc, w, q);
  return {acc.relabeled(label), acc.known_symmetric()};
}

StepKernel discretize_kernel(const GraphonSpec& w, Index m,
                             const QuadratureSpec& q) {
  if (m < 1) throw DomainError("discretize needs m >= 1");
  return StepKernel(cell_averages(w, m, q));
}

MatrixX<double> symmetric_cell_averages(const GraphonSpec& w, Index m,
                                        const QuadratureSpec& q) {
  MatrixX<double> avg = cell_averages(w, m, q);
  if (!w.known_symmetric()) {
    const double asym = (avg - avg.transpose()).cwiseAbs().maxCoeff();
    if (asym > kCellSymmetryTolerance) {
      throw InvariantError("cell averages of " + w.label() +
                           " are asymmetric (max difference " +
                           std::to_string(asym) + ")");
    }
  }
  mirror_upper(avg);
  return avg;
}

StepGraphon discretize(const GraphonSpec& w, Index m, const QuadratureSpec& q) {
  return StepGraphon(symmetric_cell_averages(w, m, q));
}

}  // namespace graphon

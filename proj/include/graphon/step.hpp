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

#ifndef GRAPHON_STEP_HPP_
#define GRAPHON_STEP_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "graphon/error.hpp"

namespace graphon {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Index of the block of the uniform n-grid containing t. Blocks are
// [i/n, (i+1)/n) with the last one closed at 1; the boundaries are the
// doubles i/n exactly as computed here, so membership tests elsewhere agree.
inline Index block_index(double t, Index n) {
  const double dn = static_cast<double>(n);
  Index i = static_cast<Index>(std::floor(t * dn));
  if (i < 0) i = 0;
  if (i > n - 1) i = n - 1;
  while (i + 1 < n && t >= static_cast<double>(i + 1) / dn) ++i;
  while (i > 0 && t < static_cast<double>(i) / dn) --i;
  return i;
}

inline Index lcm_index(Index a, Index b) { return std::lcm(a, b); }

// Replicates every entry of a into a factor x factor block.
template <typename Derived>
MatrixX<typename Derived::Scalar> refine_blocks(
    const Eigen::MatrixBase<Derived>& a, Index factor) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> out(a.rows() * factor, a.cols() * factor);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * factor, j * factor, factor, factor).setConstant(a(i, j));
    }
  }
  return out;
}

// Copies the upper triangle onto the lower one.
template <typename Derived>
void mirror_upper(Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j + 1; i < m.rows(); ++i) m(i, j) = m(j, i);
  }
}

// Step matrix of the product kernel (A o B)(x,y) = int A(x,z) B(z,y) dz
// for step functions on a common n-grid: each z-block has width 1/n.
template <typename DerivedA, typename DerivedB>
auto step_product(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  return ((a * b) / static_cast<Scalar>(a.cols())).eval();
}

// (1/n)^(k-1) A^k by left folding.
template <typename Derived>
MatrixX<typename Derived::Scalar> step_power(
    const Eigen::MatrixBase<Derived>& a, int k) {
  MatrixX<typename Derived::Scalar> acc = a;
  for (int i = 1; i < k; ++i) acc = step_product(acc, a);
  return acc;
}

// Mean absolute entry: the L1 norm of the step function with these blocks.
template <typename Derived>
typename Derived::Scalar step_l1_norm(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Scalar sum(0);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) sum += std::abs(a(i, j));
  }
  return sum / static_cast<Scalar>(a.rows() * a.cols());
}

// A step kernel on the uniform n x n grid of [0,1]^2. Entries lie in the
// signed range [-1, 1] so that differences of graphons are representable.
// Symmetry is not required; see BasicStepGraphon.
template <typename Scalar>
class BasicStepKernel {
 public:
  using Matrix = MatrixX<Scalar>;

  explicit BasicStepKernel(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.rows() != values_.cols()) {
      throw InvariantError("step kernel needs a non-empty square matrix, got " +
                           std::to_string(values_.rows()) + "x" +
                           std::to_string(values_.cols()));
    }
    for (Index j = 0; j < n(); ++j) {
      for (Index i = 0; i < n(); ++i) {
        const Scalar v = values_(i, j);
        if (!(v >= Scalar(-1) && v <= Scalar(1))) {
          throw InvariantError("step value out of [-1,1] at (" +
                               std::to_string(i) + "," + std::to_string(j) +
                               ")");
        }
      }
    }
  }

  static BasicStepKernel constant(Index n, Scalar p) {
    return BasicStepKernel(Matrix::Constant(n, n, p));
  }

  Index n() const { return values_.rows(); }
  const Matrix& values() const { return values_; }
  Scalar operator()(Index i, Index j) const { return values_(i, j); }

  // Block value of the cell containing (x, y).
  Scalar at(double x, double y) const {
    return values_(block_index(x, n()), block_index(y, n()));
  }

  bool is_symmetric() const { return values_ == values_.transpose(); }

  bool is_proper() const {
    return (values_.array() >= Scalar(0)).all() &&
           (values_.array() <= Scalar(1)).all();
  }

  // The same function written on the (n * factor)-grid.
  BasicStepKernel refined(Index factor) const {
    return BasicStepKernel(refine_blocks(values_, factor), Unchecked{});
  }

  friend bool operator==(const BasicStepKernel& a, const BasicStepKernel& b) {
    return a.values_.rows() == b.values_.rows() && a.values_ == b.values_;
  }

 protected:
  struct Unchecked {};
  BasicStepKernel(Matrix values, Unchecked) : values_(std::move(values)) {}

  Matrix values_;
};

// A step graphon: a symmetric step kernel (exact equality of mirrored
// entries).
template <typename Scalar>
class BasicStepGraphon : public BasicStepKernel<Scalar> {
  using Base = BasicStepKernel<Scalar>;

 public:
  using typename Base::Matrix;

  explicit BasicStepGraphon(Matrix values) : Base(std::move(values)) {
    check_symmetric();
  }
  explicit BasicStepGraphon(const Base& kernel) : Base(kernel) {
    check_symmetric();
  }

  static BasicStepGraphon constant(Index n, Scalar p) {
    return BasicStepGraphon(Matrix::Constant(n, n, p));
  }

  BasicStepGraphon refined(Index factor) const {
    return BasicStepGraphon(Base::refined(factor));
  }

 private:
  void check_symmetric() const {
    for (Index j = 0; j < this->n(); ++j) {
      for (Index i = j + 1; i < this->n(); ++i) {
        if (this->values_(i, j) != this->values_(j, i)) {
          throw InvariantError("step graphon is not symmetric at (" +
                               std::to_string(i) + "," + std::to_string(j) +
                               ")/(" + std::to_string(j) + "," +
                               std::to_string(i) + ")");
        }
      }
    }
  }
};

using StepKernel = BasicStepKernel<double>;
using StepGraphon = BasicStepGraphon<double>;

}  // namespace graphon

#endif  // GRAPHON_STEP_HPP_

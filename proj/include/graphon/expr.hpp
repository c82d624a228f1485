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

#ifndef GRAPHON_EXPR_HPP_
#define GRAPHON_EXPR_HPP_

// A small expression language for analytic kernels W(x, y).
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := number | 'x' | 'y' | func '(' args ')' | '(' expr ')'
//   func   := min | max | abs | exp | sqrt
//
// '^' is right-associative and its base is a unary, so "-x^2" is (-x)^2.
// Whitespace is insignificant and there is no implicit multiplication.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace graphon {

class GraphonSpec;

namespace expr {

enum class Op {
  kNumber,
  kVarX,
  kVarY,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kNeg,
  kMin,
  kMax,
  kAbs,
  kExp,
  kSqrt,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double value = 0;        // kNumber only
  std::vector<Expr> args;  // arity fixed by op
  std::size_t offset = 0;  // byte offset of the node's token in the source
};

Expr number(double v, std::size_t offset = 0);
Expr var_x(std::size_t offset = 0);
Expr var_y(std::size_t offset = 0);
Expr make(Op op, std::vector<Expr> args, std::size_t offset = 0);

// Throws ParseError (byte offset and expected-token set) or
// UnknownIdentifierError.
Expr parse_expression(std::string_view source);

// Throws EvalError on division by zero, sqrt of a negative number or any
// other non-finite intermediate result.
double eval_ast(const Expr& ast, double x, double y);

// Fully parenthesized source that parses back to an equivalent tree.
std::string print_expression(const Expr& ast);

// Swaps x and y.
Expr transpose(const Expr& ast);

}  // namespace expr

// Kernel (f(x,y) + f(y,x)) / 2, optionally clamped to [0,1]. Floating-point
// addition commutes, so W(x,y) and W(y,x) are bit-identical.
GraphonSpec symmetrize(const expr::Expr& ast, bool clamp = false);

}  // namespace graphon

#endif  // GRAPHON_EXPR_HPP_

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

#include "graphon/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "graphon/core.hpp"
#include "graphon/error.hpp"

namespace graphon::expr {
namespace {

constexpr int kMaxDepth = 200;

struct FunctionInfo {
  std::string_view name;
  Op op;
  int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"min", Op::kMin, 2}, {"max", Op::kMax, 2},   {"abs", Op::kAbs, 1},
    {"exp", Op::kExp, 1}, {"sqrt", Op::kSqrt, 1},
};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = parse_sum(0);
    skip_space();
    if (pos_ != src_.size()) {
      fail("unexpected '" + std::string(1, src_[pos_]) + "'",
           {"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected) const {
    throw ParseError(message, pos_, std::move(expected));
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, std::vector<std::string> expected) {
    if (!accept(c)) {
      fail(pos_ < src_.size() ? "expected '" + std::string(1, c) + "'"
                              : "unexpected end of input",
           std::move(expected));
    }
  }

  void enter(int depth) const {
    if (depth > kMaxDepth) fail("expression nested too deeply", {});
  }

  Expr parse_sum(int depth) {
    enter(depth);
    Expr lhs = parse_product(depth + 1);
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = make(Op::kAdd, {lhs, parse_product(depth + 1)}, at);
      } else if (accept('-')) {
        lhs = make(Op::kSub, {lhs, parse_product(depth + 1)}, at);
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product(int depth) {
    enter(depth);
    Expr lhs = parse_power(depth + 1);
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = make(Op::kMul, {lhs, parse_power(depth + 1)}, at);
      } else if (accept('/')) {
        lhs = make(Op::kDiv, {lhs, parse_power(depth + 1)}, at);
      } else {
        return lhs;
      }
    }
  }

  Expr parse_power(int depth) {
    enter(depth);
    Expr base = parse_unary(depth + 1);
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) return make(Op::kPow, {base, parse_power(depth + 1)}, at);
    return base;
  }

  Expr parse_unary(int depth) {
    enter(depth);
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) return make(Op::kNeg, {parse_unary(depth + 1)}, at);
    return parse_atom(depth + 1);
  }

  Expr parse_atom(int depth) {
    enter(depth);
    skip_space();
    const std::vector<std::string> kAtomStart = {"number", "x", "y",
                                                 "function", "(", "-"};
    if (pos_ >= src_.size()) fail("unexpected end of input", kAtomStart);
    const std::size_t at = pos_;
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum(depth + 1);
      expect(')', {")", "+", "-", "*", "/", "^"});
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      const std::string_view name = src_.substr(at, pos_ - at);
      if (name == "x") return var_x(at);
      if (name == "y") return var_y(at);
      const FunctionInfo* f = find_function(name);
      if (f == nullptr) throw UnknownIdentifierError(std::string(name), at);
      expect('(', {"("});
      std::vector<Expr> args;
      args.push_back(parse_sum(depth + 1));
      for (int i = 1; i < f->arity; ++i) {
        expect(',', {","});
        args.push_back(parse_sum(depth + 1));
      }
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        fail(std::string(f->name) + " takes " + std::to_string(f->arity) +
                 " argument(s)",
             {")"});
      }
      expect(')', {")"});
      return make(f->op, std::move(args), at);
    }
    fail("unexpected '" + std::string(1, c) + "'", kAtomStart);
  }

  Expr parse_number() {
    const std::size_t at = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = at;
      fail("malformed number", {"digit"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        ++pos_;
      }
      if (digits() == 0) fail("malformed exponent", {"digit"});
    }
    double value = 0;
    const char* first = src_.data() + at;
    const char* last = src_.data() + pos_;
    const auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || end != last || !std::isfinite(value)) {
      pos_ = at;
      fail("number out of range", {"number"});
    }
    return number(value, at);
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double v, const Node& node, const char* what) {
  if (!std::isfinite(v)) throw EvalError(what, node.offset);
  return v;
}

}  // namespace

Expr number(double v, std::size_t offset) {
  return std::make_shared<const Node>(Node{Op::kNumber, v, {}, offset});
}
Expr var_x(std::size_t offset) {
  return std::make_shared<const Node>(Node{Op::kVarX, 0, {}, offset});
}
Expr var_y(std::size_t offset) {
  return std::make_shared<const Node>(Node{Op::kVarY, 0, {}, offset});
}
Expr make(Op op, std::vector<Expr> args, std::size_t offset) {
  return std::make_shared<const Node>(Node{op, 0, std::move(args), offset});
}

Expr parse_expression(std::string_view source) {
  return Parser(source).parse();
}

double eval_ast(const Expr& ast, double x, double y) {
  const Node& n = *ast;
  auto arg = [&](std::size_t i) { return eval_ast(n.args[i], x, y); };
  switch (n.op) {
    case Op::kNumber:
      return n.value;
    case Op::kVarX:
      return x;
    case Op::kVarY:
      return y;
    case Op::kAdd:
      return checked(arg(0) + arg(1), n, "overflow in '+'");
    case Op::kSub:
      return checked(arg(0) - arg(1), n, "overflow in '-'");
    case Op::kMul:
      return checked(arg(0) * arg(1), n, "overflow in '*'");
    case Op::kDiv: {
      const double num = arg(0);
      const double den = arg(1);
      if (den == 0) throw EvalError("division by zero", n.offset);
      return checked(num / den, n, "overflow in '/'");
    }
    case Op::kPow:
      return checked(std::pow(arg(0), arg(1)), n, "undefined power");
    case Op::kNeg:
      return -arg(0);
    case Op::kMin:
      return std::min(arg(0), arg(1));
    case Op::kMax:
      return std::max(arg(0), arg(1));
    case Op::kAbs:
      return std::abs(arg(0));
    case Op::kExp:
      return checked(std::exp(arg(0)), n, "overflow in exp");
    case Op::kSqrt: {
      const double v = arg(0);
      if (v < 0) throw EvalError("sqrt of a negative number", n.offset);
      return std::sqrt(v);
    }
  }
  throw EvalError("corrupt expression node", n.offset);
}

std::string print_expression(const Expr& ast) {
  const Node& n = *ast;
  auto bin = [&](const char* op) {
    return "(" + print_expression(n.args[0]) + " " + op + " " +
           print_expression(n.args[1]) + ")";
  };
  auto call = [&](const char* name) {
    std::string out = std::string(name) + "(";
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i) out += ", ";
      out += print_expression(n.args[i]);
    }
    return out + ")";
  };
  switch (n.op) {
    case Op::kNumber: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(n.value));
      return std::signbit(n.value) ? "(-" + std::string(buf) + ")"
                                   : std::string(buf);
    }
    case Op::kVarX:
      return "x";
    case Op::kVarY:
      return "y";
    case Op::kAdd:
      return bin("+");
    case Op::kSub:
      return bin("-");
    case Op::kMul:
      return bin("*");
    case Op::kDiv:
      return bin("/");
    case Op::kPow:
      return bin("^");
    case Op::kNeg:
      return "(-" + print_expression(n.args[0]) + ")";
    case Op::kMin:
      return call("min");
    case Op::kMax:
      return call("max");
    case Op::kAbs:
      return call("abs");
    case Op::kExp:
      return call("exp");
    case Op::kSqrt:
      return call("sqrt");
  }
  return "?";
}

Expr transpose(const Expr& ast) {
  switch (ast->op) {
    case Op::kVarX:
      return var_y(ast->offset);
    case Op::kVarY:
      return var_x(ast->offset);
    case Op::kNumber:
      return ast;
    default: {
      std::vector<Expr> args;
      args.reserve(ast->args.size());
      for (const auto& a : ast->args) args.push_back(transpose(a));
      return make(ast->op, std::move(args), ast->offset);
    }
  }
}

}  // namespace graphon::expr

namespace graphon {

GraphonSpec symmetrize(const expr::Expr& ast, bool clamp) {
  return GraphonSpec::symmetrized_expression(ast, clamp);
}

}  // namespace graphon

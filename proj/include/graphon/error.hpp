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

#ifndef GRAPHON_ERROR_HPP_
#define GRAPHON_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphon {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (e.g. a point outside [0,1]^2).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Object construction that would break a type invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::vector<std::string> expected = {})
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class EvalError : public Error {
 public:
  EvalError(const std::string& message, std::size_t offset)
      : Error(message + " (node at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& message, double previous, double last)
      : Error(message + " (last estimates " + std::to_string(previous) +
              ", " + std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

// Exact cut-norm enumeration requested beyond its size budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed file content; line is 1-based, 0 when not applicable.
class FormatError : public IoError {
 public:
  FormatError(const std::string& message, std::size_t line)
      : IoError(line ? message + " (line " + std::to_string(line) + ")"
                     : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class GraphError : public Error {
 public:
  enum class Kind { kSelfLoop, kDuplicateEdge, kVertexOutOfRange };

  GraphError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace graphon

#endif  // GRAPHON_ERROR_HPP_

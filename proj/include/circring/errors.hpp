// Copyright 2026 The circring Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace circring {

/// Base class for every error raised by the library. Each subclass maps to a
/// distinct CLI exit code (see exit_code()).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// The charge window is too small: the ground state leaks onto the boundary.
class TruncationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class EigenSolveError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// Bracketed root search or residual minimization found no working point.
class ConditionSolveError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 5; }
};

/// Numerical failures that are not truncation or eigensolver problems
/// (singular steady states, bad quadrature, invalid arguments).
class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 6; }
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }
  int exit_code() const noexcept override { return 2; }

 private:
  std::string field_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  int exit_code() const noexcept override { return 2; }

 private:
  int line_;
  int column_;
};

}  // namespace circring

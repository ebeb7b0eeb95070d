// Copyright 2026 The noisyadj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISYADJ_ERROR_H_
#define NOISYADJ_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace noisyadj {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A privacy budget (epsilon) or noise scale that is not strictly positive.
class InvalidBudgetError : public Error {
 public:
  using Error::Error;
};

// An argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed edge-list, config or fixture text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The requested computation exceeds a configured size guard.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace noisyadj

#endif  // NOISYADJ_ERROR_H_

/*
 * Copyright 2026 The Equity Metrics Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EQUITY_ERROR_H_
#define EQUITY_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace equity {

// Raised for invalid data or arguments. Every library failure surfaces as
// this type (or a subclass) so front ends can map it to one exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed score file. `line()` is 1-based and counts the header.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace equity

#endif  // EQUITY_ERROR_H_

// Copyright 2026 The robust360 Authors
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

#ifndef ROBUST360_ERRORS_H_
#define ROBUST360_ERRORS_H_

#include <stdexcept>
#include <string>

namespace robust360 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something that violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class SimulationError : public Error {
 public:
  using Error::Error;
};

// A solver or invariant failure that indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace robust360

#endif  // ROBUST360_ERRORS_H_

// Copyright 2026 The grover-sat Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by every grover_sat module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grover_sat {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the byte offset where parsing stopped.
class ParseError : public Error {
  public:
    ParseError(const std::string &message, std::size_t offset)
        : Error(message + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

/// A value violates a structural invariant (bad qubit index, length mismatch...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A configured size bound (variables, qubits) was exceeded.
class ResourceLimitError : public Error {
  public:
    using Error::Error;
};

} // namespace grover_sat

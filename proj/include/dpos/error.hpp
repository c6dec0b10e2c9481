// Copyright 2026 The DPoS Governance Authors
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

#ifndef DPOS_ERROR_HPP_
#define DPOS_ERROR_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dpos {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes: ResourceError -> 3, everything else -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (profiles, logs, snapshots).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid SystemConfig or unknown preset.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Out-of-range lookup (dates, voters).
class LookupError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for the configured voting rule.
class UnsupportedRuleError : public Error {
 public:
  using Error::Error;
};

// Parse failure with a 1-based line number and the offending field.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": field '" + field +
                        "': " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Enumeration exceeded its configured bound. `count` is the exact number of
// strategies when it could be computed.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::optional<std::uint64_t> count)
      : Error(what), count_(count) {}

  std::optional<std::uint64_t> count() const { return count_; }

 private:
  std::optional<std::uint64_t> count_;
};

}  // namespace dpos

#endif  // DPOS_ERROR_HPP_

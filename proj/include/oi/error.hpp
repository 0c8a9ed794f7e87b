/*
 * Copyright 2026 The oindex Authors.
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

#ifndef OINDEX_ERROR_HPP_
#define OINDEX_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace oi {

// Broad error categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  kValidation,
  kSequencing,
  kParse,
  kSchema,
  kDuplicateEpoch,
  kRange,
  kUnsupported,
  kConfig,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// A record or run violates a domain invariant. `field` names the offending
// metric when there is one.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(ErrorKind::kValidation, message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class SequencingError : public Error {
 public:
  SequencingError(long long expected, long long received)
      : Error(ErrorKind::kSequencing,
              "out-of-sequence epoch: expected " + std::to_string(expected) +
                  ", received " + std::to_string(received)),
        expected_(expected),
        received_(received) {}

  long long expected() const { return expected_; }
  long long received() const { return received_; }

 private:
  long long expected_;
  long long received_;
};

// Errors tied to a location in an input stream. Lines and rows are 1-based;
// a column of 0 means "whole line".
class InputError : public Error {
 public:
  InputError(ErrorKind kind, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(kind, Locate(line, column) + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string Locate(std::size_t line, std::size_t column) {
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": ";
  }

  std::size_t line_;
  std::size_t column_;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : InputError(ErrorKind::kParse, line, column, message) {}
};

class SchemaError : public InputError {
 public:
  SchemaError(std::size_t line, std::string key, const std::string& message)
      : InputError(ErrorKind::kSchema, line, 0, message),
        key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class DuplicateEpochError : public InputError {
 public:
  DuplicateEpochError(std::size_t line, long long epoch)
      : InputError(ErrorKind::kDuplicateEpoch, line, 0,
                   "duplicate epoch " + std::to_string(epoch)),
        epoch_(epoch) {}

  long long epoch() const { return epoch_; }

 private:
  long long epoch_;
};

class RangeError : public InputError {
 public:
  RangeError(std::size_t line, std::string field, const std::string& message)
      : InputError(ErrorKind::kRange, line, 0, message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& message)
      : Error(ErrorKind::kUnsupported, message) {}
};

// Bad caller configuration (field mappings, preset names, option values).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorKind::kConfig, message) {}
};

}  // namespace oi

#endif  // OINDEX_ERROR_HPP_

// Copyright 2026 The tcm-qubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tcm {

/// Invalid argument or violated precondition.
class ValidationError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Vector length does not match the model's variable count.
class DimensionError : public ValidationError {
 public:
    using ValidationError::ValidationError;
};

/// Problem exceeds a configured hard cap (e.g. brute-force enumeration).
class CapacityError : public ValidationError {
 public:
    using ValidationError::ValidationError;
};

/// Malformed dataset content; the message names the offending row.
class ParseError : public ValidationError {
 public:
    ParseError(const std::string& path, std::size_t row, const std::string& what)
            : ValidationError(path + ":" + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

 private:
    std::size_t row_;
};

/// Bootstrap sampling hit its subset cap before reaching the coverage target.
class CoverageError : public std::runtime_error {
 public:
    CoverageError(const std::string& what, double achieved)
            : std::runtime_error(what), achieved_(achieved) {}

    double achieved_coverage() const noexcept { return achieved_; }

 private:
    double achieved_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace tcm

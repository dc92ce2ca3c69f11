// Copyright 2026 the ardnmf authors
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

namespace ardnmf {

/// Dimension/shape mismatches. These are programmer errors: callers are
/// expected to pass conforming shapes, so this fails fast.
class ShapeError : public std::logic_error {
  public:
    explicit ShapeError(const std::string& what) : std::logic_error(what) {}
};

/// Numeric-domain violations (negative base, singular divisor, non-finite
/// result, out-of-range hyperparameter). Recoverable: the CLI maps these to
/// exit status 2 and a sweep records them as failed rows.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// I/O and parse failures, annotated with file position where possible.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ardnmf

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

#include <cstddef>
#include <span>
#include <vector>

#include "ardnmf/errors.hpp"

namespace ardnmf {

/// Dense row-major matrix of doubles. This is the carrier for data (V),
/// dictionary (W), activations (H) and all solver intermediates. Storage is
/// deliberately minimal: the solvers only need products, elementwise algebra
/// and entrywise powers.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool operator==(const DenseMatrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Binary observation mask: 1 = observed, 0 = missing. Same shape as the
/// data matrix it applies to; construction rejects anything but {0,1}.
class MaskMatrix {
  public:
    MaskMatrix() = default;
    /// Validates that every entry of `m` is exactly 0 or 1.
    explicit MaskMatrix(DenseMatrix m);

    static MaskMatrix all_ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return m_.rows(); }
    std::size_t cols() const { return m_.cols(); }
    double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    const DenseMatrix& values() const { return m_; }
    std::size_t observed_count() const;
    MaskMatrix complement() const;

  private:
    DenseMatrix m_;
};

enum class ElementwiseOp { mul, div, add, sub };

/// Standard matrix product A (F x K) * B (K x N). Throws ShapeError on inner
/// dimension mismatch. Deterministic: fixed reduction order, single-threaded.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transposed(const DenseMatrix& a);

/// Entrywise op over equal-shaped matrices. Division checks the result for
/// non-finite values and throws NumericError if any appear.
DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, ElementwiseOp op);

/// Entrywise power. Requires entries >= 0, and > 0 when exponent < 0;
/// exponent 1 returns the input bit-identically.
DenseMatrix pow_elementwise(const DenseMatrix& a, double exponent);

double frobenius_norm(const DenseMatrix& a);

namespace detail {
/// pow with fast paths for the exponents the updates actually use
/// (0, +/-1, +/-2, +/-1/2, 1/3). Falls back to std::pow.
double pow_fast(double base, double exponent);
}  // namespace detail

}  // namespace ardnmf

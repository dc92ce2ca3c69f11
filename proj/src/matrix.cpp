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

#include "ardnmf/matrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace ardnmf {

namespace {

using EigenRowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const EigenRowMajor>;
using MutMap = Eigen::Map<EigenRowMajor>;

std::string shape_str(const DenseMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw ShapeError("DenseMatrix: data length " + std::to_string(data_.size()) +
                         " does not equal rows*cols = " + std::to_string(rows_ * cols_));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

MaskMatrix::MaskMatrix(DenseMatrix m) : m_(std::move(m)) {
    for (double x : m_.data())
        if (x != 0.0 && x != 1.0)
            throw NumericError("MaskMatrix: entries must be exactly 0 or 1, got " +
                               std::to_string(x));
}

MaskMatrix MaskMatrix::all_ones(std::size_t rows, std::size_t cols) {
    return MaskMatrix(DenseMatrix(rows, cols, 1.0));
}

std::size_t MaskMatrix::observed_count() const {
    std::size_t n = 0;
    for (double x : m_.data()) n += (x == 1.0);
    return n;
}

MaskMatrix MaskMatrix::complement() const {
    DenseMatrix c(rows(), cols());
    for (std::size_t i = 0; i < m_.size(); ++i) c.data()[i] = 1.0 - m_.data()[i];
    return MaskMatrix(std::move(c));
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: inner dimensions disagree, " + shape_str(a) + " * " +
                         shape_str(b));
    DenseMatrix out(a.rows(), b.cols());
    ConstMap ma(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                static_cast<Eigen::Index>(a.cols()));
    ConstMap mb(b.data().data(), static_cast<Eigen::Index>(b.rows()),
                static_cast<Eigen::Index>(b.cols()));
    MutMap mo(out.data().data(), static_cast<Eigen::Index>(out.rows()),
              static_cast<Eigen::Index>(out.cols()));
    mo.noalias() = ma * mb;
    return out;
}

DenseMatrix transposed(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
    return out;
}

DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, ElementwiseOp op) {
    if (!a.same_shape(b))
        throw ShapeError("elementwise: shapes disagree, " + shape_str(a) + " vs " +
                         shape_str(b));
    DenseMatrix out(a.rows(), a.cols());
    auto oa = a.data();
    auto ob = b.data();
    auto oo = out.data();
    switch (op) {
        case ElementwiseOp::mul:
            for (std::size_t i = 0; i < oa.size(); ++i) oo[i] = oa[i] * ob[i];
            break;
        case ElementwiseOp::div:
            for (std::size_t i = 0; i < oa.size(); ++i) {
                oo[i] = oa[i] / ob[i];
                if (!std::isfinite(oo[i]))
                    throw NumericError("elementwise div: non-finite result at flat index " +
                                       std::to_string(i));
            }
            break;
        case ElementwiseOp::add:
            for (std::size_t i = 0; i < oa.size(); ++i) oo[i] = oa[i] + ob[i];
            break;
        case ElementwiseOp::sub:
            for (std::size_t i = 0; i < oa.size(); ++i) oo[i] = oa[i] - ob[i];
            break;
    }
    return out;
}

namespace detail {

double pow_fast(double base, double exponent) {
    if (exponent == 1.0) return base;
    if (exponent == 0.0) return 1.0;
    if (exponent == 2.0) return base * base;
    if (exponent == -1.0) return 1.0 / base;
    if (exponent == -2.0) return 1.0 / (base * base);
    if (exponent == 0.5) return std::sqrt(base);
    if (exponent == -0.5) return 1.0 / std::sqrt(base);
    if (exponent == 1.0 / 3.0) return std::cbrt(base);
    return std::pow(base, exponent);
}

}  // namespace detail

DenseMatrix pow_elementwise(const DenseMatrix& a, double exponent) {
    if (exponent == 1.0) return a;  // bit-identical by contract
    DenseMatrix out(a.rows(), a.cols());
    auto in = a.data();
    auto oo = out.data();
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double x = in[i];
        if (x < 0.0)
            throw NumericError("pow_elementwise: negative base " + std::to_string(x) +
                               " at flat index " + std::to_string(i));
        if (x == 0.0 && exponent < 0.0)
            throw NumericError("pow_elementwise: zero base with negative exponent at flat index " +
                               std::to_string(i));
        oo[i] = detail::pow_fast(x, exponent);
        if (!std::isfinite(oo[i]))
            throw NumericError("pow_elementwise: non-finite result at flat index " +
                               std::to_string(i));
    }
    return out;
}

double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

}  // namespace ardnmf

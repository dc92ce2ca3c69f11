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

#include "ardnmf/divergence.hpp"

#include <cmath>
#include <string>

namespace ardnmf {

namespace {

[[noreturn]] void domain_error(double x, double y, double beta, const char* why) {
    throw NumericError("d_beta: " + std::string(why) + " (x=" + std::to_string(x) +
                       ", y=" + std::to_string(y) + ", beta=" + std::to_string(beta) + ")");
}

}  // namespace

double d_beta(double x, double y, double beta) {
    if (x < 0.0 || y < 0.0) domain_error(x, y, beta, "negative argument");
    if (y == 0.0 && beta <= 1.0) domain_error(x, y, beta, "y = 0 requires beta > 1");
    if (x == 0.0 && beta <= 0.0) domain_error(x, y, beta, "x = 0 requires beta > 0");

    double d;
    if (beta == 1.0) {
        d = (x == 0.0 ? 0.0 : x * std::log(x / y)) - x + y;
    } else if (beta == 0.0) {
        const double r = x / y;
        d = r - std::log(r) - 1.0;
    } else {
        const double xb = std::pow(x, beta);
        const double yb = std::pow(y, beta);
        d = xb / (beta * (beta - 1.0)) + yb / beta - x * std::pow(y, beta - 1.0) / (beta - 1.0);
    }
    if (!std::isfinite(d)) domain_error(x, y, beta, "non-finite result");
    return d;
}

double D_beta(const DenseMatrix& v, const DenseMatrix& vhat, double beta) {
    if (!v.same_shape(vhat))
        throw ShapeError("D_beta: V and Vhat shapes disagree");
    double sum = 0.0;
    auto a = v.data();
    auto b = vhat.data();
    for (std::size_t i = 0; i < a.size(); ++i) sum += d_beta(a[i], b[i], beta);
    return sum;
}

double D_beta_masked(const DenseMatrix& v, const DenseMatrix& vhat, const MaskMatrix& mask,
                     double beta) {
    if (!v.same_shape(vhat) || v.rows() != mask.rows() || v.cols() != mask.cols())
        throw ShapeError("D_beta_masked: shapes disagree");
    double sum = 0.0;
    auto a = v.data();
    auto b = vhat.data();
    auto m = mask.values().data();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (m[i] != 0.0) sum += d_beta(a[i], b[i], beta);
    return sum;
}

double continuity_check(double x, double y, double beta0, double eps) {
    return std::abs(d_beta(x, y, beta0 + eps) - d_beta(x, y, beta0));
}

}  // namespace ardnmf

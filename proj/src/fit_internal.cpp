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

#include "src/fit_internal.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ardnmf::detail {

double observed_mean(const DenseMatrix& v, const MaskMatrix* mask) {
    double sum = 0.0;
    std::size_t n = 0;
    auto data = v.data();
    if (mask == nullptr) {
        for (double x : data) sum += x;
        n = data.size();
    } else {
        auto m = mask->values().data();
        for (std::size_t i = 0; i < data.size(); ++i)
            if (m[i] != 0.0) {
                sum += data[i];
                ++n;
            }
    }
    if (n == 0) throw NumericError("observed_mean: no observed entries");
    return sum / static_cast<double>(n);
}

std::pair<DenseMatrix, DenseMatrix> init_wh(std::size_t f, std::size_t n, std::size_t k,
                                            std::uint64_t seed, double v_mean) {
    RngStream rng(seed);
    DenseMatrix w(f, k);
    DenseMatrix h(k, n);
    for (double& x : w.data()) x = rng.uniform_pos();
    for (double& x : h.data()) x = rng.uniform_pos();
    const double wh_mean = observed_mean(matmul(w, h), nullptr);
    const double scale = std::sqrt(v_mean / wh_mean);
    for (double& x : w.data()) x *= scale;
    for (double& x : h.data()) x *= scale;
    return {std::move(w), std::move(h)};
}

void floor_in_place(DenseMatrix& m, double floor) {
    if (floor <= 0.0) return;
    for (double& x : m.data())
        if (x < floor) x = floor;
}

void validate_data(const DenseMatrix& v, double beta, const MaskMatrix* mask) {
    auto data = v.data();
    const double* m = mask ? mask->values().data().data() : nullptr;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (m && m[i] == 0.0) continue;
        if (data[i] < 0.0)
            throw NumericError("fit: data has a negative entry at flat index " +
                               std::to_string(i));
        if (beta <= 0.0 && data[i] == 0.0)
            throw NumericError(
                "fit: beta <= 0 requires strictly positive observed data; zero entry at "
                "flat index " +
                std::to_string(i) + " (floor the data before fitting)");
    }
}

double relative_change(std::span<const double> a, std::span<const double> b) {
    double tol = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double t;
        if (b[i] == 0.0)
            t = (a[i] == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
        else
            t = std::abs((a[i] - b[i]) / b[i]);
        if (t > tol) tol = t;
    }
    return tol;
}

}  // namespace ardnmf::detail

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

#include "ardnmf/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ardnmf/divergence.hpp"

namespace ardnmf {

double snr_db(const DenseMatrix& vhat, const DenseMatrix& v) {
    if (!vhat.same_shape(v)) throw ShapeError("snr_db: shapes disagree");
    const DenseMatrix noise = elementwise(v, vhat, ElementwiseOp::sub);
    const double noise_norm = frobenius_norm(noise);
    if (noise_norm == 0.0) throw NumericError("snr_db: V equals Vhat, SNR undefined");
    return 20.0 * std::log10(frobenius_norm(vhat) / noise_norm);
}

HoldoutDivergence normalized_divergence(const DenseMatrix& v, const DenseMatrix& vhat,
                                        const MaskMatrix& holdout, double beta) {
    if (!v.same_shape(vhat) || v.rows() != holdout.rows() || v.cols() != holdout.cols())
        throw ShapeError("normalized_divergence: shapes disagree");
    HoldoutDivergence out;
    double sum = 0.0;
    auto a = v.data();
    auto b = vhat.data();
    auto m = holdout.values().data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (m[i] == 0.0) continue;
        try {
            sum += d_beta(a[i], b[i], beta);
            ++out.evaluated;
        } catch (const NumericError&) {
            ++out.skipped;
        }
    }
    if (out.evaluated == 0 && out.skipped == 0)
        throw NumericError("normalized_divergence: empty holdout set");
    out.value = out.evaluated > 0 ? sum / static_cast<double>(out.evaluated) : 0.0;
    return out;
}

std::vector<ComponentRecord> component_summary(const DenseMatrix& w, const DenseMatrix& h,
                                               const std::vector<double>* lambda) {
    if (w.cols() != h.rows())
        throw ShapeError("component_summary: W columns and H rows disagree");
    if (lambda && lambda->size() != w.cols())
        throw ShapeError("component_summary: lambda length disagrees");

    const std::size_t k = w.cols();
    std::vector<ComponentRecord> records(k);
    for (std::size_t j = 0; j < k; ++j) {
        records[j].index = j;
        if (lambda) {
            records[j].relevance = (*lambda)[j];
        } else {
            double s = 0.0;
            for (std::size_t n = 0; n < h.cols(); ++n) s += h(j, n) * h(j, n);
            records[j].relevance = 0.5 * s;
        }
        // Population std of the rank-one reconstruction w_j h_j. Its entries
        // are products, so moments factor across the two vectors.
        double mean_w = 0.0, sq_w = 0.0, mean_h = 0.0, sq_h = 0.0;
        for (std::size_t f = 0; f < w.rows(); ++f) {
            mean_w += w(f, j);
            sq_w += w(f, j) * w(f, j);
        }
        for (std::size_t n = 0; n < h.cols(); ++n) {
            mean_h += h(j, n);
            sq_h += h(j, n) * h(j, n);
        }
        mean_w /= static_cast<double>(w.rows());
        mean_h /= static_cast<double>(h.cols());
        const double mean_sq = (sq_w / static_cast<double>(w.rows())) *
                               (sq_h / static_cast<double>(h.cols()));
        const double mean = mean_w * mean_h;
        const double var = std::max(0.0, mean_sq - mean * mean);
        records[j].stddev = std::sqrt(var);
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const ComponentRecord& a, const ComponentRecord& b) {
                         return a.relevance > b.relevance;
                     });
    return records;
}

}  // namespace ardnmf

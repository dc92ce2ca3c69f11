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

#include <vector>

#include "ardnmf/matrix.hpp"

namespace ardnmf {

/// 20 log10(||Vhat||_F / ||V - Vhat||_F). Throws when V == Vhat.
double snr_db(const DenseMatrix& vhat, const DenseMatrix& v);

/// Mean per-entry beta-divergence over the holdout set (mask = 1 marks a
/// held-out entry). Entries whose (v, vhat) violate the divergence domain
/// are skipped and counted instead of aborting the evaluation.
struct HoldoutDivergence {
    double value = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

HoldoutDivergence normalized_divergence(const DenseMatrix& v, const DenseMatrix& vhat,
                                        const MaskMatrix& holdout, double beta);

/// Per-component report row: relevance is the supplied lambda_k, or the NMF
/// surrogate 0.5*||h_k||^2 when none is given; stddev is the standard
/// deviation of the rank-one reconstruction w_k h_k over all its entries.
struct ComponentRecord {
    std::size_t index = 0;
    double relevance = 0.0;
    double stddev = 0.0;
};

/// Sorted by descending relevance; ties break by ascending component index.
std::vector<ComponentRecord> component_summary(const DenseMatrix& w, const DenseMatrix& h,
                                               const std::vector<double>* lambda = nullptr);

}  // namespace ardnmf

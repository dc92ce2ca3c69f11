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

// Internals shared by the plain-NMF and ARD fit loops.

#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "ardnmf/matrix.hpp"
#include "ardnmf/rng.hpp"

namespace ardnmf::detail {

/// Mean of V over observed entries (all entries when mask is null).
double observed_mean(const DenseMatrix& v, const MaskMatrix* mask);

/// Seeded initialization: W, H entries i.i.d. uniform on (0,1], then both
/// rescaled by the same factor so that mean(WH) equals v_mean. Keeps the
/// initial vtilde on the data's scale, which the power exponents need for
/// beta far from [0,2].
std::pair<DenseMatrix, DenseMatrix> init_wh(std::size_t f, std::size_t n, std::size_t k,
                                            std::uint64_t seed, double v_mean);

void floor_in_place(DenseMatrix& m, double floor);

/// Rejects negative data, and nonpositive observed data when beta <= 0
/// (where the divergence is undefined at x = 0).
void validate_data(const DenseMatrix& v, double beta, const MaskMatrix* mask);

/// max_k |(a_k - b_k)/b_k|, with the 0/0 case counting as no change.
double relative_change(std::span<const double> a, std::span<const double> b);

}  // namespace ardnmf::detail

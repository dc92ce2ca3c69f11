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

#include "ardnmf/ard_solver.hpp"
#include "ardnmf/datagen.hpp"
#include "ardnmf/matrix.hpp"

namespace ardnmf {

/// Mean of V over observed entries (all entries without a mask). Missing
/// entries carry no scale information and are excluded.
double sample_mean(const DenseMatrix& v, const MaskMatrix* mask = nullptr);

/// Prior mean of a reconstruction entry vhat_fn under the hierarchical
/// model: 2Kb / (pi (a-1)) for the Half-Normal (L2) pairing, requires
/// a > 1; K b^2 / ((a-1)(a-2)) for the Exponential (L1) pairing, requires
/// a > 2. Out-of-range a throws (the moment does not exist).
double prior_mean_vhat(std::size_t k, double a, double b, PenaltyKind penalty);

/// Method-of-moments scale: the b with prior_mean_vhat(K, a, b) = mu_hat.
///   L2: b = pi (a-1) mu_hat / (2K)
///   L1: b = sqrt((a-1)(a-2) mu_hat / K)
double select_b(double mu_hat, std::size_t k, double a, PenaltyKind penalty);

/// Dispersion presets where beta has a generative reading:
/// beta=2 gaussian -> sigma^2, beta=1 poisson -> 1, beta=0 gamma -> 1/alpha.
/// `family_param` is sigma for gaussian and alpha for gamma (ignored for
/// poisson). Any other (beta, family) combination throws; the caller must
/// supply phi explicitly there.
double phi_preset(double beta, NoiseFamily family, double family_param);

}  // namespace ardnmf

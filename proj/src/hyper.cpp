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

#include "ardnmf/hyper.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "src/fit_internal.hpp"

namespace ardnmf {

double sample_mean(const DenseMatrix& v, const MaskMatrix* mask) {
    return detail::observed_mean(v, mask);
}

double prior_mean_vhat(std::size_t k, double a, double b, PenaltyKind penalty) {
    if (k < 1) throw NumericError("prior_mean_vhat: K must be >= 1");
    if (b <= 0.0) throw NumericError("prior_mean_vhat: b must be positive");
    const double kd = static_cast<double>(k);
    if (penalty == PenaltyKind::l2) {
        if (a <= 1.0)
            throw NumericError("prior_mean_vhat: Half-Normal pairing needs a > 1, got a=" +
                               std::to_string(a));
        return 2.0 * kd * b / (std::numbers::pi * (a - 1.0));
    }
    if (a <= 2.0)
        throw NumericError("prior_mean_vhat: Exponential pairing needs a > 2, got a=" +
                           std::to_string(a));
    return kd * b * b / ((a - 1.0) * (a - 2.0));
}

double select_b(double mu_hat, std::size_t k, double a, PenaltyKind penalty) {
    if (mu_hat <= 0.0) throw NumericError("select_b: sample mean must be positive");
    if (k < 1) throw NumericError("select_b: K must be >= 1");
    const double kd = static_cast<double>(k);
    if (penalty == PenaltyKind::l2) {
        if (a <= 1.0)
            throw NumericError("select_b: L2 selection needs a > 1, got a=" +
                               std::to_string(a));
        return std::numbers::pi * (a - 1.0) * mu_hat / (2.0 * kd);
    }
    if (a <= 2.0)
        throw NumericError("select_b: L1 selection needs a > 2, got a=" + std::to_string(a));
    return std::sqrt((a - 1.0) * (a - 2.0) * mu_hat / kd);
}

double phi_preset(double beta, NoiseFamily family, double family_param) {
    if (beta == 2.0 && family == NoiseFamily::gaussian) {
        if (family_param <= 0.0) throw NumericError("phi_preset: sigma must be positive");
        return family_param * family_param;
    }
    if (beta == 1.0 && family == NoiseFamily::poisson) return 1.0;
    if (beta == 0.0 && family == NoiseFamily::gamma_multiplicative) {
        if (family_param <= 0.0) throw NumericError("phi_preset: alpha must be positive");
        return 1.0 / family_param;
    }
    throw NumericError("phi_preset: no generative preset for beta=" + std::to_string(beta) +
                       " with family " + noise_family_name(family) +
                       "; supply phi explicitly");
}

}  // namespace ardnmf

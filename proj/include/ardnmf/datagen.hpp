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

#include <cstdint>

#include "ardnmf/ard_solver.hpp"
#include "ardnmf/matrix.hpp"
#include "ardnmf/rng.hpp"

namespace ardnmf {

/// Observation noise families matched to beta = 0, 1, 2 respectively.
enum class NoiseFamily { gamma_multiplicative, poisson, gaussian };

const char* noise_family_name(NoiseFamily f);
NoiseFamily noise_family_from_name(const std::string& name);

struct NoiseSpec {
    NoiseFamily family = NoiseFamily::gaussian;
    double target_snr_db = 10.0;
};

/// Model-generated factorization: lambda ~ inverse-Gamma(a,b), W and H
/// elementwise from the penalty-matched prior given their component's
/// lambda, Vhat = W H.
struct GroundTruth {
    DenseMatrix w;
    DenseMatrix h;
    DenseMatrix vhat;
    std::vector<double> lambda;
};

/// Noisy data plus the resolved noise parameter: sigma (gaussian),
/// alpha (gamma shape) or s (poisson count scale). `dispersion` is the
/// matching Tweedie dispersion of the generated channel (sigma^2, 1/alpha,
/// 1/s), the phi a correctly-specified fit should use. Gaussian noise can
/// go negative; such entries are clipped to zero and counted.
struct NoisyData {
    DenseMatrix v;
    double family_param = 0.0;
    double dispersion = 1.0;
    std::size_t clipped = 0;
};

/// Torso / limb supports of the swimmer corpus as 0/1 indicator images
/// (one column per part, 1024 rows). The 16 limb variants and the torso
/// have pairwise disjoint supports.
struct SwimmerParts {
    DenseMatrix torso;  ///< 1024 x 1
    DenseMatrix limbs;  ///< 1024 x 16, limb-major: limb L position P at column 4L+P
};

double sample_inverse_gamma(double a, double b, RngStream& rng);
double sample_half_normal(double lambda, RngStream& rng);
double sample_exponential(double lambda, RngStream& rng);

GroundTruth gen_ground_truth(std::size_t f, std::size_t n, std::size_t k_true, double a_true,
                             double b_true, PenaltyKind prior, RngStream& rng);

/// Applies the requested noise family with the parameter solved in closed
/// form so the expected SNR (20 log10 ||Vhat||_F / ||V - Vhat||_F) hits the
/// target:
///   gaussian: sigma = ||Vhat||_F / (sqrt(FN) 10^(SNR/20)),
///   gamma:    alpha = 10^(SNR/10), v = vhat * g with g ~ Gamma(alpha, mean 1),
///   poisson:  V = P(s Vhat)/s with s = 10^(SNR/10) sum(vhat) / ||Vhat||_F^2
///             (expected noise power sum(vhat)/s).
NoisyData add_noise(const DenseMatrix& vhat, const NoiseSpec& spec, RngStream& rng);

SwimmerParts swimmer_parts();

/// The swimmer corpus: 256 vectorized 32x32 images (columns), one per
/// combination of the four limbs' four positions over a fixed torso.
/// Pixels take background_value off-body and body_value on the torso and
/// the selected limbs. Pass an RngStream to Poisson-corrupt every pixel.
DenseMatrix gen_swimmer(double body_value, double background_value,
                        RngStream* noise_rng = nullptr);

/// Uniform random mask with exactly round(missing_fraction * F * N) zeros.
MaskMatrix gen_mask(std::size_t f, std::size_t n, double missing_fraction, RngStream& rng);

}  // namespace ardnmf

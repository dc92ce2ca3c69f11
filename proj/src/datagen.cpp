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

#include "ardnmf/datagen.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <cmath>
#include <numeric>

namespace ardnmf {

const char* noise_family_name(NoiseFamily f) {
    switch (f) {
        case NoiseFamily::gamma_multiplicative: return "gamma";
        case NoiseFamily::poisson: return "poisson";
        case NoiseFamily::gaussian: return "gaussian";
    }
    return "?";
}

NoiseFamily noise_family_from_name(const std::string& name) {
    if (name == "gamma") return NoiseFamily::gamma_multiplicative;
    if (name == "poisson") return NoiseFamily::poisson;
    if (name == "gaussian") return NoiseFamily::gaussian;
    throw NumericError("unknown noise family '" + name + "' (gamma|poisson|gaussian)");
}

double sample_inverse_gamma(double a, double b, RngStream& rng) {
    if (a <= 0.0 || b <= 0.0)
        throw NumericError("sample_inverse_gamma: a and b must be positive");
    return b / rng.gamma(a, 1.0);
}

double sample_half_normal(double lambda, RngStream& rng) {
    if (lambda <= 0.0) throw NumericError("sample_half_normal: lambda must be positive");
    return std::abs(rng.normal()) * std::sqrt(lambda);
}

double sample_exponential(double lambda, RngStream& rng) {
    if (lambda <= 0.0) throw NumericError("sample_exponential: lambda must be positive");
    return -lambda * std::log(rng.uniform_pos());
}

GroundTruth gen_ground_truth(std::size_t f, std::size_t n, std::size_t k_true, double a_true,
                             double b_true, PenaltyKind prior, RngStream& rng) {
    if (f < 1 || n < 1 || k_true < 1)
        throw NumericError("gen_ground_truth: F, N, K_true must be >= 1");
    GroundTruth gt;
    gt.lambda.resize(k_true);
    for (double& lam : gt.lambda) lam = sample_inverse_gamma(a_true, b_true, rng);

    gt.w = DenseMatrix(f, k_true);
    gt.h = DenseMatrix(k_true, n);
    auto draw = [&](double lam) {
        return prior == PenaltyKind::l2 ? sample_half_normal(lam, rng)
                                        : sample_exponential(lam, rng);
    };
    for (std::size_t k = 0; k < k_true; ++k)
        for (std::size_t i = 0; i < f; ++i) gt.w(i, k) = draw(gt.lambda[k]);
    for (std::size_t k = 0; k < k_true; ++k)
        for (std::size_t j = 0; j < n; ++j) gt.h(k, j) = draw(gt.lambda[k]);
    gt.vhat = matmul(gt.w, gt.h);
    return gt;
}

NoisyData add_noise(const DenseMatrix& vhat, const NoiseSpec& spec, RngStream& rng) {
    const std::size_t count = vhat.size();
    if (count == 0) throw NumericError("add_noise: empty matrix");
    const double norm = frobenius_norm(vhat);
    if (norm == 0.0) throw NumericError("add_noise: target SNR unreachable on all-zero Vhat");

    NoisyData out;
    out.v = DenseMatrix(vhat.rows(), vhat.cols());
    auto in = vhat.data();
    auto ov = out.v.data();

    switch (spec.family) {
        case NoiseFamily::gaussian: {
            // sigma0 solves FN sigma^2 = ||Vhat||^2 10^(-SNR/10); clipping
            // negatives to zero removes noise power, so the expected
            // post-clip noise per entry is
            //   E (clip(v+X) - v)^2 = sigma^2 (Phi(t) - t phi(t)) + v^2 (1 - Phi(t)),
            // t = v/sigma. Bisect up from sigma0 so the expectation still
            // lands on the target.
            const double target_power =
                norm * norm * std::pow(10.0, -spec.target_snr_db / 10.0);
            const double sigma0 =
                norm / (std::sqrt(static_cast<double>(count)) *
                        std::pow(10.0, spec.target_snr_db / 20.0));
            auto clipped_power = [&](double sigma) {
                double total = 0.0;
                for (double v : in) {
                    const double t = v / sigma;
                    const double cdf = 0.5 * std::erfc(-t / std::numbers::sqrt2);
                    const double pdf =
                        std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
                    total += sigma * sigma * (cdf - t * pdf) + v * v * (1.0 - cdf);
                }
                return total;
            };
            double lo = sigma0, hi = sigma0;
            while (clipped_power(hi) < target_power) hi *= 2.0;
            for (int step = 0; step < 200 && hi - lo > 1e-14 * hi; ++step) {
                const double mid = 0.5 * (lo + hi);
                (clipped_power(mid) < target_power ? lo : hi) = mid;
            }
            const double sigma = 0.5 * (lo + hi);
            out.family_param = sigma;
            out.dispersion = sigma * sigma;
            for (std::size_t i = 0; i < count; ++i) {
                const double v = in[i] + sigma * rng.normal();
                if (v < 0.0) {
                    ov[i] = 0.0;
                    ++out.clipped;
                } else {
                    ov[i] = v;
                }
            }
            break;
        }
        case NoiseFamily::gamma_multiplicative: {
            const double alpha = std::pow(10.0, spec.target_snr_db / 10.0);
            out.family_param = alpha;
            out.dispersion = 1.0 / alpha;
            for (std::size_t i = 0; i < count; ++i) {
                if (in[i] < 0.0) throw NumericError("add_noise: negative Vhat entry");
                ov[i] = in[i] * rng.gamma(alpha, 1.0 / alpha);
            }
            break;
        }
        case NoiseFamily::poisson: {
            double total = 0.0;
            for (double x : in) {
                if (x < 0.0) throw NumericError("add_noise: negative Vhat entry");
                total += x;
            }
            // E||V - Vhat||_F^2 = sum(vhat)/s, so s below makes the expected
            // SNR hit the target exactly.
            const double s =
                std::pow(10.0, spec.target_snr_db / 10.0) * total / (norm * norm);
            if (!(s > 0.0) || !std::isfinite(s))
                throw NumericError("add_noise: poisson scale unresolvable for this Vhat");
            out.family_param = s;
            out.dispersion = 1.0 / s;
            for (std::size_t i = 0; i < count; ++i)
                ov[i] = static_cast<double>(rng.poisson(s * in[i])) / s;
            break;
        }
    }
    return out;
}

namespace {

constexpr std::size_t kImageDim = 32;
constexpr std::size_t kTorsoCol = 16;
constexpr std::size_t kTorsoTop = 10;
constexpr std::size_t kTorsoBottom = 21;  // inclusive; 12 pixels tall
constexpr std::size_t kLimbLen = 6;

struct Pixel {
    int r;
    int c;
};

// Limb L, position P: six pixels along a lattice ray anchored one step off
// the torso end. Rays are chosen so that all 16 (limb, position) supports
// are pairwise disjoint and never touch the torso column.
std::array<Pixel, kLimbLen> limb_pixels(std::size_t limb, std::size_t pos) {
    // Virtual anchors sit beside the torso ends: top-left, top-right,
    // bottom-left, bottom-right.
    static constexpr Pixel anchors[4] = {
        {static_cast<int>(kTorsoTop), static_cast<int>(kTorsoCol) - 1},
        {static_cast<int>(kTorsoTop), static_cast<int>(kTorsoCol) + 1},
        {static_cast<int>(kTorsoBottom), static_cast<int>(kTorsoCol) - 1},
        {static_cast<int>(kTorsoBottom), static_cast<int>(kTorsoCol) + 1},
    };
    // Directions per limb: out, diagonal away, along the column beside the
    // torso, diagonal toward the middle (0, 45, 90, 135 degrees).
    static constexpr Pixel dirs[4][4] = {
        {{0, -1}, {-1, -1}, {-1, 0}, {1, -1}},  // top-left
        {{0, 1}, {-1, 1}, {-1, 0}, {1, 1}},     // top-right
        {{0, -1}, {1, -1}, {1, 0}, {-1, -1}},   // bottom-left
        {{0, 1}, {1, 1}, {1, 0}, {-1, 1}},      // bottom-right
    };
    const Pixel anchor = anchors[limb];
    const Pixel d = dirs[limb][pos];
    std::array<Pixel, kLimbLen> px{};
    for (std::size_t i = 0; i < kLimbLen; ++i)
        px[i] = Pixel{anchor.r + d.r * static_cast<int>(i + 1),
                      anchor.c + d.c * static_cast<int>(i + 1)};
    return px;
}

std::size_t flat(const Pixel& p) {
    return static_cast<std::size_t>(p.r) * kImageDim + static_cast<std::size_t>(p.c);
}

}  // namespace

SwimmerParts swimmer_parts() {
    SwimmerParts parts;
    parts.torso = DenseMatrix(kImageDim * kImageDim, 1);
    for (std::size_t r = kTorsoTop; r <= kTorsoBottom; ++r)
        parts.torso(r * kImageDim + kTorsoCol, 0) = 1.0;

    parts.limbs = DenseMatrix(kImageDim * kImageDim, 16);
    for (std::size_t limb = 0; limb < 4; ++limb)
        for (std::size_t pos = 0; pos < 4; ++pos)
            for (const Pixel& p : limb_pixels(limb, pos))
                parts.limbs(flat(p), limb * 4 + pos) = 1.0;
    return parts;
}

DenseMatrix gen_swimmer(double body_value, double background_value, RngStream* noise_rng) {
    if (!(body_value > background_value) || background_value < 0.0)
        throw NumericError("gen_swimmer: requires body > background >= 0");
    const SwimmerParts parts = swimmer_parts();
    const std::size_t f = kImageDim * kImageDim;
    DenseMatrix v(f, 256, background_value);

    for (std::size_t img = 0; img < 256; ++img) {
        // Base-4 digits of the image index pick each limb's position.
        const std::size_t pos[4] = {img % 4, (img / 4) % 4, (img / 16) % 4, (img / 64) % 4};
        for (std::size_t i = 0; i < f; ++i)
            if (parts.torso(i, 0) == 1.0) v(i, img) = body_value;
        for (std::size_t limb = 0; limb < 4; ++limb)
            for (const Pixel& p : limb_pixels(limb, pos[limb])) v(flat(p), img) = body_value;
    }

    if (noise_rng)
        for (double& x : v.data()) x = static_cast<double>(noise_rng->poisson(x));
    return v;
}

MaskMatrix gen_mask(std::size_t f, std::size_t n, double missing_fraction, RngStream& rng) {
    if (missing_fraction < 0.0 || missing_fraction >= 1.0)
        throw NumericError("gen_mask: missing fraction must lie in [0, 1)");
    const std::size_t total = f * n;
    const std::size_t zeros =
        static_cast<std::size_t>(std::llround(missing_fraction * static_cast<double>(total)));

    // Fisher-Yates over the flat index set; first `zeros` slots go missing.
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = total - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
        std::swap(idx[i], idx[j]);
    }
    DenseMatrix m(f, n, 1.0);
    for (std::size_t i = 0; i < zeros; ++i) m.data()[idx[i]] = 0.0;
    return MaskMatrix(std::move(m));
}

}  // namespace ardnmf

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ardnmf/ard_solver.hpp"
#include "ardnmf/datagen.hpp"
#include "ardnmf/hyper.hpp"
#include "ardnmf/rng.hpp"

using namespace ardnmf;

namespace {

const std::vector<double> kBetaGrid = {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};

DenseMatrix random_positive(std::size_t r, std::size_t c, RngStream& rng, double lo = 0.1,
                            double hi = 2.0) {
    DenseMatrix m(r, c);
    for (double& x : m.data()) x = lo + (hi - lo) * rng.uniform01();
    return m;
}

}  // namespace

TEST_CASE("c_value formulas") {
    CHECK(c_value(50, 100, 50.0, PenaltyKind::l2) == 126.0);
    CHECK(c_value(50, 100, 50.0, PenaltyKind::l1) == 201.0);
    CHECK_THROWS_AS(c_value(0, 10, 1.0, PenaltyKind::l2), NumericError);
}

TEST_CASE("xi_exponent branch values") {
    CHECK(xi_exponent(2.0) == 1.0);
    CHECK(xi_exponent(0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(xi_exponent(3.0) == 0.5);
    CHECK(xi_exponent(1.0) == 0.5);
}

TEST_CASE("l2 penalized update") {
    std::vector<double> lambda = {1.0};

    // htilde=2, p=3, q=1, phi=1, lambda=1, beta=2: 2*(3/(1+2))^1 = 2.
    DenseMatrix ht(1, 1, {2});
    PqStats pq{DenseMatrix(1, 1, {3}), DenseMatrix(1, 1, {1})};
    CHECK(l2_update_h(ht, pq, lambda, 1.0, 2.0)(0, 0) == doctest::Approx(2.0));

    // htilde=1, p=4, q=1, phi=1, lambda=1, beta=0: (4/2)^(1/3).
    DenseMatrix h1(1, 1, {1});
    PqStats pq2{DenseMatrix(1, 1, {4}), DenseMatrix(1, 1, {1})};
    CHECK(l2_update_h(h1, pq2, lambda, 1.0, 0.0)(0, 0) ==
          doctest::Approx(std::pow(2.0, 1.0 / 3.0)));

    // Huge lambda: the penalty vanishes and beta=2 reduces to the plain
    // Euclidean multiplicative update htilde * p / q.
    std::vector<double> huge = {1e300};
    CHECK(l2_update_h(ht, pq, huge, 1.0, 2.0)(0, 0) == doctest::Approx(6.0));

    CHECK_THROWS_AS(l2_update_h(ht, pq, std::vector<double>{-1.0}, 1.0, 2.0), NumericError);
}

TEST_CASE("l1 penalized update") {
    std::vector<double> lambda = {1.0};

    // htilde=2, p=3, q=1, phi=1, lambda=1, beta=1: 2*(3/2)^1 = 3.
    DenseMatrix ht(1, 1, {2});
    PqStats pq{DenseMatrix(1, 1, {3}), DenseMatrix(1, 1, {1})};
    CHECK(l1_update_h(ht, pq, lambda, 1.0, 1.0)(0, 0) == doctest::Approx(3.0));

    // htilde=1, p=4, q=1, phi=2, lambda=1, beta=0: (4/3)^(1/2).
    DenseMatrix h1(1, 1, {1});
    PqStats pq2{DenseMatrix(1, 1, {4}), DenseMatrix(1, 1, {1})};
    CHECK(l1_update_h(h1, pq2, lambda, 2.0, 0.0)(0, 0) ==
          doctest::Approx(std::sqrt(4.0 / 3.0)));
}

TEST_CASE("l1 update with a vanishing penalty equals mm_update bit for bit") {
    RngStream rng(13);
    const DenseMatrix ht = random_positive(4, 6, rng);
    PqStats pq{random_positive(4, 6, rng), random_positive(4, 6, rng)};
    const std::vector<double> lambda(4, 1.0);
    for (double beta : kBetaGrid) {
        const DenseMatrix a = l1_update_h(ht, pq, lambda, 0.0, beta);
        const DenseMatrix b = mm_update(ht, pq, beta);
        CHECK(a == b);
    }
}

TEST_CASE("lambda update and its lower bound") {
    // Zero component: lambda attains exactly B = b/c.
    DenseMatrix w0(3, 1, 0.0);
    DenseMatrix h0(1, 2, 0.0);
    CHECK(update_lambda(w0, h0, 1.0, 4.0, PenaltyKind::l1)[0] == 0.25);
    CHECK(update_lambda(w0, h0, 1.0, 4.0, PenaltyKind::l2)[0] == 0.25);

    // L1: w=[1,2], h=[3], b=1, c=2 -> (3+3+1)/2.
    DenseMatrix w(2, 1, {1, 2});
    DenseMatrix h(1, 1, {3});
    CHECK(update_lambda(w, h, 1.0, 2.0, PenaltyKind::l1)[0] == doctest::Approx(3.5));

    // L2: w=[2], h=[2], b=2, c=4 -> (2+2+2)/4.
    DenseMatrix w2(1, 1, {2});
    DenseMatrix h2(1, 1, {2});
    CHECK(update_lambda(w2, h2, 2.0, 4.0, PenaltyKind::l2)[0] == doctest::Approx(1.5));
}

TEST_CASE("objective at zero factors and the profiling identity") {
    RngStream rng(31);
    const DenseMatrix v = random_positive(4, 5, rng);

    ArdConfig config;
    config.k = 3;
    config.beta = 2.0;
    config.phi = 2.0;
    config.a = 5.0;
    config.b = 1.5;
    config.penalty = PenaltyKind::l2;
    const double c = c_value(4, 5, config.a, config.penalty);
    const double bound = config.b / c;

    const DenseMatrix w0(4, 3, 0.0);
    const DenseMatrix h0(3, 5, 0.0);
    const std::vector<double> lam_b(3, bound);
    const double expected = 0.5 * frobenius_norm(v) * frobenius_norm(v) / config.phi +
                            3.0 * (c + c * std::log(bound));
    CHECK(objective(w0, h0, lam_b, v, config) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(objective_profiled(w0, h0, v, config) ==
          doctest::Approx(0.5 * frobenius_norm(v) * frobenius_norm(v) / config.phi +
                          c * 3.0 * std::log(config.b))
              .epsilon(1e-12));

    // Profiling identity on random instances, both penalties:
    // C(W,H,lambda*) = C_profiled(W,H) + K c (1 - log c).
    for (PenaltyKind penalty : {PenaltyKind::l1, PenaltyKind::l2}) {
        config.penalty = penalty;
        const double cc = c_value(4, 5, config.a, penalty);
        for (int trial = 0; trial < 100; ++trial) {
            const DenseMatrix w = random_positive(4, 3, rng);
            const DenseMatrix h = random_positive(3, 5, rng);
            const auto lam = update_lambda(w, h, config.b, cc, penalty);
            const double lhs = objective(w, h, lam, v, config);
            const double rhs = objective_profiled(w, h, v, config) +
                               3.0 * cc * (1.0 - std::log(cc));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }

    // Larger b can only increase the profiled penalty for fixed factors.
    const DenseMatrix w = random_positive(4, 3, rng);
    const DenseMatrix h = random_positive(3, 5, rng);
    ArdConfig bigger = config;
    bigger.b = config.b * 3.0;
    CHECK(objective_profiled(w, h, v, bigger) > objective_profiled(w, h, v, config));

    // An all-zero mask leaves only the penalty terms.
    config.penalty = PenaltyKind::l2;
    const MaskMatrix none{DenseMatrix(4, 5, 0.0)};
    const auto lam = update_lambda(w, h, config.b, c, config.penalty);
    double penalty_only = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        double fw = 0.0, fh = 0.0;
        for (std::size_t f = 0; f < 4; ++f) fw += 0.5 * w(f, k) * w(f, k);
        for (std::size_t n = 0; n < 5; ++n) fh += 0.5 * h(k, n) * h(k, n);
        penalty_only += (fw + fh + config.b) / lam[k] + c * std::log(lam[k]);
    }
    CHECK(objective(w, h, lam, v, config, &none) ==
          doctest::Approx(penalty_only).epsilon(1e-12));
}

TEST_CASE("compute_tol and k_eff") {
    CHECK(compute_tol(std::vector<double>{2.0, 1.0}, std::vector<double>{2.0, 1.0}) == 0.0);
    CHECK(compute_tol(std::vector<double>{2.0, 1.0}, std::vector<double>{1.0, 1.0}) == 1.0);
    CHECK(compute_tol(std::vector<double>{1.0000001, 1.0}, std::vector<double>{1.0, 1.0}) ==
          doctest::Approx(1e-7));

    const double b = 0.5;
    CHECK(k_eff(std::vector<double>{b, b, b}, b, 1e-7) == 0);
    CHECK(k_eff(std::vector<double>{b, 10.0 * b}, b, 1e-7) == 1);
    // Boundary is strict: tau/2 above the bound does not count.
    CHECK(k_eff(std::vector<double>{b * (1.0 + 0.5e-7)}, b, 1e-7) == 0);
}

TEST_CASE("scale indeterminacy: balanced penalties make s=1 stationary") {
    // Rescaling (w_k <- s w_k, h_k <- h_k / s) leaves the data term alone;
    // with ||w_k||_1 = ||h_k||_1 the profiled penalty is stationary at s=1.
    RngStream rng(47);
    DenseMatrix w = random_positive(4, 2, rng);
    DenseMatrix h = random_positive(2, 4, rng);
    const std::size_t k = 0;
    double wsum = 0.0, hsum = 0.0;
    for (std::size_t f = 0; f < 4; ++f) wsum += w(f, k);
    for (std::size_t n = 0; n < 4; ++n) hsum += h(k, n);
    for (std::size_t n = 0; n < 4; ++n) h(k, n) *= wsum / hsum;  // balance

    ArdConfig config;
    config.k = 2;
    config.beta = 2.0;
    config.a = 5.0;
    config.b = 1.0;
    config.penalty = PenaltyKind::l1;
    const DenseMatrix v = random_positive(4, 4, rng);

    auto profiled_at = [&](double s) {
        DenseMatrix ws = w, hs = h;
        for (std::size_t f = 0; f < 4; ++f) ws(f, k) *= s;
        for (std::size_t n = 0; n < 4; ++n) hs(k, n) /= s;
        // Keep the data term fixed: evaluate the penalty part only.
        return objective_profiled(ws, hs, matmul(ws, hs), config) -
               objective_profiled(w, h, matmul(ws, hs), config);
    };
    const double eps = 1e-6;
    const double derivative = (profiled_at(1.0 + eps) - profiled_at(1.0 - eps)) / (2.0 * eps);
    CHECK(std::abs(derivative) < 1e-5);
    // And an unbalanced component is not stationary.
    for (std::size_t n = 0; n < 4; ++n) h(k, n) *= 3.0;
    const double skewed = (profiled_at(1.0 + eps) - profiled_at(1.0 - eps)) / (2.0 * eps);
    CHECK(std::abs(skewed) > 1e-3);
}

TEST_CASE("ard_fit: one sweep under max_iter = 1 and monotone descent") {
    RngStream rng(88);
    const DenseMatrix v = random_positive(20, 30, rng, 0.05, 1.0);

    ArdConfig config;
    config.k = 4;
    config.a = 5.0;
    config.b = 2.0;
    config.tau = 1e-12;
    config.seed = 9;

    config.max_iter = 1;
    const ArdFit single = ard_fit(v, config);
    CHECK(single.report.iterations() == 1);
    CHECK(single.report.termination == Termination::iteration_cap);
    CHECK(single.state.iter == 1);

    config.max_iter = 120;
    for (PenaltyKind penalty : {PenaltyKind::l1, PenaltyKind::l2}) {
        config.penalty = penalty;
        for (double beta : kBetaGrid) {
            config.beta = beta;
            const ArdFit fit = ard_fit(v, config);
            const auto& obj = fit.report.objective_trace;
            for (std::size_t i = 1; i < obj.size(); ++i)
                CHECK(obj[i] <= obj[i - 1] + 1e-10 * (1.0 + std::abs(obj[i - 1])));

            // Lower bound holds after every lambda update.
            const double bound = config.b / c_value(20, 30, config.a, penalty);
            for (const auto& lam : fit.report.lambda_trace)
                for (double x : lam) CHECK(x >= bound - 1e-15);
        }
    }
}

TEST_CASE("pruning coherence: components at the bound have tiny norms") {
    // Rank-2 data with disjoint component supports (a dense random rank-2
    // positive matrix is close to rank one and may legitimately prune to a
    // single component). Fit with K=6; the pruned groups obey
    // ||w_k||_1 + ||h_k||_1 <= c tau B by lambda stationarity.
    RngStream rng(123);
    DenseMatrix w_true(15, 2, 0.0);
    for (std::size_t f = 0; f < 15; ++f)
        w_true(f, f < 8 ? 0 : 1) = 0.5 + 1.5 * rng.uniform01();
    const DenseMatrix h_true = random_positive(2, 25, rng, 0.5, 2.0);
    DenseMatrix v = matmul(w_true, h_true);

    ArdConfig config;
    config.k = 6;
    config.beta = 1.0;
    config.phi = 0.05;  // near-noiseless data: weigh the fit term up
    config.a = 10.0;
    config.tau = 1e-7;
    config.max_iter = 20000;
    config.seed = 3;
    config.penalty = PenaltyKind::l1;
    config.b = select_b(sample_mean(v), config.k, config.a, config.penalty);

    const ArdFit fit = ard_fit(v, config);
    const double c = c_value(15, 25, config.a, config.penalty);
    const double bound = config.b / c;
    REQUIRE(fit.report.termination == Termination::tolerance);
    CHECK(fit.report.k_eff == 2);

    for (std::size_t k = 0; k < config.k; ++k) {
        if ((fit.state.lambda[k] - bound) / bound > config.tau) continue;
        double norm1 = 0.0;
        for (std::size_t f = 0; f < 15; ++f) norm1 += fit.state.w(f, k);
        for (std::size_t n = 0; n < 25; ++n) norm1 += fit.state.h(k, n);
        CHECK(norm1 <= c * config.tau * bound);
    }
}

TEST_CASE("model-order recovery on a generated instance") {
    // One seed of the synthetic protocol: K_true=5, fit K=10 with the
    // matched penalty; the relevance weights should retain exactly five.
    RngStream rng(2024);
    const GroundTruth gt =
        gen_ground_truth(50, 100, 5, 50.0, 70.0, PenaltyKind::l1, rng);
    const NoisyData noisy =
        add_noise(gt.vhat, {NoiseFamily::poisson, 10.0}, rng);

    ArdConfig config;
    config.k = 10;
    config.beta = 1.0;
    config.phi = noisy.dispersion;  // the generated channel's true dispersion
    config.a = 50.0;
    config.tau = 1e-7;
    config.max_iter = 50000;
    config.seed = 3;
    config.penalty = PenaltyKind::l1;
    config.b = select_b(sample_mean(noisy.v), config.k, config.a, config.penalty);

    const ArdFit fit = ard_fit(noisy.v, config);
    CHECK(fit.report.termination == Termination::tolerance);
    CHECK(fit.report.k_eff == 5);
}

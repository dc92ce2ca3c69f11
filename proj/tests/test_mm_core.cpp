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

#include "ardnmf/divergence.hpp"
#include "ardnmf/mm_core.hpp"
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

TEST_CASE("gamma_exponent branch values") {
    CHECK(gamma_exponent(0.0) == 0.5);
    CHECK(gamma_exponent(1.5) == 1.0);
    CHECK(gamma_exponent(3.0) == 0.5);
    CHECK(gamma_exponent(1.0) == 1.0);
    CHECK(gamma_exponent(2.0) == 1.0);
    CHECK(gamma_exponent(-0.5) == doctest::Approx(0.4));
}

TEST_CASE("compute_pq reduces to W'V and W'(WH) at beta = 2") {
    RngStream rng(33);
    const DenseMatrix w = random_positive(6, 3, rng);
    const DenseMatrix h = random_positive(3, 5, rng);
    const DenseMatrix v = random_positive(6, 5, rng);

    const PqStats pq = compute_pq(w, h, v, 2.0);
    const DenseMatrix wt = transposed(w);
    const DenseMatrix p_ref = matmul(wt, v);
    const DenseMatrix q_ref = matmul(wt, matmul(w, h));
    for (std::size_t i = 0; i < pq.p.size(); ++i) {
        CHECK(pq.p.data()[i] == doctest::Approx(p_ref.data()[i]).epsilon(1e-12));
        CHECK(pq.q.data()[i] == doctest::Approx(q_ref.data()[i]).epsilon(1e-12));
    }
}

TEST_CASE("compute_pq scalar instance and masked variants") {
    // 1x1x1: w=2, h=3, v=12, beta=1 -> vtilde=6, p = 2*12/6 = 4, q = 2.
    DenseMatrix w(1, 1, {2});
    DenseMatrix h(1, 1, {3});
    DenseMatrix v(1, 1, {12});
    const PqStats pq = compute_pq(w, h, v, 1.0);
    CHECK(pq.p(0, 0) == doctest::Approx(4.0));
    CHECK(pq.q(0, 0) == doctest::Approx(2.0));

    MaskMatrix none{DenseMatrix(1, 1, 0.0)};
    const PqStats masked = compute_pq(w, h, v, 1.0, &none);
    CHECK(masked.p(0, 0) == 0.0);
    CHECK(masked.q(0, 0) == 0.0);

    // Singular vtilde at an observed entry.
    DenseMatrix w0(1, 1, {0.0});
    CHECK_THROWS_AS(compute_pq(w0, h, v, 1.0), NumericError);
    // ... but tolerated where masked out.
    CHECK_NOTHROW(compute_pq(w0, h, v, 1.0, &none));
}

TEST_CASE("mm_update fixed point, hand values, zero-locking") {
    DenseMatrix h(1, 1, {3});

    PqStats fixed{DenseMatrix(1, 1, {1.7}), DenseMatrix(1, 1, {1.7})};
    for (double beta : kBetaGrid) CHECK(mm_update(h, fixed, beta)(0, 0) == 3.0);

    PqStats pq{DenseMatrix(1, 1, {4}), DenseMatrix(1, 1, {2})};
    CHECK(mm_update(h, pq, 1.0)(0, 0) == doctest::Approx(6.0));
    CHECK(mm_update(h, pq, 0.0)(0, 0) == doctest::Approx(3.0 * std::sqrt(2.0)));

    DenseMatrix hz(1, 1, {0.0});
    CHECK(mm_update(hz, pq, 1.0)(0, 0) == 0.0);

    PqStats singular{DenseMatrix(1, 1, {4}), DenseMatrix(1, 1, {0})};
    CHECK_THROWS_AS(mm_update(h, singular, 1.0), NumericError);

    // Zeros stay locked across repeated updates with fresh statistics.
    RngStream rng(4);
    DenseMatrix hh = random_positive(3, 4, rng);
    hh(1, 2) = 0.0;
    const DenseMatrix w = random_positive(5, 3, rng);
    const DenseMatrix v = random_positive(5, 4, rng);
    for (int it = 0; it < 5; ++it)
        hh = mm_update(hh, compute_pq(w, hh, v, 1.5), 1.5);
    CHECK(hh(1, 2) == 0.0);
}

TEST_CASE("aux_gap is zero at the expansion point") {
    RngStream rng(8);
    const DenseMatrix w = random_positive(4, 2, rng);
    const DenseMatrix h = random_positive(2, 3, rng);
    const DenseMatrix v = random_positive(4, 3, rng);
    for (double beta : kBetaGrid) {
        const auto [gap_g, gap_c] = aux_gap(h, h, w, v, beta);
        CHECK(gap_g == 0.0);
        CHECK(gap_c == 0.0);
    }
}

TEST_CASE("majorization: auxiliary gap dominates the cost gap") {
    // 200 random (W, V, Htilde, H) tuples per beta; includes the spec's
    // H = 1.1 * Htilde instance via the first scaled draw.
    RngStream rng(101);
    for (double beta : kBetaGrid) {
        for (int trial = 0; trial < 200; ++trial) {
            const DenseMatrix w = random_positive(3, 2, rng);
            const DenseMatrix v = random_positive(3, 4, rng);
            const DenseMatrix ht = random_positive(2, 4, rng);
            DenseMatrix h(2, 4);
            if (trial == 0) {
                h = ht;
                for (double& x : h.data()) x *= 1.1;
            } else {
                h = random_positive(2, 4, rng);
            }
            const auto [gap_g, gap_c] = aux_gap(h, ht, w, v, beta);
            CHECK(gap_g >= gap_c - 1e-10 * (1.0 + std::abs(gap_c)));
        }
    }
}

TEST_CASE("nmf_fit drives an exactly factorable matrix to zero cost") {
    RngStream rng(55);
    for (double beta : {0.0, 1.0, 2.0}) {
        const DenseMatrix w_true = random_positive(8, 1, rng, 0.5, 1.5);
        const DenseMatrix h_true = random_positive(1, 10, rng, 0.5, 1.5);
        const DenseMatrix v = matmul(w_true, h_true);

        NmfFitOptions opts;
        opts.k = 1;
        opts.beta = beta;
        opts.tau = 1e-12;
        opts.max_iter = 2000;
        opts.seed = 17;
        const NmfFit fit = nmf_fit(v, opts);
        CHECK(fit.report.objective_trace.back() < 1e-8);
    }
}

TEST_CASE("nmf_fit objective is non-increasing across the beta grid") {
    RngStream rng(202);
    const DenseMatrix v = random_positive(20, 30, rng, 0.05, 1.0);
    for (double beta : kBetaGrid) {
        NmfFitOptions opts;
        opts.k = 3;
        opts.beta = beta;
        opts.tau = 1e-14;  // run the full budget
        opts.max_iter = 100;
        opts.seed = 7;
        const NmfFit fit = nmf_fit(v, opts);
        const auto& obj = fit.report.objective_trace;
        REQUIRE(obj.size() == 100);
        for (std::size_t i = 1; i < obj.size(); ++i)
            CHECK(obj[i] <= obj[i - 1] + 1e-10 * (1.0 + std::abs(obj[i - 1])));
    }
}

TEST_CASE("iteration cap: max_iter = 1 runs exactly one sweep") {
    RngStream rng(3);
    const DenseMatrix v = random_positive(5, 6, rng);
    NmfFitOptions opts;
    opts.k = 2;
    opts.max_iter = 1;
    opts.seed = 1;
    const NmfFit fit = nmf_fit(v, opts);
    CHECK(fit.report.iterations() == 1);
    CHECK(fit.report.termination == Termination::iteration_cap);
}

TEST_CASE("w-column normalization preserves the objective path") {
    RngStream rng(77);
    const DenseMatrix v = random_positive(10, 12, rng);
    NmfFitOptions opts;
    opts.k = 3;
    opts.beta = 1.0;
    opts.max_iter = 50;
    opts.tau = 1e-14;
    opts.seed = 5;
    opts.normalize_w_columns = true;
    const NmfFit fit = nmf_fit(v, opts);
    for (std::size_t k = 0; k < 3; ++k) {
        double s = 0.0;
        for (std::size_t f = 0; f < 10; ++f) s += fit.w(f, k) * fit.w(f, k);
        CHECK(std::sqrt(s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto& obj = fit.report.objective_trace;
    for (std::size_t i = 1; i < obj.size(); ++i)
        CHECK(obj[i] <= obj[i - 1] + 1e-10 * (1.0 + std::abs(obj[i - 1])));
}

TEST_CASE("update machinery is symmetric under transposition") {
    // Updating W on V is the same arithmetic as updating the activations of
    // V' with dictionary H'. Mirror the update order on the transposed
    // problem and the objective paths must agree to reassociation error.
    RngStream rng(303);
    const DenseMatrix v = random_positive(6, 9, rng);
    const DenseMatrix vt = transposed(v);
    for (double beta : {0.0, 1.0, 2.5}) {
        DenseMatrix w = random_positive(6, 2, rng);
        DenseMatrix h = random_positive(2, 9, rng);
        DenseMatrix wt = transposed(w);  // plays H on the transposed problem
        DenseMatrix ht = transposed(h);  // plays W

        for (int iter = 0; iter < 20; ++iter) {
            // Forward problem: H update then W update.
            h = mm_update(h, compute_pq(w, h, v, beta), beta);
            DenseMatrix wt_fwd = transposed(w);
            wt_fwd = mm_update(wt_fwd, compute_pq(transposed(h), wt_fwd, vt, beta), beta);
            w = transposed(wt_fwd);

            // Transposed problem, mirrored order: its W-role (= H') first.
            DenseMatrix ht_upd = transposed(ht);
            ht_upd = mm_update(ht_upd, compute_pq(transposed(wt), ht_upd, v, beta), beta);
            ht = transposed(ht_upd);
            wt = mm_update(wt, compute_pq(ht, wt, vt, beta), beta);

            const double c_fwd = D_beta(v, matmul(w, h), beta);
            const double c_t = D_beta(vt, matmul(ht, wt), beta);
            CHECK(c_fwd == doctest::Approx(c_t).epsilon(1e-10));
        }
    }
}

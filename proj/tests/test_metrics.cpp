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

#include "ardnmf/divergence.hpp"
#include "ardnmf/metrics.hpp"
#include "ardnmf/rng.hpp"

using namespace ardnmf;

TEST_CASE("snr_db definition and scaling") {
    // ||Vhat|| = 10 ||V - Vhat|| -> 20 dB.
    DenseMatrix vhat(1, 1, {10.0});
    DenseMatrix v(1, 1, {11.0});
    CHECK(snr_db(vhat, v) == doctest::Approx(20.0).epsilon(1e-12));

    // V = 2 Vhat: signal and noise norms coincide -> 0 dB.
    DenseMatrix v2(1, 1, {20.0});
    CHECK(snr_db(vhat, v2) == doctest::Approx(0.0));

    CHECK_THROWS_AS(snr_db(vhat, vhat), NumericError);

    // Scaling the perturbation by c lowers the SNR by exactly 20 log10 c.
    RngStream rng(5);
    DenseMatrix base(4, 6), noise(4, 6);
    for (double& x : base.data()) x = rng.uniform_pos();
    for (double& x : noise.data()) x = rng.uniform_pos();
    auto perturbed = [&](double c) {
        DenseMatrix out = base;
        for (std::size_t i = 0; i < out.size(); ++i)
            out.data()[i] += c * noise.data()[i];
        return out;
    };
    const double c = 7.0;
    CHECK(snr_db(base, perturbed(1.0)) - snr_db(base, perturbed(c)) ==
          doctest::Approx(20.0 * std::log10(c)).epsilon(1e-10));
}

TEST_CASE("normalized divergence over a holdout set") {
    DenseMatrix v(2, 2, {2, 5, 7, 9});
    DenseMatrix vhat(2, 2, {1, 5, 7, 9});

    MaskMatrix all = MaskMatrix::all_ones(2, 2);
    CHECK(normalized_divergence(v, v, all, 1.0).value == 0.0);

    // Single held-out entry v=2, vhat=1, KL.
    MaskMatrix one{DenseMatrix(2, 2, {1, 0, 0, 0})};
    const auto r = normalized_divergence(v, vhat, one, 1.0);
    CHECK(r.value == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-12));
    CHECK(r.evaluated == 1);
    CHECK(r.skipped == 0);

    // Two entries -> arithmetic mean.
    MaskMatrix two{DenseMatrix(2, 2, {1, 1, 0, 0})};
    const auto r2 = normalized_divergence(v, vhat, two, 1.0);
    CHECK(r2.value == doctest::Approx(0.5 * (d_beta(2, 1, 1.0) + d_beta(5, 5, 1.0))));

    MaskMatrix none{DenseMatrix(2, 2, 0.0)};
    CHECK_THROWS_AS(normalized_divergence(v, vhat, none, 1.0), NumericError);
}

TEST_CASE("full-matrix holdout equals D_beta / (F N)") {
    RngStream rng(9);
    DenseMatrix v(5, 8), vhat(5, 8);
    for (double& x : v.data()) x = rng.uniform_pos() + 0.5;
    for (double& x : vhat.data()) x = rng.uniform_pos() + 0.5;
    MaskMatrix all = MaskMatrix::all_ones(5, 8);
    for (double beta : {0.0, 1.0, 2.0}) {
        const auto r = normalized_divergence(v, vhat, all, beta);
        CHECK(r.value == doctest::Approx(D_beta(v, vhat, beta) / 40.0).epsilon(1e-12));
    }
}

TEST_CASE("domain-violating holdout entries are skipped and counted") {
    DenseMatrix v(1, 2, {0.0, 3.0});   // v=0 is out of domain for IS
    DenseMatrix vhat(1, 2, {1.0, 1.0});
    MaskMatrix all = MaskMatrix::all_ones(1, 2);
    const auto r = normalized_divergence(v, vhat, all, 0.0);
    CHECK(r.skipped == 1);
    CHECK(r.evaluated == 1);
    CHECK(r.value == doctest::Approx(d_beta(3.0, 1.0, 0.0)));
}

TEST_CASE("component summary ordering and fallback relevance") {
    // Two components; H rows give NMF relevances 0.5*||h_k||^2.
    DenseMatrix w(3, 2, {1, 1, 1, 1, 1, 1});
    DenseMatrix h(2, 2, {1, 1, 3, 3});

    auto records = component_summary(w, h);
    REQUIRE(records.size() == 2);
    CHECK(records[0].index == 1);  // 0.5*18 beats 0.5*2
    CHECK(records[0].relevance == doctest::Approx(9.0));
    CHECK(records[1].relevance == doctest::Approx(1.0));

    // Supplied lambda wins over the fallback; [3,7] orders as (2nd, 1st).
    std::vector<double> lambda = {3.0, 7.0};
    records = component_summary(w, h, &lambda);
    CHECK(records[0].index == 1);
    CHECK(records[1].index == 0);

    // Ties keep ascending index order.
    std::vector<double> tied = {4.0, 4.0};
    records = component_summary(w, h, &tied);
    CHECK(records[0].index == 0);
    CHECK(records[1].index == 1);

    // All-zero component: zero relevance, zero spread.
    DenseMatrix w0(3, 1, 0.0);
    DenseMatrix h0(1, 2, 0.0);
    const auto zero = component_summary(w0, h0);
    CHECK(zero[0].relevance == 0.0);
    CHECK(zero[0].stddev == 0.0);
}

TEST_CASE("component summary stddev matches direct evaluation") {
    RngStream rng(21);
    DenseMatrix w(4, 1), h(1, 5);
    for (double& x : w.data()) x = rng.uniform_pos();
    for (double& x : h.data()) x = rng.uniform_pos();

    const DenseMatrix rank1 = matmul(w, h);
    double mean = 0.0;
    for (double x : rank1.data()) mean += x;
    mean /= static_cast<double>(rank1.size());
    double var = 0.0;
    for (double x : rank1.data()) var += (x - mean) * (x - mean);
    var /= static_cast<double>(rank1.size());

    const auto records = component_summary(w, h);
    CHECK(records[0].stddev == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
}

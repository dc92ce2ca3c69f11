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
#include <span>
#include <vector>

#include "ardnmf/fit_report.hpp"
#include "ardnmf/matrix.hpp"
#include "ardnmf/mm_core.hpp"

namespace ardnmf {

/// Group penalty family: L1 pairs with Exponential priors on W and H,
/// L2 with Half-Normal priors.
enum class PenaltyKind { l1, l2 };

const char* penalty_name(PenaltyKind p);

struct ArdConfig {
    std::size_t k = 1;
    double beta = 2.0;
    double phi = 1.0;   ///< dispersion; data-fit weight is 1/phi
    double a = 5.0;     ///< relevance prior shape
    double b = 1.0;     ///< relevance prior scale (often chosen by hyper::select_b)
    double tau = 1e-7;  ///< relative-lambda stopping threshold, also the K_eff cutoff
    std::size_t max_iter = 10000;
    std::uint64_t seed = 0;
    PenaltyKind penalty = PenaltyKind::l1;
    double floor = 1e-15;
};

/// Solver state after a fit. lambda holds the per-component relevance
/// weights; every entry is at least B = b/c, the value a fully pruned
/// component attains.
struct ArdState {
    DenseMatrix w;
    DenseMatrix h;
    std::vector<double> lambda;
    std::size_t iter = 0;
    double tol = 0.0;
};

struct ArdFit {
    ArdState state;
    FitReport report;
};

/// Penalty-to-objective normalizer: (F+N)/2 + a + 1 for L2,
/// F + N + a + 1 for L1.
double c_value(std::size_t f, std::size_t n, double a, PenaltyKind penalty);

/// Exponent of the L2-penalized multiplicative update:
/// 1/(3-beta) for beta <= 2, 1/(beta-1) above.
double xi_exponent(double beta);

/// h_kn = htilde_kn * (p_kn / (q_kn + (phi/lambda_k) htilde_kn))^xi(beta).
DenseMatrix l2_update_h(const DenseMatrix& h_tilde, const PqStats& pq,
                        std::span<const double> lambda, double phi, double beta);

/// h_kn = htilde_kn * (p_kn / (q_kn + phi/lambda_k))^gamma(beta).
/// With phi/lambda_k = 0 this reduces to mm_update bit for bit.
DenseMatrix l1_update_h(const DenseMatrix& h_tilde, const PqStats& pq,
                        std::span<const double> lambda, double phi, double beta);

/// lambda_k = (f(w_k) + f(h_k) + b) / c with f = 0.5*||.||_2^2 (L2) or
/// ||.||_1 (L1); bounded below by B = b/c, attained at zero components.
std::vector<double> update_lambda(const DenseMatrix& w, const DenseMatrix& h, double b,
                                  double c, PenaltyKind penalty);

/// MAP objective C(W,H,lambda) up to its additive constant:
///   (1/phi) D_beta + sum_k [ (f(w_k)+f(h_k)+b)/lambda_k + c log lambda_k ].
double objective(const DenseMatrix& w, const DenseMatrix& h, std::span<const double> lambda,
                 const DenseMatrix& v, const ArdConfig& config,
                 const MaskMatrix* mask = nullptr);

/// lambda-profiled objective, constant K c (1 - log c) dropped:
///   (1/phi) D_beta + c sum_k log(f(w_k)+f(h_k)+b).
/// Satisfies objective(W,H,update_lambda(W,H)) = objective_profiled(W,H)
/// + K c (1 - log c).
double objective_profiled(const DenseMatrix& w, const DenseMatrix& h, const DenseMatrix& v,
                          const ArdConfig& config, const MaskMatrix* mask = nullptr);

/// max_k |(lambda_k - lambda_prev_k) / lambda_prev_k|
double compute_tol(std::span<const double> lambda, std::span<const double> lambda_prev);

/// Number of components with (lambda_k - B)/B strictly above tau.
std::size_t k_eff(std::span<const double> lambda, double lower_bound, double tau);

/// Group-ARD beta-NMF fit. Per iteration: penalized H update, penalized W
/// update (transposition symmetry, lambda repeated across rows), lambda
/// update, tolerance check against tau. lambda is initialized from the
/// initial (W, H) via update_lambda so the first penalized update sees a
/// data-consistent weight. The recorded objective is non-increasing.
ArdFit ard_fit(const DenseMatrix& v, const ArdConfig& config, const MaskMatrix* mask = nullptr,
               const DenseMatrix* w0 = nullptr, const DenseMatrix* h0 = nullptr);

}  // namespace ardnmf

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
#include <utility>

#include "ardnmf/fit_report.hpp"
#include "ardnmf/matrix.hpp"

namespace ardnmf {

/// The majorizer statistics for the activation update, both K x N:
///   p_kn = sum_f m_fn w_fk v_fn vtilde_fn^(beta-2)
///   q_kn = sum_f m_fn w_fk vtilde_fn^(beta-1)
/// with vtilde = W * Htilde and m = 1 where no mask is given.
struct PqStats {
    DenseMatrix p;
    DenseMatrix q;
};

struct NmfFitOptions {
    std::size_t k = 1;
    double beta = 2.0;
    double tau = 1e-7;
    std::size_t max_iter = 1000;
    std::uint64_t seed = 0;
    bool normalize_w_columns = false;
    /// Post-update floor on W and H entries; keeps vtilde strictly positive,
    /// which the p/q exponents need for beta < 2. Set to 0 to disable (then
    /// intentional zeros are preserved).
    double floor = 1e-15;
};

struct NmfFit {
    DenseMatrix w;
    DenseMatrix h;
    FitReport report;
};

/// Multiplicative-update exponent gamma(beta):
/// 1/(2-beta) for beta < 1, 1 on [1,2], 1/(beta-1) above 2.
double gamma_exponent(double beta);

PqStats compute_pq(const DenseMatrix& w, const DenseMatrix& h_tilde, const DenseMatrix& v,
                   double beta, const MaskMatrix* mask = nullptr);

/// h_kn = htilde_kn * (p_kn / q_kn)^gamma(beta). Zeros of Htilde are kept;
/// p = q = 0 is a fixed point (all-masked column). q = 0 with p > 0 and
/// htilde > 0 is singular and throws.
DenseMatrix mm_update(const DenseMatrix& h_tilde, const PqStats& pq, double beta);

/// Evaluates the auxiliary-function gap and the true-cost gap,
///   ( G(H|Htilde) - G(Htilde|Htilde),  C(H) - C(Htilde) )
/// with G the per-regime majorizer of C(H) = D_beta(V|WH), evaluated without
/// its additive constant (it cancels in the difference). Majorization means
/// the first component dominates the second.
std::pair<double, double> aux_gap(const DenseMatrix& h, const DenseMatrix& h_tilde,
                                  const DenseMatrix& w, const DenseMatrix& v, double beta);

/// Standard (unpenalized) beta-NMF. Alternates the multiplicative update on
/// H then, by transposition symmetry, on W. Stops when the relative change
/// of the surrogate relevances 0.5*||h_k||^2 drops below tau, or at the
/// iteration cap. Pass w0/h0 to override the seeded initialization
/// (uniform (0,1] entries, globally rescaled so mean(WH) = mean(V)).
NmfFit nmf_fit(const DenseMatrix& v, const NmfFitOptions& opts,
               const MaskMatrix* mask = nullptr, const DenseMatrix* w0 = nullptr,
               const DenseMatrix* h0 = nullptr);

}  // namespace ardnmf

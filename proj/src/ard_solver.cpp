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

#include "ardnmf/ard_solver.hpp"

#include <chrono>
#include <tuple>
#include <cmath>
#include <string>

#include "ardnmf/divergence.hpp"
#include "src/fit_internal.hpp"

namespace ardnmf {

const char* penalty_name(PenaltyKind p) { return p == PenaltyKind::l1 ? "l1" : "l2"; }

double c_value(std::size_t f, std::size_t n, double a, PenaltyKind penalty) {
    if (f < 1 || n < 1) throw NumericError("c_value: F and N must be >= 1");
    const double fn = static_cast<double>(f) + static_cast<double>(n);
    return penalty == PenaltyKind::l2 ? fn / 2.0 + a + 1.0 : fn + a + 1.0;
}

double xi_exponent(double beta) {
    return beta <= 2.0 ? 1.0 / (3.0 - beta) : 1.0 / (beta - 1.0);
}

namespace {

// Shared core of the two penalized updates; `denom_kn = q_kn + extra` where
// extra is (phi/lambda_k)*htilde_kn for L2 and phi/lambda_k for L1.
DenseMatrix penalized_update(const DenseMatrix& h_tilde, const PqStats& pq,
                             std::span<const double> lambda, double phi, double exponent,
                             bool scale_by_htilde) {
    if (!h_tilde.same_shape(pq.p) || !h_tilde.same_shape(pq.q))
        throw ShapeError("penalized update: Htilde and p/q shapes disagree");
    if (lambda.size() != h_tilde.rows())
        throw ShapeError("penalized update: lambda length disagrees with component count");
    DenseMatrix h(h_tilde.rows(), h_tilde.cols());
    for (std::size_t k = 0; k < h_tilde.rows(); ++k) {
        if (lambda[k] <= 0.0)
            throw NumericError("penalized update: lambda must be positive, got " +
                               std::to_string(lambda[k]));
        const double reg = phi / lambda[k];
        for (std::size_t n = 0; n < h_tilde.cols(); ++n) {
            const double ht = h_tilde(k, n);
            if (ht == 0.0) {
                h(k, n) = 0.0;
                continue;
            }
            const double denom = pq.q(k, n) + (scale_by_htilde ? reg * ht : reg);
            const double p = pq.p(k, n);
            if (denom == 0.0) {
                if (p == 0.0)
                    h(k, n) = ht;
                else
                    throw NumericError("penalized update: zero denominator with p > 0");
                continue;
            }
            h(k, n) = ht * detail::pow_fast(p / denom, exponent);
        }
    }
    return h;
}

double penalty_f(const double* x, std::size_t len, PenaltyKind penalty) {
    double s = 0.0;
    if (penalty == PenaltyKind::l2) {
        for (std::size_t i = 0; i < len; ++i) s += x[i] * x[i];
        return 0.5 * s;
    }
    for (std::size_t i = 0; i < len; ++i) s += x[i];
    return s;
}

// f(w_k) + f(h_k) for every component; W is F x K, H is K x N.
std::vector<double> group_penalties(const DenseMatrix& w, const DenseMatrix& h,
                                    PenaltyKind penalty) {
    if (w.cols() != h.rows())
        throw ShapeError("group penalties: W columns and H rows disagree");
    std::vector<double> out(w.cols(), 0.0);
    for (std::size_t k = 0; k < w.cols(); ++k) {
        double fw = 0.0;
        if (penalty == PenaltyKind::l2) {
            for (std::size_t f = 0; f < w.rows(); ++f) fw += w(f, k) * w(f, k);
            fw *= 0.5;
        } else {
            for (std::size_t f = 0; f < w.rows(); ++f) fw += w(f, k);
        }
        out[k] = fw + penalty_f(&h.data()[k * h.cols()], h.cols(), penalty);
    }
    return out;
}

double data_fit(const DenseMatrix& w, const DenseMatrix& h, const DenseMatrix& v,
                double beta, const MaskMatrix* mask) {
    const DenseMatrix vhat = matmul(w, h);
    return mask ? D_beta_masked(v, vhat, *mask, beta) : D_beta(v, vhat, beta);
}

void validate_config(const ArdConfig& config, std::size_t f, std::size_t n) {
    if (config.k < 1 || config.phi <= 0.0 || config.b <= 0.0 || config.tau <= 0.0 ||
        config.max_iter < 1)
        throw NumericError("ard_fit: config requires K >= 1, phi > 0, b > 0, tau > 0, "
                           "max_iter >= 1");
    if (c_value(f, n, config.a, config.penalty) <= 0.0)
        throw NumericError("ard_fit: derived c must be positive");
}

}  // namespace

DenseMatrix l2_update_h(const DenseMatrix& h_tilde, const PqStats& pq,
                        std::span<const double> lambda, double phi, double beta) {
    return penalized_update(h_tilde, pq, lambda, phi, xi_exponent(beta), true);
}

DenseMatrix l1_update_h(const DenseMatrix& h_tilde, const PqStats& pq,
                        std::span<const double> lambda, double phi, double beta) {
    return penalized_update(h_tilde, pq, lambda, phi, gamma_exponent(beta), false);
}

std::vector<double> update_lambda(const DenseMatrix& w, const DenseMatrix& h, double b,
                                  double c, PenaltyKind penalty) {
    if (c <= 0.0 || b <= 0.0) throw NumericError("update_lambda: b and c must be positive");
    std::vector<double> lam = group_penalties(w, h, penalty);
    for (double& x : lam) x = (x + b) / c;
    return lam;
}

double objective(const DenseMatrix& w, const DenseMatrix& h, std::span<const double> lambda,
                 const DenseMatrix& v, const ArdConfig& config, const MaskMatrix* mask) {
    const double c = c_value(v.rows(), v.cols(), config.a, config.penalty);
    const std::vector<double> fk = group_penalties(w, h, config.penalty);
    if (lambda.size() != fk.size())
        throw ShapeError("objective: lambda length disagrees with component count");
    double pen = 0.0;
    for (std::size_t k = 0; k < fk.size(); ++k) {
        if (lambda[k] <= 0.0) throw NumericError("objective: lambda must be positive");
        pen += (fk[k] + config.b) / lambda[k] + c * std::log(lambda[k]);
    }
    return data_fit(w, h, v, config.beta, mask) / config.phi + pen;
}

double objective_profiled(const DenseMatrix& w, const DenseMatrix& h, const DenseMatrix& v,
                          const ArdConfig& config, const MaskMatrix* mask) {
    const double c = c_value(v.rows(), v.cols(), config.a, config.penalty);
    const std::vector<double> fk = group_penalties(w, h, config.penalty);
    double pen = 0.0;
    for (double f : fk) pen += std::log(f + config.b);
    return data_fit(w, h, v, config.beta, mask) / config.phi + c * pen;
}

double compute_tol(std::span<const double> lambda, std::span<const double> lambda_prev) {
    if (lambda.size() != lambda_prev.size())
        throw ShapeError("compute_tol: lambda lengths disagree");
    return detail::relative_change(lambda, lambda_prev);
}

std::size_t k_eff(std::span<const double> lambda, double lower_bound, double tau) {
    if (lower_bound <= 0.0) throw NumericError("k_eff: lower bound B must be positive");
    std::size_t n = 0;
    for (double lam : lambda)
        if ((lam - lower_bound) / lower_bound > tau) ++n;
    return n;
}

ArdFit ard_fit(const DenseMatrix& v, const ArdConfig& config, const MaskMatrix* mask,
               const DenseMatrix* w0, const DenseMatrix* h0) {
    const std::size_t f = v.rows();
    const std::size_t n = v.cols();
    validate_config(config, f, n);
    detail::validate_data(v, config.beta, mask);

    const auto start = std::chrono::steady_clock::now();
    const double c = c_value(f, n, config.a, config.penalty);
    const double lower_bound = config.b / c;

    DenseMatrix w, h;
    if (w0 || h0) {
        if (!w0 || !h0) throw ShapeError("ard_fit: provide both W0 and H0 or neither");
        if (w0->rows() != f || w0->cols() != config.k || h0->rows() != config.k ||
            h0->cols() != n)
            throw ShapeError("ard_fit: W0/H0 shapes disagree with V and K");
        w = *w0;
        h = *h0;
    } else {
        std::tie(w, h) = detail::init_wh(f, n, config.k, config.seed,
                                         detail::observed_mean(v, mask));
    }
    detail::floor_in_place(w, config.floor);
    detail::floor_in_place(h, config.floor);

    const DenseMatrix vt = transposed(v);
    MaskMatrix mask_t;
    if (mask) mask_t = MaskMatrix(transposed(mask->values()));
    const MaskMatrix* mask_t_ptr = mask ? &mask_t : nullptr;

    const bool l1 = config.penalty == PenaltyKind::l1;
    std::vector<double> lambda = update_lambda(w, h, config.b, c, config.penalty);

    FitReport report;
    report.termination = Termination::iteration_cap;
    ArdState state;

    for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
        {
            const PqStats pq = compute_pq(w, h, v, config.beta, mask);
            h = l1 ? l1_update_h(h, pq, lambda, config.phi, config.beta)
                   : l2_update_h(h, pq, lambda, config.phi, config.beta);
            detail::floor_in_place(h, config.floor);
        }
        {
            DenseMatrix wt = transposed(w);
            const PqStats pq = compute_pq(transposed(h), wt, vt, config.beta, mask_t_ptr);
            wt = l1 ? l1_update_h(wt, pq, lambda, config.phi, config.beta)
                    : l2_update_h(wt, pq, lambda, config.phi, config.beta);
            w = transposed(wt);
            detail::floor_in_place(w, config.floor);
        }

        std::vector<double> lambda_new = update_lambda(w, h, config.b, c, config.penalty);
        const double tol = compute_tol(lambda_new, lambda);
        lambda = std::move(lambda_new);

        const double obj = objective(w, h, lambda, v, config, mask);
        if (!std::isfinite(obj))
            throw NumericError("ard_fit: non-finite objective at iteration " +
                               std::to_string(iter) + " (beta=" + std::to_string(config.beta) +
                               ", phi=" + std::to_string(config.phi) + ")");

        report.objective_trace.push_back(obj);
        report.tol_trace.push_back(tol);
        report.keff_trace.push_back(k_eff(lambda, lower_bound, config.tau));
        report.lambda_trace.push_back(lambda);
        state.iter = iter;
        state.tol = tol;

        if (tol < config.tau) {
            report.termination = Termination::tolerance;
            break;
        }
    }

    report.k_eff = k_eff(lambda, lower_bound, config.tau);
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    state.w = std::move(w);
    state.h = std::move(h);
    state.lambda = std::move(lambda);
    return ArdFit{std::move(state), std::move(report)};
}

}  // namespace ardnmf

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

#include "ardnmf/mm_core.hpp"

#include <chrono>
#include <tuple>
#include <cmath>
#include <string>

#include "ardnmf/divergence.hpp"
#include "src/fit_internal.hpp"

namespace ardnmf {

const char* termination_name(Termination t) {
    return t == Termination::tolerance ? "tolerance" : "iteration_cap";
}

double gamma_exponent(double beta) {
    if (beta < 1.0) return 1.0 / (2.0 - beta);
    if (beta <= 2.0) return 1.0;
    return 1.0 / (beta - 1.0);
}

PqStats compute_pq(const DenseMatrix& w, const DenseMatrix& h_tilde, const DenseMatrix& v,
                   double beta, const MaskMatrix* mask) {
    const std::size_t f = w.rows();
    const std::size_t k = w.cols();
    const std::size_t n = h_tilde.cols();
    if (h_tilde.rows() != k || v.rows() != f || v.cols() != n)
        throw ShapeError("compute_pq: W, Htilde, V shapes disagree");
    if (mask && (mask->rows() != f || mask->cols() != n))
        throw ShapeError("compute_pq: mask shape disagrees with V");

    DenseMatrix vtilde = matmul(w, h_tilde);

    // a_fn = m v vtilde^(beta-2), b_fn = m vtilde^(beta-1); fused to keep the
    // pass cheap and to skip masked-out singularities.
    DenseMatrix a(f, n), b(f, n);
    auto vt = vtilde.data();
    auto vd = v.data();
    auto ad = a.data();
    auto bd = b.data();
    const double* m = mask ? mask->values().data().data() : nullptr;
    for (std::size_t i = 0; i < vt.size(); ++i) {
        if (m && m[i] == 0.0) {
            ad[i] = 0.0;
            bd[i] = 0.0;
            continue;
        }
        if (vt[i] <= 0.0)
            throw NumericError("compute_pq: vtilde is " + std::to_string(vt[i]) +
                               " at an observed entry (flat index " + std::to_string(i) + ")");
        ad[i] = vd[i] * detail::pow_fast(vt[i], beta - 2.0);
        bd[i] = detail::pow_fast(vt[i], beta - 1.0);
    }

    DenseMatrix wt = transposed(w);
    return PqStats{matmul(wt, a), matmul(wt, b)};
}

DenseMatrix mm_update(const DenseMatrix& h_tilde, const PqStats& pq, double beta) {
    if (!h_tilde.same_shape(pq.p) || !h_tilde.same_shape(pq.q))
        throw ShapeError("mm_update: Htilde and p/q shapes disagree");
    const double g = gamma_exponent(beta);
    DenseMatrix h(h_tilde.rows(), h_tilde.cols());
    auto ht = h_tilde.data();
    auto p = pq.p.data();
    auto q = pq.q.data();
    auto out = h.data();
    for (std::size_t i = 0; i < ht.size(); ++i) {
        if (ht[i] == 0.0) {
            out[i] = 0.0;  // zero-locking of multiplicative updates
        } else if (q[i] == 0.0) {
            if (p[i] == 0.0)
                out[i] = ht[i];  // fully masked: stationary
            else
                throw NumericError("mm_update: q = 0 with p > 0 at flat index " +
                                   std::to_string(i));
        } else {
            out[i] = ht[i] * detail::pow_fast(p[i] / q[i], g);
        }
    }
    return h;
}

std::pair<double, double> aux_gap(const DenseMatrix& h, const DenseMatrix& h_tilde,
                                  const DenseMatrix& w, const DenseMatrix& v, double beta) {
    if (!h.same_shape(h_tilde)) throw ShapeError("aux_gap: H and Htilde shapes disagree");
    const PqStats pq = compute_pq(w, h_tilde, v, beta);

    // Majorizer without its additive constant; the constant cancels in
    // G(H|Ht) - G(Ht|Ht).
    auto eval_g = [&](const DenseMatrix& x) {
        double g = 0.0;
        auto xd = x.data();
        auto ht = h_tilde.data();
        auto p = pq.p.data();
        auto q = pq.q.data();
        for (std::size_t i = 0; i < xd.size(); ++i) {
            if (xd[i] <= 0.0 || ht[i] <= 0.0)
                throw NumericError("aux_gap: requires strictly positive H and Htilde");
            const double ratio = xd[i] / ht[i];
            if (beta < 1.0) {
                g += q[i] * xd[i] -
                     p[i] * ht[i] * std::pow(ratio, beta - 1.0) / (beta - 1.0);
            } else if (beta == 1.0) {
                g += q[i] * xd[i] - p[i] * ht[i] * std::log(ratio);
            } else if (beta <= 2.0) {
                g += q[i] * ht[i] * std::pow(ratio, beta) / beta -
                     p[i] * ht[i] * std::pow(ratio, beta - 1.0) / (beta - 1.0);
            } else {
                g += q[i] * ht[i] * std::pow(ratio, beta) / beta - p[i] * xd[i];
            }
        }
        return g;
    };

    const double gap_g = eval_g(h) - eval_g(h_tilde);
    const double gap_c =
        D_beta(v, matmul(w, h), beta) - D_beta(v, matmul(w, h_tilde), beta);
    return {gap_g, gap_c};
}

namespace {

std::vector<double> nmf_relevance(const DenseMatrix& h) {
    std::vector<double> lam(h.rows(), 0.0);
    for (std::size_t k = 0; k < h.rows(); ++k) {
        double s = 0.0;
        for (std::size_t n = 0; n < h.cols(); ++n) s += h(k, n) * h(k, n);
        lam[k] = 0.5 * s;
    }
    return lam;
}

void normalize_w_columns(DenseMatrix& w, DenseMatrix& h) {
    for (std::size_t k = 0; k < w.cols(); ++k) {
        double s = 0.0;
        for (std::size_t f = 0; f < w.rows(); ++f) s += w(f, k) * w(f, k);
        s = std::sqrt(s);
        if (s == 0.0) continue;
        for (std::size_t f = 0; f < w.rows(); ++f) w(f, k) /= s;
        for (std::size_t n = 0; n < h.cols(); ++n) h(k, n) *= s;
    }
}

}  // namespace

NmfFit nmf_fit(const DenseMatrix& v, const NmfFitOptions& opts, const MaskMatrix* mask,
               const DenseMatrix* w0, const DenseMatrix* h0) {
    if (opts.k < 1 || opts.tau <= 0.0 || opts.max_iter < 1)
        throw NumericError("nmf_fit: options require K >= 1, tau > 0, max_iter >= 1");
    detail::validate_data(v, opts.beta, mask);

    const auto start = std::chrono::steady_clock::now();
    const std::size_t f = v.rows();
    const std::size_t n = v.cols();

    DenseMatrix w, h;
    if (w0 || h0) {
        if (!w0 || !h0) throw ShapeError("nmf_fit: provide both W0 and H0 or neither");
        if (w0->rows() != f || w0->cols() != opts.k || h0->rows() != opts.k || h0->cols() != n)
            throw ShapeError("nmf_fit: W0/H0 shapes disagree with V and K");
        w = *w0;
        h = *h0;
    } else {
        std::tie(w, h) = detail::init_wh(f, n, opts.k, opts.seed,
                                         detail::observed_mean(v, mask));
    }
    detail::floor_in_place(w, opts.floor);
    detail::floor_in_place(h, opts.floor);

    const DenseMatrix vt = transposed(v);
    MaskMatrix mask_t;
    if (mask) mask_t = MaskMatrix(transposed(mask->values()));
    const MaskMatrix* mask_t_ptr = mask ? &mask_t : nullptr;

    std::vector<double> lam = nmf_relevance(h);
    FitReport report;
    report.termination = Termination::iteration_cap;

    for (std::size_t iter = 1; iter <= opts.max_iter; ++iter) {
        h = mm_update(h, compute_pq(w, h, v, opts.beta, mask), opts.beta);
        detail::floor_in_place(h, opts.floor);

        DenseMatrix wt = transposed(w);
        wt = mm_update(wt, compute_pq(transposed(h), wt, vt, opts.beta, mask_t_ptr),
                       opts.beta);
        w = transposed(wt);
        detail::floor_in_place(w, opts.floor);

        if (opts.normalize_w_columns) normalize_w_columns(w, h);

        std::vector<double> lam_new = nmf_relevance(h);
        const double tol = detail::relative_change(lam_new, lam);
        lam = std::move(lam_new);

        const DenseMatrix vhat = matmul(w, h);
        const double obj = mask ? D_beta_masked(v, vhat, *mask, opts.beta)
                                : D_beta(v, vhat, opts.beta);
        if (!std::isfinite(obj))
            throw NumericError("nmf_fit: non-finite objective at iteration " +
                               std::to_string(iter));

        report.objective_trace.push_back(obj);
        report.tol_trace.push_back(tol);
        report.keff_trace.push_back(opts.k);
        report.lambda_trace.push_back(lam);

        if (tol < opts.tau) {
            report.termination = Termination::tolerance;
            break;
        }
    }

    report.k_eff = opts.k;  // no pruning mechanism in the unpenalized fit
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return NmfFit{std::move(w), std::move(h), std::move(report)};
}

}  // namespace ardnmf

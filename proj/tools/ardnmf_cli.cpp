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

// Command-line front end: generate data, fit, sweep hyperparameters and
// evaluate held-out reconstructions. Exit status 0 on success, 1 on usage
// errors, 2 on numeric failures.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ardnmf/ard_solver.hpp"
#include "ardnmf/datagen.hpp"
#include "ardnmf/divergence.hpp"
#include "ardnmf/hyper.hpp"
#include "ardnmf/io.hpp"
#include "ardnmf/metrics.hpp"
#include "ardnmf/mm_core.hpp"
#include "ardnmf/parallel.hpp"
#include "ardnmf/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ardnmf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

DenseMatrix vector_as_matrix(const std::vector<double>& v) {
    DenseMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// gen

struct GenSyntheticArgs {
    std::size_t f = 50, n = 100, k_true = 5;
    double a = 50.0, b = 70.0, snr_db = 10.0;
    std::string prior = "exponential";
    std::string noise = "poisson";
    std::uint64_t seed = 0;
    std::string out_prefix = "synthetic";
};

PenaltyKind parse_prior(const std::string& name) {
    if (name == "exponential" || name == "l1") return PenaltyKind::l1;
    if (name == "half-normal" || name == "l2") return PenaltyKind::l2;
    throw CLI::ValidationError("--prior", "expected exponential|half-normal");
}

int run_gen_synthetic(const GenSyntheticArgs& args) {
    const PenaltyKind prior = parse_prior(args.prior);
    const NoiseSpec spec{noise_family_from_name(args.noise), args.snr_db};

    RngStream rng(derive_seed(args.seed, 0));
    const GroundTruth gt =
        gen_ground_truth(args.f, args.n, args.k_true, args.a, args.b, prior, rng);
    RngStream noise_rng(derive_seed(args.seed, 1));
    const NoisyData noisy = add_noise(gt.vhat, spec, noise_rng);

    const std::string p = args.out_prefix;
    write_matrix(p + "_V.mat", noisy.v);
    write_matrix(p + "_Vhat.mat", gt.vhat);
    write_matrix(p + "_Wtrue.mat", gt.w);
    write_matrix(p + "_Htrue.mat", gt.h);
    write_matrix(p + "_lambda_true.mat", vector_as_matrix(gt.lambda));

    json doc = {
        {"schema_version", kReportSchemaVersion},
        {"kind", "gen_report"},
        {"command", "synthetic"},
        {"F", args.f},
        {"N", args.n},
        {"K_true", args.k_true},
        {"a_true", args.a},
        {"b_true", args.b},
        {"prior", penalty_name(prior)},
        {"noise", noise_family_name(spec.family)},
        {"target_snr_db", args.snr_db},
        {"seed", args.seed},
        {"realized_snr_db", snr_db(gt.vhat, noisy.v)},
        {"noise_param", noisy.family_param},
        {"dispersion", noisy.dispersion},
        {"clipped", noisy.clipped},
    };
    write_json(p + "_gen.json", doc);
    std::cout << "wrote " << p << "_V.mat (" << args.f << "x" << args.n
              << "), realized SNR " << fmt17(snr_db(gt.vhat, noisy.v)) << " dB\n";
    return kExitOk;
}

struct GenSwimmerArgs {
    double body = 10.0, background = 1.0;
    bool noiseless = false;
    std::uint64_t seed = 0;
    std::string out_prefix = "swimmer";
};

int run_gen_swimmer(const GenSwimmerArgs& args) {
    RngStream rng(derive_seed(args.seed, 2));
    const DenseMatrix v =
        gen_swimmer(args.body, args.background, args.noiseless ? nullptr : &rng);

    const SwimmerParts parts = swimmer_parts();
    DenseMatrix truth(1024, 17);
    for (std::size_t f = 0; f < 1024; ++f) {
        truth(f, 0) = parts.torso(f, 0);
        for (std::size_t k = 0; k < 16; ++k) truth(f, k + 1) = parts.limbs(f, k);
    }

    const std::string p = args.out_prefix;
    write_matrix(p + "_V.mat", v);
    write_matrix(p + "_parts.mat", truth);
    json doc = {
        {"schema_version", kReportSchemaVersion},
        {"kind", "gen_report"},
        {"command", "swimmer"},
        {"body_value", args.body},
        {"background_value", args.background},
        {"poisson_noise", !args.noiseless},
        {"seed", args.seed},
        {"K_true", 16},
    };
    write_json(p + "_gen.json", doc);
    std::cout << "wrote " << p << "_V.mat (1024x256) and " << p << "_parts.mat\n";
    return kExitOk;
}

struct GenMaskArgs {
    double fraction = 0.5;
    std::string like;
    std::size_t rows = 0, cols = 0;
    std::uint64_t seed = 0;
    std::string out = "mask.mat";
};

int run_gen_mask(const GenMaskArgs& args) {
    std::size_t rows = args.rows, cols = args.cols;
    if (!args.like.empty()) {
        const DenseMatrix shape_src = read_matrix(args.like);
        rows = shape_src.rows();
        cols = shape_src.cols();
    }
    if (rows == 0 || cols == 0)
        throw CLI::ValidationError("gen mask", "provide --like FILE or --rows/--cols");
    RngStream rng(derive_seed(args.seed, 3));
    const MaskMatrix mask = gen_mask(rows, cols, args.fraction, rng);
    write_matrix(args.out, mask.values());
    std::cout << "wrote " << args.out << " (" << rows << "x" << cols << ", "
              << (rows * cols - mask.observed_count()) << " missing)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
    std::string data;
    std::string method = "ard-l1";
    double beta = 1.0;
    std::size_t k = 10;
    double a = 5.0;
    std::string b = "auto";
    double phi = 1.0;
    double tau = 1e-7;
    std::size_t max_iter = 100000;
    std::uint64_t seed = 0;
    std::string mask;
    bool normalize_w = false;
    bool no_trace = false;
    std::string out_prefix = "fit";
};

double resolve_b(const std::string& b_flag, const DenseMatrix& v, const MaskMatrix* mask,
                 std::size_t k, double a, PenaltyKind penalty) {
    if (b_flag == "auto") return select_b(sample_mean(v, mask), k, a, penalty);
    return std::stod(b_flag);
}

int run_fit(const FitArgs& args) {
    const DenseMatrix v = read_matrix(args.data);
    std::optional<MaskMatrix> mask;
    if (!args.mask.empty()) mask = read_mask(args.mask);
    const MaskMatrix* mask_ptr = mask ? &*mask : nullptr;

    const std::string p = args.out_prefix;
    const fs::path trace_path = p + "_trace.csv";
    json config = {
        {"method", args.method}, {"data", args.data},
        {"beta", args.beta},     {"K", args.k},
        {"tau", args.tau},       {"max_iter", args.max_iter},
        {"seed", args.seed},     {"mask", args.mask.empty() ? json() : json(args.mask)},
    };

    FitReport report;
    if (args.method == "nmf") {
        NmfFitOptions opts;
        opts.k = args.k;
        opts.beta = args.beta;
        opts.tau = args.tau;
        opts.max_iter = args.max_iter;
        opts.seed = args.seed;
        opts.normalize_w_columns = args.normalize_w;
        config["normalize_w_columns"] = args.normalize_w;

        const NmfFit fit = nmf_fit(v, opts, mask_ptr);
        write_matrix(p + "_W.mat", fit.w);
        write_matrix(p + "_H.mat", fit.h);
        write_matrix(p + "_lambda.mat", vector_as_matrix(fit.report.lambda_trace.back()));
        report = fit.report;
    } else if (args.method == "ard-l1" || args.method == "ard-l2") {
        ArdConfig config_ard;
        config_ard.k = args.k;
        config_ard.beta = args.beta;
        config_ard.phi = args.phi;
        config_ard.a = args.a;
        config_ard.tau = args.tau;
        config_ard.max_iter = args.max_iter;
        config_ard.seed = args.seed;
        config_ard.penalty = args.method == "ard-l1" ? PenaltyKind::l1 : PenaltyKind::l2;
        config_ard.b = resolve_b(args.b, v, mask_ptr, args.k, args.a, config_ard.penalty);

        const double c = c_value(v.rows(), v.cols(), config_ard.a, config_ard.penalty);
        config["a"] = config_ard.a;
        config["b"] = config_ard.b;
        config["b_mode"] = args.b == "auto" ? "auto" : "explicit";
        config["phi"] = config_ard.phi;
        config["c"] = c;
        config["lambda_lower_bound"] = config_ard.b / c;

        const ArdFit fit = ard_fit(v, config_ard, mask_ptr);
        write_matrix(p + "_W.mat", fit.state.w);
        write_matrix(p + "_H.mat", fit.state.h);
        write_matrix(p + "_lambda.mat", vector_as_matrix(fit.state.lambda));
        report = fit.report;
    } else {
        throw CLI::ValidationError("--method", "expected nmf|ard-l1|ard-l2");
    }

    if (!args.no_trace) write_trace(trace_path, report);
    write_report(p + "_report.json", report, config,
                 args.no_trace ? std::nullopt : std::optional<fs::path>(trace_path));
    std::cout << "K_eff " << report.k_eff << ", " << report.iterations() << " iterations ("
              << termination_name(report.termination) << "), objective "
              << fmt17(report.objective_trace.back()) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::string data;
    std::string method = "ard-l1";
    double beta = 1.0;
    std::size_t k = 10;
    std::vector<double> a_grid;
    std::size_t seeds = 10;
    std::uint64_t seed_base = 0;
    std::string b = "auto";
    double phi = 1.0;
    double tau = 1e-7;
    std::size_t max_iter = 100000;
    std::string mask;
    std::size_t jobs = 0;
    std::string out_prefix = "sweep";
};

struct SweepRun {
    double a = 0.0;
    std::uint64_t seed_index = 0;
    bool ok = false;
    std::size_t k_eff = 0;
    std::size_t iterations = 0;
    double objective = 0.0;
    std::string termination;
    std::string error;
};

int run_sweep(const SweepArgs& args) {
    if (args.method != "ard-l1" && args.method != "ard-l2")
        throw CLI::ValidationError("--method", "sweep expects ard-l1|ard-l2");
    if (args.a_grid.empty()) throw CLI::ValidationError("--a", "nonempty grid required");
    if (args.seeds == 0) throw CLI::ValidationError("--seeds", "at least one run");

    const DenseMatrix v = read_matrix(args.data);
    std::optional<MaskMatrix> mask;
    if (!args.mask.empty()) mask = read_mask(args.mask);
    const MaskMatrix* mask_ptr = mask ? &*mask : nullptr;
    const PenaltyKind penalty =
        args.method == "ard-l1" ? PenaltyKind::l1 : PenaltyKind::l2;

    std::vector<SweepRun> runs(args.a_grid.size() * args.seeds);
    for (std::size_t ia = 0; ia < args.a_grid.size(); ++ia)
        for (std::size_t is = 0; is < args.seeds; ++is) {
            runs[ia * args.seeds + is].a = args.a_grid[ia];
            runs[ia * args.seeds + is].seed_index = is;
        }

    const std::size_t workers =
        args.jobs > 0 ? args.jobs : std::max(1u, std::thread::hardware_concurrency());
    parallel_runs(runs.size(), workers, [&](std::size_t i) {
        SweepRun& run = runs[i];
        try {
            ArdConfig config;
            config.k = args.k;
            config.beta = args.beta;
            config.phi = args.phi;
            config.a = run.a;
            config.tau = args.tau;
            config.max_iter = args.max_iter;
            // Initializations depend only on (seed base, run index), never on
            // a or the penalty, so penalized variants see identical starts.
            config.seed = derive_seed(args.seed_base, run.seed_index);
            config.penalty = penalty;
            config.b = resolve_b(args.b, v, mask_ptr, args.k, run.a, penalty);

            const ArdFit fit = ard_fit(v, config, mask_ptr);
            run.ok = true;
            run.k_eff = fit.report.k_eff;
            run.iterations = fit.report.iterations();
            run.objective = fit.report.objective_trace.back();
            run.termination = termination_name(fit.report.termination);
        } catch (const std::exception& e) {
            run.ok = false;
            run.error = e.what();
            std::replace(run.error.begin(), run.error.end(), ',', ';');
            std::replace(run.error.begin(), run.error.end(), '\n', ' ');
        }
    });

    const std::string p = args.out_prefix;
    {
        std::ofstream out(p + "_runs.csv");
        if (!out) throw IoError("cannot open " + p + "_runs.csv for writing");
        out << "a,seed,status,k_eff,iterations,termination,final_objective,error\n";
        for (const SweepRun& run : runs) {
            out << fmt17(run.a) << ',' << run.seed_index << ','
                << (run.ok ? "ok" : "failed") << ',';
            if (run.ok)
                out << run.k_eff << ',' << run.iterations << ',' << run.termination << ','
                    << fmt17(run.objective) << ',';
            else
                out << ",,,," << run.error;
            out << '\n';
        }
    }
    {
        std::ofstream out(p + "_agg.csv");
        if (!out) throw IoError("cannot open " + p + "_agg.csv for writing");
        out << "a,runs_ok,runs_failed,mean_keff,std_keff\n";
        for (std::size_t ia = 0; ia < args.a_grid.size(); ++ia) {
            double sum = 0.0, sum_sq = 0.0;
            std::size_t ok = 0, failed = 0;
            for (std::size_t is = 0; is < args.seeds; ++is) {
                const SweepRun& run = runs[ia * args.seeds + is];
                if (!run.ok) {
                    ++failed;
                    continue;
                }
                ++ok;
                sum += static_cast<double>(run.k_eff);
                sum_sq += static_cast<double>(run.k_eff) * static_cast<double>(run.k_eff);
            }
            out << fmt17(args.a_grid[ia]) << ',' << ok << ',' << failed << ',';
            if (ok > 0) {
                const double mean = sum / static_cast<double>(ok);
                const double var = std::max(0.0, sum_sq / static_cast<double>(ok) - mean * mean);
                out << fmt17(mean) << ',' << fmt17(std::sqrt(var));
            } else {
                out << ',';
            }
            out << '\n';
        }
    }
    std::size_t failures = 0;
    for (const SweepRun& run : runs) failures += !run.ok;
    std::cout << "sweep: " << runs.size() - failures << "/" << runs.size()
              << " runs ok, tables at " << p << "_runs.csv / " << p << "_agg.csv\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    std::string data;
    std::string w_file;
    std::string h_file;
    std::string holdout;
    std::string lambda_file;
    bool complement = false;
    double beta = -1.0;  // <0: report only the three named metrics
    std::string out;
};

int run_eval(const EvalArgs& args) {
    const DenseMatrix v = read_matrix(args.data);
    const DenseMatrix w = read_matrix(args.w_file);
    const DenseMatrix h = read_matrix(args.h_file);
    MaskMatrix holdout = read_mask(args.holdout);
    if (args.complement) holdout = holdout.complement();
    const DenseMatrix vhat = matmul(w, h);

    json doc = {{"schema_version", kReportSchemaVersion}, {"kind", "eval_report"}};
    auto add_metric = [&](const std::string& name, double beta) {
        const HoldoutDivergence r = normalized_divergence(v, vhat, holdout, beta);
        doc["metrics"][name] = {
            {"value", r.value}, {"evaluated", r.evaluated}, {"skipped", r.skipped}};
        std::cout << name << " " << fmt17(r.value) << " (over " << r.evaluated
                  << " held-out entries";
        if (r.skipped) std::cout << ", " << r.skipped << " skipped out of domain";
        std::cout << ")\n";
    };
    add_metric("nkld", 1.0);
    add_metric("neuc", 2.0);
    add_metric("nis", 0.0);
    if (args.beta >= 0.0 && args.beta != 0.0 && args.beta != 1.0 && args.beta != 2.0)
        add_metric("nd_beta", args.beta);

    std::optional<std::vector<double>> lambda;
    if (!args.lambda_file.empty()) {
        const DenseMatrix lm = read_matrix(args.lambda_file);
        if (lm.cols() != 1 && lm.rows() != 1)
            throw NumericError("eval: lambda file must be a vector");
        lambda.emplace(lm.data().begin(), lm.data().end());
    }
    const auto summary = component_summary(w, h, lambda ? &*lambda : nullptr);
    std::cout << "rank,component,relevance,std\n";
    doc["components"] = json::array();
    for (std::size_t r = 0; r < summary.size(); ++r) {
        const ComponentRecord& rec = summary[r];
        std::cout << (r + 1) << ',' << (rec.index + 1) << ',' << fmt17(rec.relevance) << ','
                  << fmt17(rec.stddev) << '\n';
        doc["components"].push_back({{"rank", r + 1},
                                     {"component", rec.index + 1},
                                     {"relevance", rec.relevance},
                                     {"std", rec.stddev}});
    }
    if (!args.out.empty()) write_json(args.out, doc);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta-divergence NMF with group-ARD model-order selection"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate synthetic datasets and masks");
    gen->require_subcommand(1);

    GenSyntheticArgs syn;
    auto* gen_syn = gen->add_subcommand("synthetic", "model-generated (W,H,lambda) plus noise");
    gen_syn->add_option("--F", syn.f, "rows")->capture_default_str();
    gen_syn->add_option("--N", syn.n, "columns")->capture_default_str();
    gen_syn->add_option("--Ktrue", syn.k_true, "true component count")->capture_default_str();
    gen_syn->add_option("--a", syn.a, "relevance prior shape")->capture_default_str();
    gen_syn->add_option("--b", syn.b, "relevance prior scale")->capture_default_str();
    gen_syn->add_option("--prior", syn.prior, "exponential|half-normal")->capture_default_str();
    gen_syn->add_option("--noise", syn.noise, "gamma|poisson|gaussian")->capture_default_str();
    gen_syn->add_option("--snr", syn.snr_db, "target SNR in dB")->capture_default_str();
    gen_syn->add_option("--seed", syn.seed, "RNG seed")->capture_default_str();
    gen_syn->add_option("--out-prefix", syn.out_prefix, "output file prefix")
        ->capture_default_str();

    GenSwimmerArgs swim;
    auto* gen_swim = gen->add_subcommand("swimmer", "32x32 torso-and-limbs image corpus");
    gen_swim->add_option("--body", swim.body, "body pixel value")->capture_default_str();
    gen_swim->add_option("--background", swim.background, "background pixel value")
        ->capture_default_str();
    gen_swim->add_flag("--noiseless", swim.noiseless, "skip the Poisson noise");
    gen_swim->add_option("--seed", swim.seed, "RNG seed")->capture_default_str();
    gen_swim->add_option("--out-prefix", swim.out_prefix, "output file prefix")
        ->capture_default_str();

    GenMaskArgs maskargs;
    auto* gen_mask_cmd = gen->add_subcommand("mask", "uniform random missing-entry mask");
    gen_mask_cmd->add_option("--fraction", maskargs.fraction, "missing fraction in [0,1)")
        ->capture_default_str();
    gen_mask_cmd->add_option("--like", maskargs.like, "matrix file fixing the shape");
    gen_mask_cmd->add_option("--rows", maskargs.rows, "rows (if no --like)");
    gen_mask_cmd->add_option("--cols", maskargs.cols, "cols (if no --like)");
    gen_mask_cmd->add_option("--seed", maskargs.seed, "RNG seed")->capture_default_str();
    gen_mask_cmd->add_option("--out", maskargs.out, "output mask file")->capture_default_str();

    // fit
    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "fit NMF or ARD-NMF to a matrix file");
    fit_cmd->add_option("--data", fit.data, "input matrix file")->required();
    fit_cmd->add_option("--method", fit.method, "nmf|ard-l1|ard-l2")->capture_default_str();
    fit_cmd->add_option("--beta", fit.beta, "divergence shape")->capture_default_str();
    fit_cmd->add_option("--K", fit.k, "component budget")->capture_default_str();
    fit_cmd->add_option("--a", fit.a, "relevance prior shape (ard)")->capture_default_str();
    fit_cmd->add_option("--b", fit.b, "relevance prior scale or 'auto' (ard)")
        ->capture_default_str();
    fit_cmd->add_option("--phi", fit.phi, "dispersion (ard)")->capture_default_str();
    fit_cmd->add_option("--tau", fit.tau, "stopping tolerance")->capture_default_str();
    fit_cmd->add_option("--max-iter", fit.max_iter, "iteration cap")->capture_default_str();
    fit_cmd->add_option("--seed", fit.seed, "initialization seed")->capture_default_str();
    fit_cmd->add_option("--mask", fit.mask, "observation mask file (1 = observed)");
    fit_cmd->add_flag("--normalize-w", fit.normalize_w,
                      "rescale W columns to unit norm each iteration (nmf)");
    fit_cmd->add_flag("--no-trace", fit.no_trace, "skip the per-iteration trace file");
    fit_cmd->add_option("--out-prefix", fit.out_prefix, "output file prefix")
        ->capture_default_str();

    // sweep
    SweepArgs sweep;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "grid of (a, seed) ARD fits with aggregate table");
    sweep_cmd->add_option("--data", sweep.data, "input matrix file")->required();
    sweep_cmd->add_option("--method", sweep.method, "ard-l1|ard-l2")->capture_default_str();
    sweep_cmd->add_option("--beta", sweep.beta, "divergence shape")->capture_default_str();
    sweep_cmd->add_option("--K", sweep.k, "component budget")->capture_default_str();
    sweep_cmd->add_option("--a", sweep.a_grid, "a grid (repeat or comma separated)")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--seeds", sweep.seeds, "number of runs per a")
        ->capture_default_str();
    sweep_cmd->add_option("--seed-base", sweep.seed_base, "base seed for run derivation")
        ->capture_default_str();
    sweep_cmd->add_option("--b", sweep.b, "relevance prior scale or 'auto'")
        ->capture_default_str();
    sweep_cmd->add_option("--phi", sweep.phi, "dispersion")->capture_default_str();
    sweep_cmd->add_option("--tau", sweep.tau, "stopping tolerance")->capture_default_str();
    sweep_cmd->add_option("--max-iter", sweep.max_iter, "iteration cap")
        ->capture_default_str();
    sweep_cmd->add_option("--mask", sweep.mask, "observation mask file");
    sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads (0 = auto)")
        ->capture_default_str();
    sweep_cmd->add_option("--out-prefix", sweep.out_prefix, "output file prefix")
        ->capture_default_str();

    // eval
    EvalArgs eval;
    auto* eval_cmd =
        app.add_subcommand("eval", "held-out divergences and component summary");
    eval_cmd->add_option("--data", eval.data, "true data matrix")->required();
    eval_cmd->add_option("--W", eval.w_file, "fitted W matrix")->required();
    eval_cmd->add_option("--H", eval.h_file, "fitted H matrix")->required();
    eval_cmd->add_option("--holdout", eval.holdout, "holdout mask (1 = held out)")
        ->required();
    eval_cmd->add_flag("--complement", eval.complement,
                       "treat --holdout as an observation mask and use its zeros");
    eval_cmd->add_option("--beta", eval.beta, "extra normalized divergence to report");
    eval_cmd->add_option("--lambda", eval.lambda_file, "relevance vector file");
    eval_cmd->add_option("--out", eval.out, "write the eval report JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_syn->parsed()) return run_gen_synthetic(syn);
        if (gen_swim->parsed()) return run_gen_swimmer(swim);
        if (gen_mask_cmd->parsed()) return run_gen_mask(maskargs);
        if (fit_cmd->parsed()) return run_fit(fit);
        if (sweep_cmd->parsed()) return run_sweep(sweep);
        if (eval_cmd->parsed()) return run_eval(eval);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}

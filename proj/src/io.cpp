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

#include "ardnmf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ardnmf {

namespace {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

[[noreturn]] void parse_error(const std::filesystem::path& path, std::size_t line,
                              std::size_t col, const std::string& why) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": column " +
                  std::to_string(col) + ": " + why);
}

}  // namespace

DenseMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": no rows (empty file)");

    std::size_t rows = 0, cols = 0;
    {
        std::istringstream header(line);
        if (!(header >> rows >> cols) || rows == 0 || cols == 0)
            parse_error(path, 1, 1, "expected header 'rows cols' with positive counts");
        std::string extra;
        if (header >> extra) parse_error(path, 1, 3, "trailing tokens after header");
    }

    DenseMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line))
            throw IoError(path.string() + ": expected " + std::to_string(rows) +
                          " data rows, found " + std::to_string(r));
        std::istringstream row(line);
        for (std::size_t c = 0; c < cols; ++c) {
            double x;
            if (!(row >> x)) parse_error(path, r + 2, c + 1, "expected a number");
            if (!std::isfinite(x)) parse_error(path, r + 2, c + 1, "non-finite value");
            if (x < 0.0)
                parse_error(path, r + 2, c + 1,
                            "negative entry " + fmt17(x) + " in cell (" + std::to_string(r) +
                                "," + std::to_string(c) + ")");
            m(r, c) = x;
        }
        std::string extra;
        if (row >> extra) parse_error(path, r + 2, cols + 1, "trailing tokens in row");
    }
    return m;
}

MaskMatrix read_mask(const std::filesystem::path& path) {
    return MaskMatrix(read_matrix(path));
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << fmt17(m(r, c));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

void write_report(const std::filesystem::path& path, const FitReport& report,
                  const nlohmann::json& config,
                  const std::optional<std::filesystem::path>& trace_path) {
    nlohmann::json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["kind"] = "fit_report";
    doc["config"] = config;
    doc["result"] = {
        {"k_eff", report.k_eff},
        {"iterations", report.iterations()},
        {"termination", termination_name(report.termination)},
    };
    if (!report.objective_trace.empty()) {
        doc["result"]["final_objective"] = report.objective_trace.back();
        doc["result"]["final_tol"] = report.tol_trace.back();
        doc["result"]["lambda"] = report.lambda_trace.back();
    }
    if (trace_path) doc["traces"] = {{"csv", trace_path->string()}};
    doc["wall_time_seconds"] = report.wall_time_seconds;

    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

nlohmann::json read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return doc;
}

void write_trace(const std::filesystem::path& path, const FitReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const std::size_t k = report.lambda_trace.empty() ? 0 : report.lambda_trace[0].size();
    out << "iter,objective,tol,keff";
    for (std::size_t j = 0; j < k; ++j) out << ",lambda_" << (j + 1);
    out << '\n';
    for (std::size_t i = 0; i < report.iterations(); ++i) {
        out << (i + 1) << ',' << fmt17(report.objective_trace[i]) << ','
            << fmt17(report.tol_trace[i]) << ',' << report.keff_trace[i];
        for (double lam : report.lambda_trace[i]) out << ',' << fmt17(lam);
        out << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace ardnmf

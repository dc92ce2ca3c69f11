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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ardnmf/fit_report.hpp"
#include "ardnmf/matrix.hpp"

namespace ardnmf {

// File formats (documented in the README; header strings are part of the
// contract):
//   matrix: first line "rows cols", then one whitespace-separated row per
//           line, values printed with 17 significant digits (lossless for
//           doubles).
//   report: a JSON document with schema_version, config echo, result block
//           and optional trace path.
//   trace:  CSV with header "iter,objective,tol,keff,lambda_1,...,lambda_K"
//           and one row per iteration.

/// Reads a matrix file; rejects negative, non-finite and malformed entries
/// with the offending line and column in the message.
DenseMatrix read_matrix(const std::filesystem::path& path);

/// read_matrix plus the {0,1} mask validation.
MaskMatrix read_mask(const std::filesystem::path& path);

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m);

/// Fixed report schema version; bump when fields change meaning.
inline constexpr int kReportSchemaVersion = 1;

/// Serializes the report with a caller-supplied config echo. `trace_path`
/// is recorded when trace logging was enabled. The wall-time field is the
/// only part of a report that varies between identical runs.
void write_report(const std::filesystem::path& path, const FitReport& report,
                  const nlohmann::json& config,
                  const std::optional<std::filesystem::path>& trace_path = std::nullopt);

nlohmann::json read_report(const std::filesystem::path& path);

/// One CSV row per iteration: index, objective, tol, active-component
/// count, then the K relevance values.
void write_trace(const std::filesystem::path& path, const FitReport& report);

}  // namespace ardnmf

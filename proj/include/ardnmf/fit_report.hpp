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

#include <cstddef>
#include <vector>

namespace ardnmf {

enum class Termination { tolerance, iteration_cap };

const char* termination_name(Termination t);

/// Per-fit bookkeeping shared by the plain and ARD solvers. All traces have
/// one entry per completed iteration; lambda_trace rows carry the relevance
/// weights (ARD) or the 0.5*||h_k||^2 surrogates (plain NMF).
struct FitReport {
    std::size_t k_eff = 0;
    std::vector<double> objective_trace;
    std::vector<double> tol_trace;
    std::vector<std::size_t> keff_trace;
    std::vector<std::vector<double>> lambda_trace;
    Termination termination = Termination::iteration_cap;
    double wall_time_seconds = 0.0;

    std::size_t iterations() const { return objective_trace.size(); }
};

}  // namespace ardnmf

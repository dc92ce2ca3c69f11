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

#include "ardnmf/matrix.hpp"

namespace ardnmf {

/// Scalar beta-divergence d_beta(x | y):
///
///   beta not in {0,1}:  x^b/(b(b-1)) + y^b/b - x y^(b-1)/(b-1)
///   beta = 1 (KL):      x log(x/y) - x + y        (0 log 0 = 0)
///   beta = 0 (IS):      x/y - log(x/y) - 1
///
/// Branch dispatch is on exact equality with 0 and 1: callers pass the
/// limiting values intentionally, and the generic branch converges to the
/// limits anyway (see continuity_check).
///
/// Domain: y > 0 is required for beta <= 1; y = 0 is admissible for
/// beta > 1 (all y-terms vanish). x = 0 is admissible for beta > 0 and a
/// domain error for beta <= 0, where the cost is +infinity.
double d_beta(double x, double y, double beta);

/// Separable matrix cost: sum of d_beta over all entries.
double D_beta(const DenseMatrix& v, const DenseMatrix& vhat, double beta);

/// Same, restricted to entries with mask = 1. Missing entries contribute
/// zero cost.
double D_beta_masked(const DenseMatrix& v, const DenseMatrix& vhat, const MaskMatrix& mask,
                     double beta);

/// |d_{beta0 +/- eps}(x|y) - d_{beta0}(x|y)| for beta0 in {0,1}; test hook
/// for the limiting forms. `eps` may be negative to probe from below.
double continuity_check(double x, double y, double beta0, double eps);

}  // namespace ardnmf

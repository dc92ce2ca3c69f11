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
#include <random>

namespace ardnmf {

/// Seedable random stream with the samplers the generators and solvers need.
/// All transforms are implemented here rather than via std:: distributions,
/// so a given (seed, stream) pair produces the same values on every build.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01();
    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos();
    /// Standard normal, Box-Muller with one cached deviate.
    double normal();
    /// Gamma(shape, scale), Marsaglia-Tsang rejection; shape < 1 uses the
    /// u^{1/shape} boost of a shape+1 draw.
    double gamma(double shape, double scale);
    /// Poisson(mean >= 0). Knuth product method below 30, Hormann's PTRS
    /// transformed rejection above; exact for all means.
    std::uint64_t poisson(double mean);

  private:
    std::mt19937_64 gen_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

/// Mixes a user seed with a run index into an independent stream seed
/// (splitmix64 finalizer). Run-level streams depend only on (seed, index),
/// never on method or penalty, so solver variants being compared share data
/// and initializations exactly.
std::uint64_t derive_seed(std::uint64_t user_seed, std::uint64_t run_index);

}  // namespace ardnmf

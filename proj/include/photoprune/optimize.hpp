// Copyright 2026 The photoprune Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHOTOPRUNE_OPTIMIZE_HPP
#define PHOTOPRUNE_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace photoprune {

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerOptions {
    int restarts = 5;
    // Convergence: simplex diameter below x_tolerance * max(1, |x|) and
    // vertex objective spread below f_tolerance * max(1, |f|).
    double x_tolerance = 1e-10;
    double f_tolerance = 1e-12;
    int max_evaluations = 4000;  // per simplex run
    double initial_step = 0.1;   // relative to |x_i|, absolute when x_i == 0
    double restart_jitter = 0.1;
    std::uint64_t seed = 0x5eed;
};

struct OptimizerResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Projected Nelder-Mead. Every trial point is clamped to `lower_bounds`
/// (use -inf for unconstrained coordinates); non-finite objective values
/// are treated as +inf. After the first run the search restarts
/// `restarts` times from the best point found, each time with a jittered
/// start and a fresh simplex; the best result overall is returned.
/// Throws FitFailure when no evaluated point has a finite objective.
OptimizerResult minimize_neg_log_likelihood(const Objective &objective,
                                            std::span<const double> lower_bounds,
                                            std::span<const double> init,
                                            const OptimizerOptions &options = {});

}  // namespace photoprune

#endif

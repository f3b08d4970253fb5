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

#ifndef PHOTOPRUNE_FIT_HPP
#define PHOTOPRUNE_FIT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "photoprune/optimize.hpp"

namespace photoprune {

enum class Model { PowerLaw, PowerLawCutoff, LogNormal, Exponential };

std::string to_string(Model model);
/// Accepts the short CLI names (pl, plc, ln, exp) and the long names.
Model parse_model(std::string_view name);
std::vector<std::string> param_names(Model model);

/// Positive observations sorted ascending. Exact zeros are dropped on
/// ingestion and only counted, since every model's log-likelihood diverges
/// there.
struct Sample {
    std::vector<double> values;
    std::size_t excluded_zeros = 0;

    static Sample from(std::span<const double> raw);
    std::size_t size() const { return values.size(); }
    std::size_t total_count() const { return values.size() + excluded_zeros; }
};

/// Parameters are ordered as in param_names(): power_law {alpha},
/// power_law_cutoff {alpha_c, lambda_c}, log_normal {mu, sigma},
/// exponential {lambda_e}.
struct FitResult {
    Model model = Model::PowerLaw;
    std::vector<double> params;
    double lower_bound = 0.0;
    double ks_distance = 0.0;
    double log_likelihood = 0.0;
    std::size_t tail_count = 0;
    bool degenerate = false;

    double param(std::string_view name) const;

    static FitResult power_law(double alpha, double theta_min);
    static FitResult power_law_cutoff(double alpha_c, double lambda_c, double theta_min);
    static FitResult log_normal(double mu, double sigma, double lower_bound = 0.0);
    static FitResult exponential(double lambda_e, double theta_min);
};

struct FitOptions {
    /// Candidate lower bounds must leave at least this many points in the tail.
    std::size_t tail_min = 50;
    OptimizerOptions optimizer;
};

/// Model density. Throws DomainError below the lower bound of the bounded
/// models (all but log_normal).
double model_pdf(const FitResult &fit, double theta);

/// Model complementary CDF, P(value >= theta); 1 at the lower bound of the
/// bounded models.
double model_ccdf(const FitResult &fit, double theta);

/// Log-likelihood of `tail` (every value >= fit.lower_bound) under the
/// model, in the closed forms used by the estimators. For the exponential
/// model this is M log(lambda) + M lambda theta_min - lambda sum(theta).
double log_likelihood(const FitResult &fit, std::span<const double> tail);

/// Closed-form power-law exponent on a tail: 1 + M / sum log(theta / theta_min).
double power_law_alpha(std::span<const double> tail, double theta_min);

/// Maximum-likelihood exponential rate on a tail: M / (sum theta - M theta_min).
double exponential_rate(std::span<const double> tail, double theta_min);

/// Kolmogorov-Smirnov distance between an ascending tail and the model CDF
/// conditioned on values >= fit.lower_bound. The empirical CDF is compared
/// on both sides of each step.
double ks_distance(std::span<const double> sorted_tail, const FitResult &fit);

/// KS distance of a sample against uniform on [0, range_max).
double uniformity_ks(std::span<const double> values, double range_max);

/// Fraction of the full sample (zeros included) with value >= theta.
double empirical_ccdf(const Sample &sample, double theta);

FitResult fit_power_law(const Sample &sample, const FitOptions &options = {});
FitResult fit_power_law_cutoff(const Sample &sample, const FitOptions &options = {});
FitResult fit_log_normal(const Sample &sample, const FitOptions &options = {});
FitResult fit_exponential(const Sample &sample, const FitOptions &options = {});
FitResult fit_model(Model model, const Sample &sample, const FitOptions &options = {});

}  // namespace photoprune

#endif

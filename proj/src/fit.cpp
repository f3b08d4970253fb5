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

#include "photoprune/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "photoprune/errors.hpp"
#include "photoprune/special.hpp"

namespace photoprune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_bound(const FitResult &fit, double theta) {
    if (fit.model != Model::LogNormal && theta < fit.lower_bound) {
        throw DomainError(to_string(fit.model) + ": theta=" + std::to_string(theta) +
                          " below lower bound " + std::to_string(fit.lower_bound));
    }
}

// Pure power-law log-likelihood, the lambda_c -> 0 edge of the cutoff model.
double power_law_loglik(double alpha, double theta_min, double m, double sum_log) {
    if (!(alpha > 1.0)) return -kInf;
    return m * std::log(alpha - 1.0) + m * (alpha - 1.0) * std::log(theta_min) - alpha * sum_log;
}

double cutoff_loglik(double alpha, double lambda, double theta_min, double m, double sum_log,
                     double sum) {
    if (alpha < 0.0 || lambda < 0.0) return -kInf;
    if (lambda == 0.0) return power_law_loglik(alpha, theta_min, m, sum_log);
    const double s = 1.0 - alpha;
    const double lg = log_upper_incomplete_gamma(s, lambda * theta_min);
    return m * s * std::log(lambda) - m * lg - alpha * sum_log - lambda * sum;
}

// sum of (log theta - mu)^2 from centred statistics
double lognormal_loglik(double mu, double sigma, double m, double sum_log, double mean_log,
                        double centred_sq) {
    if (!(sigma > 0.0)) return -kInf;
    const double dev = mean_log - mu;
    const double sq = centred_sq + m * dev * dev;
    return -sum_log - m * std::log(sigma) - 0.5 * m * std::log(2.0 * std::numbers::pi) -
           sq / (2.0 * sigma * sigma);
}

/// KS distance of an ascending sample against a CDF; stops early (returning
/// a value > stop_above) once the running maximum exceeds stop_above.
template <typename Cdf>
double ks_scan(std::span<const double> sorted, Cdf &&cdf, double stop_above = kInf) {
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const double f = std::clamp(cdf(sorted[k]), 0.0, 1.0);
        const double hi = static_cast<double>(k + 1) / m;
        const double lo = static_cast<double>(k) / m;
        d = std::max({d, std::fabs(hi - f), std::fabs(f - lo)});
        if (d > stop_above) break;
    }
    return d;
}

// Indices of distinct values leaving at least tail_min points in the tail.
std::vector<std::size_t> candidate_starts(const std::vector<double> &v, std::size_t tail_min) {
    std::vector<std::size_t> out;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n && n - i >= tail_min; ++i) {
        if (i == 0 || v[i] != v[i - 1]) out.push_back(i);
    }
    return out;
}

// Suffix sums: out[i] = sum_{k >= i} f(v[k]).
template <typename F>
std::vector<double> suffix_sums(const std::vector<double> &v, F f) {
    std::vector<double> out(v.size() + 1, 0.0);
    for (std::size_t i = v.size(); i-- > 0;) out[i] = out[i + 1] + f(v[i]);
    return out;
}

void require_tail_candidates(const std::vector<std::size_t> &starts, const Sample &sample,
                             const FitOptions &options, const char *who) {
    if (starts.empty()) {
        throw InsufficientData(std::string(who) + ": sample of " + std::to_string(sample.size()) +
                               " positive values has no lower bound leaving " +
                               std::to_string(options.tail_min) + " tail points");
    }
}

}  // namespace

std::string to_string(Model model) {
    switch (model) {
        case Model::PowerLaw: return "power_law";
        case Model::PowerLawCutoff: return "power_law_cutoff";
        case Model::LogNormal: return "log_normal";
        case Model::Exponential: return "exponential";
    }
    return "?";
}

Model parse_model(std::string_view name) {
    if (name == "pl" || name == "power_law") return Model::PowerLaw;
    if (name == "plc" || name == "power_law_cutoff") return Model::PowerLawCutoff;
    if (name == "ln" || name == "log_normal") return Model::LogNormal;
    if (name == "exp" || name == "exponential") return Model::Exponential;
    throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

std::vector<std::string> param_names(Model model) {
    switch (model) {
        case Model::PowerLaw: return {"alpha"};
        case Model::PowerLawCutoff: return {"alpha_c", "lambda_c"};
        case Model::LogNormal: return {"mu", "sigma"};
        case Model::Exponential: return {"lambda_e"};
    }
    return {};
}

Sample Sample::from(std::span<const double> raw) {
    Sample s;
    s.values.reserve(raw.size());
    for (double v : raw) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidArgument("sample values must be finite and non-negative");
        }
        if (v == 0.0) {
            ++s.excluded_zeros;
        } else {
            s.values.push_back(v);
        }
    }
    std::sort(s.values.begin(), s.values.end());
    return s;
}

double FitResult::param(std::string_view name) const {
    const auto names = param_names(model);
    for (std::size_t i = 0; i < names.size() && i < params.size(); ++i) {
        if (names[i] == name) return params[i];
    }
    throw InvalidArgument("model " + to_string(model) + " has no parameter '" + std::string(name) + "'");
}

FitResult FitResult::power_law(double alpha, double theta_min) {
    FitResult f;
    f.model = Model::PowerLaw;
    f.params = {alpha};
    f.lower_bound = theta_min;
    return f;
}

FitResult FitResult::power_law_cutoff(double alpha_c, double lambda_c, double theta_min) {
    FitResult f;
    f.model = Model::PowerLawCutoff;
    f.params = {alpha_c, lambda_c};
    f.lower_bound = theta_min;
    return f;
}

FitResult FitResult::log_normal(double mu, double sigma, double lower_bound) {
    FitResult f;
    f.model = Model::LogNormal;
    f.params = {mu, sigma};
    f.lower_bound = lower_bound;
    return f;
}

FitResult FitResult::exponential(double lambda_e, double theta_min) {
    FitResult f;
    f.model = Model::Exponential;
    f.params = {lambda_e};
    f.lower_bound = theta_min;
    return f;
}

double model_pdf(const FitResult &fit, double theta) {
    require_bound(fit, theta);
    const double lb = fit.lower_bound;
    switch (fit.model) {
        case Model::PowerLaw: {
            const double a = fit.params.at(0);
            return (a - 1.0) / lb * std::pow(theta / lb, -a);
        }
        case Model::PowerLawCutoff: {
            const double a = fit.params.at(0);
            const double lam = fit.params.at(1);
            if (lam == 0.0) {
                return (a - 1.0) / lb * std::pow(theta / lb, -a);
            }
            const double s = 1.0 - a;
            return std::exp(s * std::log(lam) - log_upper_incomplete_gamma(s, lam * lb) -
                            a * std::log(theta) - lam * theta);
        }
        case Model::LogNormal: {
            const double mu = fit.params.at(0);
            const double sigma = fit.params.at(1);
            if (theta <= 0.0) return 0.0;
            if (sigma == 0.0) return theta == std::exp(mu) ? kInf : 0.0;
            const double z = (std::log(theta) - mu) / sigma;
            return std::exp(-0.5 * z * z) / (sigma * theta * std::sqrt(2.0 * std::numbers::pi));
        }
        case Model::Exponential: {
            const double lam = fit.params.at(0);
            return lam * std::exp(lam * (lb - theta));
        }
    }
    return kNaN;
}

double model_ccdf(const FitResult &fit, double theta) {
    require_bound(fit, theta);
    const double lb = fit.lower_bound;
    switch (fit.model) {
        case Model::PowerLaw: {
            const double a = fit.params.at(0);
            return std::pow(theta / lb, 1.0 - a);
        }
        case Model::PowerLawCutoff: {
            const double a = fit.params.at(0);
            const double lam = fit.params.at(1);
            if (lam == 0.0) {
                return std::pow(theta / lb, 1.0 - a);
            }
            const double s = 1.0 - a;
            return std::exp(log_upper_incomplete_gamma(s, lam * theta) -
                            log_upper_incomplete_gamma(s, lam * lb));
        }
        case Model::LogNormal: {
            const double mu = fit.params.at(0);
            const double sigma = fit.params.at(1);
            if (theta <= 0.0) return 1.0;
            if (sigma == 0.0) {
                const double mode = std::exp(mu);
                return theta < mode ? 1.0 : (theta == mode ? 0.5 : 0.0);
            }
            return 0.5 * std::erfc((std::log(theta) - mu) / (sigma * std::numbers::sqrt2));
        }
        case Model::Exponential: {
            const double lam = fit.params.at(0);
            return std::exp(lam * (lb - theta));
        }
    }
    return kNaN;
}

double log_likelihood(const FitResult &fit, std::span<const double> tail) {
    const double m = static_cast<double>(tail.size());
    double sum = 0.0;
    double sum_log = 0.0;
    for (double v : tail) {
        require_bound(fit, v);
        sum += v;
        sum_log += std::log(v);
    }
    const double lb = fit.lower_bound;
    switch (fit.model) {
        case Model::PowerLaw:
            return power_law_loglik(fit.params.at(0), lb, m, sum_log);
        case Model::PowerLawCutoff:
            return cutoff_loglik(fit.params.at(0), fit.params.at(1), lb, m, sum_log, sum);
        case Model::LogNormal: {
            const double mean_log = sum_log / m;
            double centred = 0.0;
            for (double v : tail) {
                const double d = std::log(v) - mean_log;
                centred += d * d;
            }
            return lognormal_loglik(fit.params.at(0), fit.params.at(1), m, sum_log, mean_log, centred);
        }
        case Model::Exponential: {
            const double lam = fit.params.at(0);
            if (!(lam > 0.0)) return -kInf;
            return m * std::log(lam) + m * lam * lb - lam * sum;
        }
    }
    return kNaN;
}

double power_law_alpha(std::span<const double> tail, double theta_min) {
    if (tail.empty()) throw InsufficientData("power_law_alpha: empty tail");
    double acc = 0.0;
    for (double v : tail) acc += std::log(v / theta_min);
    if (!(acc > 0.0)) {
        throw DegenerateSample("power_law_alpha: all tail values equal the lower bound");
    }
    return 1.0 + static_cast<double>(tail.size()) / acc;
}

double exponential_rate(std::span<const double> tail, double theta_min) {
    if (tail.empty()) throw InsufficientData("exponential_rate: empty tail");
    double acc = 0.0;
    for (double v : tail) acc += v - theta_min;
    if (!(acc > 0.0)) {
        throw DegenerateSample("exponential_rate: all tail values equal the lower bound");
    }
    return static_cast<double>(tail.size()) / acc;
}

double ks_distance(std::span<const double> sorted_tail, const FitResult &fit) {
    if (sorted_tail.empty()) {
        throw InsufficientData("ks_distance: empty tail");
    }
    if (fit.degenerate) {
        return 0.0;
    }
    const double norm = model_ccdf(fit, fit.lower_bound);
    return ks_scan(sorted_tail, [&](double x) { return 1.0 - model_ccdf(fit, x) / norm; });
}

double uniformity_ks(std::span<const double> values, double range_max) {
    if (values.empty()) {
        throw InsufficientData("uniformity_ks: empty sample");
    }
    if (!(range_max > 0.0)) {
        throw InvalidArgument("uniformity_ks: range_max must be positive");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return ks_scan(sorted, [&](double x) { return x / range_max; });
}

double empirical_ccdf(const Sample &sample, double theta) {
    if (sample.total_count() == 0) {
        throw InsufficientData("empirical_ccdf: empty sample");
    }
    const auto it = std::lower_bound(sample.values.begin(), sample.values.end(), theta);
    std::size_t count = static_cast<std::size_t>(sample.values.end() - it);
    if (theta <= 0.0) count += sample.excluded_zeros;
    return static_cast<double>(count) / static_cast<double>(sample.total_count());
}

FitResult fit_power_law(const Sample &sample, const FitOptions &options) {
    const auto &v = sample.values;
    const auto starts = candidate_starts(v, options.tail_min);
    require_tail_candidates(starts, sample, options, "fit_power_law");
    const auto log_suffix = suffix_sums(v, [](double x) { return std::log(x); });

    FitResult best;
    best.model = Model::PowerLaw;
    best.ks_distance = kInf;
    bool found = false;
    for (std::size_t i : starts) {
        const double lb = v[i];
        const double m = static_cast<double>(v.size() - i);
        const double acc = log_suffix[i] - m * std::log(lb);
        if (!(acc > 0.0)) continue;
        const double alpha = 1.0 + m / acc;
        const double log_lb = std::log(lb);
        const std::span<const double> tail(v.data() + i, v.size() - i);
        const double d = ks_scan(
            tail, [&](double x) { return -std::expm1((1.0 - alpha) * (std::log(x) - log_lb)); },
            best.ks_distance);
        if (d < best.ks_distance) {
            best.params = {alpha};
            best.lower_bound = lb;
            best.ks_distance = d;
            best.tail_count = v.size() - i;
            best.log_likelihood = power_law_loglik(alpha, lb, m, log_suffix[i]);
            found = true;
        }
    }
    if (!found) {
        throw DegenerateSample("fit_power_law: every candidate tail is constant");
    }
    return best;
}

FitResult fit_exponential(const Sample &sample, const FitOptions &options) {
    const auto &v = sample.values;
    const auto starts = candidate_starts(v, options.tail_min);
    require_tail_candidates(starts, sample, options, "fit_exponential");
    const auto suffix = suffix_sums(v, [](double x) { return x; });

    FitResult best;
    best.model = Model::Exponential;
    best.ks_distance = kInf;
    bool found = false;
    for (std::size_t i : starts) {
        const double lb = v[i];
        const double m = static_cast<double>(v.size() - i);
        const double acc = suffix[i] - m * lb;
        if (!(acc > 0.0)) continue;
        const double lam = m / acc;
        const std::span<const double> tail(v.data() + i, v.size() - i);
        const double d =
            ks_scan(tail, [&](double x) { return -std::expm1(lam * (lb - x)); }, best.ks_distance);
        if (d < best.ks_distance) {
            best.params = {lam};
            best.lower_bound = lb;
            best.ks_distance = d;
            best.tail_count = v.size() - i;
            best.log_likelihood = m * std::log(lam) + m * lam * lb - lam * suffix[i];
            found = true;
        }
    }
    if (!found) {
        throw DegenerateSample("fit_exponential: every candidate tail is constant");
    }
    return best;
}

FitResult fit_power_law_cutoff(const Sample &sample, const FitOptions &options) {
    const auto &v = sample.values;
    const auto starts = candidate_starts(v, options.tail_min);
    require_tail_candidates(starts, sample, options, "fit_power_law_cutoff");
    const auto log_suffix = suffix_sums(v, [](double x) { return std::log(x); });
    const auto suffix = suffix_sums(v, [](double x) { return x; });
    const std::vector<double> lower = {0.0, 0.0};

    FitResult best;
    best.model = Model::PowerLawCutoff;
    best.ks_distance = kInf;
    bool found = false;
    bool best_converged = true;
    std::vector<double> warm;
    for (std::size_t i : starts) {
        const double lb = v[i];
        const double m = static_cast<double>(v.size() - i);
        const double sum_log = log_suffix[i];
        const double sum = suffix[i];
        const double log_excess = sum_log - m * std::log(lb);
        const double excess = sum - m * lb;
        if (!(log_excess > 0.0) || !(excess > 0.0)) continue;

        auto neg_loglik = [&](std::span<const double> x) {
            return -cutoff_loglik(x[0], x[1], lb, m, sum_log, sum);
        };
        // Closed-form optima on the two constraint edges: lambda_c = 0 is the
        // pure power law, alpha_c = 0 the exponential.
        const std::vector<double> pl_edge = {1.0 + m / log_excess, 0.0};
        const std::vector<double> exp_edge = {0.0, m / excess};
        std::vector<double> init = warm;
        if (init.empty()) init = {0.5 * pl_edge[0], 0.5 * exp_edge[1]};

        std::vector<double> chosen;
        double chosen_value = kInf;
        bool converged = true;
        try {
            OptimizerResult r = minimize_neg_log_likelihood(neg_loglik, lower, init, options.optimizer);
            chosen = r.x;
            chosen_value = r.value;
            converged = r.converged;
        } catch (const FitFailure &) {
            converged = false;
        }
        for (const auto *edge : {&pl_edge, &exp_edge}) {
            const double val = neg_loglik(*edge);
            if (val < chosen_value) {
                chosen = *edge;
                chosen_value = val;
                converged = true;
            }
        }
        if (!std::isfinite(chosen_value)) continue;
        warm = chosen;

        const double alpha = chosen[0];
        const double lam = chosen[1];
        const double s = 1.0 - alpha;
        const std::span<const double> tail(v.data() + i, v.size() - i);
        double d;
        if (lam == 0.0) {
            const double log_lb = std::log(lb);
            d = ks_scan(
                tail, [&](double x) { return -std::expm1((1.0 - alpha) * (std::log(x) - log_lb)); },
                best.ks_distance);
        } else {
            const double log_norm = log_upper_incomplete_gamma(s, lam * lb);
            d = ks_scan(
                tail,
                [&](double x) { return -std::expm1(log_upper_incomplete_gamma(s, lam * x) - log_norm); },
                best.ks_distance);
        }
        if (d < best.ks_distance) {
            best.params = chosen;
            best.lower_bound = lb;
            best.ks_distance = d;
            best.tail_count = v.size() - i;
            best.log_likelihood = -chosen_value;
            best_converged = converged;
            found = true;
        }
    }
    if (!found) {
        throw DegenerateSample("fit_power_law_cutoff: no candidate tail admits a finite likelihood");
    }
    if (!best_converged) {
        throw FitFailure("fit_power_law_cutoff: optimizer did not converge at the selected lower bound",
                         best.params, -best.log_likelihood);
    }
    return best;
}

FitResult fit_log_normal(const Sample &sample, const FitOptions &options) {
    const auto &v = sample.values;
    if (v.size() < 2) {
        throw InsufficientData("fit_log_normal: need at least 2 positive values");
    }
    const double m = static_cast<double>(v.size());
    std::vector<double> logs(v.size());
    std::transform(v.begin(), v.end(), logs.begin(), [](double x) { return std::log(x); });
    const double sum_log = std::accumulate(logs.begin(), logs.end(), 0.0);
    const double mean_log = sum_log / m;
    double centred = 0.0;
    for (double l : logs) centred += (l - mean_log) * (l - mean_log);

    FitResult fit;
    fit.model = Model::LogNormal;
    fit.lower_bound = v.front();
    fit.tail_count = v.size();
    if (centred == 0.0) {
        fit.params = {mean_log, 0.0};
        fit.degenerate = true;
        fit.log_likelihood = kInf;
        fit.ks_distance = 0.0;
        return fit;
    }

    // Robust start from quantiles of the (already sorted) log values.
    const double median = logs[logs.size() / 2];
    const double iqr = logs[(3 * logs.size()) / 4] - logs[logs.size() / 4];
    const std::vector<double> init = {median, iqr > 0.0 ? iqr / 1.349 : 1.0};
    const std::vector<double> lower = {-kInf, 0.0};
    auto neg_loglik = [&](std::span<const double> x) {
        return -lognormal_loglik(x[0], x[1], m, sum_log, mean_log, centred);
    };
    OptimizerResult r = minimize_neg_log_likelihood(neg_loglik, lower, init, options.optimizer);
    if (!r.converged) {
        throw FitFailure("fit_log_normal: optimizer did not converge", r.x, r.value);
    }
    fit.params = r.x;
    fit.log_likelihood = -r.value;
    fit.ks_distance = ks_distance(v, fit);
    return fit;
}

FitResult fit_model(Model model, const Sample &sample, const FitOptions &options) {
    switch (model) {
        case Model::PowerLaw: return fit_power_law(sample, options);
        case Model::PowerLawCutoff: return fit_power_law_cutoff(sample, options);
        case Model::LogNormal: return fit_log_normal(sample, options);
        case Model::Exponential: return fit_exponential(sample, options);
    }
    throw InvalidArgument("fit_model: unknown model");
}

}  // namespace photoprune

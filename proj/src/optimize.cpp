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

#include "photoprune/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "photoprune/errors.hpp"

namespace photoprune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Simplex {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
};

class Runner {
  public:
    Runner(const Objective &f, std::span<const double> lower, const OptimizerOptions &opt)
        : f_(f), lower_(lower.begin(), lower.end()), opt_(opt) {}

    void project(std::vector<double> &x) const {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::max(x[i], lower_[i]);
        }
    }

    double eval(std::vector<double> &x) {
        project(x);
        ++evaluations_;
        const double v = f_(x);
        return std::isfinite(v) ? v : kInf;
    }

    OptimizerResult run(std::vector<double> start) {
        const std::size_t dim = start.size();
        const int budget_start = evaluations_;
        Simplex s;
        s.points.push_back(start);
        s.values.push_back(eval(s.points.back()));
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<double> p = s.points.front();
            double step = opt_.initial_step * std::fabs(p[i]);
            if (step == 0.0) step = opt_.initial_step;
            p[i] += step;
            const double v = eval(p);
            s.points.push_back(std::move(p));
            s.values.push_back(v);
        }

        std::vector<std::size_t> order(dim + 1);
        bool converged = false;
        while (evaluations_ - budget_start < opt_.max_evaluations) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
            const std::size_t best = order.front();
            const std::size_t worst = order.back();
            const std::size_t second = order[dim - 1];

            double diameter = 0.0;
            double scale = 1.0;
            for (std::size_t i = 0; i < dim; ++i) scale = std::max(scale, std::fabs(s.points[best][i]));
            for (std::size_t k = 0; k <= dim; ++k) {
                double dist = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    const double d = s.points[k][i] - s.points[best][i];
                    dist += d * d;
                }
                diameter = std::max(diameter, std::sqrt(dist));
            }
            const double fbest = s.values[best];
            const double spread = s.values[worst] - fbest;
            if (std::isfinite(fbest) && diameter < opt_.x_tolerance * scale &&
                spread <= opt_.f_tolerance * std::max(1.0, std::fabs(fbest))) {
                converged = true;
                break;
            }
            if (diameter == 0.0) {
                break;
            }

            std::vector<double> centroid(dim, 0.0);
            for (std::size_t k = 0; k <= dim; ++k) {
                if (k == worst) continue;
                for (std::size_t i = 0; i < dim; ++i) centroid[i] += s.points[k][i] / dim;
            }
            auto along = [&](double t) {
                std::vector<double> p(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    p[i] = centroid[i] + t * (s.points[worst][i] - centroid[i]);
                }
                return p;
            };

            std::vector<double> refl = along(-1.0);
            const double frefl = eval(refl);
            if (frefl < s.values[best]) {
                std::vector<double> exp = along(-2.0);
                const double fexp = eval(exp);
                if (fexp < frefl) {
                    s.points[worst] = std::move(exp);
                    s.values[worst] = fexp;
                } else {
                    s.points[worst] = std::move(refl);
                    s.values[worst] = frefl;
                }
                continue;
            }
            if (frefl < s.values[second]) {
                s.points[worst] = std::move(refl);
                s.values[worst] = frefl;
                continue;
            }
            const bool outside = frefl < s.values[worst];
            std::vector<double> con = along(outside ? -0.5 : 0.5);
            const double fcon = eval(con);
            if (fcon < (outside ? frefl : s.values[worst])) {
                s.points[worst] = std::move(con);
                s.values[worst] = fcon;
                continue;
            }
            // Shrink toward the best vertex.
            for (std::size_t k = 0; k <= dim; ++k) {
                if (k == best) continue;
                for (std::size_t i = 0; i < dim; ++i) {
                    s.points[k][i] = s.points[best][i] + 0.5 * (s.points[k][i] - s.points[best][i]);
                }
                s.values[k] = eval(s.points[k]);
            }
        }
        const std::size_t best =
            static_cast<std::size_t>(std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
        return {s.points[best], s.values[best], evaluations_ - budget_start, converged};
    }

    int evaluations() const { return evaluations_; }

  private:
    const Objective &f_;
    std::vector<double> lower_;
    const OptimizerOptions &opt_;
    int evaluations_ = 0;
};

}  // namespace

OptimizerResult minimize_neg_log_likelihood(const Objective &objective,
                                            std::span<const double> lower_bounds,
                                            std::span<const double> init,
                                            const OptimizerOptions &options) {
    if (init.empty() || lower_bounds.size() != init.size()) {
        throw InvalidArgument("minimize_neg_log_likelihood: init and bounds must have equal, non-zero size");
    }
    Runner runner(objective, lower_bounds, options);
    std::vector<double> start(init.begin(), init.end());
    OptimizerResult best = runner.run(start);
    bool any_converged = best.converged;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int r = 0; r < options.restarts; ++r) {
        std::vector<double> jittered = best.x;
        for (double &v : jittered) {
            const double scale = v != 0.0 ? std::fabs(v) : 1.0;
            v += options.restart_jitter * scale * unit(rng);
        }
        OptimizerResult trial = runner.run(jittered);
        any_converged = any_converged || trial.converged;
        if (trial.value < best.value) {
            best = std::move(trial);
        }
    }
    best.evaluations = runner.evaluations();
    best.converged = any_converged;
    if (!std::isfinite(best.value)) {
        throw FitFailure("minimize_neg_log_likelihood: no point with a finite objective", best.x, best.value);
    }
    return best;
}

}  // namespace photoprune

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

#include <gtest/gtest.h>

#include <cmath>

#include "photoprune/errors.hpp"
#include "photoprune/optimize.hpp"

using namespace photoprune;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(Optimizer, Quadratic) {
    const std::vector<double> lo = {-kInf};
    const std::vector<double> x0 = {0.0};
    const auto r = minimize_neg_log_likelihood([](std::span<const double> x) { return (x[0] - 3) * (x[0] - 3); }, lo, x0);
    EXPECT_NEAR(r.x[0], 3.0, 1e-6);
    EXPECT_TRUE(r.converged);
}

TEST(Optimizer, Rosenbrock) {
    const std::vector<double> lo = {-kInf, -kInf};
    const std::vector<double> x0 = {-1.0, 1.0};
    auto f = [](std::span<const double> x) {
        return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
    };
    const auto r = minimize_neg_log_likelihood(f, lo, x0);
    EXPECT_NEAR(r.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(Optimizer, ProjectedOntoBound) {
    const std::vector<double> lo = {0.0};
    const std::vector<double> x0 = {2.0};
    const auto r = minimize_neg_log_likelihood([](std::span<const double> x) { return (x[0] + 1) * (x[0] + 1); }, lo, x0);
    EXPECT_NEAR(r.x[0], 0.0, 1e-12);
    EXPECT_GE(r.x[0], 0.0);
}

TEST(Optimizer, NonFiniteRegionsAvoided) {
    // log barrier: infinite for x <= 0.5
    const std::vector<double> lo = {-kInf};
    const std::vector<double> x0 = {3.0};
    auto f = [](std::span<const double> x) {
        return x[0] <= 0.5 ? std::numeric_limits<double>::quiet_NaN() : (x[0] - 1) * (x[0] - 1);
    };
    const auto r = minimize_neg_log_likelihood(f, lo, x0);
    EXPECT_NEAR(r.x[0], 1.0, 1e-6);
}

TEST(Optimizer, NoFinitePointThrows) {
    const std::vector<double> lo = {0.0};
    const std::vector<double> x0 = {1.0};
    EXPECT_THROW(minimize_neg_log_likelihood([](std::span<const double>) { return kInf; }, lo, x0), FitFailure);
    const std::vector<double> two = {1.0, 2.0};
    EXPECT_THROW(minimize_neg_log_likelihood([](std::span<const double>) { return 0.0; }, lo, two), InvalidArgument);
}

TEST(Optimizer, DeterministicGivenSeed) {
    const std::vector<double> lo = {-kInf, -kInf};
    const std::vector<double> x0 = {0.3, -0.2};
    auto f = [](std::span<const double> x) { return std::cos(3 * x[0]) + x[0] * x[0] + (x[1] - 1) * (x[1] - 1); };
    const auto a = minimize_neg_log_likelihood(f, lo, x0);
    const auto b = minimize_neg_log_likelihood(f, lo, x0);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.value, b.value);
}

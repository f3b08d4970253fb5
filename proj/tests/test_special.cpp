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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "photoprune/errors.hpp"
#include "photoprune/special.hpp"

using namespace photoprune;

namespace {

// Gamma(s, x) = int_x^inf t^(s-1) e^-t dt, substituted t = x + u.
double quadrature_gamma(double s, double x) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double u) {
        const double t = x + u;
        return std::exp((s - 1.0) * std::log(t) - t);
    };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

}  // namespace

TEST(UpperGamma, ClosedForms) {
    for (double x : {1e-6, 0.01, 0.3, 1.0, 2.5, 40.0}) {
        EXPECT_NEAR(upper_incomplete_gamma(1.0, x) / std::exp(-x), 1.0, 1e-13) << x;
        EXPECT_NEAR(upper_incomplete_gamma(0.5, x) / (std::sqrt(M_PI) * std::erfc(std::sqrt(x))), 1.0, 1e-12) << x;
        EXPECT_NEAR(upper_incomplete_gamma(0.0, x) / boost::math::expint(1, x), 1.0, 1e-12) << x;
        EXPECT_NEAR(upper_incomplete_gamma(2.0, x) / ((1.0 + x) * std::exp(-x)), 1.0, 1e-13) << x;
    }
}

TEST(UpperGamma, NegativeHalfAtOne) {
    EXPECT_NEAR(upper_incomplete_gamma(-0.5, 1.0), 0.1781477117815607, 1e-12);
    EXPECT_NEAR(quadrature_gamma(-0.5, 1.0), 0.1781477117815607, 1e-12);
}

TEST(UpperGamma, RecurrenceHolds) {
    for (double s : {-3.3, -2.0, -1.4, -0.6, -0.2, 0.4, 1.7}) {
        for (double x : {0.002, 0.2, 0.9, 1.5, 7.0}) {
            const double lhs = upper_incomplete_gamma(s, x);
            const double rhs = (upper_incomplete_gamma(s + 1, x) - std::pow(x, s) * std::exp(-x)) / s;
            EXPECT_NEAR(lhs / rhs, 1.0, 1e-10) << s << " " << x;
        }
    }
}

TEST(UpperGamma, GridAgainstQuadrature) {
    for (double s : {-4.2, -3.0, -2.5, -1.0, -0.9, -0.5, -0.3, -1e-9, 0.0, 1e-9, 0.2, 0.5, 0.8, 1.5, 3.3, 6.0}) {
        for (double x : {1e-4, 0.003, 0.05, 0.4, 0.99, 1.0, 1.7, 4.0, 12.0, 60.0}) {
            const double ref = quadrature_gamma(s, x);
            const double got = upper_incomplete_gamma(s, x);
            EXPECT_NEAR(got / ref, 1.0, 1e-10) << "s=" << s << " x=" << x;
            EXPECT_NEAR(log_upper_incomplete_gamma(s, x), std::log(ref), 1e-10 * std::max(1.0, std::fabs(std::log(ref))))
                << "s=" << s << " x=" << x;
        }
    }
}

TEST(UpperGamma, LogFormSurvivesUnderflow) {
    // Gamma(-1.5, 800) is far below the smallest double.
    const double lg = log_upper_incomplete_gamma(-1.5, 800.0);
    EXPECT_TRUE(std::isfinite(lg));
    // Leading asymptotic term: x^(s-1) e^-x.
    EXPECT_NEAR(lg, -2.5 * std::log(800.0) - 800.0, 0.01);
}

TEST(UpperGamma, EdgeCases) {
    EXPECT_THROW(upper_incomplete_gamma(1.0, -1.0), DomainError);
    EXPECT_NEAR(upper_incomplete_gamma(3.0, 0.0), 2.0, 1e-14);
    EXPECT_TRUE(std::isinf(upper_incomplete_gamma(-1.0, 0.0)));
}

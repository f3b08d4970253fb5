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

#include "photoprune/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/powm1.hpp>

#include "photoprune/errors.hpp"

namespace photoprune {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 100000;

// log of Legendre's continued fraction part: Gamma(s, x) = e^{-x} x^s * h.
// Modified Lentz; converges for x > 0, quickly once x > max(1, s + 1).
double log_gamma_cf(double s, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            break;
        }
    }
    return std::log(h) - x + s * std::log(x);
}

// Lower incomplete gamma by its power series, s > 0.
double lower_gamma_series(double s, double x) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) {
            break;
        }
    }
    return sum * std::exp(-x + s * std::log(x));
}

// |s| <= 0.5, 0 < x <= 1. Splits off the pole of Gamma(s) so that s -> 0 is
// smooth:
//   Gamma(s, x) = [(Gamma(1+s) - 1) - (x^s - 1)] / s - x^s sum_{k>=1} (-x)^k / (k! (s+k))
double upper_gamma_near_zero(double s, double x) {
    double head;
    if (s == 0.0) {
        head = -std::numbers::egamma - std::log(x);
    } else {
        head = (boost::math::tgamma1pm1(s) - boost::math::powm1(x, s)) / s;
    }
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= -x / k;
        const double contrib = term / (s + k);
        sum += contrib;
        if (std::fabs(contrib) < kEps * std::max(std::fabs(sum), 1e-300)) {
            break;
        }
    }
    return head - std::pow(x, s) * sum;
}

}  // namespace

double upper_incomplete_gamma(double s, double x) {
    if (std::isnan(s) || std::isnan(x)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x < 0.0) {
        throw DomainError("upper_incomplete_gamma: x must be >= 0");
    }
    if (x == 0.0) {
        return s > 0.0 ? std::tgamma(s) : std::numeric_limits<double>::infinity();
    }
    if (x > std::max(1.0, s + 1.0)) {
        return std::exp(log_gamma_cf(s, x));
    }
    if (s > 0.5) {
        return std::tgamma(s) - lower_gamma_series(s, x);
    }
    if (s >= -0.5) {
        return upper_gamma_near_zero(s, x);
    }
    // s < -0.5, x <= 1: climb to a base in (-0.5, 0.5], then recur down.
    const int steps = static_cast<int>(std::ceil(-0.5 - s));
    double a = s + steps;
    double g = upper_gamma_near_zero(a, x);
    const double ex = std::exp(-x);
    for (int j = 0; j < steps; ++j) {
        a -= 1.0;
        g = (g - std::pow(x, a) * ex) / a;
    }
    return g;
}

double log_upper_incomplete_gamma(double s, double x) {
    if (x > 0.0 && x > std::max(1.0, s + 1.0)) {
        return log_gamma_cf(s, x);
    }
    return std::log(upper_incomplete_gamma(s, x));
}

}  // namespace photoprune

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

#ifndef PHOTOPRUNE_ERRORS_HPP
#define PHOTOPRUNE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace photoprune {

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when an operation's numerical precondition (e.g. unitarity) fails.
struct PreconditionError : std::domain_error {
    using std::domain_error::domain_error;
};

// Model evaluated outside its support.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Optimizer gave up. Carries the best point it found so callers can still
/// inspect or report it.
struct FitFailure : std::runtime_error {
    FitFailure(const std::string &what, std::vector<double> best_params, double best_value)
        : std::runtime_error(what), best(std::move(best_params)), best_objective(best_value) {}
    std::vector<double> best;
    double best_objective;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace photoprune

#endif

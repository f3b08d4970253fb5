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

#ifndef PHOTOPRUNE_COMMANDS_HPP
#define PHOTOPRUNE_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace photoprune {

/// Parameters of one CLI invocation. Noise amplitudes are given in units
/// of pi radians, as on the command line.
struct ExperimentConfig {
    std::string command;
    std::vector<int> n_list;
    std::size_t ensemble = 100;
    std::uint64_t seed = 1;
    std::vector<double> delta0_pi;
    double ratio_step = 0.01;
    std::string model = "all";
    std::filesystem::path out = "out";
    std::filesystem::path in;  // fit: plan directory, defaults to `out`
    std::string format = "csv";
    int jobs = 0;
    std::size_t train = 100;
    std::size_t test = 100;
    std::string bloch_mode = "both";
    int polar = 10;
    int azimuthal = 20;
    bool pooled = false;
};

/// Defaults that depend on the command (n list, noise levels).
ExperimentConfig default_config(const std::string &command);

/// Overlays keys of a JSON config object. Unknown keys are rejected.
void apply_json_config(ExperimentConfig &cfg, const std::string &json_text);

/// Range checks; throws InvalidArgument naming the offending field.
void validate_config(const ExperimentConfig &cfg);

void run_gen(const ExperimentConfig &cfg);
void run_fit(const ExperimentConfig &cfg);
void run_sweep(const ExperimentConfig &cfg);
void run_threshold(const ExperimentConfig &cfg);
void run_universal(const ExperimentConfig &cfg);
void run_bloch(const ExperimentConfig &cfg);
void run_command(const ExperimentConfig &cfg);

/// Full command-line entry point; returns the process exit code. Errors are
/// reported on stderr as a single line "error: <command>: <message>".
int run_cli(int argc, char **argv);

}  // namespace photoprune

#endif

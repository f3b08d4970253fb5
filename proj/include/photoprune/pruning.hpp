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

#ifndef PHOTOPRUNE_PRUNING_HPP
#define PHOTOPRUNE_PRUNING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "photoprune/mesh.hpp"

namespace photoprune {

enum class DefectMode { PruneBody, PruneTail, NoiseBody, NoiseTail };

inline constexpr DefectMode kAllDefectModes[] = {DefectMode::PruneBody, DefectMode::PruneTail,
                                                 DefectMode::NoiseBody, DefectMode::NoiseTail};

std::string to_string(DefectMode mode);
DefectMode parse_defect_mode(std::string_view name);
inline bool is_noise(DefectMode mode) {
    return mode == DefectMode::NoiseBody || mode == DefectMode::NoiseTail;
}

/// Block indices of a plan ordered by ascending theta; rank r (1-based)
/// lives at order[r - 1].
struct SortedThetaSet {
    std::vector<std::size_t> order;
};

/// Stable ascending sort of theta; ties keep plan order.
SortedThetaSet sorted_theta_set(const MeshPlan &plan);

struct DefectConfig {
    DefectMode mode = DefectMode::PruneBody;
    std::size_t sigma = 0;  // number of defective blocks
    double delta0 = 0.0;    // noise amplitude (radians); unused by prune modes
    RngSeed seed;
};

/// Body modes touch ranks 1..sigma, tail modes the top sigma ranks. Prune
/// modes set theta to exactly 0; noise modes add an independent
/// uniform[0, delta0] draw to each selected theta, without clamping.
/// Nothing but the selected thetas changes.
MeshPlan apply_defect(const MeshPlan &plan, const DefectConfig &cfg, const SortedThetaSet &ranks);
MeshPlan apply_defect(const MeshPlan &plan, const DefectConfig &cfg);

/// sigma = round(ratio * n(n-1)/2).
std::size_t sigma_for_ratio(int n, double ratio);

/// {0, step, 2 step, ..., 1}.
std::vector<double> make_ratio_grid(double step);

struct SweepRow {
    int n = 0;
    DefectMode mode = DefectMode::PruneBody;
    double defect_ratio = 0.0;  // 2 sigma / (n(n-1))
    double delta0 = 0.0;        // 0 for prune modes
    std::size_t realization = 0;
    double fidelity = 0.0;
};

struct SweepConfig {
    int n = 16;
    std::size_t ensemble_size = 100;
    std::vector<double> ratio_grid;
    std::vector<double> delta0_list;
    std::uint64_t base_seed = 1;
    int jobs = 0;
    /// Modes to run; empty means all four.
    std::vector<DefectMode> modes;
};

/// Seed of the target unitary for realization k of a sweep.
RngSeed realization_seed(std::uint64_t base_seed, std::size_t realization);

/// All four defect modes (noise modes once per delta0) over the ratio grid
/// for a single circuit, ranked by `ranks`. Fidelity is measured against
/// the target `u`.
std::vector<SweepRow> sweep_circuit(const ComplexMatrix &u, const MeshPlan &plan,
                                    const SortedThetaSet &ranks, const SweepConfig &cfg,
                                    std::size_t realization, const RngSeed &noise_seed);

/// Monte-Carlo fidelity sweep with per-circuit theta ranking. Rows are
/// ordered by (realization, mode, delta0, ratio) whatever `jobs` is.
std::vector<SweepRow> fidelity_sweep(const SweepConfig &cfg);

/// Mean fidelity per defect ratio for one (n, mode[, delta0]) curve.
struct CurvePoint {
    double ratio;
    double mean_fidelity;
};
std::vector<CurvePoint> mean_curve(std::span<const SweepRow> rows, int n, DefectMode mode,
                                   double delta0 = 0.0);

/// Largest defect ratio where mean prune_body fidelity is still >= the
/// baseline noisy curve at the same ratio, refined by linear interpolation
/// toward the next grid point. 0 when no positive ratio qualifies.
double pruning_threshold(std::span<const SweepRow> rows, int n, double delta0,
                         DefectMode baseline = DefectMode::NoiseBody);

}  // namespace photoprune

#endif

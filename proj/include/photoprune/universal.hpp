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

#ifndef PHOTOPRUNE_UNIVERSAL_HPP
#define PHOTOPRUNE_UNIVERSAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "photoprune/mesh.hpp"
#include "photoprune/pruning.hpp"

namespace photoprune {

/// Ensemble average of one hardware position.
struct PositionMean {
    int m = 1;
    int l = 1;
    int mesh_column = 0;
    double mean_theta = 0.0;
    double mean_phi = 0.0;
};

/// Per-position averages over an ensemble of plans of one degree. Positions
/// are indexed like MeshPlan::blocks. `universal_order` ranks positions by
/// ascending mean theta (ties by (l, m)).
struct PositionStats {
    int n = 0;
    std::size_t ensemble_size = 0;
    std::vector<PositionMean> positions;
    std::vector<std::size_t> universal_order;

    SortedThetaSet as_ranks() const { return SortedThetaSet{universal_order}; }
    /// 1-based rank of each position in universal_order.
    std::vector<std::size_t> ranks() const;
};

/// Arithmetic means of theta and phi per position, summed in plan order.
PositionStats average_architecture(std::span<const MeshPlan> plans);

struct UniversalConfig {
    int n = 16;
    std::size_t train_size = 100;
    std::size_t test_size = 100;
    std::vector<double> ratio_grid;
    std::vector<double> delta0_list;
    std::uint64_t base_seed = 1;
    int jobs = 0;
    /// Modes to run; empty means all four.
    std::vector<DefectMode> modes;
};

struct UniversalResult {
    PositionStats stats;
    std::vector<SweepRow> rows;
};

/// Builds the universal order from a training ensemble, then sweeps a
/// disjoint test ensemble with that fixed order. Realization ids in the
/// rows are test indices.
UniversalResult universal_defect_sweep(const UniversalConfig &cfg);

RngSeed training_seed(std::uint64_t base_seed, std::size_t index);
RngSeed test_seed(std::uint64_t base_seed, std::size_t index);

}  // namespace photoprune

#endif

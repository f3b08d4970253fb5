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

#include "photoprune/universal.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "photoprune/errors.hpp"
#include "photoprune/parallel.hpp"

namespace photoprune {

std::vector<std::size_t> PositionStats::ranks() const {
    std::vector<std::size_t> r(universal_order.size());
    for (std::size_t k = 0; k < universal_order.size(); ++k) r[universal_order[k]] = k + 1;
    return r;
}

PositionStats average_architecture(std::span<const MeshPlan> plans) {
    if (plans.empty()) {
        throw InsufficientData("average_architecture: empty ensemble");
    }
    const MeshPlan &first = plans.front();
    for (const MeshPlan &p : plans) {
        if (p.n != first.n || p.blocks.size() != first.blocks.size()) {
            throw InvalidArgument("average_architecture: plans of mixed degree");
        }
        for (std::size_t b = 0; b < p.blocks.size(); ++b) {
            if (p.blocks[b].m != first.blocks[b].m || p.blocks[b].l != first.blocks[b].l) {
                throw InvalidArgument("average_architecture: plans disagree on block positions");
            }
        }
    }
    PositionStats stats;
    stats.n = first.n;
    stats.ensemble_size = plans.size();
    const std::vector<int> columns = mesh_columns(first);
    stats.positions.resize(first.blocks.size());
    for (std::size_t b = 0; b < first.blocks.size(); ++b) {
        double theta = 0.0;
        double phi = 0.0;
        for (const MeshPlan &p : plans) {
            theta += p.blocks[b].theta;
            phi += p.blocks[b].phi;
        }
        PositionMean &pos = stats.positions[b];
        pos.m = first.blocks[b].m;
        pos.l = first.blocks[b].l;
        pos.mesh_column = columns[b];
        pos.mean_theta = theta / static_cast<double>(plans.size());
        pos.mean_phi = phi / static_cast<double>(plans.size());
    }
    stats.universal_order.resize(stats.positions.size());
    std::iota(stats.universal_order.begin(), stats.universal_order.end(), std::size_t{0});
    std::stable_sort(stats.universal_order.begin(), stats.universal_order.end(),
                     [&](std::size_t a, std::size_t b) {
                         const PositionMean &pa = stats.positions[a];
                         const PositionMean &pb = stats.positions[b];
                         return std::tie(pa.mean_theta, pa.l, pa.m) < std::tie(pb.mean_theta, pb.l, pb.m);
                     });
    return stats;
}

RngSeed training_seed(std::uint64_t base_seed, std::size_t index) {
    return RngSeed{base_seed, 2}.child(index);
}

RngSeed test_seed(std::uint64_t base_seed, std::size_t index) {
    return RngSeed{base_seed, 3}.child(index);
}

UniversalResult universal_defect_sweep(const UniversalConfig &cfg) {
    if (cfg.train_size < 1 || cfg.test_size < 1) {
        throw InvalidArgument("universal sweep: train and test sizes must be >= 1");
    }
    if (cfg.n < 2) {
        throw InvalidArgument("universal sweep: n must be >= 2");
    }
    std::vector<MeshPlan> train(cfg.train_size);
    parallel_for(cfg.train_size, cfg.jobs, [&](std::size_t k) {
        train[k] = decompose(haar_random_unitary(cfg.n, training_seed(cfg.base_seed, k)));
    });
    UniversalResult result;
    result.stats = average_architecture(train);
    const SortedThetaSet ranks = result.stats.as_ranks();

    SweepConfig sweep;
    sweep.n = cfg.n;
    sweep.ensemble_size = cfg.test_size;
    sweep.ratio_grid = cfg.ratio_grid;
    sweep.delta0_list = cfg.delta0_list;
    sweep.base_seed = cfg.base_seed;
    sweep.jobs = cfg.jobs;
    sweep.modes = cfg.modes;
    std::vector<std::vector<SweepRow>> per(cfg.test_size);
    parallel_for(cfg.test_size, cfg.jobs, [&](std::size_t k) {
        const ComplexMatrix u = haar_random_unitary(cfg.n, test_seed(cfg.base_seed, k));
        const MeshPlan plan = decompose(u);
        per[k] = sweep_circuit(u, plan, ranks, sweep, k, RngSeed{cfg.base_seed, 4}.child(k));
    });
    for (auto &chunk : per) result.rows.insert(result.rows.end(), chunk.begin(), chunk.end());
    return result;
}

}  // namespace photoprune

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

#include "photoprune/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "photoprune/errors.hpp"
#include "photoprune/parallel.hpp"

namespace photoprune {

std::string to_string(DefectMode mode) {
    switch (mode) {
        case DefectMode::PruneBody: return "prune_body";
        case DefectMode::PruneTail: return "prune_tail";
        case DefectMode::NoiseBody: return "noise_body";
        case DefectMode::NoiseTail: return "noise_tail";
    }
    return "?";
}

DefectMode parse_defect_mode(std::string_view name) {
    for (DefectMode m : kAllDefectModes) {
        if (to_string(m) == name) return m;
    }
    throw InvalidArgument("unknown defect mode '" + std::string(name) + "'");
}

SortedThetaSet sorted_theta_set(const MeshPlan &plan) {
    SortedThetaSet s;
    s.order.resize(plan.blocks.size());
    std::iota(s.order.begin(), s.order.end(), std::size_t{0});
    std::stable_sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) {
        return plan.blocks[a].theta < plan.blocks[b].theta;
    });
    return s;
}

MeshPlan apply_defect(const MeshPlan &plan, const DefectConfig &cfg, const SortedThetaSet &ranks) {
    const std::size_t total = plan.blocks.size();
    if (cfg.sigma > total) {
        throw InvalidArgument("apply_defect: sigma=" + std::to_string(cfg.sigma) + " exceeds block count " +
                              std::to_string(total));
    }
    if (ranks.order.size() != total) {
        throw InvalidArgument("apply_defect: rank order does not match the plan");
    }
    if (is_noise(cfg.mode) && !(cfg.delta0 >= 0.0)) {
        throw InvalidArgument("apply_defect: delta0 must be >= 0");
    }
    MeshPlan out = plan;
    const bool body = cfg.mode == DefectMode::PruneBody || cfg.mode == DefectMode::NoiseBody;
    const std::size_t first = body ? 0 : total - cfg.sigma;
    if (!is_noise(cfg.mode)) {
        for (std::size_t r = first; r < first + cfg.sigma; ++r) {
            out.blocks[ranks.order[r]].theta = 0.0;
        }
        return out;
    }
    Rng rng = make_rng(cfg.seed);
    std::uniform_real_distribution<double> noise(0.0, cfg.delta0);
    for (std::size_t r = first; r < first + cfg.sigma; ++r) {
        out.blocks[ranks.order[r]].theta += noise(rng);
    }
    return out;
}

MeshPlan apply_defect(const MeshPlan &plan, const DefectConfig &cfg) {
    return apply_defect(plan, cfg, sorted_theta_set(plan));
}

std::size_t sigma_for_ratio(int n, double ratio) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw InvalidArgument("defect ratio must lie in [0, 1], got " + std::to_string(ratio));
    }
    const double total = 0.5 * n * (n - 1.0);
    return static_cast<std::size_t>(std::llround(ratio * total));
}

std::vector<double> make_ratio_grid(double step) {
    if (!(step > 0.0 && step <= 1.0)) {
        throw InvalidArgument("ratio step must lie in (0, 1]");
    }
    const long count = std::lround(1.0 / step);
    std::vector<double> grid;
    for (long k = 0; k * step < 1.0 - 1e-9 && k <= count; ++k) {
        grid.push_back(static_cast<double>(k) * step);
    }
    grid.push_back(1.0);
    return grid;
}

RngSeed realization_seed(std::uint64_t base_seed, std::size_t realization) {
    return RngSeed{base_seed, 0}.child(realization);
}

namespace {

RngSeed noise_seed_for(std::uint64_t base_seed, std::size_t realization) {
    return RngSeed{base_seed, 1}.child(realization);
}

void check_sweep_config(const SweepConfig &cfg) {
    if (cfg.n < 2) throw InvalidArgument("sweep: n must be >= 2");
    if (cfg.ratio_grid.empty()) throw InvalidArgument("sweep: empty ratio grid");
    for (double r : cfg.ratio_grid) {
        if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("sweep: ratio grid values must lie in [0, 1]");
    }
    for (double d : cfg.delta0_list) {
        if (!(d >= 0.0)) throw InvalidArgument("sweep: delta0 values must be >= 0");
    }
}

}  // namespace

std::vector<SweepRow> sweep_circuit(const ComplexMatrix &u, const MeshPlan &plan,
                                    const SortedThetaSet &ranks, const SweepConfig &cfg,
                                    std::size_t realization, const RngSeed &noise_seed) {
    const double total = 0.5 * plan.n * (plan.n - 1.0);
    std::vector<SweepRow> rows;
    auto run = [&](DefectMode mode, double delta0, std::uint64_t stream) {
        for (std::size_t k = 0; k < cfg.ratio_grid.size(); ++k) {
            DefectConfig dc;
            dc.mode = mode;
            dc.sigma = sigma_for_ratio(plan.n, cfg.ratio_grid[k]);
            dc.delta0 = delta0;
            dc.seed = noise_seed.child((stream << 32) | k);
            const MeshPlan defective = apply_defect(plan, dc, ranks);
            SweepRow row;
            row.n = plan.n;
            row.mode = mode;
            row.defect_ratio = static_cast<double>(dc.sigma) / total;
            row.delta0 = delta0;
            row.realization = realization;
            row.fidelity = fidelity(reconstruct(defective), u);
            rows.push_back(row);
        }
    };
    for (DefectMode mode : kAllDefectModes) {
        if (!cfg.modes.empty() && std::find(cfg.modes.begin(), cfg.modes.end(), mode) == cfg.modes.end()) continue;
        if (!is_noise(mode)) {
            run(mode, 0.0, static_cast<std::uint64_t>(mode));
            continue;
        }
        for (std::size_t d = 0; d < cfg.delta0_list.size(); ++d) {
            run(mode, cfg.delta0_list[d], static_cast<std::uint64_t>(mode) * 4096 + d + 1);
        }
    }
    return rows;
}

std::vector<SweepRow> fidelity_sweep(const SweepConfig &cfg) {
    check_sweep_config(cfg);
    std::vector<std::vector<SweepRow>> per(cfg.ensemble_size);
    parallel_for(cfg.ensemble_size, cfg.jobs, [&](std::size_t k) {
        const ComplexMatrix u = haar_random_unitary(cfg.n, realization_seed(cfg.base_seed, k));
        const MeshPlan plan = decompose(u);
        per[k] = sweep_circuit(u, plan, sorted_theta_set(plan), cfg, k, noise_seed_for(cfg.base_seed, k));
    });
    std::vector<SweepRow> rows;
    for (auto &chunk : per) rows.insert(rows.end(), chunk.begin(), chunk.end());
    return rows;
}

std::vector<CurvePoint> mean_curve(std::span<const SweepRow> rows, int n, DefectMode mode, double delta0) {
    std::map<double, std::pair<double, std::size_t>> acc;
    for (const SweepRow &r : rows) {
        if (r.n != n || r.mode != mode) continue;
        if (is_noise(mode) && std::fabs(r.delta0 - delta0) > 1e-12 * std::max(1.0, std::fabs(delta0))) continue;
        auto &slot = acc[r.defect_ratio];
        slot.first += r.fidelity;
        slot.second += 1;
    }
    std::vector<CurvePoint> out;
    out.reserve(acc.size());
    for (const auto &[ratio, sum] : acc) {
        out.push_back({ratio, sum.first / static_cast<double>(sum.second)});
    }
    return out;
}

double pruning_threshold(std::span<const SweepRow> rows, int n, double delta0, DefectMode baseline) {
    if (!is_noise(baseline)) {
        throw InvalidArgument("pruning_threshold: baseline must be a noise mode");
    }
    const auto body = mean_curve(rows, n, DefectMode::PruneBody);
    const auto noisy = mean_curve(rows, n, baseline, delta0);
    if (body.empty() || noisy.empty()) {
        throw InvalidArgument("pruning_threshold: sweep lacks prune_body or " + to_string(baseline) +
                              " rows for n=" + std::to_string(n));
    }
    std::vector<double> ratio;
    std::vector<double> diff;
    std::size_t j = 0;
    for (const CurvePoint &p : body) {
        while (j < noisy.size() && noisy[j].ratio < p.ratio) ++j;
        if (j < noisy.size() && noisy[j].ratio == p.ratio) {
            ratio.push_back(p.ratio);
            diff.push_back(p.mean_fidelity - noisy[j].mean_fidelity);
        }
    }
    if (ratio.empty()) {
        throw InvalidArgument("pruning_threshold: prune and noise curves share no ratios");
    }
    for (std::size_t i = ratio.size(); i-- > 0;) {
        if (ratio[i] <= 0.0) break;
        if (diff[i] < 0.0) continue;
        if (i + 1 == ratio.size()) return ratio[i];
        const double t = diff[i] / (diff[i] - diff[i + 1]);
        return ratio[i] + t * (ratio[i + 1] - ratio[i]);
    }
    return 0.0;
}

}  // namespace photoprune

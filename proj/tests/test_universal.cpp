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

#include <map>
#include <set>

#include "oracles.hpp"
#include "photoprune/errors.hpp"
#include "photoprune/mesh.hpp"
#include "photoprune/universal.hpp"

using namespace photoprune;

namespace {

std::vector<MeshPlan> ensemble(int n, std::size_t count, std::uint64_t stream) {
    std::vector<MeshPlan> plans;
    for (std::size_t k = 0; k < count; ++k) plans.push_back(decompose(haar_random_unitary(n, RngSeed{9, stream}.child(k))));
    return plans;
}

}  // namespace

TEST(Average, SinglePlan) {
    const auto plans = ensemble(7, 1, 1);
    const PositionStats s = average_architecture(plans);
    ASSERT_EQ(s.positions.size(), plans[0].blocks.size());
    for (std::size_t b = 0; b < s.positions.size(); ++b) {
        EXPECT_EQ(s.positions[b].mean_theta, plans[0].blocks[b].theta);
        EXPECT_EQ(s.positions[b].mean_phi, plans[0].blocks[b].phi);
        EXPECT_EQ(s.positions[b].m, plans[0].blocks[b].m);
        EXPECT_EQ(s.positions[b].l, plans[0].blocks[b].l);
    }
}

TEST(Average, Errors) {
    EXPECT_THROW(average_architecture(std::vector<MeshPlan>{}), InsufficientData);
    auto plans = ensemble(5, 2, 2);
    plans.push_back(decompose(haar_random_unitary(6, {1, 1})));
    EXPECT_THROW(average_architecture(plans), InvalidArgument);
}

TEST(Average, OrderIsSortedBijectionWithTieBreak) {
    const auto plans = ensemble(9, 10, 3);
    const PositionStats s = average_architecture(plans);
    const auto &o = s.universal_order;
    EXPECT_EQ(std::set<std::size_t>(o.begin(), o.end()).size(), s.positions.size());
    for (std::size_t k = 1; k < o.size(); ++k) {
        EXPECT_LE(s.positions[o[k - 1]].mean_theta, s.positions[o[k]].mean_theta);
    }
    const auto r = s.ranks();
    for (std::size_t k = 0; k < o.size(); ++k) EXPECT_EQ(r[o[k]], k + 1);
    for (const auto &p : s.positions) {
        EXPECT_GE(p.mean_theta, 0.0);
        EXPECT_LE(p.mean_theta, oracle::kPi / 2);
        EXPECT_GE(p.mean_phi, 0.0);
        EXPECT_LT(p.mean_phi, 2 * oracle::kPi);
    }
    // All-equal means fall back to (l, m) order.
    auto flat = plans;
    for (auto &p : flat)
        for (auto &b : p.blocks) b.theta = 0.5;
    const PositionStats f = average_architecture(flat);
    for (std::size_t k = 1; k < f.universal_order.size(); ++k) {
        const auto &a = f.positions[f.universal_order[k - 1]];
        const auto &b = f.positions[f.universal_order[k]];
        EXPECT_LT(std::make_pair(a.l, a.m), std::make_pair(b.l, b.m));
    }
}

TEST(Average, MeshLayoutCounts) {
    const PositionStats s = average_architecture(ensemble(8, 2, 4));
    std::map<int, int> per_channel;
    for (const auto &p : s.positions) per_channel[p.m]++;
    int total = 0;
    for (const auto &[m, c] : per_channel) total += c;
    EXPECT_EQ(total, 28);
}

TEST(Average, Statistics32) {
    const PositionStats s = average_architecture(ensemble(32, 100, 5));
    double phi = 0, edge = 0, inner = 0;
    int ne = 0, ni = 0;
    for (const auto &p : s.positions) {
        phi += p.mean_phi;
        if (p.m == 1 || p.m == 31) {
            edge += p.mean_theta;
            ++ne;
        } else {
            inner += p.mean_theta;
            ++ni;
        }
    }
    EXPECT_NEAR(phi / s.positions.size(), oracle::kPi, 0.05);
    EXPECT_GT(edge / ne, inner / ni);
}

namespace {

UniversalResult threshold_run(int n, std::size_t train, std::size_t test) {
    UniversalConfig c;
    c.n = n;
    c.train_size = train;
    c.test_size = test;
    c.ratio_grid = make_ratio_grid(0.01);
    c.delta0_list = {0.10 * oracle::kPi};
    c.base_seed = 1;
    c.modes = {DefectMode::PruneBody, DefectMode::NoiseBody};
    return universal_defect_sweep(c);
}

}  // namespace

TEST(Universal, RatioZeroIsExact) {
    const auto res = threshold_run(12, 10, 10);
    for (const SweepRow &r : res.rows)
        if (r.defect_ratio == 0.0) EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
}

TEST(Universal, PositiveThresholdAt32) {
    const auto res = threshold_run(32, 100, 100);
    EXPECT_GT(pruning_threshold(res.rows, 32, 0.10 * oracle::kPi), 0.0);
}

TEST(Universal, PositiveThresholdAt64) {
    const auto res = threshold_run(64, 40, 20);
    EXPECT_GT(pruning_threshold(res.rows, 64, 0.10 * oracle::kPi), 0.0);
}

TEST(Universal, NoBetterThanPerRealizationOrder) {
    UniversalConfig c;
    c.n = 16;
    c.train_size = 40;
    c.test_size = 30;
    c.ratio_grid = make_ratio_grid(0.05);
    c.base_seed = 8;
    c.jobs = 2;
    c.modes = {DefectMode::PruneBody};
    const auto uni = universal_defect_sweep(c);
    // Same test circuits ranked by their own theta values.
    double diff = 0.0;
    int count = 0;
    for (const SweepRow &r : uni.rows) {
        const ComplexMatrix u = haar_random_unitary(16, test_seed(c.base_seed, r.realization));
        const MeshPlan plan = decompose(u);
        const MeshPlan d = apply_defect(plan, {DefectMode::PruneBody, sigma_for_ratio(16, r.defect_ratio), 0, {}});
        diff += fidelity(reconstruct(d), u) - r.fidelity;
        ++count;
    }
    EXPECT_GE(diff / count, -0.01);
}

TEST(Universal, SeedsAreDisjointStreams) {
    EXPECT_NE(training_seed(1, 0), test_seed(1, 0));
    EXPECT_NE(training_seed(1, 0).mixed(), test_seed(1, 0).mixed());
    EXPECT_EQ(training_seed(1, 4), training_seed(1, 4));
}

TEST(Universal, Errors) {
    UniversalConfig c;
    c.ratio_grid = {0.0};
    c.train_size = 0;
    EXPECT_THROW(universal_defect_sweep(c), InvalidArgument);
    c.train_size = 1;
    c.n = 1;
    EXPECT_THROW(universal_defect_sweep(c), InvalidArgument);
}

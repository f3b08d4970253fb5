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

using namespace photoprune;
using oracle::kPi;

namespace {

const Complex I1(0.0, 1.0);

void expect_matrix_near(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol) {
    ASSERT_EQ(a.rows(), b.rows());
    ASSERT_EQ(a.cols(), b.cols());
    EXPECT_LE((a - b).norm(), tol) << "\n" << a << "\n--\n" << b;
}

// Independent reconstruction: dense products of embedded blocks.
ComplexMatrix dense_reconstruct(const MeshPlan &plan) {
    ComplexMatrix acc = ComplexMatrix::Identity(plan.n, plan.n);
    for (const Block &b : plan.blocks) {
        acc = oracle::embed(plan.n, b.m, oracle::rotation_product(b.theta, b.phi)) * acc;
    }
    ComplexMatrix d = ComplexMatrix::Zero(plan.n, plan.n);
    for (int i = 0; i < plan.n; ++i) d(i, i) = plan.diag_phases[i];
    return d * acc;
}

}  // namespace

TEST(BlockMatrix, MatchesRotationProduct) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    for (int k = 0; k < 100; ++k) {
        const double t = u(rng), p = u(rng);
        const Eigen::Matrix2cd b = block_matrix(t, p);
        expect_matrix_near(b, oracle::rotation_product(t, p), 1e-13);
        EXPECT_NEAR(std::abs(b.determinant() - 1.0), 0.0, 1e-12);
        EXPECT_LE((b.adjoint() * b - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
    }
}

TEST(BlockMatrix, Examples) {
    Eigen::Matrix2cd cross;
    cross << 0, I1, I1, 0;
    expect_matrix_near(block_matrix(0, 0), cross, 1e-15);
    Eigen::Matrix2cd bar;
    bar << I1, 0, 0, -I1;
    expect_matrix_near(block_matrix(kPi / 2, 0), bar, 1e-15);
}

TEST(EmbedBlock, PlacesBlockAndChecksRange) {
    const Eigen::Matrix2cd b = block_matrix(0.3, 1.1);
    const ComplexMatrix e = embed_block(5, 2, b);
    expect_matrix_near(e, oracle::embed(5, 2, b), 0.0);
    EXPECT_THROW(embed_block(5, 0, b), InvalidArgument);
    EXPECT_THROW(embed_block(5, 5, b), InvalidArgument);
    EXPECT_THROW(embed_block(1, 1, b), InvalidArgument);
}

TEST(NullingRight, DegenerateBranches) {
    ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    // Row l=2, columns m=1, m+1=2: U(2,1) != 0, U(2,2) = 0.
    u(1, 0) = 0.6;
    u(1, 1) = 0.0;
    RotationAngles a = solve_nulling_right(u, 1, 2);
    EXPECT_EQ(a.theta, 0.0);
    EXPECT_EQ(a.phi, 0.0);
    u(1, 0) = 0.0;
    u(1, 1) = Complex(0.3, 0.4);
    a = solve_nulling_right(u, 1, 2);
    EXPECT_NEAR(a.theta, kPi / 2, 1e-15);
}

TEST(NullingRight, Residual) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexMatrix u = haar_random_unitary(5, {s, 31});
        const RotationAngles a = solve_nulling_right(u, 1, 5);
        const ComplexMatrix r = u * oracle::embed(5, 1, oracle::rotation_product(a.theta, a.phi)).adjoint();
        EXPECT_LE(std::abs(r(4, 0)), 1e-13);
        EXPECT_GE(a.theta, 0.0);
        EXPECT_LE(a.theta, kPi / 2);
        EXPECT_GE(a.phi, 0.0);
        EXPECT_LT(a.phi, 2 * kPi);
    }
}

TEST(NullingLeft, DegenerateBranches) {
    ComplexMatrix u = ComplexMatrix::Zero(3, 3);
    // Target (m+1, l) = (3, 1) with m = 2.
    u(1, 0) = 0.0;
    u(2, 0) = Complex(0.1, 0.7);
    RotationAngles a = solve_nulling_left(u, 2, 1);
    EXPECT_EQ(a.theta, 0.0);
    EXPECT_EQ(a.phi, 0.0);
    u(1, 0) = Complex(-0.5, 0.2);
    u(2, 0) = 0.0;
    a = solve_nulling_left(u, 2, 1);
    EXPECT_NEAR(a.theta, kPi / 2, 1e-15);
    // Both branches really null the target.
    for (int k = 0; k < 2; ++k) {
        ComplexMatrix v = ComplexMatrix::Zero(3, 3);
        v(1 + k, 0) = 1.0;
        const RotationAngles b = solve_nulling_left(v, 2, 1);
        const ComplexMatrix r = oracle::embed(3, 2, oracle::rotation_product(b.theta, b.phi)) * v;
        EXPECT_LE(std::abs(r(2, 0)), 1e-15);
    }
}

TEST(NullingLeft, Residual) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexMatrix u = haar_random_unitary(5, {s, 32});
        const RotationAngles a = solve_nulling_left(u, 3, 1);
        const ComplexMatrix r = oracle::embed(5, 3, oracle::rotation_product(a.theta, a.phi)) * u;
        EXPECT_LE(std::abs(r(3, 0)), 1e-13);
    }
}

TEST(NullingBoth, ZeroPairGivesZeroAngles) {
    const ComplexMatrix z = ComplexMatrix::Zero(3, 3);
    EXPECT_EQ(solve_nulling_right(z, 1, 2).theta, 0.0);
    EXPECT_EQ(solve_nulling_left(z, 1, 2).theta, 0.0);
    EXPECT_THROW(solve_nulling_right(z, 3, 1), InvalidArgument);
    EXPECT_THROW(solve_nulling_left(z, 1, 4), InvalidArgument);
}

TEST(CommuteThroughDiagonal, IdentityExample) {
    const std::vector<Complex> id(4, 1.0);
    const Block blk{2, 1, 0.7, 1.3};
    const auto [d, moved] = commute_through_diagonal(id, blk);
    EXPECT_NEAR(moved.phi, 0.0, 1e-15);
    EXPECT_EQ(moved.theta, blk.theta);
    EXPECT_NEAR(std::abs(d[1] + std::exp(-I1 * 0.65)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d[2] + std::exp(I1 * 0.65)), 0.0, 1e-15);
    EXPECT_EQ(d[0], 1.0);
    EXPECT_EQ(d[3], 1.0);
}

TEST(CommuteThroughDiagonal, ResidualForRandomPhases) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    for (int k = 0; k < 50; ++k) {
        const int n = 5;
        std::vector<Complex> diag(n);
        ComplexMatrix dm = ComplexMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) dm(i, i) = diag[i] = std::polar(1.0, u(rng));
        const Block blk{1 + k % 4, 1, u(rng) / 4, u(rng)};
        const auto [d2, moved] = commute_through_diagonal(diag, blk);
        ComplexMatrix dm2 = ComplexMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) dm2(i, i) = d2[i];
        const ComplexMatrix lhs = oracle::embed(n, blk.m, oracle::rotation_product(blk.theta, blk.phi)).adjoint() * dm;
        const ComplexMatrix rhs = dm2 * oracle::embed(n, blk.m, oracle::rotation_product(moved.theta, moved.phi));
        EXPECT_LE((lhs - rhs).norm(), 1e-13);
        EXPECT_EQ(moved.theta, blk.theta);
        for (const Complex &c : d2) EXPECT_NEAR(std::abs(c), 1.0, 1e-14);
    }
}

TEST(Schedule, FiveByFiveMatchesReferenceSequence) {
    const auto steps = nulling_schedule(5);
    ASSERT_EQ(steps.size(), 10u);
    // First four steps from the worked U_5 example: right (1,5), left (3,1),
    // left (4,2), right (3,5).
    EXPECT_EQ(steps[0].side, NullingSide::Right);
    EXPECT_EQ(steps[0].m, 1);
    EXPECT_EQ(steps[0].l, 5);
    EXPECT_EQ(steps[1].side, NullingSide::Left);
    EXPECT_EQ(steps[1].m, 3);
    EXPECT_EQ(steps[1].l, 1);
    EXPECT_EQ(steps[2].side, NullingSide::Left);
    EXPECT_EQ(steps[2].m, 4);
    EXPECT_EQ(steps[2].l, 2);
    EXPECT_EQ(steps[3].side, NullingSide::Right);
    EXPECT_EQ(steps[3].m, 3);
    EXPECT_EQ(steps[3].l, 5);
    // Every strictly lower entry is nulled exactly once.
    std::set<std::pair<int, int>> targets;
    for (const NullingStep &s : steps) {
        EXPECT_GT(s.row, s.col);
        targets.insert({s.row, s.col});
    }
    EXPECT_EQ(targets.size(), 10u);
}

TEST(Decompose, NulledEntriesStayNulled) {
    for (int n : {5, 8, 13}) {
        const ComplexMatrix u = haar_random_unitary(n, {static_cast<std::uint64_t>(n), 4});
        std::vector<std::pair<int, int>> nulled;
        decompose(u, [&](const NullingStep &step, const ComplexMatrix &w) {
            nulled.emplace_back(step.row - 1, step.col - 1);
            for (const auto &[r, c] : nulled) {
                EXPECT_LE(std::abs(w(r, c)), 1e-10) << "n=" << n << " entry " << r << "," << c;
            }
        });
        EXPECT_EQ(nulled.size(), static_cast<std::size_t>(n * (n - 1) / 2));
    }
}

TEST(Decompose, OneByOne) {
    ComplexMatrix u(1, 1);
    u(0, 0) = std::polar(1.0, 0.4);
    const MeshPlan plan = decompose(u);
    EXPECT_TRUE(plan.blocks.empty());
    ASSERT_EQ(plan.diag_phases.size(), 1u);
    EXPECT_NEAR(std::abs(plan.diag_phases[0] - u(0, 0)), 0.0, 1e-15);
    expect_matrix_near(reconstruct(plan), u, 1e-15);
}

TEST(Decompose, RejectsNonUnitary) {
    ComplexMatrix u = haar_random_unitary(4, {1, 1});
    u(0, 0) += 1e-6;
    EXPECT_THROW(decompose(u), PreconditionError);
    EXPECT_THROW(decompose(ComplexMatrix::Zero(2, 3)), InvalidArgument);
}

TEST(Decompose, RoundTripAndRanges) {
    for (int n : {2, 3, 4, 5, 8, 16, 32, 64}) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ComplexMatrix u = haar_random_unitary(n, {s, static_cast<std::uint64_t>(n)});
            const MeshPlan plan = decompose(u);
            ASSERT_EQ(plan.blocks.size(), static_cast<std::size_t>(n * (n - 1) / 2));
            ASSERT_EQ(plan.diag_phases.size(), static_cast<std::size_t>(n));
            EXPECT_LE((reconstruct(plan) - u).norm(), (n == 2 ? 1e-11 : 1e-9 * n)) << "n=" << n;
            for (const Block &b : plan.blocks) {
                EXPECT_GE(b.theta, 0.0);
                EXPECT_LE(b.theta, kPi / 2);
                EXPECT_GE(b.phi, 0.0);
                EXPECT_LT(b.phi, 2 * kPi);
            }
            if (n <= 16 && s < 3) expect_matrix_near(reconstruct(plan), dense_reconstruct(plan), 1e-12);
        }
    }
}

TEST(Decompose, EachRightBlockHasItsScheduledLabel) {
    const MeshPlan plan = decompose(haar_random_unitary(6, {2, 2}));
    std::multiset<std::pair<int, int>> expected, got;
    for (const NullingStep &s : nulling_schedule(6)) expected.insert({s.m, s.l});
    for (const Block &b : plan.blocks) got.insert({b.m, b.l});
    EXPECT_EQ(expected, got);
}

TEST(Reconstruct, ZeroThetaStillUnitary) {
    for (int n : {4, 16, 40}) {
        MeshPlan plan = decompose(haar_random_unitary(n, {5, 5}));
        for (Block &b : plan.blocks) b.theta = 0.0;
        EXPECT_LE(unitarity_error(reconstruct(plan)), 1e-10 * n);
    }
}

TEST(Reconstruct, RejectsMalformedPlans) {
    MeshPlan plan = decompose(haar_random_unitary(4, {1, 2}));
    MeshPlan bad = plan;
    bad.blocks.pop_back();
    EXPECT_THROW(reconstruct(bad), InvalidArgument);
    bad = plan;
    bad.blocks[0].m = 4;
    EXPECT_THROW(reconstruct(bad), InvalidArgument);
    bad = plan;
    bad.diag_phases.pop_back();
    EXPECT_THROW(reconstruct(bad), InvalidArgument);
}

TEST(MeshColumns, RectangularLayout) {
    for (int n : {2, 5, 8, 9}) {
        const MeshPlan plan = decompose(haar_random_unitary(n, {1, 3}));
        const auto cols = mesh_columns(plan);
        ASSERT_EQ(cols.size(), plan.blocks.size());
        // The rectangular arrangement is n columns deep (one for n = 2); channel m sits in
        // columns of parity (m - 1) mod 2.
        EXPECT_EQ(*std::max_element(cols.begin(), cols.end()), n == 2 ? 0 : n - 1) << "n=" << n;
        std::map<std::pair<int, int>, int> seen;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            EXPECT_EQ(cols[k] % 2, (plan.blocks[k].m - 1) % 2);
            EXPECT_EQ((seen[{cols[k], plan.blocks[k].m}]++), 0);
        }
    }
}

TEST(WrapTwoPi, Range) {
    for (double a : {-1e-300, -2 * kPi, 0.0, 2 * kPi, 7.0, -7.0, 1e6}) {
        const double w = wrap_two_pi(a);
        EXPECT_GE(w, 0.0);
        EXPECT_LT(w, 2 * kPi);
    }
}

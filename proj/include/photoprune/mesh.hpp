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

#ifndef PHOTOPRUNE_MESH_HPP
#define PHOTOPRUNE_MESH_HPP

#include <functional>
#include <utility>
#include <vector>

#include "photoprune/unitary.hpp"

namespace photoprune {

/// One programmable SU(2) unit acting on channels m and m+1 (1-based).
/// `l` is the column (right nulling) or row (left nulling) of the entry the
/// unit was solved for, so (m, l) identifies a fixed hardware position.
struct Block {
    int m = 1;
    int l = 1;
    double theta = 0.0;  // [0, pi/2]
    double phi = 0.0;    // [0, 2 pi)

    friend bool operator==(const Block &, const Block &) = default;
};

/// Decomposed circuit U = D * prod(T). `blocks` are stored in application
/// order: blocks.front() acts on the input first, i.e. it is the rightmost
/// factor of the product.
struct MeshPlan {
    int n = 1;
    std::vector<Block> blocks;
    std::vector<Complex> diag_phases;
};

struct RotationAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/// 2x2 unit  R_x(-pi/2) R_z(-2 theta) R_x(-pi/2) R_z(-phi)  with
/// R_z(z) = diag(e^{-iz/2}, e^{iz/2}) and R_x(z) = exp(-i z sigma_x / 2).
/// Closed form:
///   [[ i sin(t) e^{i phi/2},  i cos(t) e^{-i phi/2}],
///    [ i cos(t) e^{i phi/2}, -i sin(t) e^{-i phi/2}]]
/// Any angles are accepted; determinant is exactly 1 in exact arithmetic.
Eigen::Matrix2cd block_matrix(double theta, double phi);

/// n x n identity with the (m, m+1) principal sub-block replaced by `b`.
ComplexMatrix embed_block(int n, int m, const Eigen::Matrix2cd &b);

/// Angles nulling (U T^dagger)_{l,m}, where T acts on columns m, m+1.
RotationAngles solve_nulling_right(const ComplexMatrix &u, int m, int l);

/// Angles nulling (T U)_{m+1,l}, where T acts on rows m, m+1.
RotationAngles solve_nulling_left(const ComplexMatrix &u, int m, int l);

/// Solves T(blk)^dagger D = D' T(blk') for a unit-modulus diagonal D (given
/// as its diagonal). theta is preserved; only D'_{m}, D'_{m+1} and phi change.
std::pair<std::vector<Complex>, Block> commute_through_diagonal(const std::vector<Complex> &diag,
                                                                const Block &blk);

enum class NullingSide { Right, Left };

/// One step of the Clements nulling schedule. `row`/`col` (1-based) is the
/// matrix entry zeroed by this step.
struct NullingStep {
    NullingSide side;
    int m;
    int l;
    int row;
    int col;
};

/// Ordered nulling steps for an n x n matrix: anti-diagonals of the lower
/// triangle in turn, odd ones by right multiplication with T^dagger, even
/// ones by left multiplication with T.
std::vector<NullingStep> nulling_schedule(int n);

/// Called after every nulling step with the working matrix.
using NullingObserver = std::function<void(const NullingStep &, const ComplexMatrix &)>;

/// Clements decomposition. Throws PreconditionError when the input is not
/// unitary to 1e-9.
MeshPlan decompose(const ComplexMatrix &u, const NullingObserver &observer = {});

/// Checks block count, index ranges and diagonal size; throws InvalidArgument.
void validate_plan(const MeshPlan &plan);

/// D * T_last * ... * T_first.
ComplexMatrix reconstruct(const MeshPlan &plan);

/// Physical column of each block in the rectangular mesh (0-based), found
/// by as-soon-as-possible layering of the application order.
std::vector<int> mesh_columns(const MeshPlan &plan);

/// Reduces an angle to [0, 2 pi).
double wrap_two_pi(double angle);

}  // namespace photoprune

#endif

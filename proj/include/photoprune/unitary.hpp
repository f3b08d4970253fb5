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

#ifndef PHOTOPRUNE_UNITARY_HPP
#define PHOTOPRUNE_UNITARY_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace photoprune {

using Complex = std::complex<double>;

/// Dense complex matrix; carries target unitaries, mesh factors and
/// defective reconstructions alike.
using ComplexMatrix = Eigen::MatrixXcd;

/// Reproducible random stream identifier. Two seeds with equal fields give
/// bit-identical streams; `child` derives independent sub-streams so that
/// ensembles can be evaluated in any order (or concurrently) with the same
/// result.
struct RngSeed {
    std::uint64_t base_seed = 0;
    std::uint64_t stream_index = 0;

    /// 64-bit value mixing both fields; seeds the engine.
    std::uint64_t mixed() const;
    RngSeed child(std::uint64_t index) const { return RngSeed{mixed(), index}; }

    friend bool operator==(const RngSeed &, const RngSeed &) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

using Rng = std::mt19937_64;
Rng make_rng(const RngSeed &seed);

/// Haar-distributed n x n unitary: complex Ginibre matrix, Householder QR,
/// then columns rephased so that diag(R) is real positive.
ComplexMatrix haar_random_unitary(int n, const RngSeed &seed);

/// ||U^dagger U - I||_F. Throws InvalidArgument for non-square input.
double unitarity_error(const ComplexMatrix &u);

/// Normalized trace overlap between a defective operator and the original
/// unitary:
///
///   F = 2 Re Tr[U_D^dagger U_O] / (N + Tr[U_D^dagger U_D])
///
/// with N the matrix dimension. F <= 1 with equality iff U_D == U_O.
double fidelity(const ComplexMatrix &defective, const ComplexMatrix &original);

/// Squared distance (1/N^2) sum |U_O - U_D|^2 between the two operators.
double cost_j(const ComplexMatrix &defective, const ComplexMatrix &original);

/// Same quantity through the expanded trace form
/// 1/N + (1/N^2) Tr(U_D^dagger U_D - 2 Re[U_D^dagger U_O]); only equal to
/// cost_j when the original is unitary.
double cost_j_trace_form(const ComplexMatrix &defective, const ComplexMatrix &original);

}  // namespace photoprune

#endif

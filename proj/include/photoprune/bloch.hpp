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

#ifndef PHOTOPRUNE_BLOCH_HPP
#define PHOTOPRUNE_BLOCH_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "photoprune/unitary.hpp"

namespace photoprune {

enum class BlochMode { ThetaOnly, PhiOnly, Both };

BlochMode parse_bloch_mode(std::string_view name);  // "theta" | "phi" | "both"
std::string to_string(BlochMode mode);

using BlochVector = std::array<double, 3>;

struct BlochSampleSet {
    BlochMode mode = BlochMode::Both;
    int polar_grid = 0;
    int azimuthal_grid = 0;
    std::vector<BlochVector> initial;
    std::vector<BlochVector> points;
};

/// Bloch vector (x, y, z) of the two-channel state (a, b).
BlochVector bloch_vector(Complex a, Complex b);

/// Pushes a polar x azimuthal grid of initial states through a block whose
/// free angles are drawn uniformly (theta in [0, pi/2], phi in [0, 2 pi)),
/// one fresh draw per point. Angles not selected by `mode` are held at 0.
BlochSampleSet bloch_transform_samples(BlochMode mode, int polar_grid, int azimuthal_grid,
                                       const RngSeed &seed);

}  // namespace photoprune

#endif

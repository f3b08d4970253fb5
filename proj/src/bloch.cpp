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

#include "photoprune/bloch.hpp"

#include <cmath>
#include <numbers>

#include "photoprune/errors.hpp"
#include "photoprune/mesh.hpp"

namespace photoprune {

BlochMode parse_bloch_mode(std::string_view name) {
    if (name == "theta") return BlochMode::ThetaOnly;
    if (name == "phi") return BlochMode::PhiOnly;
    if (name == "both") return BlochMode::Both;
    throw InvalidArgument("unknown Bloch mode '" + std::string(name) + "' (expected theta, phi or both)");
}

std::string to_string(BlochMode mode) {
    switch (mode) {
        case BlochMode::ThetaOnly: return "theta";
        case BlochMode::PhiOnly: return "phi";
        case BlochMode::Both: return "both";
    }
    return "?";
}

BlochVector bloch_vector(Complex a, Complex b) {
    const Complex ab = std::conj(a) * b;
    return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

BlochSampleSet bloch_transform_samples(BlochMode mode, int polar_grid, int azimuthal_grid,
                                       const RngSeed &seed) {
    if (polar_grid < 1 || azimuthal_grid < 1) {
        throw InvalidArgument("bloch_transform_samples: grid sizes must be >= 1");
    }
    constexpr double pi = std::numbers::pi;
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> theta_dist(0.0, 0.5 * pi);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * pi);

    BlochSampleSet out;
    out.mode = mode;
    out.polar_grid = polar_grid;
    out.azimuthal_grid = azimuthal_grid;
    const std::size_t total = static_cast<std::size_t>(polar_grid) * azimuthal_grid;
    out.initial.reserve(total);
    out.points.reserve(total);
    for (int i = 0; i < polar_grid; ++i) {
        const double xi = pi * (i + 0.5) / polar_grid;
        for (int j = 0; j < azimuthal_grid; ++j) {
            const double eta = 2.0 * pi * j / azimuthal_grid;
            const Complex a(std::cos(0.5 * xi), 0.0);
            const Complex b = std::polar(std::sin(0.5 * xi), eta);
            double theta = 0.0;
            double phi = 0.0;
            if (mode != BlochMode::PhiOnly) theta = theta_dist(rng);
            if (mode != BlochMode::ThetaOnly) phi = phi_dist(rng);
            const Eigen::Matrix2cd t = block_matrix(theta, phi);
            const Complex a2 = t(0, 0) * a + t(0, 1) * b;
            const Complex b2 = t(1, 0) * a + t(1, 1) * b;
            out.initial.push_back(bloch_vector(a, b));
            out.points.push_back(bloch_vector(a2, b2));
        }
    }
    return out;
}

}  // namespace photoprune

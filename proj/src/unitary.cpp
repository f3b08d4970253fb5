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

#include "photoprune/unitary.hpp"

#include <cmath>
#include <string>

#include "photoprune/errors.hpp"

namespace photoprune {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t RngSeed::mixed() const {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(stream_index + 0x632be59bd9b4e019ULL));
}

Rng make_rng(const RngSeed &seed) {
    return Rng(seed.mixed());
}

ComplexMatrix haar_random_unitary(int n, const RngSeed &seed) {
    if (n < 1) {
        throw InvalidArgument("haar_random_unitary: n must be >= 1, got " + std::to_string(n));
    }
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(n, n);
    // Fill row by row so the stream layout does not depend on Eigen's storage order.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix &r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

double unitarity_error(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        throw InvalidArgument("unitarity_error: matrix is not square");
    }
    ComplexMatrix g = u.adjoint() * u;
    g -= ComplexMatrix::Identity(u.rows(), u.cols());
    return g.norm();
}

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw InvalidArgument(std::string(op) + ": operands must be square with equal dimension");
    }
}

}  // namespace

double fidelity(const ComplexMatrix &defective, const ComplexMatrix &original) {
    require_same_shape(defective, original, "fidelity");
    const double n = static_cast<double>(original.rows());
    // Tr[A^dagger B] = sum conj(A_ij) B_ij
    double overlap = 0.0;
    double self = 0.0;
    const Complex *d = defective.data();
    const Complex *o = original.data();
    const Eigen::Index size = defective.size();
    for (Eigen::Index k = 0; k < size; ++k) {
        overlap += d[k].real() * o[k].real() + d[k].imag() * o[k].imag();
        self += std::norm(d[k]);
    }
    return 2.0 * overlap / (n + self);
}

double cost_j(const ComplexMatrix &defective, const ComplexMatrix &original) {
    require_same_shape(defective, original, "cost_j");
    const double n = static_cast<double>(original.rows());
    return (original - defective).squaredNorm() / (n * n);
}

double cost_j_trace_form(const ComplexMatrix &defective, const ComplexMatrix &original) {
    require_same_shape(defective, original, "cost_j");
    const double n = static_cast<double>(original.rows());
    Complex self = (defective.adjoint() * defective).trace();
    Complex cross = (defective.adjoint() * original).trace();
    return 1.0 / n + (self.real() - 2.0 * cross.real()) / (n * n);
}

}  // namespace photoprune

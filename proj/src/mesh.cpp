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

#include "photoprune/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "photoprune/errors.hpp"

namespace photoprune {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitarityTolerance = 1e-9;

// Entries of block_matrix(theta, phi) without building an Eigen object.
struct BlockEntries {
    Complex t11, t12, t21, t22;
};

BlockEntries block_entries(double theta, double phi) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const Complex plus = std::polar(1.0, 0.5 * phi);
    const Complex minus = std::conj(plus);
    const Complex i(0.0, 1.0);
    return {i * s * plus, i * c * minus, i * c * plus, -i * s * minus};
}

void apply_right_dagger(ComplexMatrix &u, int m, const BlockEntries &t) {
    // U <- U T^dagger on columns m-1, m (0-based).
    const Complex a11 = std::conj(t.t11), a12 = std::conj(t.t21);
    const Complex a21 = std::conj(t.t12), a22 = std::conj(t.t22);
    auto c1 = u.col(m - 1);
    auto c2 = u.col(m);
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        const Complex x = c1(r), y = c2(r);
        c1(r) = x * a11 + y * a21;
        c2(r) = x * a12 + y * a22;
    }
}

void apply_left(ComplexMatrix &u, int m, const BlockEntries &t) {
    auto r1 = u.row(m - 1);
    auto r2 = u.row(m);
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        const Complex x = r1(c), y = r2(c);
        r1(c) = t.t11 * x + t.t12 * y;
        r2(c) = t.t21 * x + t.t22 * y;
    }
}

// In-place left multiplication of rows (row, row+1) of a row-major n x n
// buffer. Written on the real/imaginary parts so it vectorizes.
void apply_left_rowmajor(double *rows, int n, int row, const BlockEntries &t) {
    double *x = rows + 2 * static_cast<std::ptrdiff_t>(row) * n;
    double *y = x + 2 * static_cast<std::ptrdiff_t>(n);
    const double ar = t.t11.real(), ai = t.t11.imag();
    const double br = t.t12.real(), bi = t.t12.imag();
    const double cr = t.t21.real(), ci = t.t21.imag();
    const double dr = t.t22.real(), di = t.t22.imag();
    for (int k = 0; k < 2 * n; k += 2) {
        const double xr = x[k], xi = x[k + 1];
        const double yr = y[k], yi = y[k + 1];
        x[k] = ar * xr - ai * xi + br * yr - bi * yi;
        x[k + 1] = ar * xi + ai * xr + br * yi + bi * yr;
        y[k] = cr * xr - ci * xi + dr * yr - di * yi;
        y[k + 1] = cr * xi + ci * xr + dr * yi + di * yr;
    }
}

void check_indices(int n, int m, int l, const char *op) {
    if (m < 1 || m > n - 1 || l < 1 || l > n) {
        throw InvalidArgument(std::string(op) + ": index out of range (n=" + std::to_string(n) +
                              ", m=" + std::to_string(m) + ", l=" + std::to_string(l) + ")");
    }
}

}  // namespace

double wrap_two_pi(double angle) {
    double r = std::fmod(angle, 2.0 * kPi);
    if (r < 0.0) {
        r += 2.0 * kPi;
    }
    // fmod of a tiny negative value can round up to exactly 2 pi.
    if (r >= 2.0 * kPi) {
        r = 0.0;
    }
    return r;
}

Eigen::Matrix2cd block_matrix(double theta, double phi) {
    BlockEntries t = block_entries(theta, phi);
    Eigen::Matrix2cd b;
    b << t.t11, t.t12, t.t21, t.t22;
    return b;
}

ComplexMatrix embed_block(int n, int m, const Eigen::Matrix2cd &b) {
    if (n < 2 || m < 1 || m > n - 1) {
        throw InvalidArgument("embed_block: channel index m=" + std::to_string(m) +
                              " out of range for n=" + std::to_string(n));
    }
    ComplexMatrix out = ComplexMatrix::Identity(n, n);
    out.block<2, 2>(m - 1, m - 1) = b;
    return out;
}

RotationAngles solve_nulling_right(const ComplexMatrix &u, int m, int l) {
    check_indices(static_cast<int>(u.rows()), m, l, "solve_nulling_right");
    // (U T^dagger)_{l,m} = -i e^{-i phi/2} (a sin t + b cos t e^{i phi})
    const Complex a = u(l - 1, m - 1);
    const Complex b = u(l - 1, m);
    RotationAngles out;
    out.theta = std::atan2(std::abs(b), std::abs(a));
    if (a != 0.0 && b != 0.0) {
        out.phi = wrap_two_pi(std::arg(a) - std::arg(b) + kPi);
    }
    return out;
}

RotationAngles solve_nulling_left(const ComplexMatrix &u, int m, int l) {
    check_indices(static_cast<int>(u.rows()), m, l, "solve_nulling_left");
    // (T U)_{m+1,l} = i e^{-i phi/2} (a cos t e^{i phi} - b sin t)
    const Complex a = u(m - 1, l - 1);
    const Complex b = u(m, l - 1);
    RotationAngles out;
    out.theta = std::atan2(std::abs(a), std::abs(b));
    if (a != 0.0 && b != 0.0) {
        out.phi = wrap_two_pi(std::arg(b) - std::arg(a));
    }
    return out;
}

std::pair<std::vector<Complex>, Block> commute_through_diagonal(const std::vector<Complex> &diag,
                                                                const Block &blk) {
    const int n = static_cast<int>(diag.size());
    if (blk.m < 1 || blk.m > n - 1) {
        throw InvalidArgument("commute_through_diagonal: block channel out of range");
    }
    const Complex p = diag[blk.m - 1];
    const Complex q = diag[blk.m];
    Block moved = blk;
    moved.phi = wrap_two_pi(std::arg(p) - std::arg(q));
    const Complex half_new = std::polar(1.0, -0.5 * moved.phi);
    std::vector<Complex> out = diag;
    out[blk.m - 1] = -std::polar(1.0, -0.5 * blk.phi) * p * half_new;
    out[blk.m] = -std::polar(1.0, 0.5 * blk.phi) * p * half_new;
    return {std::move(out), moved};
}

std::vector<NullingStep> nulling_schedule(int n) {
    std::vector<NullingStep> steps;
    if (n < 2) {
        return steps;
    }
    steps.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    // 0-based anti-diagonal index i; diagonal i has i+1 entries.
    for (int i = 0; i < n - 1; ++i) {
        if (i % 2 == 0) {
            for (int j = 0; j <= i; ++j) {
                const int row = n - j;   // 1-based
                const int col = i - j + 1;
                steps.push_back({NullingSide::Right, col, row, row, col});
            }
        } else {
            for (int j = 1; j <= i + 1; ++j) {
                const int row = n + j - i - 1;
                const int col = j;
                steps.push_back({NullingSide::Left, row - 1, col, row, col});
            }
        }
    }
    return steps;
}

MeshPlan decompose(const ComplexMatrix &u, const NullingObserver &observer) {
    if (u.rows() != u.cols() || u.rows() < 1) {
        throw InvalidArgument("decompose: matrix must be square and non-empty");
    }
    const double err = unitarity_error(u);
    if (!(err <= kUnitarityTolerance)) {
        throw PreconditionError("decompose: input is not unitary (||U^+U - I||_F = " +
                                std::to_string(err) + ")");
    }
    const int n = static_cast<int>(u.rows());
    MeshPlan plan;
    plan.n = n;

    ComplexMatrix work = u;
    std::vector<Block> right;
    std::vector<Block> left;
    for (const NullingStep &step : nulling_schedule(n)) {
        if (step.side == NullingSide::Right) {
            RotationAngles a = solve_nulling_right(work, step.m, step.l);
            apply_right_dagger(work, step.m, block_entries(a.theta, a.phi));
            right.push_back({step.m, step.l, a.theta, a.phi});
        } else {
            RotationAngles a = solve_nulling_left(work, step.m, step.l);
            apply_left(work, step.m, block_entries(a.theta, a.phi));
            left.push_back({step.m, step.l, a.theta, a.phi});
        }
        if (observer) {
            observer(step, work);
        }
    }

    std::vector<Complex> diag(n);
    for (int i = 0; i < n; ++i) {
        const Complex d = work(i, i);
        const double mag = std::abs(d);
        diag[i] = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    }

    // U = L_1^+ ... L_K^+ D R_J ... R_1; move each L^+ through D, innermost first.
    std::vector<Block> moved(left.size());
    for (std::size_t k = left.size(); k-- > 0;) {
        auto [next, blk] = commute_through_diagonal(diag, left[k]);
        diag = std::move(next);
        moved[k] = blk;
    }

    plan.blocks = std::move(right);
    plan.blocks.insert(plan.blocks.end(), moved.rbegin(), moved.rend());
    plan.diag_phases = std::move(diag);
    return plan;
}

void validate_plan(const MeshPlan &plan) {
    const int n = plan.n;
    if (n < 1) {
        throw InvalidArgument("mesh plan: n must be >= 1");
    }
    const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (plan.blocks.size() != expected) {
        throw InvalidArgument("mesh plan: expected " + std::to_string(expected) + " blocks, got " +
                              std::to_string(plan.blocks.size()));
    }
    if (plan.diag_phases.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("mesh plan: diagonal has " + std::to_string(plan.diag_phases.size()) +
                              " entries, expected " + std::to_string(n));
    }
    for (const Block &b : plan.blocks) {
        check_indices(n, b.m, b.l, "mesh plan");
        if (!std::isfinite(b.theta) || !std::isfinite(b.phi)) {
            throw InvalidArgument("mesh plan: non-finite block angle");
        }
    }
    for (const Complex &d : plan.diag_phases) {
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
            throw InvalidArgument("mesh plan: non-finite diagonal phase");
        }
    }
}

ComplexMatrix reconstruct(const MeshPlan &plan) {
    validate_plan(plan);
    const int n = plan.n;
    std::vector<Complex> buf(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        buf[static_cast<std::size_t>(i) * n + i] = 1.0;
    }
    double *raw = reinterpret_cast<double *>(buf.data());
    for (const Block &b : plan.blocks) {
        apply_left_rowmajor(raw, n, b.m - 1, block_entries(b.theta, b.phi));
    }
    for (int i = 0; i < n; ++i) {
        const Complex d = plan.diag_phases[i];
        for (int k = 0; k < n; ++k) {
            buf[static_cast<std::size_t>(i) * n + k] *= d;
        }
    }
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return ComplexMatrix(Eigen::Map<const RowMajor>(buf.data(), n, n));
}

std::vector<int> mesh_columns(const MeshPlan &plan) {
    std::vector<int> last(static_cast<std::size_t>(std::max(plan.n, 1)), -1);
    std::vector<int> out;
    out.reserve(plan.blocks.size());
    for (const Block &b : plan.blocks) {
        if (b.m < 1 || b.m > plan.n - 1) {
            throw InvalidArgument("mesh_columns: block channel out of range");
        }
        const int col = std::max(last[b.m - 1], last[b.m]) + 1;
        last[b.m - 1] = col;
        last[b.m] = col;
        out.push_back(col);
    }
    return out;
}

}  // namespace photoprune

// SPDX-License-Identifier: Apache-2.0
//
// ccmlab: parametric channel covariance estimation for mmWave massive MIMO
// Copyright (C) 2026 The ccmlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "ccmlab/kernels.hpp"

#include <omp.h>

#include <stdexcept>

namespace ccmlab::kernels {

namespace {

void check_rows(const CMatrix &a, const CMatrix &b, const char *what)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument(std::string(what) + ": row count mismatch");
}

} // namespace

RMatrix grid_power(const CMatrix &steering, const CMatrix &snapshots)
{
    check_rows(steering, snapshots, "grid_power");
    const Eigen::Index g_count = steering.cols();
    const Eigen::Index s_count = snapshots.cols();
    RMatrix out(g_count, s_count);
#pragma omp parallel for schedule(static)
    for (Eigen::Index g = 0; g < g_count; ++g) {
        const auto u = steering.col(g);
        for (Eigen::Index s = 0; s < s_count; ++s)
            out(g, s) = std::norm(u.dot(snapshots.col(s))); // dot conjugates u
    }
    return out;
}

RMatrix grid_power_serial(const CMatrix &steering, const CMatrix &snapshots)
{
    check_rows(steering, snapshots, "grid_power_serial");
    const Eigen::Index n = steering.rows();
    RMatrix out(steering.cols(), snapshots.cols());
    for (Eigen::Index g = 0; g < steering.cols(); ++g) {
        for (Eigen::Index s = 0; s < snapshots.cols(); ++s) {
            cdouble acc = 0.0;
            for (Eigen::Index m = 0; m < n; ++m)
                acc += std::conj(steering(m, g)) * snapshots(m, s);
            out(g, s) = std::norm(acc);
        }
    }
    return out;
}

RVector subspace_residual(const CMatrix &steering, const CMatrix &basis)
{
    check_rows(steering, basis, "subspace_residual");
    const Eigen::Index g_count = steering.cols();
    RVector out(g_count);
#pragma omp parallel for schedule(static)
    for (Eigen::Index g = 0; g < g_count; ++g) {
        const auto u = steering.col(g);
        double captured = 0.0;
        for (Eigen::Index k = 0; k < basis.cols(); ++k)
            captured += std::norm(basis.col(k).dot(u));
        out(g) = u.squaredNorm() - captured;
    }
    return out;
}

RVector subspace_residual_serial(const CMatrix &steering, const CMatrix &basis)
{
    check_rows(steering, basis, "subspace_residual_serial");
    const Eigen::Index n = steering.rows();
    RVector out(steering.cols());
    for (Eigen::Index g = 0; g < steering.cols(); ++g) {
        double total = 0.0;
        for (Eigen::Index m = 0; m < n; ++m)
            total += std::norm(steering(m, g));
        double captured = 0.0;
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
            cdouble acc = 0.0;
            for (Eigen::Index m = 0; m < n; ++m)
                acc += std::conj(basis(m, k)) * steering(m, g);
            captured += std::norm(acc);
        }
        out(g) = total - captured;
    }
    return out;
}

void set_threads(int n)
{
    if (n > 0)
        omp_set_num_threads(n);
}

int max_threads()
{
    return omp_get_max_threads();
}

} // namespace ccmlab::kernels

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

#ifndef CCMLAB_KERNELS_HPP
#define CCMLAB_KERNELS_HPP

#include "ccmlab/types.hpp"

namespace ccmlab::kernels {

// Grid scans used by the angle estimators. Each kernel has an OpenMP version
// (used by the library) and a plain-loop serial reference kept for tests and
// the benchmark. Both return identical values up to summation order.

// out(g, s) = |steering.col(g)^H snapshots.col(s)|^2
RMatrix grid_power(const CMatrix &steering, const CMatrix &snapshots);
RMatrix grid_power_serial(const CMatrix &steering, const CMatrix &snapshots);

// out(g) = ||steering.col(g)||^2 - ||basis^H steering.col(g)||^2
// With basis = signal eigenvectors this is the MUSIC null-space projection.
RVector subspace_residual(const CMatrix &steering, const CMatrix &basis);
RVector subspace_residual_serial(const CMatrix &steering, const CMatrix &basis);

// Threads used by the OpenMP kernels (<= 0 keeps the runtime default).
void set_threads(int n);
int max_threads();

} // namespace ccmlab::kernels

#endif

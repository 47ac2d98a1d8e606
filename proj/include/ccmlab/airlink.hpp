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

#ifndef CCMLAB_AIRLINK_HPP
#define CCMLAB_AIRLINK_HPP

#include "ccmlab/scenario.hpp"
#include "ccmlab/types.hpp"

namespace ccmlab {

// K unit-magnitude QPSK pilots of length T, one per row.
struct PilotBook
{
    CMatrix pilots;

    int n_users() const { return static_cast<int>(pilots.rows()); }
    int length() const { return static_cast<int>(pilots.cols()); }
    CRowVector pilot(int k) const { return pilots.row(k); }
};

PilotBook generate_pilots(int n_users, int length, Rng &rng);

// Circular right shift by tau symbols: out[(t + tau) mod T] = x[t].
CRowVector circular_shift(const CRowVector &x, int tau);

struct RxBlock
{
    CMatrix y; // N x T
    int realization_index = 0;
};

// Y = sum over taps h_t shift(x_k(t), tau_t) + n, n_ij ~ CN(0, N0).
// channels[i] belongs to scenario.taps[i].
RxBlock synthesize_rx(const Scenario &scenario, std::span<const CVector> channels, const PilotBook &pilots,
                      double noise_var, Rng &rng, int realization_index = 0);

// (1/sqrt(T)) Y shift(x, tau)^H
CVector matched_filter(const CMatrix &y, const CRowVector &pilot, int tau);

// Matched filter for every tap of the scenario at once: column t is
// matched_filter(Y, x_k(t), tau_t).
CMatrix matched_filter_bank(const CMatrix &y, const Scenario &scenario, const PilotBook &pilots);

// Divides the matched-filter output by sqrt(T) so that h_hat ~ h.
CVector channel_estimate(const CVector &mf_output, int pilot_len);

} // namespace ccmlab

#endif

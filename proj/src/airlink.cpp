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


#include "ccmlab/airlink.hpp"

#include <stdexcept>

namespace ccmlab {

PilotBook generate_pilots(int n_users, int length, Rng &rng)
{
    if (n_users < 1 || length < 1)
        throw std::invalid_argument("generate_pilots: K and T must be positive");
    const double a = 1.0 / std::sqrt(2.0);
    std::uniform_int_distribution<int> quadrant(0, 3);
    PilotBook book;
    book.pilots.resize(n_users, length);
    for (int k = 0; k < n_users; ++k) {
        for (int t = 0; t < length; ++t) {
            const int q = quadrant(rng);
            book.pilots(k, t) = cdouble((q & 1) ? -a : a, (q & 2) ? -a : a);
        }
    }
    return book;
}

CRowVector circular_shift(const CRowVector &x, int tau)
{
    const Eigen::Index len = x.size();
    CRowVector out(len);
    if (len == 0)
        return out;
    const Eigen::Index s = ((tau % len) + len) % len;
    for (Eigen::Index t = 0; t < len; ++t)
        out((t + s) % len) = x(t);
    return out;
}

namespace {

// L x T matrix of delayed pilots, one row per tap.
CMatrix tap_pilots(const Scenario &scenario, const PilotBook &pilots)
{
    CMatrix s(static_cast<Eigen::Index>(scenario.taps.size()), pilots.length());
    for (std::size_t i = 0; i < scenario.taps.size(); ++i) {
        const UserTap &tap = scenario.taps[i];
        if (tap.user_index < 0 || tap.user_index >= pilots.n_users())
            throw std::invalid_argument("no pilot for user " + std::to_string(tap.user_index));
        s.row(static_cast<Eigen::Index>(i)) = circular_shift(pilots.pilot(tap.user_index), tap.delay_taps);
    }
    return s;
}

} // namespace

RxBlock synthesize_rx(const Scenario &scenario, std::span<const CVector> channels, const PilotBook &pilots,
                      double noise_var, Rng &rng, int realization_index)
{
    if (channels.size() != scenario.taps.size())
        throw std::invalid_argument("synthesize_rx: one channel per tap required");
    if (noise_var < 0.0)
        throw std::invalid_argument("synthesize_rx: negative noise variance");
    const int n = scenario.config.n_antennas;
    const int t_len = pilots.length();

    CMatrix h(n, static_cast<Eigen::Index>(channels.size()));
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (channels[i].size() != n)
            throw std::invalid_argument("synthesize_rx: channel length differs from N");
        h.col(static_cast<Eigen::Index>(i)) = channels[i];
    }

    RxBlock block;
    block.realization_index = realization_index;
    block.y.resize(n, t_len);
    if (channels.empty())
        block.y.setZero();
    else
        block.y.noalias() = h * tap_pilots(scenario, pilots);
    if (noise_var > 0.0) {
        for (Eigen::Index t = 0; t < t_len; ++t)
            for (Eigen::Index m = 0; m < n; ++m)
                block.y(m, t) += complex_normal(rng, noise_var);
    }
    return block;
}

CVector matched_filter(const CMatrix &y, const CRowVector &pilot, int tau)
{
    if (y.cols() != pilot.size())
        throw std::invalid_argument("matched_filter: pilot length differs from block length");
    const double scale = 1.0 / std::sqrt(static_cast<double>(pilot.size()));
    return scale * (y * circular_shift(pilot, tau).adjoint());
}

CMatrix matched_filter_bank(const CMatrix &y, const Scenario &scenario, const PilotBook &pilots)
{
    if (y.cols() != pilots.length())
        throw std::invalid_argument("matched_filter_bank: pilot length differs from block length");
    const double scale = 1.0 / std::sqrt(static_cast<double>(pilots.length()));
    return scale * (y * tap_pilots(scenario, pilots).adjoint());
}

CVector channel_estimate(const CVector &mf_output, int pilot_len)
{
    return mf_output / std::sqrt(static_cast<double>(pilot_len));
}

} // namespace ccmlab

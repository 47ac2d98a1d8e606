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


#include "ccmlab/array.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ccmlab {

namespace {

// Beam column indices per sector for N = 128, listed as in the reference beam table.
constexpr std::array<std::array<int, 8>, kSectorCount> kBeams8 = {{
    {37, 39, 40, 41, 42, 43, 44, 46},
    {26, 27, 29, 30, 31, 32, 34, 36},
    {14, 15, 17, 19, 20, 22, 24, 25},
    {1, 3, 5, 7, 8, 10, 12, 13},
    {1, 127, 125, 123, 122, 120, 118, 117},
    {116, 115, 113, 111, 110, 108, 106, 105},
    {104, 103, 101, 100, 99, 98, 96, 94},
    {93, 91, 90, 89, 88, 87, 86, 84},
}};

constexpr std::array<std::array<int, 4>, kSectorCount> kBeams4 = {{
    {38, 41, 43, 46},
    {27, 30, 32, 35},
    {15, 18, 21, 24},
    {3, 6, 9, 12},
    {127, 124, 121, 118},
    {115, 112, 109, 106},
    {103, 100, 98, 95},
    {92, 89, 87, 84},
}};

} // namespace

CVector steering_vector(double phi_deg, int n_antennas)
{
    if (n_antennas < 1)
        throw std::invalid_argument("steering_vector: n_antennas must be positive");
    const double s = std::sin(deg2rad(phi_deg));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    CVector u(n_antennas);
    for (int n = 0; n < n_antennas; ++n)
        u(n) = std::polar(scale, kPi * n * s);
    return u;
}

CVector dft_column(int n, int n_antennas)
{
    if (n < 1 || n > n_antennas)
        throw std::out_of_range("dft_column: index out of range");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    CVector w(n_antennas);
    for (int m = 0; m < n_antennas; ++m) {
        // reduce the exponent mod N before scaling to keep the phase exact
        const long e = (static_cast<long>(m) * (n - 1)) % n_antennas;
        w(m) = std::polar(scale, -2.0 * kPi * static_cast<double>(e) / n_antennas);
    }
    return w;
}

double beam_angle(int n, int n_antennas)
{
    if (n < 1 || n > n_antennas)
        throw std::out_of_range("beam_angle: index out of range");
    double s = -2.0 * (n - 1) / static_cast<double>(n_antennas);
    s -= 2.0 * std::floor((s + 1.0) / 2.0); // wrap into [-1, 1)
    return rad2deg(std::asin(s));
}

const Sector &SectorPlan::sector(int id) const
{
    if (id < 0 || id >= kSectorCount)
        throw std::out_of_range("sector id out of range");
    return sectors[static_cast<std::size_t>(id)];
}

int sector_of(double theta_deg)
{
    const int id = static_cast<int>(std::floor((theta_deg - kSectorLowDeg) / kSectorWidthDeg));
    return std::clamp(id, 0, kSectorCount - 1);
}

SectorPlan sector_plan(int n_sec, int n_antennas)
{
    if (n_antennas != 128 || (n_sec != 4 && n_sec != 8))
        throw std::invalid_argument("sector_plan: only N = 128 with N_sec in {4, 8} is tabulated");

    SectorPlan plan;
    plan.n_antennas = n_antennas;
    plan.beams_per_sector = n_sec;
    plan.as_beam_count = n_sec == 8 ? 5 : 4;
    for (int s = 0; s < kSectorCount; ++s) {
        Sector &sec = plan.sectors[static_cast<std::size_t>(s)];
        sec.id = s;
        sec.low_deg = kSectorLowDeg + kSectorWidthDeg * s;
        sec.high_deg = sec.low_deg + kSectorWidthDeg;
        if (n_sec == 8)
            sec.beam_indices.assign(kBeams8[s].begin(), kBeams8[s].end());
        else
            sec.beam_indices.assign(kBeams4[s].begin(), kBeams4[s].end());
        std::sort(sec.beam_indices.begin(), sec.beam_indices.end(),
                  [&](int a, int b) { return beam_angle(a, n_antennas) < beam_angle(b, n_antennas); });
        for (int idx : sec.beam_indices)
            sec.beam_angles_deg.push_back(beam_angle(idx, n_antennas));
    }
    return plan;
}

void to_json(nlohmann::json &j, const SectorPlan &plan)
{
    j = nlohmann::json{{"n_antennas", plan.n_antennas},
                       {"beams_per_sector", plan.beams_per_sector},
                       {"as_beam_count", plan.as_beam_count},
                       {"sectors", nlohmann::json::array()}};
    for (const Sector &s : plan.sectors) {
        j["sectors"].push_back({{"id", s.id + 1},
                                {"low_deg", s.low_deg},
                                {"high_deg", s.high_deg},
                                {"beam_indices", s.beam_indices},
                                {"beam_angles_deg", s.beam_angles_deg}});
    }
}

BeamMatrix::BeamMatrix(std::span<const int> beam_indices, int n_antennas)
    : u_(n_antennas, static_cast<Eigen::Index>(beam_indices.size()))
{
    for (std::size_t i = 0; i < beam_indices.size(); ++i)
        u_.col(static_cast<Eigen::Index>(i)) = dft_column(beam_indices[i], n_antennas);
}

BeamMatrix beam_matrix(const Sector &sector, int n_antennas)
{
    return BeamMatrix(sector.beam_indices, n_antennas);
}

CVector project(const CVector &y, const BeamMatrix &beams)
{
    if (y.size() != beams.n_antennas())
        throw std::invalid_argument("project: dimension mismatch");
    return beams.values().adjoint() * y;
}

CVector reconstruct(const CVector &d, const BeamMatrix &beams)
{
    if (d.size() != beams.n_beams())
        throw std::invalid_argument("reconstruct: dimension mismatch");
    return beams.values() * d;
}

} // namespace ccmlab

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

#ifndef CCMLAB_ARRAY_HPP
#define CCMLAB_ARRAY_HPP

#include "ccmlab/types.hpp"

#include <json.hpp>

#include <array>
#include <vector>

namespace ccmlab {

// Half-wavelength ULA geometry and DFT beamspace.
//
// Angles are degrees at every public boundary. Beam (DFT column) indices are
// 1-based, as in the beam tables they are audited against.

inline constexpr int kSectorCount = 8;
inline constexpr double kSectorLowDeg = -45.0;
inline constexpr double kSectorWidthDeg = 11.25;

// (1/sqrt(N)) exp(j pi (n-1) sin(phi)), n = 1..N
CVector steering_vector(double phi_deg, int n_antennas);

// exp(-j 2 pi (m-1)(n-1) / N) / sqrt(N), m = 1..N
CVector dft_column(int n, int n_antennas);

// Angle whose steering vector equals DFT column n; sin(phi) is -2(n-1)/N
// wrapped into [-1, 1). Result in [-90, 90).
double beam_angle(int n, int n_antennas);

struct Sector
{
    int id = 0; // 0-based
    double low_deg = 0.0;
    double high_deg = 0.0;
    std::vector<int> beam_indices;      // ascending beam angle
    std::vector<double> beam_angles_deg; // parallel to beam_indices

    double width_deg() const { return high_deg - low_deg; }
};

struct SectorPlan
{
    int n_antennas = 128;
    int beams_per_sector = 8; // N_sec
    int as_beam_count = 5;    // N_sec,2
    std::array<Sector, kSectorCount> sectors;

    const Sector &sector(int id) const;
};

// Sector containing theta; angles outside [-45, 45] clamp to the end sectors.
int sector_of(double theta_deg);

// Beam plan for n_sec in {4, 8} and N = 128.
SectorPlan sector_plan(int n_sec, int n_antennas = 128);

void to_json(nlohmann::json &j, const SectorPlan &plan);

// N x P matrix of orthonormal DFT columns U(Phi).
class BeamMatrix
{
  public:
    BeamMatrix() = default;
    BeamMatrix(std::span<const int> beam_indices, int n_antennas);

    const CMatrix &values() const { return u_; }
    int n_antennas() const { return static_cast<int>(u_.rows()); }
    int n_beams() const { return static_cast<int>(u_.cols()); }

  private:
    CMatrix u_;
};

BeamMatrix beam_matrix(const Sector &sector, int n_antennas);

// b = U^H y
CVector project(const CVector &y, const BeamMatrix &beams);

// h = U d
CVector reconstruct(const CVector &d, const BeamMatrix &beams);

} // namespace ccmlab

#endif

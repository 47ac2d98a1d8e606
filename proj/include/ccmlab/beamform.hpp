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

#ifndef CCMLAB_BEAMFORM_HPP
#define CCMLAB_BEAMFORM_HPP

#include "ccmlab/ccm.hpp"

#include <stdexcept>
#include <string>

namespace ccmlab {

enum class BeamformerKind { Capon, Geb, Steer };

const char *to_string(BeamformerKind kind);
BeamformerKind beamformer_from_string(const std::string &s);

struct Beamformer
{
    CVector weights;
    BeamformerKind kind = BeamformerKind::Steer;
};

// R_eta = sum of every tap CCM except the served one, plus N0 I.
struct InterferenceModel
{
    CMatrix r_eta;
    std::vector<int> contributing_taps;
};

class SingularMatrix : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

InterferenceModel interference_ccm(std::span<const Ccm> tap_ccms, int served_tap, double noise_var);

// Same result, given the precomputed sum of all tap CCMs.
InterferenceModel interference_ccm(const CMatrix &sum_all, std::span<const Ccm> tap_ccms, int served_tap,
                                   double noise_var);

CMatrix sum_ccms(std::span<const Ccm> tap_ccms);

// Solves R_eta w = h.
Beamformer capon(const CVector &h, const InterferenceModel &interference);

// Principal generalized eigenvector of (R_served, R_eta), unit norm.
Beamformer geb(const Ccm &served, const InterferenceModel &interference);

Beamformer steer_bf(double theta_hat_deg, int n_antennas);

// |w^H h|^2 / (w^H R_eta w)
double sinr(const CVector &w, const CVector &h, const InterferenceModel &interference);

} // namespace ccmlab

#endif

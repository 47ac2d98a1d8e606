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


#include "ccmlab/beamform.hpp"

#include "ccmlab/array.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace ccmlab {

const char *to_string(BeamformerKind kind)
{
    switch (kind) {
    case BeamformerKind::Capon:
        return "capon";
    case BeamformerKind::Geb:
        return "geb";
    case BeamformerKind::Steer:
        return "steer";
    }
    return "?";
}

BeamformerKind beamformer_from_string(const std::string &s)
{
    if (s == "capon")
        return BeamformerKind::Capon;
    if (s == "geb")
        return BeamformerKind::Geb;
    if (s == "steer")
        return BeamformerKind::Steer;
    throw std::invalid_argument("unknown beamformer '" + s + "'");
}

CMatrix sum_ccms(std::span<const Ccm> tap_ccms)
{
    if (tap_ccms.empty())
        throw std::invalid_argument("sum_ccms: no CCMs");
    CMatrix s = CMatrix::Zero(tap_ccms.front().size(), tap_ccms.front().size());
    for (const Ccm &c : tap_ccms)
        s += c.matrix();
    return s;
}

InterferenceModel interference_ccm(const CMatrix &sum_all, std::span<const Ccm> tap_ccms, int served_tap,
                                   double noise_var)
{
    if (served_tap < 0 || served_tap >= static_cast<int>(tap_ccms.size()))
        throw std::out_of_range("interference_ccm: unknown tap id " + std::to_string(served_tap));
    if (!(noise_var > 0.0))
        throw std::invalid_argument("interference_ccm: N0 must be positive");
    InterferenceModel m;
    m.r_eta = sum_all - tap_ccms[static_cast<std::size_t>(served_tap)].matrix();
    m.r_eta.diagonal().array() += noise_var;
    // keep exact Hermitian symmetry after the subtraction
    m.r_eta = 0.5 * (m.r_eta + m.r_eta.adjoint()).eval();
    for (int t = 0; t < static_cast<int>(tap_ccms.size()); ++t)
        if (t != served_tap)
            m.contributing_taps.push_back(t);
    return m;
}

InterferenceModel interference_ccm(std::span<const Ccm> tap_ccms, int served_tap, double noise_var)
{
    if (served_tap < 0 || served_tap >= static_cast<int>(tap_ccms.size()))
        throw std::out_of_range("interference_ccm: unknown tap id " + std::to_string(served_tap));
    const int n = tap_ccms.front().size();
    CMatrix others = CMatrix::Zero(n, n);
    for (int t = 0; t < static_cast<int>(tap_ccms.size()); ++t)
        if (t != served_tap)
            others += tap_ccms[static_cast<std::size_t>(t)].matrix();
    others += tap_ccms[static_cast<std::size_t>(served_tap)].matrix();
    return interference_ccm(others, tap_ccms, served_tap, noise_var);
}

Beamformer capon(const CVector &h, const InterferenceModel &interference)
{
    if (h.size() != interference.r_eta.rows())
        throw std::invalid_argument("capon: dimension mismatch");
    Eigen::LLT<CMatrix> llt(interference.r_eta);
    if (llt.info() != Eigen::Success)
        throw SingularMatrix("capon: interference covariance is not positive definite");
    Beamformer bf{llt.solve(h), BeamformerKind::Capon};
    if (!bf.weights.allFinite())
        throw SingularMatrix("capon: solve produced non-finite weights");
    return bf;
}

Beamformer geb(const Ccm &served, const InterferenceModel &interference)
{
    const CMatrix &r_eta = interference.r_eta;
    if (served.size() != r_eta.rows())
        throw std::invalid_argument("geb: dimension mismatch");
    Eigen::LLT<CMatrix> llt(r_eta);
    if (llt.info() != Eigen::Success)
        throw SingularMatrix("geb: interference covariance is not positive definite");
    const auto l = llt.matrixL();

    // R_served = F F^H, so L^-1 R L^-H = B B^H with B = L^-1 F. Its principal
    // eigenvector is B c for the principal eigenvector c of B^H B.
    CMatrix b = l.solve(served.factor());
    if (b.cols() == 0)
        throw SingularMatrix("geb: served CCM is zero");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b.adjoint() * b);
    if (es.info() != Eigen::Success)
        throw SingularMatrix("geb: eigendecomposition failed");
    CVector y = b * es.eigenvectors().col(b.cols() - 1);
    CVector w = l.adjoint().solve(y);
    return {w / w.norm(), BeamformerKind::Geb};
}

Beamformer steer_bf(double theta_hat_deg, int n_antennas)
{
    return {steering_vector(theta_hat_deg, n_antennas), BeamformerKind::Steer};
}

double sinr(const CVector &w, const CVector &h, const InterferenceModel &interference)
{
    const double num = std::norm(w.dot(h));
    const double den = w.dot(interference.r_eta * w).real();
    if (!(den > 0.0))
        return 0.0;
    return num / den;
}

} // namespace ccmlab

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

#ifndef CCMLAB_CCM_HPP
#define CCMLAB_CCM_HPP

#include "ccmlab/types.hpp"

#include <optional>
#include <stdexcept>

namespace ccmlab {

struct CcmParams
{
    double theta_deg = 0.0;
    double sigma_deg = 0.0;
    double rho = 0.0;
};

// How the angular integral is scaled.
//   PerAntennaPower: R = (rho N / sigma) * int u u^H, so trace(R) = rho N.
//   Literal:         R = rho * int u u^H, so trace(R) = rho sigma_rad.
enum class CcmNormalization { PerAntennaPower, Literal };

// Hermitian PSD channel covariance with a factor F, F F^H = R.
class Ccm
{
  public:
    Ccm() = default;
    Ccm(CMatrix matrix, CMatrix factor, std::optional<CcmParams> params = std::nullopt);

    const CMatrix &matrix() const { return matrix_; }
    const CMatrix &factor() const { return factor_; }
    const std::optional<CcmParams> &params() const { return params_; }
    int size() const { return static_cast<int>(matrix_.rows()); }
    int rank() const { return static_cast<int>(factor_.cols()); }

  private:
    CMatrix matrix_;
    CMatrix factor_;
    std::optional<CcmParams> params_;
};

class FactorizationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct GaussLegendreRule
{
    std::vector<double> nodes; // on [-1, 1], ascending
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

// max(16, ceil(4 N sigma_rad))
int default_quad_nodes(double sigma_deg, int n_antennas);

// Uniform power angular spectrum over [theta - sigma/2, theta + sigma/2].
// quad_nodes <= 0 selects default_quad_nodes(). The factor holds one column
// per quadrature node, so sampling needs no eigendecomposition.
Ccm ccm_from_params(double theta_deg, double sigma_deg, double rho, int n_antennas, int quad_nodes = 0,
                    CcmNormalization norm = CcmNormalization::PerAntennaPower);

// rho N u(theta) u(theta)^H
Ccm ccm_rank1(double theta_deg, double rho, int n_antennas);

// sum_i p_i N u(theta_i) u(theta_i)^H
Ccm ccm_discrete(std::span<const double> angles_deg, std::span<const double> powers, int n_antennas);

// Wraps an arbitrary Hermitian PSD matrix; the factor comes from factor().
Ccm ccm_from_matrix(CMatrix r, double tol = 1e-12);

// Eigen-truncated square root: keeps eigenpairs with lambda > tol * lambda_max.
// Throws FactorizationError on eigenvalues below -tol * lambda_max.
CMatrix factor(const CMatrix &r, double tol = 1e-12);

// h = F z, z ~ CN(0, I)
CVector sample_channel(const Ccm &r, Rng &rng);

} // namespace ccmlab

#endif

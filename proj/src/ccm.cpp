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


#include "ccmlab/ccm.hpp"

#include "ccmlab/array.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace ccmlab {

Ccm::Ccm(CMatrix matrix, CMatrix factor, std::optional<CcmParams> params)
    : matrix_(std::move(matrix)), factor_(std::move(factor)), params_(params)
{
}

GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: need at least one node");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton on P_n from the Chebyshev-like initial guess; roots are symmetric.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pm = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // recompute the derivative at the converged root
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1)
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

int default_quad_nodes(double sigma_deg, int n_antennas)
{
    return std::max(16, static_cast<int>(std::ceil(4.0 * n_antennas * deg2rad(sigma_deg))));
}

Ccm ccm_from_params(double theta_deg, double sigma_deg, double rho, int n_antennas, int quad_nodes,
                    CcmNormalization norm)
{
    if (!(sigma_deg > 0.0))
        throw std::invalid_argument("ccm_from_params: sigma must be positive");
    if (!(rho > 0.0))
        throw std::invalid_argument("ccm_from_params: rho must be positive");
    if (quad_nodes <= 0)
        quad_nodes = default_quad_nodes(sigma_deg, n_antennas);
    if (quad_nodes < 2)
        throw std::invalid_argument("ccm_from_params: need at least 2 quadrature nodes");

    const GaussLegendreRule rule = gauss_legendre(quad_nodes);
    const double sigma_rad = deg2rad(sigma_deg);
    const double theta_rad = deg2rad(theta_deg);
    const int n = n_antennas;

    // R = scale * (sigma_rad / 2) * sum_q w_q u(phi_q) u(phi_q)^H
    double scale = rho * n / sigma_rad;
    if (norm == CcmNormalization::Literal)
        scale = rho;
    const double half = 0.5 * sigma_rad;

    CMatrix f(n, quad_nodes);
    for (int q = 0; q < quad_nodes; ++q) {
        const double phi = theta_rad + half * rule.nodes[static_cast<std::size_t>(q)];
        const double amp = std::sqrt(scale * half * rule.weights[static_cast<std::size_t>(q)] / n);
        const double s = std::sin(phi);
        for (int m = 0; m < n; ++m)
            f(m, q) = std::polar(amp, kPi * m * s);
    }

    // Toeplitz: R(m, l) = c(m - l), c(d) = sum_q |f(0,q)|^2 exp(j pi d sin phi_q)
    CVector c = f * f.row(0).adjoint();
    CMatrix r(n, n);
    for (int m = 0; m < n; ++m) {
        for (int l = 0; l < m; ++l) {
            r(m, l) = c(m - l);
            r(l, m) = std::conj(c(m - l));
        }
        r(m, m) = cdouble(c(0).real(), 0.0);
    }
    return Ccm(std::move(r), std::move(f), CcmParams{theta_deg, sigma_deg, rho});
}

Ccm ccm_rank1(double theta_deg, double rho, int n_antennas)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("ccm_rank1: rho must be positive");
    CMatrix f = std::sqrt(rho * n_antennas) * steering_vector(theta_deg, n_antennas);
    CMatrix r = f * f.adjoint();
    return Ccm(std::move(r), std::move(f), CcmParams{theta_deg, 0.0, rho});
}

Ccm ccm_discrete(std::span<const double> angles_deg, std::span<const double> powers, int n_antennas)
{
    if (angles_deg.size() != powers.size())
        throw std::invalid_argument("ccm_discrete: angle and power lists differ in length");
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (powers[i] < 0.0)
            throw std::invalid_argument("ccm_discrete: negative power");
        if (powers[i] > 0.0)
            active.push_back(i);
    }
    CMatrix f(n_antennas, static_cast<Eigen::Index>(active.size()));
    for (std::size_t c = 0; c < active.size(); ++c) {
        const std::size_t i = active[c];
        f.col(static_cast<Eigen::Index>(c)) = std::sqrt(powers[i] * n_antennas) * steering_vector(angles_deg[i], n_antennas);
    }
    CMatrix r = f * f.adjoint();
    if (f.cols() > n_antennas)
        f = factor(r);
    return Ccm(std::move(r), std::move(f));
}

CMatrix factor(const CMatrix &r, double tol)
{
    const Eigen::Index n = r.rows();
    if (r.cols() != n)
        throw std::invalid_argument("factor: matrix not square");
    if (n == 0)
        return CMatrix(0, 0);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
    if (es.info() != Eigen::Success)
        throw FactorizationError("factor: eigendecomposition failed");
    const RVector &lambda = es.eigenvalues(); // ascending
    const double lmax = lambda(n - 1);
    if (lmax <= 0.0) {
        if (lmax < 0.0 || lambda(0) < 0.0)
            throw FactorizationError("factor: matrix is not positive semidefinite");
        return CMatrix(n, 0);
    }
    if (lambda(0) < -tol * lmax)
        throw FactorizationError("factor: negative eigenvalue beyond tolerance");
    Eigen::Index first = 0;
    while (first < n && lambda(first) <= tol * lmax)
        ++first;
    const Eigen::Index k = n - first;
    CMatrix f = es.eigenvectors().rightCols(k);
    for (Eigen::Index j = 0; j < k; ++j)
        f.col(j) *= std::sqrt(lambda(first + j));
    return f;
}

Ccm ccm_from_matrix(CMatrix r, double tol)
{
    CMatrix f = factor(r, tol);
    return Ccm(std::move(r), std::move(f));
}

CVector sample_channel(const Ccm &r, Rng &rng)
{
    const CMatrix &f = r.factor();
    CVector z(f.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i)
        z(i) = complex_normal(rng);
    if (f.cols() == 0)
        return CVector::Zero(r.size());
    return f * z;
}

} // namespace ccmlab

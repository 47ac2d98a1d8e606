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


// Independent reference computations for the tests. Nothing here calls the
// library routine it is compared against.

#ifndef CCMLAB_TESTS_ORACLES_HPP
#define CCMLAB_TESTS_ORACLES_HPP

#include "ccmlab/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

namespace oracle {

using ccmlab::cdouble;
using ccmlab::CMatrix;
using ccmlab::CVector;

inline constexpr double kPi = 3.14159265358979323846;

inline CVector steering(double phi_deg, int n)
{
    CVector u(n);
    const double s = std::sin(phi_deg * kPi / 180.0);
    for (int i = 0; i < n; ++i)
        u(i) = std::polar(1.0 / std::sqrt(double(n)), kPi * i * s);
    return u;
}

// sin(phi) read back from the phase step between the first two DFT entries.
inline double dft_angle_deg(int col, int n)
{
    const double step = -2.0 * kPi * double(col - 1) / n;
    const cdouble ratio = std::polar(1.0, step);
    return std::asin(std::arg(ratio) / kPi) * 180.0 / kPi;
}

// sum_i p_i N u_i u_i^H over an explicit list of plane waves.
inline CMatrix discrete_ccm(const std::vector<double> &angles, const std::vector<double> &powers, int n)
{
    CMatrix r = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const CVector u = steering(angles[i], n);
        r.noalias() += powers[i] * n * u * u.adjoint();
    }
    return r;
}

// Midpoint rule with m equal-power beams over [theta - sigma/2, theta + sigma/2].
inline CMatrix spread_ccm(double theta, double sigma, double rho, int n, int m)
{
    std::vector<double> a, p;
    for (int i = 0; i < m; ++i) {
        a.push_back(theta - sigma / 2 + sigma * (i + 0.5) / m);
        p.push_back(rho / m);
    }
    return discrete_ccm(a, p, n);
}

// Same midpoint sum through the Toeplitz structure: R(p, q) = c(p - q) with
// c(k) = sum_i (rho / m) e^{j pi k sin(phi_i)}. O(N m) instead of O(N^2 m).
inline CMatrix spread_ccm_toeplitz(double theta, double sigma, double rho, int n, int m)
{
    CVector c = CVector::Zero(n);
    for (int i = 0; i < m; ++i) {
        const double s = std::sin((theta - sigma / 2 + sigma * (i + 0.5) / m) * kPi / 180.0);
        for (int k = 0; k < n; ++k)
            c(k) += std::polar(rho / m, kPi * k * s);
    }
    CMatrix r(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            r(p, q) = p >= q ? c(p - q) : std::conj(c(q - p));
    return r;
}

inline double rel_fro(const CMatrix &a, const CMatrix &b)
{
    return (a - b).norm() / b.norm();
}

// Largest achievable SINR for channel h against covariance r: h^H r^-1 h.
inline double max_sinr(const CVector &h, const CMatrix &r)
{
    return std::real(h.dot(r.ldlt().solve(h)));
}

// Central finite-difference gradient of f at x.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd &)> &f, Eigen::VectorXd x,
                                   double h = 1e-6)
{
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double x0 = x(i);
        x(i) = x0 + h;
        const double fp = f(x);
        x(i) = x0 - h;
        const double fm = f(x);
        x(i) = x0;
        g(i) = (fp - fm) / (2 * h);
    }
    return g;
}

// Ordinary least squares slope and intercept.
inline std::pair<double, double> ols(const std::vector<double> &x, const std::vector<double> &y)
{
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

} // namespace oracle

#endif

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
#include "ccmlab/ccm.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace ccmlab;

namespace {

double min_eig_ratio(const CMatrix &r)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) / es.eigenvalues()(r.rows() - 1);
}

int effective_rank(const CMatrix &r, double cutoff)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r, Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    return static_cast<int>((es.eigenvalues().array() > cutoff * lmax).count());
}

} // namespace

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly")
{
    for (int n : {2, 5, 16, 64}) {
        const GaussLegendreRule g = gauss_legendre(n);
        REQUIRE(g.nodes.size() == static_cast<std::size_t>(n));
        CHECK(std::is_sorted(g.nodes.begin(), g.nodes.end()));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0;
            for (int i = 0; i < n; ++i)
                s += g.weights[static_cast<std::size_t>(i)] * std::pow(g.nodes[static_cast<std::size_t>(i)], p);
            const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-12));
        }
    }
    CHECK(default_quad_nodes(0.6, 128) == 16);
    CHECK(default_quad_nodes(3.0, 128) == static_cast<int>(std::ceil(4 * 128 * 3.0 * oracle::kPi / 180)));
}

TEST_CASE("ccm_from_params: zero-spread limit is the rank-1 form")
{
    const Ccm r = ccm_from_params(0.0, 1e-6, 1.0, 8);
    const CVector u = steering_vector(0.0, 8);
    const CMatrix want = 8.0 * u * u.adjoint();
    CHECK(oracle::rel_fro(r.matrix(), want) < 1e-6);
    CHECK(oracle::rel_fro(r.matrix(), ccm_rank1(0.0, 1.0, 8).matrix()) < 1e-6);
}

TEST_CASE("ccm_from_params: trace, Hermitian, PSD")
{
    Rng rng(8);
    std::uniform_real_distribution<double> th(-45, 45), sg(0.6, 3), rh(0.1, 1000);
    for (int i = 0; i < 20; ++i) {
        const double rho = rh(rng);
        const Ccm r = ccm_from_params(th(rng), sg(rng), rho, 128);
        const CMatrix &m = r.matrix();
        const double lmax = Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * lmax);
        CHECK(min_eig_ratio(m) > -1e-10);
        CHECK(std::abs(m.trace().real() - rho * 128) < 1e-9 * rho * 128);
        CHECK(oracle::rel_fro(r.factor() * r.factor().adjoint(), m) < 1e-12);
    }
    CHECK_THROWS(ccm_from_params(0.0, 0.0, 1.0, 8));
    CHECK_THROWS(ccm_from_params(0.0, 1.0, 0.0, 8));
    CHECK_THROWS(ccm_from_params(0.0, 1.0, 1.0, 8, 1));
}

TEST_CASE("ccm_from_params agrees with a dense equal-power beam sum")
{
    const Ccm r = ccm_from_params(30.0, 2.0, 2.0, 32);
    CHECK(oracle::rel_fro(r.matrix(), oracle::spread_ccm(30.0, 2.0, 2.0, 32, 10000)) < 1e-5);

    std::vector<double> a, p;
    for (int i = 0; i < 10000; ++i) {
        a.push_back(30.0 - 1.0 + 2.0 * (i + 0.5) / 10000);
        p.push_back(2.0 / 10000);
    }
    CHECK(oracle::rel_fro(ccm_discrete(a, p, 32).matrix(), r.matrix()) < 1e-5);
}

TEST_CASE("literal normalization scales the trace by the spread")
{
    const double sigma = 2.0;
    const Ccm lit = ccm_from_params(10.0, sigma, 3.0, 16, 0, CcmNormalization::Literal);
    CHECK(lit.matrix().trace().real() == doctest::Approx(3.0 * sigma * oracle::kPi / 180).epsilon(1e-10));
}

TEST_CASE("quadrature converges when the node count doubles")
{
    for (double sigma : {0.6, 1.5, 3.0}) {
        const int q = default_quad_nodes(sigma, 128);
        const Ccm a = ccm_from_params(-20.0, sigma, 1.0, 128, q);
        const Ccm b = ccm_from_params(-20.0, sigma, 1.0, 128, 2 * q);
        CHECK(oracle::rel_fro(a.matrix(), b.matrix()) < 1e-8);
    }
}

TEST_CASE("effective rank grows with the spread")
{
    const int r_small = effective_rank(ccm_from_params(5.0, 0.6, 1.0, 128).matrix(), 1e-6);
    const int r_large = effective_rank(ccm_from_params(5.0, 3.0, 1.0, 128).matrix(), 1e-6);
    CHECK(r_large >= r_small);
    CHECK(r_large > r_small);
}

TEST_CASE("ccm_rank1 and ccm_discrete examples")
{
    const Ccm r = ccm_rank1(0.0, 1.0, 2);
    CHECK((r.matrix() - CMatrix::Ones(2, 2)).norm() < 1e-15);

    const Ccm big = ccm_rank1(12.0, 3.0, 16);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(big.matrix(), Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues()(15) == doctest::Approx(48.0));
    CHECK(std::abs(es.eigenvalues()(14)) < 1e-12);

    const std::vector<double> one_a{12.0}, one_p{3.0};
    CHECK(oracle::rel_fro(ccm_discrete(one_a, one_p, 16).matrix(), big.matrix()) < 1e-15);

    const std::vector<double> two_a{beam_angle(1, 16), beam_angle(3, 16)}, two_p{1.0, 4.0};
    Eigen::SelfAdjointEigenSolver<CMatrix> e2(ccm_discrete(two_a, two_p, 16).matrix(), Eigen::EigenvaluesOnly);
    CHECK(e2.eigenvalues()(15) == doctest::Approx(64.0));
    CHECK(e2.eigenvalues()(14) == doctest::Approx(16.0));
    CHECK(std::abs(e2.eigenvalues()(13)) < 1e-12);
    CHECK(ccm_discrete(two_a, two_p, 16).matrix().trace().real() == doctest::Approx(80.0));

    const std::vector<double> bad{1.0};
    CHECK_THROWS(ccm_discrete(two_a, bad, 16));
}

TEST_CASE("factor examples")
{
    const CMatrix eye = CMatrix::Identity(4, 4);
    const CMatrix f = factor(eye);
    CHECK(f.cols() == 4);
    CHECK((f * f.adjoint() - eye).norm() < 1e-12);

    const CVector u = steering_vector(20.0, 16);
    const CMatrix r1 = 5.0 * 16 * u * u.adjoint();
    const CMatrix f1 = factor(r1);
    REQUIRE(f1.cols() == 1);
    CHECK(std::abs(std::abs(u.dot(f1.col(0))) - std::sqrt(80.0)) < 1e-10);

    Rng rng(2);
    CMatrix g(12, 7);
    for (auto &v : g.reshaped())
        v = complex_normal(rng);
    const CMatrix psd = g * g.adjoint();
    const CMatrix fp = factor(psd);
    CHECK(fp.cols() == 7);
    CHECK(oracle::rel_fro(fp * fp.adjoint(), psd) < 1e-8);

    CMatrix neg = CMatrix::Identity(3, 3);
    neg(2, 2) = -0.5;
    CHECK_THROWS_AS(factor(neg), FactorizationError);
}

TEST_CASE("sample_channel")
{
    Rng rng(6);
    const Ccm zero = ccm_from_matrix(CMatrix::Zero(4, 4));
    CHECK(sample_channel(zero, rng).norm() == 0.0);
    CHECK(sample_channel(zero, rng).size() == 4);

    const Ccm r1 = ccm_rank1(-7.0, 2.0, 32);
    const CVector u = steering_vector(-7.0, 32);
    for (int i = 0; i < 10; ++i) {
        const CVector h = sample_channel(r1, rng);
        const cdouble a = u.dot(h);
        CHECK((h - a * u).norm() < 1e-12 * h.norm());
    }

    const Ccm eye = ccm_from_matrix(CMatrix::Identity(4, 4));
    CMatrix acc = CMatrix::Zero(4, 4);
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const CVector h = sample_channel(eye, rng);
        acc.noalias() += h * h.adjoint();
    }
    CHECK(oracle::rel_fro(acc / m, CMatrix::Identity(4, 4)) < 0.05);
}

TEST_CASE("empirical covariance error decays with the draw count")
{
    Rng rng(12);
    const Ccm r = ccm_from_params(15.0, 2.0, 1.0, 16);
    auto err = [&](int m) {
        CMatrix acc = CMatrix::Zero(16, 16);
        for (int i = 0; i < m; ++i) {
            const CVector h = sample_channel(r, rng);
            acc.noalias() += h * h.adjoint();
        }
        return oracle::rel_fro(acc / m, r.matrix());
    };
    // averaged over repeats: a single draw count fluctuates by O(1) factors
    double e1 = 0.0, e2 = 0.0;
    for (int k = 0; k < 20; ++k) {
        e1 += err(250);
        e2 += err(4000);
    }
    // 16x the draws: expected 4x smaller
    CHECK(e2 < e1 / 2);
}

TEST_CASE("Toeplitz oracle agrees with the dense oracle")
{
    CHECK(oracle::rel_fro(oracle::spread_ccm_toeplitz(-12.0, 2.5, 3.0, 24, 700),
                          oracle::spread_ccm(-12.0, 2.5, 3.0, 24, 700)) < 1e-13);
}

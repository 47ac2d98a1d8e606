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

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace ccmlab;

namespace {

CVector random_unit(int n, Rng &rng)
{
    CVector v(n);
    for (auto &x : v)
        x = complex_normal(rng);
    return v.normalized();
}

double db(double x) { return 10.0 * std::log10(x); }

} // namespace

TEST_CASE("beamformer names")
{
    CHECK(beamformer_from_string("capon") == BeamformerKind::Capon);
    CHECK(beamformer_from_string("geb") == BeamformerKind::Geb);
    CHECK(std::string(to_string(BeamformerKind::Steer)) == "steer");
    CHECK_THROWS(beamformer_from_string("mvdr"));
}

TEST_CASE("interference_ccm examples")
{
    const std::vector<Ccm> one{ccm_from_params(5.0, 1.0, 10.0, 16)};
    CHECK((interference_ccm(one, 0, 0.5).r_eta - 0.5 * CMatrix::Identity(16, 16)).norm() < 1e-12);
    CHECK(interference_ccm(one, 0, 0.5).contributing_taps.empty());

    const std::vector<Ccm> two{ccm_from_params(5.0, 1.0, 10.0, 16), ccm_from_params(-20.0, 2.0, 3.0, 16)};
    const InterferenceModel m = interference_ccm(two, 0, 0.5);
    CHECK((m.r_eta - two[1].matrix() - 0.5 * CMatrix::Identity(16, 16)).norm() < 1e-12);
    CHECK(m.contributing_taps == std::vector<int>{1});

    Rng rng(1);
    std::vector<Ccm> many;
    double rho_sum = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double rho = std::uniform_real_distribution<double>(1, 100)(rng);
        many.push_back(ccm_from_params(std::uniform_real_distribution<double>(-45, 45)(rng), 1.5, rho, 32));
        if (i != 2)
            rho_sum += rho;
    }
    const InterferenceModel mm = interference_ccm(many, 2, 0.3);
    CHECK(mm.r_eta.trace().real() == doctest::Approx(0.3 * 32 + rho_sum * 32).epsilon(1e-12));
    const InterferenceModel pre = interference_ccm(sum_ccms(many), many, 2, 0.3);
    CHECK((pre.r_eta - mm.r_eta).norm() < 1e-10 * mm.r_eta.norm());

    CHECK_THROWS_AS(interference_ccm(two, 2, 0.5), std::out_of_range);
    CHECK_THROWS_AS(interference_ccm(two, -1, 0.5), std::out_of_range);
    CHECK_THROWS(interference_ccm(two, 0, 0.0));
    CHECK_THROWS(sum_ccms({}));
}

TEST_CASE("capon examples")
{
    Rng rng(2);
    const CVector h = random_unit(32, rng) * 3.0;
    InterferenceModel white{2.0 * CMatrix::Identity(32, 32), {}};
    const CVector w = capon(h, white).weights;
    CHECK((w - h / 2.0).norm() < 1e-12);
    CHECK(capon(h, white).kind == BeamformerKind::Capon);

    // null steering toward a strong rank-1 interferer
    const std::vector<Ccm> taps{ccm_rank1(0.0, 1.0, 32), ccm_rank1(20.0, 1e6, 32)};
    const InterferenceModel m = interference_ccm(taps, 0, 1.0);
    const CVector wc = capon(oracle::steering(0.0, 32), m).weights.normalized();
    CHECK(std::abs(wc.dot(oracle::steering(20.0, 32))) < 1e-3);

    // scaling h scales w and keeps the SINR
    const CVector wh = capon(h, m).weights;
    CHECK((capon(h * cdouble(0, 2), m).weights - wh * cdouble(0, 2)).norm() < 1e-10 * wh.norm());
    CHECK(sinr(capon(h * cdouble(0, 2), m).weights, h, m) == doctest::Approx(sinr(wh, h, m)).epsilon(1e-12));

    InterferenceModel bad{CMatrix::Zero(32, 32), {}};
    CHECK_THROWS_AS(capon(h, bad), SingularMatrix);
}

TEST_CASE("capon attains the SINR bound")
{
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Ccm> taps;
        for (int i = 0; i < 5; ++i)
            taps.push_back(ccm_from_params(std::uniform_real_distribution<double>(-45, 45)(rng), 1.0 + i * 0.4,
                                           std::uniform_real_distribution<double>(1, 1000)(rng), 64));
        const InterferenceModel m = interference_ccm(taps, 0, 1.0);
        const CVector h = sample_channel(taps[0], rng);
        const double best = sinr(capon(h, m).weights, h, m);
        CHECK(best == doctest::Approx(oracle::max_sinr(h, m.r_eta)).epsilon(1e-9));
        CHECK(best >= sinr(geb(taps[0], m).weights, h, m) * (1 - 1e-12));
        CHECK(best >= sinr(steer_bf(taps[0].params()->theta_deg, 64).weights, h, m) * (1 - 1e-12));
        for (int k = 0; k < 20; ++k)
            CHECK(best >= sinr(random_unit(64, rng), h, m) * (1 - 1e-12));
    }
}

TEST_CASE("geb examples")
{
    const int n = 32;
    const Ccm r = ccm_rank1(12.0, 5.0, n);
    const InterferenceModel identity{CMatrix::Identity(n, n), {}};
    const CVector w = geb(r, identity).weights;
    CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(w.dot(oracle::steering(12.0, n))) == doctest::Approx(1.0).epsilon(1e-10));

    // scaling either matrix keeps the direction
    Rng rng(4);
    const std::vector<Ccm> taps{ccm_from_params(3.0, 2.5, 40.0, n), ccm_from_params(10.0, 1.0, 300.0, n),
                                ccm_from_params(-30.0, 1.0, 20.0, n)};
    const InterferenceModel m = interference_ccm(taps, 0, 1.0);
    const CVector base = geb(taps[0], m).weights;
    const Ccm scaled(taps[0].matrix() * 7.0, taps[0].factor() * std::sqrt(7.0));
    CHECK(std::abs(geb(scaled, m).weights.dot(base)) == doctest::Approx(1.0).epsilon(1e-10));
    const InterferenceModel m3{m.r_eta * 3.0, m.contributing_taps};
    CHECK(std::abs(geb(taps[0], m3).weights.dot(base)) == doctest::Approx(1.0).epsilon(1e-10));

    // principal generalized eigenvector: maximizes w^H R w / w^H R_eta w
    const auto ratio = [&](const CVector &v) {
        return (v.dot(taps[0].matrix() * v)).real() / (v.dot(m.r_eta * v)).real();
    };
    const double top = ratio(base);
    for (int k = 0; k < 50; ++k)
        CHECK(top >= ratio(random_unit(n, rng)));
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(taps[0].matrix(), m.r_eta);
    CHECK(top == doctest::Approx(ges.eigenvalues().maxCoeff()).epsilon(1e-9));

    InterferenceModel bad{-CMatrix::Identity(n, n), {}};
    CHECK_THROWS(geb(taps[0], bad));
}

TEST_CASE("steering beamformer")
{
    const int n = 128;
    const CVector w = steer_bf(-7.0, n).weights;
    CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((w - oracle::steering(-7.0, n)).norm() < 1e-13);

    const CVector h = oracle::steering(10.0, n) * std::sqrt(50.0 * n);
    const InterferenceModel noise{CMatrix::Identity(n, n), {}};
    const double aligned = sinr(steer_bf(10.0, n).weights, h, noise);
    CHECK(aligned == doctest::Approx(h.squaredNorm()).epsilon(1e-12));
    CHECK(db(aligned) - db(sinr(steer_bf(13.0, n).weights, h, noise)) >= 3.0);
}

TEST_CASE("sinr examples")
{
    Rng rng(5);
    const CVector h = random_unit(16, rng) * 2.0;
    const InterferenceModel m{0.5 * CMatrix::Identity(16, 16), {}};
    CHECK(sinr(h, h, m) == doctest::Approx(h.squaredNorm() / 0.5).epsilon(1e-12));
    CHECK(sinr(h * cdouble(3, -4), h, m) == doctest::Approx(sinr(h, h, m)).epsilon(1e-12));

    CVector orth = random_unit(16, rng);
    orth -= h.normalized() * h.normalized().dot(orth);
    CHECK(sinr(orth, h, m) < 1e-28);

    // unitary rotation of (w, h, R_eta) leaves the ratio unchanged
    std::vector<Ccm> taps{ccm_from_params(0, 1, 10, 16), ccm_from_params(20, 2, 30, 16)};
    const InterferenceModel im = interference_ccm(taps, 0, 1.0);
    CMatrix a(16, 16);
    for (auto &x : a.reshaped())
        x = complex_normal(rng);
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(a).householderQ();
    const CVector w = random_unit(16, rng);
    const InterferenceModel rot{q * im.r_eta * q.adjoint(), {}};
    CHECK(sinr(q * w, q * h, rot) == doctest::Approx(sinr(w, h, im)).epsilon(1e-10));
}

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
#include "ccmlab/scenario.hpp"

#include <doctest.h>

#include <map>

using namespace ccmlab;

namespace {

std::vector<UserTap> draw_taps(const ScenarioConfig &cfg, std::size_t at_least, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<UserTap> taps;
    while (taps.size() < at_least) {
        const Scenario s = sample_scenario(cfg, rng);
        taps.insert(taps.end(), s.taps.begin(), s.taps.end());
    }
    return taps;
}

double chi_square(const std::vector<double> &counts, double expected)
{
    double x = 0.0;
    for (double c : counts)
        x += (c - expected) * (c - expected) / expected;
    return x;
}

} // namespace

TEST_CASE("validate_config accepts the defaults")
{
    CHECK_NOTHROW(validate_config(ScenarioConfig{}));
}

TEST_CASE("validate_config names the offending field")
{
    ScenarioConfig c;
    c.theta_min = 45;
    c.theta_max = -45;
    CHECK_THROWS_WITH_AS(validate_config(c), doctest::Contains("theta range empty"), ConfigError);

    c = {};
    c.beams_per_sector = 5;
    CHECK_THROWS_WITH_AS(validate_config(c), doctest::Contains("N_sec must be 4 or 8"), ConfigError);

    c = {};
    c.l_max = 40;
    CHECK_THROWS_WITH(validate_config(c), doctest::Contains("l_max"));
    c = {};
    c.sigma_min = 0.0;
    CHECK_THROWS_WITH(validate_config(c), doctest::Contains("sigma_min"));
    c = {};
    c.n_realizations = 0;
    CHECK_THROWS_WITH(validate_config(c), doctest::Contains("n_realizations"));
}

TEST_CASE("config JSON uses snake_case names and round-trips")
{
    ScenarioConfig c;
    c.n_users = 3;
    c.rho_std_db = 0.5;
    c.seed = 0xfeedfacecafebeefULL;
    const nlohmann::json j = c;
    for (const char *key : {"n_antennas", "n_users", "l_max", "l_ch", "theta_min", "theta_max", "sigma_min",
                            "sigma_max", "rho_mean_db", "rho_std_db", "pilot_len", "n_realizations",
                            "beams_per_sector", "noise_var", "seed"})
        CHECK(j.contains(key));
    const ScenarioConfig back = j.get<ScenarioConfig>();
    CHECK(back.n_users == 3);
    CHECK(back.rho_std_db == 0.5);
    CHECK(back.seed == c.seed);

    const ScenarioConfig partial = nlohmann::json{{"n_users", 2}}.get<ScenarioConfig>();
    CHECK(partial.n_users == 2);
    CHECK(partial.n_antennas == 128);
}

TEST_CASE("sample_scenario respects tap counts and bounds")
{
    ScenarioConfig cfg;
    cfg.l_max = 1;
    Rng rng(3);
    const Scenario one = sample_scenario(cfg, rng);
    CHECK(one.taps.size() == static_cast<std::size_t>(cfg.n_users));
    for (int k = 0; k < cfg.n_users; ++k)
        CHECK(one.taps_of_user(k).size() == 1);

    cfg = {};
    for (int trial = 0; trial < 50; ++trial) {
        const Scenario s = sample_scenario(cfg, rng);
        for (int k = 0; k < cfg.n_users; ++k) {
            const auto taps = s.taps_of_user(k);
            CHECK(taps.size() >= 1);
            CHECK(taps.size() <= static_cast<std::size_t>(cfg.l_max));
        }
        for (const UserTap &t : s.taps) {
            CHECK(t.aoa_deg >= cfg.theta_min);
            CHECK(t.aoa_deg <= cfg.theta_max);
            CHECK(t.spread_deg >= cfg.sigma_min);
            CHECK(t.spread_deg <= cfg.sigma_max);
            CHECK(t.snr_linear > 0.0);
            CHECK(t.delay_taps >= 0);
            CHECK(t.delay_taps < cfg.l_ch);
            CHECK(t.sector_id == sector_of(t.aoa_deg));
        }
    }
}

TEST_CASE("sample_scenario is deterministic in the seed")
{
    ScenarioConfig cfg;
    cfg.seed = 99;
    const Scenario a = sample_scenario(cfg);
    const Scenario b = sample_scenario(cfg);
    CHECK(nlohmann::json(a) == nlohmann::json(b));
    cfg.seed = 100;
    CHECK(nlohmann::json(sample_scenario(cfg)) != nlohmann::json(a));
}

TEST_CASE("tap parameter marginals follow their laws")
{
    const ScenarioConfig cfg;
    const auto taps = draw_taps(cfg, 100000, 17);
    const double n = static_cast<double>(taps.size());

    // chi-square critical values at alpha = 0.01
    constexpr double kChi19 = 36.191, kChi31 = 52.191;
    std::vector<double> theta_bins(20, 0.0), sigma_bins(20, 0.0), tau_bins(32, 0.0);
    double theta_sum = 0.0;
    for (const UserTap &t : taps) {
        theta_sum += t.aoa_deg;
        theta_bins[std::min(19, int((t.aoa_deg - cfg.theta_min) / (cfg.theta_max - cfg.theta_min) * 20))] += 1;
        sigma_bins[std::min(19, int((t.spread_deg - cfg.sigma_min) / (cfg.sigma_max - cfg.sigma_min) * 20))] += 1;
        tau_bins[static_cast<std::size_t>(t.delay_taps)] += 1;
    }
    CHECK(chi_square(theta_bins, n / 20) < kChi19);
    CHECK(chi_square(sigma_bins, n / 20) < kChi19);
    CHECK(chi_square(tau_bins, n / 32) < kChi31);

    const double se = (cfg.theta_max - cfg.theta_min) / std::sqrt(12.0 * n);
    CHECK(std::abs(theta_sum / n) < 3 * se);
}

TEST_CASE("tap count per user is uniform on 1..l_max")
{
    const ScenarioConfig cfg;
    Rng rng(23);
    std::map<std::size_t, double> count;
    double users = 0;
    for (int i = 0; i < 3000; ++i) {
        const Scenario s = sample_scenario(cfg, rng);
        for (int k = 0; k < cfg.n_users; ++k) {
            count[s.taps_of_user(k).size()] += 1;
            users += 1;
        }
    }
    CHECK(count.size() == 4);
    double chi = 0.0;
    for (const auto &[l, c] : count)
        chi += (c - users / 4) * (c - users / 4) / (users / 4);
    CHECK(chi < 11.345); // df 3, alpha 0.01
}

TEST_CASE("SNR in dB is Gaussian with the configured moments")
{
    ScenarioConfig cfg;
    cfg.rho_mean_db = 12.0;
    cfg.rho_std_db = 4.0;
    const auto taps = draw_taps(cfg, 1000000, 5);
    double s = 0.0, s2 = 0.0;
    for (const UserTap &t : taps) {
        const double db = 10.0 * std::log10(t.snr_linear);
        s += db;
        s2 += db * db;
    }
    const double n = static_cast<double>(taps.size());
    const double mean = s / n;
    const double sd = std::sqrt(s2 / n - mean * mean);
    CHECK(mean == doctest::Approx(12.0).epsilon(0.1 / 12.0));
    CHECK(sd == doctest::Approx(4.0).epsilon(0.02));

    cfg.rho_std_db = 0.0;
    Rng rng(1);
    for (const UserTap &t : sample_scenario(cfg, rng).taps)
        CHECK(10.0 * std::log10(t.snr_linear) == doctest::Approx(12.0));
}

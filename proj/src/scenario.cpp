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

#include "ccmlab/scenario.hpp"

#include "ccmlab/array.hpp"

namespace ccmlab {

namespace {

void require(bool ok, const std::string &msg)
{
    if (!ok)
        throw ConfigError(msg);
}

} // namespace

void validate_config(const ScenarioConfig &c)
{
    require(c.n_antennas >= 1, "n_antennas must be positive");
    require(c.n_users >= 1, "n_users must be positive");
    require(c.l_max >= 1, "l_max must be positive");
    require(c.l_ch >= 1, "l_ch must be positive");
    require(c.l_max <= c.l_ch, "l_max must not exceed l_ch");
    require(c.theta_min < c.theta_max, "theta range empty (theta_min must be < theta_max)");
    require(c.sigma_min > 0.0, "sigma_min must be positive");
    require(c.sigma_min <= c.sigma_max, "sigma range empty (sigma_min must be <= sigma_max)");
    require(c.rho_std_db >= 0.0, "rho_std_db must be non-negative");
    require(c.pilot_len >= 1, "pilot_len must be positive");
    require(c.n_realizations >= 1, "n_realizations must be positive");
    require(c.beams_per_sector == 4 || c.beams_per_sector == 8, "N_sec must be 4 or 8 (beams_per_sector)");
    require(c.noise_var >= 0.0, "noise_var must be non-negative");
}

void to_json(nlohmann::json &j, const ScenarioConfig &c)
{
    j = nlohmann::json{{"n_antennas", c.n_antennas},
                       {"n_users", c.n_users},
                       {"l_max", c.l_max},
                       {"l_ch", c.l_ch},
                       {"theta_min", c.theta_min},
                       {"theta_max", c.theta_max},
                       {"sigma_min", c.sigma_min},
                       {"sigma_max", c.sigma_max},
                       {"rho_mean_db", c.rho_mean_db},
                       {"rho_std_db", c.rho_std_db},
                       {"pilot_len", c.pilot_len},
                       {"n_realizations", c.n_realizations},
                       {"beams_per_sector", c.beams_per_sector},
                       {"noise_var", c.noise_var},
                       {"seed", c.seed}};
}

// Missing fields keep their defaults.
void from_json(const nlohmann::json &j, ScenarioConfig &c)
{
    auto get = [&](const char *key, auto &field) {
        if (j.contains(key))
            j.at(key).get_to(field);
    };
    get("n_antennas", c.n_antennas);
    get("n_users", c.n_users);
    get("l_max", c.l_max);
    get("l_ch", c.l_ch);
    get("theta_min", c.theta_min);
    get("theta_max", c.theta_max);
    get("sigma_min", c.sigma_min);
    get("sigma_max", c.sigma_max);
    get("rho_mean_db", c.rho_mean_db);
    get("rho_std_db", c.rho_std_db);
    get("pilot_len", c.pilot_len);
    get("n_realizations", c.n_realizations);
    get("beams_per_sector", c.beams_per_sector);
    get("noise_var", c.noise_var);
    get("seed", c.seed);
}

void to_json(nlohmann::json &j, const UserTap &t)
{
    j = nlohmann::json{{"user_index", t.user_index}, {"tap_index", t.tap_index},   {"aoa_deg", t.aoa_deg},
                       {"spread_deg", t.spread_deg}, {"snr_linear", t.snr_linear}, {"delay_taps", t.delay_taps},
                       {"sector_id", t.sector_id}};
}

void to_json(nlohmann::json &j, const Scenario &s)
{
    j = nlohmann::json{{"config", s.config}, {"taps", s.taps}};
}

std::vector<int> Scenario::taps_of_user(int k) const
{
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(taps.size()); ++i)
        if (taps[i].user_index == k)
            idx.push_back(i);
    return idx;
}

Scenario sample_scenario(const ScenarioConfig &cfg, Rng &rng)
{
    validate_config(cfg);

    std::uniform_int_distribution<int> n_taps(1, cfg.l_max);
    std::uniform_int_distribution<int> delay(0, cfg.l_ch - 1);
    std::uniform_real_distribution<double> aoa(cfg.theta_min, cfg.theta_max);
    std::uniform_real_distribution<double> spread(cfg.sigma_min, cfg.sigma_max);
    std::normal_distribution<double> snr_db(cfg.rho_mean_db, cfg.rho_std_db > 0.0 ? cfg.rho_std_db : 1.0);

    Scenario s;
    s.config = cfg;
    for (int k = 0; k < cfg.n_users; ++k) {
        const int lk = n_taps(rng);
        for (int l = 0; l < lk; ++l) {
            UserTap t;
            t.user_index = k;
            t.tap_index = l;
            t.delay_taps = delay(rng);
            t.aoa_deg = aoa(rng);
            t.spread_deg = spread(rng);
            const double db = cfg.rho_std_db > 0.0 ? snr_db(rng) : cfg.rho_mean_db;
            t.snr_linear = std::pow(10.0, db / 10.0);
            t.sector_id = sector_of(t.aoa_deg);
            s.taps.push_back(t);
        }
    }
    return s;
}

Scenario sample_scenario(const ScenarioConfig &cfg)
{
    Rng rng(derive_seed(cfg.seed, 0x5ce9a410));
    return sample_scenario(cfg, rng);
}

} // namespace ccmlab

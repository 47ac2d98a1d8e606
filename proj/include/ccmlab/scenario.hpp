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

#ifndef CCMLAB_SCENARIO_HPP
#define CCMLAB_SCENARIO_HPP

#include "ccmlab/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmlab {

// System constants and parameter distributions of the angle-delay plane.
// Angles in degrees, powers linear unless suffixed _db.
struct ScenarioConfig
{
    int n_antennas = 128;
    int n_users = 16;
    int l_max = 4;            // max taps per user
    int l_ch = 32;            // channel delay taps
    double theta_min = -45.0;
    double theta_max = 45.0;
    double sigma_min = 0.6;
    double sigma_max = 3.0;
    double rho_mean_db = 30.0;
    double rho_std_db = 3.0;
    int pilot_len = 128;      // T
    int n_realizations = 10;  // T_r
    int beams_per_sector = 8; // N_sec
    double noise_var = 1.0;   // N0
    std::uint64_t seed = 1;
};

class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig &cfg);

void to_json(nlohmann::json &j, const ScenarioConfig &cfg);
void from_json(const nlohmann::json &j, ScenarioConfig &cfg);

struct UserTap
{
    int user_index = 0;
    int tap_index = 0;
    double aoa_deg = 0.0;
    double spread_deg = 0.0;
    double snr_linear = 0.0;
    int delay_taps = 0;
    int sector_id = 0;
};

void to_json(nlohmann::json &j, const UserTap &tap);

// One realization of the angle-delay plane. Taps are stored user-major,
// i.e. all taps of user 0 first, in tap_index order.
struct Scenario
{
    ScenarioConfig config;
    std::vector<UserTap> taps;

    std::vector<int> taps_of_user(int k) const;
};

void to_json(nlohmann::json &j, const Scenario &s);

Scenario sample_scenario(const ScenarioConfig &cfg, Rng &rng);

// Pure in (cfg, cfg.seed).
Scenario sample_scenario(const ScenarioConfig &cfg);

} // namespace ccmlab

#endif

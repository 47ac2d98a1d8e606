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


#include "ccmlab/estimators.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ccmlab {

namespace {

struct Collector
{
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    int target = 0;

    bool full() const { return static_cast<int>(y.size()) >= target; }

    void add(const RVector &in, double label)
    {
        x.emplace_back(in.data(), in.data() + in.size());
        y.push_back(label);
    }

    LabeledSet finish(int n_in) const
    {
        LabeledSet set;
        set.inputs.resize(static_cast<Eigen::Index>(y.size()), n_in);
        set.targets.resize(static_cast<Eigen::Index>(y.size()), 1);
        for (std::size_t i = 0; i < y.size(); ++i) {
            for (int c = 0; c < n_in; ++c)
                set.inputs(static_cast<Eigen::Index>(i), c) = x[i][static_cast<std::size_t>(c)];
            set.targets(static_cast<Eigen::Index>(i), 0) = y[i];
        }
        return set;
    }
};

SectorDatasets collect(const ScenarioConfig &cfg, const std::array<int, kSectorCount> &aoa_target,
                       const std::array<int, kSectorCount> &as_target, Rng &rng, const EstimatorOptions &opt)
{
    validate_config(cfg);
    const SectorPlan plan = sector_plan(cfg.beams_per_sector, cfg.n_antennas);
    const auto beams = sector_beams(plan);
    const PilotBook pilots = generate_pilots(cfg.n_users, cfg.pilot_len, rng);
    const int n_sec2 = plan.as_beam_count;
    if (cfg.n_realizations < 2 && std::any_of(as_target.begin(), as_target.end(), [](int t) { return t > 0; }))
        throw std::invalid_argument("AS data sets need at least two realizations per tap");

    std::array<Collector, kSectorCount> aoa, as;
    for (int s = 0; s < kSectorCount; ++s) {
        aoa[static_cast<std::size_t>(s)].target = aoa_target[static_cast<std::size_t>(s)];
        as[static_cast<std::size_t>(s)].target = as_target[static_cast<std::size_t>(s)];
    }
    auto done = [&] {
        for (int s = 0; s < kSectorCount; ++s)
            if (!aoa[static_cast<std::size_t>(s)].full() || !as[static_cast<std::size_t>(s)].full())
                return false;
        return true;
    };

    const ObserveOptions obs_opt{.keep_full = false};
    while (!done()) {
        const DropObservation drop = observe_drop(cfg, plan, beams, pilots, rng, obs_opt);
        for (std::size_t i = 0; i < drop.taps.size(); ++i) {
            const TapObservation &obs = drop.taps[i];
            const UserTap &tap = drop.scenario.taps[i];
            const Sector &sec = plan.sector(obs.sector_id);
            Collector &a = aoa[static_cast<std::size_t>(obs.sector_id)];
            const double theta_label = (tap.aoa_deg - sec.low_deg) / sec.width_deg();
            for (const CVector &b : obs.beamspace) {
                if (a.full())
                    break;
                a.add(opt.normalize_aoa_input ? aoa_dnn_input(b) : aoa_dnn_input_raw(b), theta_label);
            }
            Collector &s = as[static_cast<std::size_t>(obs.sector_id)];
            if (!s.full()) {
                const double span = cfg.sigma_max - cfg.sigma_min;
                const double sigma_label = span > 0.0 ? (tap.spread_deg - cfg.sigma_min) / span : 0.0;
                s.add(as_dnn_input(obs, n_sec2), sigma_label);
            }
        }
    }

    SectorDatasets out;
    for (int s = 0; s < kSectorCount; ++s) {
        out.aoa[static_cast<std::size_t>(s)] = aoa[static_cast<std::size_t>(s)].finish(cfg.beams_per_sector);
        out.as[static_cast<std::size_t>(s)] = as[static_cast<std::size_t>(s)].finish(2 * n_sec2);
    }
    return out;
}

} // namespace

SectorDatasets build_datasets(const ScenarioConfig &cfg, int aoa_per_sector, int as_per_sector, Rng &rng,
                              const EstimatorOptions &opt)
{
    std::array<int, kSectorCount> a{}, s{};
    a.fill(aoa_per_sector);
    s.fill(as_per_sector);
    return collect(cfg, a, s, rng, opt);
}

LabeledSet build_aoa_dataset(const ScenarioConfig &cfg, int sector_id, int n_samples, Rng &rng,
                             const EstimatorOptions &opt)
{
    if (sector_id < 0 || sector_id >= kSectorCount)
        throw std::out_of_range("build_aoa_dataset: sector id out of range");
    std::array<int, kSectorCount> a{}, s{};
    a[static_cast<std::size_t>(sector_id)] = n_samples;
    return collect(cfg, a, s, rng, opt).aoa[static_cast<std::size_t>(sector_id)];
}

LabeledSet build_as_dataset(const ScenarioConfig &cfg, int sector_id, int n_samples, Rng &rng)
{
    if (sector_id < 0 || sector_id >= kSectorCount)
        throw std::out_of_range("build_as_dataset: sector id out of range");
    std::array<int, kSectorCount> a{}, s{};
    s[static_cast<std::size_t>(sector_id)] = n_samples;
    return collect(cfg, a, s, rng, {}).as[static_cast<std::size_t>(sector_id)];
}

void write_dataset_csv(const LabeledSet &set, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    for (Eigen::Index c = 0; c < set.inputs.cols(); ++c)
        out << 'x' << c << ',';
    for (Eigen::Index c = 0; c < set.targets.cols(); ++c)
        out << 'y' << c << (c + 1 < set.targets.cols() ? "," : "");
    out << '\n' << std::setprecision(17);
    for (Eigen::Index r = 0; r < set.inputs.rows(); ++r) {
        for (Eigen::Index c = 0; c < set.inputs.cols(); ++c)
            out << set.inputs(r, c) << ',';
        for (Eigen::Index c = 0; c < set.targets.cols(); ++c)
            out << set.targets(r, c) << (c + 1 < set.targets.cols() ? "," : "");
        out << '\n';
    }
}

LabeledSet read_dataset_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty data set file " + path.string());
    int n_x = 0, n_y = 0;
    {
        std::stringstream header(line);
        std::string col;
        while (std::getline(header, col, ',')) {
            if (!col.empty() && col[0] == 'x')
                ++n_x;
            else if (!col.empty() && col[0] == 'y')
                ++n_y;
            else
                throw std::runtime_error("unexpected data set column '" + col + "'");
        }
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != n_x + n_y)
            throw std::runtime_error("data set row has the wrong number of fields");
        rows.push_back(std::move(row));
    }
    LabeledSet set;
    set.inputs.resize(static_cast<Eigen::Index>(rows.size()), n_x);
    set.targets.resize(static_cast<Eigen::Index>(rows.size()), n_y);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < n_x; ++c)
            set.inputs(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
        for (int c = 0; c < n_y; ++c)
            set.targets(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(n_x + c)];
    }
    return set;
}

} // namespace ccmlab

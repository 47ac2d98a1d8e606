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


#ifndef CCMLAB_HARNESS_HPP
#define CCMLAB_HARNESS_HPP

#include "ccmlab/beamform.hpp"
#include "ccmlab/estimators.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ccmlab {

// Monte Carlo experiment driver. One trial is one drop of the angle-delay
// plane; errors are pooled over every tap of every trial at an axis point.

enum class SweepAxis { MeanSnrDb, PilotLen };

const char *to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string &s);

// AoA estimators understood by run_aoa_sweep().
inline const std::vector<std::string> kAoaMethods = {"dnn", "music_dbf", "music_hbf", "maxbeam_dbf",
                                                     "maxbeam_hbf"};

struct ExperimentSpec
{
    ScenarioConfig base; // base.seed seeds the whole experiment
    SweepAxis axis = SweepAxis::MeanSnrDb;
    std::vector<double> axis_values{30.0};
    std::vector<std::string> methods{"maxbeam_dbf"};
    std::vector<std::string> beamformers{"capon", "geb", "steer"};
    int n_trials = 1;
    std::string output;
    double grid_step_deg = 0.05;
    // DBF baselines scan the tap's sector (true) or the whole [-45, 45] range.
    bool dbf_sector_grid = true;
    int threads = 0; // <= 0: OpenMP default
};

void validate_spec(const ExperimentSpec &spec);
void to_json(nlohmann::json &j, const ExperimentSpec &spec);
void from_json(const nlohmann::json &j, ExperimentSpec &spec);

// base with the sweep variable set to axis_values[axis_index].
ScenarioConfig config_at(const ExperimentSpec &spec, int axis_index);

// Stream of trial `trial` at axis point `axis_index`.
std::uint64_t trial_seed(const ExperimentSpec &spec, int axis_index, int trial);

struct MetricRow
{
    std::string method;
    std::string axis;
    double axis_value = 0.0;
    std::string metric;
    double value = 0.0;
    long n = 0;
    std::uint64_t seed = 0;

    bool operator==(const MetricRow &) const = default;
};

class MetricsTable
{
  public:
    // Throws std::invalid_argument on a non-finite value.
    void append(MetricRow row);
    void append(const MetricsTable &other);
    const std::vector<MetricRow> &rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    // Rows matching method and metric, in insertion order.
    std::vector<MetricRow> select(const std::string &method, const std::string &metric) const;

  private:
    std::vector<MetricRow> rows_;
};

// ---- metrics -------------------------------------------------------------

double mse(std::span<const double> errors);

// Standard error of mse(): sample std of e^2 over sqrt(n).
double mse_standard_error(std::span<const double> errors);

// Fraction of |e| strictly above half_bw.
double p_out(std::span<const double> errors, double half_bw = 1.5);

// (sorted value, fraction of samples <= value), one pair per sample.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values);

// Value at fraction q in (0, 1] of the empirical CDF.
double cdf_quantile(std::span<const double> values, double q);

struct Histogram
{
    std::vector<double> edges; // bins + 1 ascending
    std::vector<double> mass;  // bins, sums to 1
};

// Fixed-width bins over [lo, hi]; values outside fall into the end bins.
Histogram histogram(std::span<const double> values, int bins, double lo = -5.0, double hi = 5.0);

// ---- experiments ---------------------------------------------------------

struct SweepResult
{
    MetricsTable table;
    // errors[method][axis_index]: signed per-tap errors, in (trial, tap) order
    std::map<std::string, std::vector<std::vector<double>>> errors;
    FlopLedger ledger;
};

// MSE and P_out rows per (method, axis value). aoa_nets is required when
// "dnn" is among the methods.
SweepResult run_aoa_sweep(const ExperimentSpec &spec, const SectorNets *aoa_nets = nullptr);

// Angular-spread MSE rows for method "as_dnn".
SweepResult run_as_sweep(const ExperimentSpec &spec, const SectorNets &as_nets);

// Signed AoA error histograms per method, pooled over the axis points.
std::map<std::string, Histogram> run_error_hist(const ExperimentSpec &spec, int bins,
                                                const SectorNets *aoa_nets = nullptr);

struct SinrResult
{
    MetricsTable table;
    // "<beamformer>_<perfect|estimated>" -> per-user SINR in dB
    std::map<std::string, std::vector<double>> samples_db;
};

// Per drop and user: beamformers on the strongest tap from true CCMs
// (perfect) and from the estimated pipeline (estimated), scored against a
// fresh channel and the true interference model. Only the first axis value
// is used.
SinrResult run_sinr_cdf(const ExperimentSpec &spec, const SectorNets &aoa_nets, const SectorNets &as_nets);

// ---- training ------------------------------------------------------------

struct TrainingPlan
{
    int aoa_per_sector = 100000;
    int as_per_sector = 20000;
    TrainConfig aoa_train{.learning_rate = 0.05, .momentum = 0.9, .batch_size = 32, .max_epochs = 100, .patience = 15};
    TrainConfig as_train{.learning_rate = 0.05, .momentum = 0.9, .batch_size = 32, .max_epochs = 200, .patience = 20};
    std::uint64_t seed = 11;
};

struct TrainedModels
{
    SectorNets aoa;
    SectorNets as;
};

// One net per sector with the per-sector architecture for the task.
SectorNets train_sector_nets(NetTask task, int beams_per_sector, const std::array<LabeledSet, kSectorCount> &data,
                             const TrainConfig &train_cfg, std::uint64_t seed);

TrainedModels train_models(const ScenarioConfig &cfg, const TrainingPlan &plan);

// ---- serialization -------------------------------------------------------

// Writes the CSV and, next to it, <stem>.manifest.json with the experiment description and
// the library version.
void write_results(const MetricsTable &table, const ExperimentSpec &spec, const std::filesystem::path &csv_path);
void write_results(const MetricsTable &table, const std::filesystem::path &csv_path);
MetricsTable read_results(const std::filesystem::path &csv_path);

std::filesystem::path manifest_path(const std::filesystem::path &csv_path);

const char *version();

} // namespace ccmlab

#endif

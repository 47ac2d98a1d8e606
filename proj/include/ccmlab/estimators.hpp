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

#ifndef CCMLAB_ESTIMATORS_HPP
#define CCMLAB_ESTIMATORS_HPP

#include "ccmlab/airlink.hpp"
#include "ccmlab/array.hpp"
#include "ccmlab/ccm.hpp"
#include "ccmlab/neural.hpp"
#include "ccmlab/scenario.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace ccmlab {

// What the estimator sees of one tap over T_r realizations.
struct TapObservation
{
    std::vector<CVector> beamspace; // b_r = U^H y_r, raw matched-filter domain, length N_sec
    std::vector<CVector> full;      // h_hat_r = y_r / sqrt(T), length N; empty under HBF only
    int sector_id = 0;
    std::optional<CcmParams> truth;

    int n_realizations() const { return static_cast<int>(beamspace.size()); }
};

struct CcmEstimate
{
    double theta_hat = 0.0;
    double sigma_hat = 0.0;
    double rho_hat = 0.0;
    Ccm ccm;
};

// Multiply-accumulate counters per estimator, with the number of estimates
// each counter covers.
class FlopLedger
{
  public:
    struct Entry
    {
        double flops = 0.0;
        long calls = 0;
    };

    void add(const std::string &method, double flops);
    void merge(const FlopLedger &other);
    const std::map<std::string, Entry> &entries() const { return entries_; }

  private:
    std::map<std::string, Entry> entries_;
};

// Average flops per estimate, by method.
std::map<std::string, double> flops(const FlopLedger &ledger);

// Closed-form cost models. n_grid is the number of scanned angles.
double dnn_flops(int n_realizations, long dnn_macs);
double music_hbf_flops(int n, int n_sec, int n_realizations, int n_grid);
double music_dbf_flops(int n, int n_realizations, int n_grid);
double maxbeam_hbf_flops(int n, int n_sec, int n_realizations, int n_grid);
double maxbeam_dbf_flops(int n, int n_realizations, int n_grid);

// Scan grid with its steering matrix (N x G) precomputed.
struct AngleGrid
{
    std::vector<double> angles_deg;
    CMatrix steering;

    int size() const { return static_cast<int>(angles_deg.size()); }
};

// lo, lo + step, ..., hi (hi included when it lies on the lattice).
AngleGrid make_grid(double lo_deg, double hi_deg, double step_deg, int n_antennas);

// Per-sector grids plus the full-range grid, built once per geometry.
struct GridSet
{
    double step_deg = 0.05;
    AngleGrid full;
    std::array<AngleGrid, kSectorCount> sector;
};

GridSet make_grids(int n_antennas, double step_deg = 0.05);

// ---- AoA -----------------------------------------------------------------

// |b_i|^2 normalized to unit sum; all-zero input maps to the uniform vector.
RVector aoa_dnn_input(const CVector &b);

// Raw |b_i|^2 (the un-normalized variant, selected by EstimatorOptions).
RVector aoa_dnn_input_raw(const CVector &b);

struct EstimatorOptions
{
    bool normalize_aoa_input = true;
};

// One trained network per sector. Missing entries are allowed.
struct SectorNets
{
    NetTask task = NetTask::AoA;
    int beams_per_sector = 8;
    std::array<std::optional<Mlp>, kSectorCount> nets;
    nlohmann::json metadata = nlohmann::json::object();

    const Mlp &at(int sector_id) const; // throws std::out_of_range when missing
};

void save_bundle(const SectorNets &bundle, const std::filesystem::path &dir);
SectorNets load_bundle(const std::filesystem::path &dir);

double dnn_aoa_estimate(const SectorNets &nets, const SectorPlan &plan, const TapObservation &obs,
                        FlopLedger *ledger = nullptr, const EstimatorOptions &opt = {});

// Per-realization AoA estimates before the median.
std::vector<double> dnn_aoa_per_realization(const SectorNets &nets, const SectorPlan &plan, const TapObservation &obs,
                                            const EstimatorOptions &opt = {});

// ---- AS ------------------------------------------------------------------

// Start position of the n_sec2-wide window centred on argmax |b_i|^2.
int as_window_start(const CVector &b, int n_sec2);

CVector select_as_beams(const CVector &b, int n_sec2);

// [per-beam mean | per-beam std] of the window's unit-sum powers across T_r.
// The window is fixed by the realization holding the strongest beam.
RVector as_dnn_input(const TapObservation &obs, int n_sec2);

double dnn_as_estimate(const SectorNets &nets, const SectorPlan &plan, const ScenarioConfig &cfg,
                       const TapObservation &obs, FlopLedger *ledger = nullptr);

// ---- power and CCM -------------------------------------------------------

// mean_r max_i |b_{r,i}|^2 / (T N)
double power_estimate(const TapObservation &obs, int pilot_len, int n_antennas);

CcmEstimate estimate_ccm(double theta_hat, double sigma_hat, double rho_hat, int n_antennas);

// ---- baselines -----------------------------------------------------------

class DegenerateInput : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// The baselines charge their stage costs to the ledger under music_dbf,
// music_hbf, maxbeam_dbf and maxbeam_hbf.

// MUSIC with M sources; returns M angles ascending in null-space projection.
std::vector<double> music(std::span<const CVector> snapshots, const AngleGrid &grid, int n_sources = 1,
                          FlopLedger *ledger = nullptr);

// Reconstructs h = U b per realization, then MUSIC over the sector grid.
double music_hbf(const TapObservation &obs, const BeamMatrix &beams, const AngleGrid &sector_grid,
                 FlopLedger *ledger = nullptr);

// Per-snapshot argmax |h^H u(theta)|, then the median.
double maxbeam(std::span<const CVector> snapshots, const AngleGrid &grid, FlopLedger *ledger = nullptr);

double maxbeam_hbf(const TapObservation &obs, const BeamMatrix &beams, const AngleGrid &sector_grid,
                   FlopLedger *ledger = nullptr);

// ---- simulation front end -------------------------------------------------

// One drop: scenario, true CCMs and per-tap observations over T_r blocks.
struct DropObservation
{
    Scenario scenario;
    std::vector<Ccm> ccms;
    std::vector<TapObservation> taps;
};

struct ObserveOptions
{
    bool keep_full = true; // store h_hat for DBF baselines
};

DropObservation observe_drop(const ScenarioConfig &cfg, const SectorPlan &plan, const std::array<BeamMatrix, kSectorCount> &beams,
                             const PilotBook &pilots, Rng &rng, const ObserveOptions &opt = {});

std::array<BeamMatrix, kSectorCount> sector_beams(const SectorPlan &plan);

// Supervised sets for one sector: targets are (theta - sector_low)/width
// and (sigma - sigma_min)/(sigma_max - sigma_min).
LabeledSet build_aoa_dataset(const ScenarioConfig &cfg, int sector_id, int n_samples, Rng &rng,
                             const EstimatorOptions &opt = {});
LabeledSet build_as_dataset(const ScenarioConfig &cfg, int sector_id, int n_samples, Rng &rng);

// Both sets for all sectors from one stream of drops.
struct SectorDatasets
{
    std::array<LabeledSet, kSectorCount> aoa;
    std::array<LabeledSet, kSectorCount> as;
};

SectorDatasets build_datasets(const ScenarioConfig &cfg, int aoa_per_sector, int as_per_sector, Rng &rng,
                              const EstimatorOptions &opt = {});

void write_dataset_csv(const LabeledSet &set, const std::filesystem::path &path);
LabeledSet read_dataset_csv(const std::filesystem::path &path);

} // namespace ccmlab

#endif

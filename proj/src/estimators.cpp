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

#include "ccmlab/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <fstream>
#include <numeric>

namespace ccmlab {

// ---- flop accounting -----------------------------------------------------

void FlopLedger::add(const std::string &method, double count)
{
    Entry &e = entries_[method];
    e.flops += count;
    e.calls += 1;
}

void FlopLedger::merge(const FlopLedger &other)
{
    for (const auto &[name, e] : other.entries_) {
        Entry &mine = entries_[name];
        mine.flops += e.flops;
        mine.calls += e.calls;
    }
}

std::map<std::string, double> flops(const FlopLedger &ledger)
{
    std::map<std::string, double> out;
    for (const auto &[name, e] : ledger.entries())
        out[name] = e.calls > 0 ? e.flops / static_cast<double>(e.calls) : 0.0;
    return out;
}

double dnn_flops(int n_realizations, long dnn_macs)
{
    return static_cast<double>(n_realizations) * static_cast<double>(dnn_macs);
}

double music_hbf_flops(int n, int n_sec, int n_realizations, int n_grid)
{
    const double nn = n;
    return nn * n_sec * n_realizations + nn * nn * n_realizations + nn * nn * nn + static_cast<double>(n_grid) * nn;
}

double music_dbf_flops(int n, int n_realizations, int n_grid)
{
    const double nn = n;
    return nn * nn * n_realizations + nn * nn * nn + static_cast<double>(n_grid) * nn;
}

double maxbeam_hbf_flops(int n, int n_sec, int n_realizations, int n_grid)
{
    const double nn = n;
    return nn * n_sec * n_realizations + static_cast<double>(n_grid) * nn * n_realizations;
}

double maxbeam_dbf_flops(int n, int n_realizations, int n_grid)
{
    return static_cast<double>(n_grid) * n * n_realizations;
}

// ---- grids ---------------------------------------------------------------

AngleGrid make_grid(double lo_deg, double hi_deg, double step_deg, int n_antennas)
{
    if (!(step_deg > 0.0) || hi_deg < lo_deg)
        throw std::invalid_argument("make_grid: bad range or step");
    const int count = static_cast<int>(std::floor((hi_deg - lo_deg) / step_deg + 1e-9)) + 1;
    AngleGrid g;
    g.angles_deg.reserve(static_cast<std::size_t>(count));
    g.steering.resize(n_antennas, count);
    for (int i = 0; i < count; ++i) {
        const double a = lo_deg + i * step_deg;
        g.angles_deg.push_back(a);
        g.steering.col(i) = steering_vector(a, n_antennas);
    }
    return g;
}

GridSet make_grids(int n_antennas, double step_deg)
{
    GridSet set;
    set.step_deg = step_deg;
    set.full = make_grid(kSectorLowDeg, kSectorLowDeg + kSectorCount * kSectorWidthDeg, step_deg, n_antennas);
    for (int s = 0; s < kSectorCount; ++s) {
        const double lo = kSectorLowDeg + s * kSectorWidthDeg;
        set.sector[static_cast<std::size_t>(s)] = make_grid(lo, lo + kSectorWidthDeg, step_deg, n_antennas);
    }
    return set;
}

// ---- AoA -----------------------------------------------------------------

RVector aoa_dnn_input_raw(const CVector &b)
{
    return b.cwiseAbs2();
}

RVector aoa_dnn_input(const CVector &b)
{
    RVector p = b.cwiseAbs2();
    const double total = p.sum();
    if (!(total > 0.0))
        return RVector::Constant(b.size(), 1.0 / static_cast<double>(b.size()));
    return p / total;
}

const Mlp &SectorNets::at(int sector_id) const
{
    if (sector_id < 0 || sector_id >= kSectorCount || !nets[static_cast<std::size_t>(sector_id)])
        throw std::out_of_range("no " + std::string(to_string(task)) + " network for sector " + std::to_string(sector_id + 1));
    return *nets[static_cast<std::size_t>(sector_id)];
}

void save_bundle(const SectorNets &bundle, const std::filesystem::path &dir)
{
    std::filesystem::create_directories(dir);
    nlohmann::json manifest{{"task", to_string(bundle.task)},
                            {"n_sec", bundle.beams_per_sector},
                            {"sectors", nlohmann::json::object()},
                            {"training", bundle.metadata}};
    for (int s = 0; s < kSectorCount; ++s) {
        if (!bundle.nets[static_cast<std::size_t>(s)])
            continue;
        const std::string file = "sector_" + std::to_string(s + 1) + ".json";
        std::ofstream out(dir / file);
        if (!out)
            throw std::runtime_error("cannot write " + (dir / file).string());
        out << nlohmann::json(*bundle.nets[static_cast<std::size_t>(s)]).dump() << '\n';
        manifest["sectors"][std::to_string(s + 1)] = file;
    }
    std::ofstream out(dir / "manifest.json");
    if (!out)
        throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
    out << manifest.dump(2) << '\n';
}

SectorNets load_bundle(const std::filesystem::path &dir)
{
    std::ifstream in(dir / "manifest.json");
    if (!in)
        throw std::runtime_error("cannot read model manifest in " + dir.string());
    const nlohmann::json manifest = nlohmann::json::parse(in);
    SectorNets bundle;
    bundle.task = net_task_from_string(manifest.at("task").get<std::string>());
    bundle.beams_per_sector = manifest.at("n_sec").get<int>();
    bundle.metadata = manifest.value("training", nlohmann::json::object());
    for (const auto &[key, file] : manifest.at("sectors").items()) {
        const int s = std::stoi(key) - 1;
        if (s < 0 || s >= kSectorCount)
            throw std::runtime_error("manifest: bad sector id " + key);
        std::ifstream mf(dir / file.get<std::string>());
        if (!mf)
            throw std::runtime_error("cannot read model file " + file.get<std::string>());
        bundle.nets[static_cast<std::size_t>(s)] = nlohmann::json::parse(mf).get<Mlp>();
    }
    return bundle;
}

std::vector<double> dnn_aoa_per_realization(const SectorNets &nets, const SectorPlan &plan, const TapObservation &obs,
                                            const EstimatorOptions &opt)
{
    const Mlp &net = nets.at(obs.sector_id);
    const Sector &sec = plan.sector(obs.sector_id);
    if (obs.beamspace.empty())
        throw std::invalid_argument("dnn_aoa_estimate: no realizations");
    RMatrix x(net.n_inputs(), obs.n_realizations());
    for (int r = 0; r < obs.n_realizations(); ++r) {
        const CVector &b = obs.beamspace[static_cast<std::size_t>(r)];
        if (b.size() != net.n_inputs())
            throw ShapeError("dnn_aoa_estimate: beamspace length differs from network input");
        x.col(r) = opt.normalize_aoa_input ? aoa_dnn_input(b) : aoa_dnn_input_raw(b);
    }
    const RMatrix y = forward_batch(net, x);
    std::vector<double> est(static_cast<std::size_t>(obs.n_realizations()));
    for (int r = 0; r < obs.n_realizations(); ++r)
        est[static_cast<std::size_t>(r)] = sec.low_deg + sec.width_deg() * y(0, r);
    return est;
}

double dnn_aoa_estimate(const SectorNets &nets, const SectorPlan &plan, const TapObservation &obs, FlopLedger *ledger,
                        const EstimatorOptions &opt)
{
    const Sector &sec = plan.sector(obs.sector_id);
    const double theta = median(dnn_aoa_per_realization(nets, plan, obs, opt));
    if (ledger)
        ledger->add("dnn", dnn_flops(obs.n_realizations(), nets.at(obs.sector_id).macs_per_forward()));
    return std::clamp(theta, sec.low_deg, sec.high_deg);
}

// ---- AS ------------------------------------------------------------------

namespace {

Eigen::Index argmax_power(const CVector &b)
{
    Eigen::Index best = 0;
    double best_p = -1.0;
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        const double p = std::norm(b(i));
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    return best;
}

} // namespace

int as_window_start(const CVector &b, int n_sec2)
{
    const int n = static_cast<int>(b.size());
    if (n_sec2 < 1 || n_sec2 > n)
        throw std::invalid_argument("select_as_beams: window larger than the beam set");
    const int peak = static_cast<int>(argmax_power(b));
    return std::clamp(peak - n_sec2 / 2, 0, n - n_sec2);
}

CVector select_as_beams(const CVector &b, int n_sec2)
{
    return b.segment(as_window_start(b, n_sec2), n_sec2);
}

RVector as_dnn_input(const TapObservation &obs, int n_sec2)
{
    const int tr = obs.n_realizations();
    if (tr < 2)
        throw std::invalid_argument("as_dnn_input: need at least two realizations");
    // realization holding the strongest beam fixes the window
    int strongest = 0;
    double peak = -1.0;
    for (int r = 0; r < tr; ++r) {
        const double p = obs.beamspace[static_cast<std::size_t>(r)].cwiseAbs2().maxCoeff();
        if (p > peak) {
            peak = p;
            strongest = r;
        }
    }
    const int start = as_window_start(obs.beamspace[static_cast<std::size_t>(strongest)], n_sec2);

    RMatrix p(n_sec2, tr);
    for (int r = 0; r < tr; ++r)
        p.col(r) = aoa_dnn_input(obs.beamspace[static_cast<std::size_t>(r)].segment(start, n_sec2));
    const RVector mean = p.rowwise().mean();
    const RVector var = (p.colwise() - mean).rowwise().squaredNorm() / static_cast<double>(tr - 1);
    RVector out(2 * n_sec2);
    out << mean, var.cwiseSqrt();
    return out;
}

double dnn_as_estimate(const SectorNets &nets, const SectorPlan &plan, const ScenarioConfig &cfg,
                       const TapObservation &obs, FlopLedger *ledger)
{
    const Mlp &net = nets.at(obs.sector_id);
    const RVector x = as_dnn_input(obs, plan.as_beam_count);
    const double y = forward(net, x).output(0);
    if (ledger)
        ledger->add("as_dnn", dnn_flops(obs.n_realizations(), net.macs_per_forward()));
    return std::clamp(cfg.sigma_min + (cfg.sigma_max - cfg.sigma_min) * y, cfg.sigma_min, cfg.sigma_max);
}

// ---- power and CCM -------------------------------------------------------

double power_estimate(const TapObservation &obs, int pilot_len, int n_antennas)
{
    if (obs.beamspace.empty())
        throw std::invalid_argument("power_estimate: no realizations");
    double acc = 0.0;
    for (const CVector &b : obs.beamspace)
        acc += b.cwiseAbs2().maxCoeff();
    return acc / (static_cast<double>(obs.n_realizations()) * pilot_len * n_antennas);
}

CcmEstimate estimate_ccm(double theta_hat, double sigma_hat, double rho_hat, int n_antennas)
{
    if (!std::isfinite(theta_hat) || !std::isfinite(sigma_hat) || !std::isfinite(rho_hat))
        throw std::invalid_argument("estimate_ccm: non-finite estimate");
    CcmEstimate e{theta_hat, sigma_hat, rho_hat, {}};
    if (rho_hat > 0.0)
        e.ccm = ccm_from_params(theta_hat, sigma_hat, rho_hat, n_antennas);
    else
        e.ccm = Ccm(CMatrix::Zero(n_antennas, n_antennas), CMatrix(n_antennas, 0),
                    CcmParams{theta_hat, sigma_hat, 0.0});
    return e;
}

// ---- baselines -----------------------------------------------------------

namespace {

CMatrix stack(std::span<const CVector> snapshots)
{
    if (snapshots.empty())
        throw DegenerateInput("no snapshots");
    CMatrix x(snapshots.front().size(), static_cast<Eigen::Index>(snapshots.size()));
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        if (snapshots[i].size() != x.rows())
            throw std::invalid_argument("snapshots differ in length");
        x.col(static_cast<Eigen::Index>(i)) = snapshots[i];
    }
    return x;
}

std::vector<CVector> reconstruct_all(const TapObservation &obs, const BeamMatrix &beams, double *macs)
{
    std::vector<CVector> out;
    out.reserve(obs.beamspace.size());
    for (const CVector &d : obs.beamspace) {
        out.push_back(reconstruct(d, beams));
        *macs += static_cast<double>(beams.n_antennas()) * static_cast<double>(beams.n_beams());
    }
    return out;
}

// MUSIC core; adds the multiply-accumulates of each stage to *macs.
std::vector<double> music_impl(std::span<const CVector> snapshots, const AngleGrid &grid, int n_sources, double *macs)
{
    if (grid.size() == 0)
        throw std::invalid_argument("music: empty grid");
    const CMatrix x = stack(snapshots);
    const Eigen::Index n = x.rows();
    if (n_sources < 1 || n_sources >= n)
        throw std::invalid_argument("music: source count must lie in [1, N)");
    if (grid.steering.rows() != n)
        throw std::invalid_argument("music: grid built for a different array size");
    if (x.squaredNorm() == 0.0)
        throw DegenerateInput("music: all-zero snapshots");

    const double nn = static_cast<double>(n);
    const CMatrix r = (x * x.adjoint()) / static_cast<double>(x.cols());
    *macs += nn * nn * static_cast<double>(x.cols());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
    *macs += nn * nn * nn;
    if (es.info() != Eigen::Success)
        throw DegenerateInput("music: eigendecomposition failed");
    // ||V^H u||^2 over the N - M noise eigenvectors equals ||u||^2 minus the
    // energy captured by the M signal eigenvectors.
    const CMatrix signal = es.eigenvectors().rightCols(n_sources);
    const RVector residual = kernels::subspace_residual(grid.steering, signal);
    *macs += static_cast<double>(grid.size()) * nn;

    std::vector<int> order(static_cast<std::size_t>(grid.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return residual(a) < residual(b); });
    std::vector<double> out;
    for (int i = 0; i < n_sources; ++i)
        out.push_back(grid.angles_deg[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    return out;
}

double maxbeam_impl(std::span<const CVector> snapshots, const AngleGrid &grid, double *macs)
{
    if (grid.size() == 0)
        throw std::invalid_argument("maxbeam: empty grid");
    const CMatrix x = stack(snapshots);
    const RMatrix p = kernels::grid_power(grid.steering, x);
    *macs += static_cast<double>(grid.size()) * static_cast<double>(x.rows()) * static_cast<double>(x.cols());
    std::vector<double> per_snapshot;
    per_snapshot.reserve(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index s = 0; s < x.cols(); ++s) {
        Eigen::Index best = 0;
        for (Eigen::Index g = 1; g < p.rows(); ++g)
            if (p(g, s) > p(best, s))
                best = g;
        per_snapshot.push_back(grid.angles_deg[static_cast<std::size_t>(best)]);
    }
    return median(std::move(per_snapshot));
}

} // namespace

std::vector<double> music(std::span<const CVector> snapshots, const AngleGrid &grid, int n_sources,
                          FlopLedger *ledger)
{
    double macs = 0.0;
    std::vector<double> out = music_impl(snapshots, grid, n_sources, &macs);
    if (ledger)
        ledger->add("music_dbf", macs);
    return out;
}

double music_hbf(const TapObservation &obs, const BeamMatrix &beams, const AngleGrid &sector_grid,
                 FlopLedger *ledger)
{
    double macs = 0.0;
    const std::vector<CVector> h = reconstruct_all(obs, beams, &macs);
    const double theta = music_impl(h, sector_grid, 1, &macs).front();
    if (ledger)
        ledger->add("music_hbf", macs);
    return theta;
}

double maxbeam(std::span<const CVector> snapshots, const AngleGrid &grid, FlopLedger *ledger)
{
    double macs = 0.0;
    const double theta = maxbeam_impl(snapshots, grid, &macs);
    if (ledger)
        ledger->add("maxbeam_dbf", macs);
    return theta;
}

double maxbeam_hbf(const TapObservation &obs, const BeamMatrix &beams, const AngleGrid &sector_grid,
                   FlopLedger *ledger)
{
    double macs = 0.0;
    const std::vector<CVector> h = reconstruct_all(obs, beams, &macs);
    const double theta = maxbeam_impl(h, sector_grid, &macs);
    if (ledger)
        ledger->add("maxbeam_hbf", macs);
    return theta;
}

// ---- simulation front end -------------------------------------------------

std::array<BeamMatrix, kSectorCount> sector_beams(const SectorPlan &plan)
{
    std::array<BeamMatrix, kSectorCount> out;
    for (int s = 0; s < kSectorCount; ++s)
        out[static_cast<std::size_t>(s)] = beam_matrix(plan.sector(s), plan.n_antennas);
    return out;
}

DropObservation observe_drop(const ScenarioConfig &cfg, const SectorPlan &plan, const std::array<BeamMatrix, kSectorCount> &beams,
                             const PilotBook &pilots, Rng &rng, const ObserveOptions &opt)
{
    if (pilots.n_users() != cfg.n_users || pilots.length() != cfg.pilot_len)
        throw std::invalid_argument("observe_drop: pilot book does not match the configuration");
    if (plan.n_antennas != cfg.n_antennas)
        throw std::invalid_argument("observe_drop: sector plan built for a different array");

    DropObservation drop;
    drop.scenario = sample_scenario(cfg, rng);
    const auto &taps = drop.scenario.taps;
    const std::size_t n_taps = taps.size();
    drop.ccms.reserve(n_taps);
    for (const UserTap &t : taps)
        drop.ccms.push_back(ccm_from_params(t.aoa_deg, t.spread_deg, t.snr_linear, cfg.n_antennas));

    drop.taps.resize(n_taps);
    for (std::size_t i = 0; i < n_taps; ++i) {
        drop.taps[i].sector_id = taps[i].sector_id;
        drop.taps[i].truth = CcmParams{taps[i].aoa_deg, taps[i].spread_deg, taps[i].snr_linear};
    }

    const double inv_sqrt_t = 1.0 / std::sqrt(static_cast<double>(cfg.pilot_len));
    std::vector<CVector> channels(n_taps);
    for (int r = 0; r < cfg.n_realizations; ++r) {
        for (std::size_t i = 0; i < n_taps; ++i)
            channels[i] = sample_channel(drop.ccms[i], rng);
        const RxBlock block = synthesize_rx(drop.scenario, channels, pilots, cfg.noise_var, rng, r);
        const CMatrix mf = matched_filter_bank(block.y, drop.scenario, pilots);
        for (std::size_t i = 0; i < n_taps; ++i) {
            const CVector y = mf.col(static_cast<Eigen::Index>(i));
            TapObservation &obs = drop.taps[i];
            obs.beamspace.push_back(project(y, beams[static_cast<std::size_t>(obs.sector_id)]));
            if (opt.keep_full)
                obs.full.push_back(y * inv_sqrt_t);
        }
    }
    return drop;
}

} // namespace ccmlab

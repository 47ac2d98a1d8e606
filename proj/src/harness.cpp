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


#include "ccmlab/harness.hpp"

#include "ccmlab/kernels.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ccmlab {

const char *to_string(SweepAxis axis)
{
    return axis == SweepAxis::MeanSnrDb ? "mean_snr_db" : "pilot_len";
}

SweepAxis sweep_axis_from_string(const std::string &s)
{
    if (s == "mean_snr_db")
        return SweepAxis::MeanSnrDb;
    if (s == "pilot_len")
        return SweepAxis::PilotLen;
    throw std::invalid_argument("unknown sweep axis '" + s + "' (mean_snr_db or pilot_len)");
}

void validate_spec(const ExperimentSpec &spec)
{
    validate_config(spec.base);
    if (spec.axis_values.empty())
        throw ConfigError("axis_values must not be empty");
    if (spec.methods.empty())
        throw ConfigError("methods must not be empty");
    for (const std::string &m : spec.methods)
        if (m != "as_dnn" && std::find(kAoaMethods.begin(), kAoaMethods.end(), m) == kAoaMethods.end())
            throw ConfigError("unknown method '" + m + "'");
    for (const std::string &b : spec.beamformers)
        beamformer_from_string(b);
    if (spec.n_trials < 1)
        throw ConfigError("n_trials must be >= 1");
    if (!(spec.grid_step_deg > 0.0))
        throw ConfigError("grid_step_deg must be positive");
    for (std::size_t i = 0; i < spec.axis_values.size(); ++i)
        validate_config(config_at(spec, static_cast<int>(i)));
}

void to_json(nlohmann::json &j, const ExperimentSpec &spec)
{
    j = nlohmann::json{{"base", spec.base},
                       {"axis", to_string(spec.axis)},
                       {"axis_values", spec.axis_values},
                       {"methods", spec.methods},
                       {"beamformers", spec.beamformers},
                       {"n_trials", spec.n_trials},
                       {"output", spec.output},
                       {"grid_step_deg", spec.grid_step_deg},
                       {"dbf_grid", spec.dbf_sector_grid ? "sector" : "full"},
                       {"threads", spec.threads}};
}

void from_json(const nlohmann::json &j, ExperimentSpec &spec)
{
    if (j.contains("base"))
        spec.base = j.at("base").get<ScenarioConfig>();
    if (j.contains("axis"))
        spec.axis = sweep_axis_from_string(j.at("axis").get<std::string>());
    if (j.contains("axis_values"))
        spec.axis_values = j.at("axis_values").get<std::vector<double>>();
    if (j.contains("methods"))
        spec.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("beamformers"))
        spec.beamformers = j.at("beamformers").get<std::vector<std::string>>();
    if (j.contains("n_trials"))
        spec.n_trials = j.at("n_trials").get<int>();
    if (j.contains("output"))
        spec.output = j.at("output").get<std::string>();
    if (j.contains("grid_step_deg"))
        spec.grid_step_deg = j.at("grid_step_deg").get<double>();
    if (j.contains("dbf_grid")) {
        const std::string g = j.at("dbf_grid").get<std::string>();
        if (g != "sector" && g != "full")
            throw ConfigError("dbf_grid must be 'sector' or 'full'");
        spec.dbf_sector_grid = g == "sector";
    }
    if (j.contains("threads"))
        spec.threads = j.at("threads").get<int>();
}

ScenarioConfig config_at(const ExperimentSpec &spec, int axis_index)
{
    if (axis_index < 0 || axis_index >= static_cast<int>(spec.axis_values.size()))
        throw std::out_of_range("config_at: axis index out of range");
    ScenarioConfig cfg = spec.base;
    const double v = spec.axis_values[static_cast<std::size_t>(axis_index)];
    if (spec.axis == SweepAxis::MeanSnrDb) {
        cfg.rho_mean_db = v;
    } else {
        if (v != std::round(v) || v < 1.0)
            throw ConfigError("pilot_len axis values must be positive integers");
        cfg.pilot_len = static_cast<int>(v);
    }
    return cfg;
}

std::uint64_t trial_seed(const ExperimentSpec &spec, int axis_index, int trial)
{
    return derive_seed(spec.base.seed, static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(axis_index));
}

// ---- table ---------------------------------------------------------------

void MetricsTable::append(MetricRow row)
{
    if (!std::isfinite(row.value) || !std::isfinite(row.axis_value))
        throw std::invalid_argument("MetricsTable: non-finite value for " + row.method + "/" + row.metric);
    rows_.push_back(std::move(row));
}

void MetricsTable::append(const MetricsTable &other)
{
    for (const MetricRow &r : other.rows())
        append(r);
}

std::vector<MetricRow> MetricsTable::select(const std::string &method, const std::string &metric) const
{
    std::vector<MetricRow> out;
    for (const MetricRow &r : rows_)
        if (r.method == method && r.metric == metric)
            out.push_back(r);
    return out;
}

// ---- metrics -------------------------------------------------------------

double mse(std::span<const double> errors)
{
    if (errors.empty())
        throw std::invalid_argument("mse: empty error list");
    double s = 0.0;
    for (double e : errors)
        s += e * e;
    return s / static_cast<double>(errors.size());
}

double mse_standard_error(std::span<const double> errors)
{
    if (errors.size() < 2)
        throw std::invalid_argument("mse_standard_error: need at least two errors");
    const double m = mse(errors);
    double v = 0.0;
    for (double e : errors)
        v += (e * e - m) * (e * e - m);
    v /= static_cast<double>(errors.size() - 1);
    return std::sqrt(v / static_cast<double>(errors.size()));
}

double p_out(std::span<const double> errors, double half_bw)
{
    if (errors.empty())
        throw std::invalid_argument("p_out: empty error list");
    if (!(half_bw > 0.0))
        throw std::invalid_argument("p_out: half beamwidth must be positive");
    const auto n = std::count_if(errors.begin(), errors.end(), [&](double e) { return std::abs(e) > half_bw; });
    return static_cast<double>(n) / static_cast<double>(errors.size());
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("empirical_cdf: empty input");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    std::vector<std::pair<double, double>> out(v.size());
    // ties share the fraction of the last equal sample
    for (std::size_t i = v.size(); i-- > 0;) {
        const bool tie = i + 1 < v.size() && v[i + 1] == v[i];
        out[i] = {v[i], tie ? out[i + 1].second : static_cast<double>(i + 1) / n};
    }
    return out;
}

double cdf_quantile(std::span<const double> values, double q)
{
    if (values.empty())
        throw std::invalid_argument("cdf_quantile: empty input");
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("cdf_quantile: q must lie in (0, 1]");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
    return v[std::min(k, v.size() - 1)];
}

Histogram histogram(std::span<const double> values, int bins, double lo, double hi)
{
    if (values.empty())
        throw std::invalid_argument("histogram: empty input");
    if (bins < 1 || !(hi > lo))
        throw std::invalid_argument("histogram: need bins >= 1 and hi > lo");
    Histogram h;
    const double width = (hi - lo) / bins;
    for (int i = 0; i <= bins; ++i)
        h.edges.push_back(lo + width * i);
    h.mass.assign(static_cast<std::size_t>(bins), 0.0);
    for (double v : values) {
        const int b = std::clamp(static_cast<int>(std::floor((v - lo) / width)), 0, bins - 1);
        h.mass[static_cast<std::size_t>(b)] += 1.0;
    }
    for (double &m : h.mass)
        m /= static_cast<double>(values.size());
    return h;
}

// ---- experiments ---------------------------------------------------------

namespace {

bool has(const std::vector<std::string> &v, const std::string &s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

PilotBook experiment_pilots(const ScenarioConfig &cfg)
{
    Rng rng(derive_seed(cfg.seed, 0x9170, static_cast<std::uint64_t>(cfg.pilot_len)));
    return generate_pilots(cfg.n_users, cfg.pilot_len, rng);
}

void check_nets(const SectorNets &nets, NetTask task, const ScenarioConfig &cfg)
{
    if (nets.task != task)
        throw std::invalid_argument(std::string("model bundle holds ") + to_string(nets.task) + " nets, expected " +
                                    to_string(task));
    if (nets.beams_per_sector != cfg.beams_per_sector)
        throw std::invalid_argument("model bundle trained for N_sec = " + std::to_string(nets.beams_per_sector) +
                                    ", experiment uses " + std::to_string(cfg.beams_per_sector));
}

struct TrialOut
{
    std::map<std::string, std::vector<double>> errors;
    FlopLedger ledger;
    std::exception_ptr failure;
};

// Runs body(trial, out) for every trial, in parallel, and rethrows the
// first failure in trial order.
template <class Body>
std::vector<TrialOut> fan_out(int n_trials, Body body)
{
    std::vector<TrialOut> outs(static_cast<std::size_t>(n_trials));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < n_trials; ++t) {
        TrialOut &out = outs[static_cast<std::size_t>(t)];
        try {
            body(t, out);
        } catch (...) {
            out.failure = std::current_exception();
        }
    }
    for (const TrialOut &o : outs)
        if (o.failure)
            std::rethrow_exception(o.failure);
    return outs;
}

void apply_threads(const ExperimentSpec &spec)
{
    if (spec.threads > 0)
        kernels::set_threads(spec.threads);
}

} // namespace

SweepResult run_aoa_sweep(const ExperimentSpec &spec, const SectorNets *aoa_nets)
{
    validate_spec(spec);
    for (const std::string &m : spec.methods)
        if (!has(kAoaMethods, m))
            throw std::invalid_argument("run_aoa_sweep: '" + m + "' is not an AoA method");
    if (has(spec.methods, "dnn")) {
        if (!aoa_nets)
            throw std::invalid_argument("run_aoa_sweep: method dnn needs trained AoA models");
        check_nets(*aoa_nets, NetTask::AoA, spec.base);
    }
    apply_threads(spec);

    const bool keep_full = has(spec.methods, "music_dbf") || has(spec.methods, "maxbeam_dbf");
    const GridSet grids = make_grids(spec.base.n_antennas, spec.grid_step_deg);
    const SectorPlan plan = sector_plan(spec.base.beams_per_sector, spec.base.n_antennas);
    const auto beams = sector_beams(plan);

    SweepResult res;
    for (const std::string &m : spec.methods)
        res.errors[m].resize(spec.axis_values.size());

    for (int a = 0; a < static_cast<int>(spec.axis_values.size()); ++a) {
        const ScenarioConfig cfg = config_at(spec, a);
        const PilotBook pilots = experiment_pilots(cfg);
        auto outs = fan_out(spec.n_trials, [&](int t, TrialOut &out) {
            Rng rng(trial_seed(spec, a, t));
            const DropObservation drop = observe_drop(cfg, plan, beams, pilots, rng, {.keep_full = keep_full});
            for (const TapObservation &obs : drop.taps) {
                const double theta = obs.truth->theta_deg;
                const auto s = static_cast<std::size_t>(obs.sector_id);
                const AngleGrid &dbf_grid = spec.dbf_sector_grid ? grids.sector[s] : grids.full;
                for (const std::string &m : spec.methods) {
                    double est = 0.0;
                    if (m == "dnn")
                        est = dnn_aoa_estimate(*aoa_nets, plan, obs, &out.ledger);
                    else if (m == "music_dbf")
                        est = music(obs.full, dbf_grid, 1, &out.ledger).front();
                    else if (m == "music_hbf")
                        est = music_hbf(obs, beams[s], grids.sector[s], &out.ledger);
                    else if (m == "maxbeam_dbf")
                        est = maxbeam(obs.full, dbf_grid, &out.ledger);
                    else
                        est = maxbeam_hbf(obs, beams[s], grids.sector[s], &out.ledger);
                    out.errors[m].push_back(est - theta);
                }
            }
        });
        for (const TrialOut &o : outs) {
            res.ledger.merge(o.ledger);
            for (const auto &[m, e] : o.errors)
                res.errors[m][static_cast<std::size_t>(a)].insert(res.errors[m][static_cast<std::size_t>(a)].end(),
                                                                  e.begin(), e.end());
        }
        for (const std::string &m : spec.methods) {
            const auto &e = res.errors[m][static_cast<std::size_t>(a)];
            if (e.empty())
                throw std::runtime_error("run_aoa_sweep: no taps observed");
            const long n = static_cast<long>(e.size());
            const double v = spec.axis_values[static_cast<std::size_t>(a)];
            res.table.append({m, to_string(spec.axis), v, "mse", mse(e), n, spec.base.seed});
            res.table.append({m, to_string(spec.axis), v, "p_out", p_out(e), n, spec.base.seed});
        }
    }
    return res;
}

SweepResult run_as_sweep(const ExperimentSpec &spec, const SectorNets &as_nets)
{
    validate_spec(spec);
    check_nets(as_nets, NetTask::AS, spec.base);
    apply_threads(spec);
    const SectorPlan plan = sector_plan(spec.base.beams_per_sector, spec.base.n_antennas);
    const auto beams = sector_beams(plan);
    const std::string method = "as_dnn";

    SweepResult res;
    res.errors[method].resize(spec.axis_values.size());
    for (int a = 0; a < static_cast<int>(spec.axis_values.size()); ++a) {
        const ScenarioConfig cfg = config_at(spec, a);
        const PilotBook pilots = experiment_pilots(cfg);
        auto outs = fan_out(spec.n_trials, [&](int t, TrialOut &out) {
            Rng rng(trial_seed(spec, a, t));
            const DropObservation drop = observe_drop(cfg, plan, beams, pilots, rng, {.keep_full = false});
            for (const TapObservation &obs : drop.taps)
                out.errors[method].push_back(dnn_as_estimate(as_nets, plan, cfg, obs, &out.ledger) -
                                             obs.truth->sigma_deg);
        });
        auto &e = res.errors[method][static_cast<std::size_t>(a)];
        for (const TrialOut &o : outs) {
            res.ledger.merge(o.ledger);
            const auto it = o.errors.find(method);
            if (it != o.errors.end())
                e.insert(e.end(), it->second.begin(), it->second.end());
        }
        if (e.empty())
            throw std::runtime_error("run_as_sweep: no taps observed");
        res.table.append({method, to_string(spec.axis), spec.axis_values[static_cast<std::size_t>(a)], "mse", mse(e),
                          static_cast<long>(e.size()), spec.base.seed});
    }
    return res;
}

std::map<std::string, Histogram> run_error_hist(const ExperimentSpec &spec, int bins, const SectorNets *aoa_nets)
{
    const SweepResult sweep = run_aoa_sweep(spec, aoa_nets);
    std::map<std::string, Histogram> out;
    for (const auto &[m, per_axis] : sweep.errors) {
        std::vector<double> pooled;
        for (const auto &e : per_axis)
            pooled.insert(pooled.end(), e.begin(), e.end());
        out[m] = histogram(pooled, bins);
    }
    return out;
}

namespace {

int strongest(const std::vector<int> &taps, const std::vector<double> &power)
{
    int best = taps.front();
    for (int t : taps)
        if (power[static_cast<std::size_t>(t)] > power[static_cast<std::size_t>(best)])
            best = t;
    return best;
}

double to_db(double x)
{
    return 10.0 * std::log10(std::max(x, 1e-30));
}

} // namespace

SinrResult run_sinr_cdf(const ExperimentSpec &spec, const SectorNets &aoa_nets, const SectorNets &as_nets)
{
    validate_spec(spec);
    check_nets(aoa_nets, NetTask::AoA, spec.base);
    check_nets(as_nets, NetTask::AS, spec.base);
    if (spec.beamformers.empty())
        throw std::invalid_argument("run_sinr_cdf: no beamformers requested");
    apply_threads(spec);

    const ScenarioConfig cfg = config_at(spec, 0);
    const SectorPlan plan = sector_plan(cfg.beams_per_sector, cfg.n_antennas);
    const auto beams = sector_beams(plan);
    const PilotBook pilots = experiment_pilots(cfg);
    const int n = cfg.n_antennas;

    std::vector<std::string> keys;
    for (const std::string &b : spec.beamformers)
        for (const char *mode : {"perfect", "estimated"})
            keys.push_back(b + "_" + mode);

    auto outs = fan_out(spec.n_trials, [&](int t, TrialOut &out) {
        Rng rng(trial_seed(spec, 0, t));
        const DropObservation drop = observe_drop(cfg, plan, beams, pilots, rng, {.keep_full = false});
        const std::size_t n_taps = drop.taps.size();

        std::vector<double> rho(n_taps), rho_hat(n_taps), theta_hat(n_taps);
        std::vector<Ccm> est(n_taps);
        for (std::size_t i = 0; i < n_taps; ++i) {
            const TapObservation &obs = drop.taps[i];
            rho[i] = obs.truth->rho;
            theta_hat[i] = dnn_aoa_estimate(aoa_nets, plan, obs, &out.ledger);
            const double sigma_hat = dnn_as_estimate(as_nets, plan, cfg, obs, &out.ledger);
            rho_hat[i] = power_estimate(obs, cfg.pilot_len, n);
            est[i] = estimate_ccm(theta_hat[i], sigma_hat, rho_hat[i], n).ccm;
        }
        const CMatrix sum_true = sum_ccms(drop.ccms);
        const CMatrix sum_est = sum_ccms(est);

        for (int k = 0; k < cfg.n_users; ++k) {
            const std::vector<int> taps = drop.scenario.taps_of_user(k);
            const int served = strongest(taps, rho);
            const int served_hat = strongest(taps, rho_hat);
            const auto s = static_cast<std::size_t>(served);
            const auto s_hat = static_cast<std::size_t>(served_hat);

            const InterferenceModel truth = interference_ccm(sum_true, drop.ccms, served, cfg.noise_var);
            const CVector h = sample_channel(drop.ccms[s], rng);
            const InterferenceModel truth_hat =
                served_hat == served ? truth : interference_ccm(sum_true, drop.ccms, served_hat, cfg.noise_var);
            const CVector h_hat = served_hat == served ? h : sample_channel(drop.ccms[s_hat], rng);
            const InterferenceModel model_hat = interference_ccm(sum_est, est, served_hat, cfg.noise_var);

            for (const std::string &b : spec.beamformers) {
                const BeamformerKind kind = beamformer_from_string(b);
                Beamformer perfect, estimated;
                switch (kind) {
                case BeamformerKind::Capon:
                    perfect = capon(h, truth);
                    estimated = capon(h_hat, model_hat);
                    break;
                case BeamformerKind::Geb:
                    perfect = geb(drop.ccms[s], truth);
                    estimated = geb(est[s_hat], model_hat);
                    break;
                case BeamformerKind::Steer:
                    perfect = steer_bf(drop.taps[s].truth->theta_deg, n);
                    estimated = steer_bf(theta_hat[s_hat], n);
                    break;
                }
                out.errors[b + "_perfect"].push_back(to_db(sinr(perfect.weights, h, truth)));
                out.errors[b + "_estimated"].push_back(to_db(sinr(estimated.weights, h_hat, truth_hat)));
            }
        }
    });

    SinrResult res;
    for (const TrialOut &o : outs)
        for (const auto &[key, v] : o.errors)
            res.samples_db[key].insert(res.samples_db[key].end(), v.begin(), v.end());
    const std::string axis = to_string(spec.axis);
    const double av = spec.axis_values.front();
    for (const std::string &key : keys) {
        const auto &v = res.samples_db.at(key);
        res.table.append({key, axis, av, "sinr_median_db", median(v), static_cast<long>(v.size()), spec.base.seed});
        for (double x : v)
            res.table.append({key, axis, av, "sinr_db", x, 1, spec.base.seed});
    }
    return res;
}

// ---- training ------------------------------------------------------------

SectorNets train_sector_nets(NetTask task, int beams_per_sector, const std::array<LabeledSet, kSectorCount> &data,
                             const TrainConfig &train_cfg, std::uint64_t seed)
{
    const auto arch = architectures(beams_per_sector, task);
    SectorNets bundle;
    bundle.task = task;
    bundle.beams_per_sector = beams_per_sector;
    nlohmann::json sectors = nlohmann::json::object();
    for (int s = 0; s < kSectorCount; ++s) {
        const LabeledSet &set = data[static_cast<std::size_t>(s)];
        if (set.size() == 0)
            continue;
        Mlp net = mlp_new(arch[static_cast<std::size_t>(s)], derive_seed(seed, static_cast<std::uint64_t>(s), 1));
        TrainConfig c = train_cfg;
        c.seed = derive_seed(train_cfg.seed, static_cast<std::uint64_t>(s), 2);
        TrainResult r = train(std::move(net), set, c);
        sectors[std::to_string(s + 1)] = {{"samples", set.size()},
                                          {"best_epoch", r.best_epoch},
                                          {"validation_loss", r.best_validation_loss},
                                          {"epochs", r.train_loss.size()}};
        bundle.nets[static_cast<std::size_t>(s)] = std::move(r.net);
    }
    bundle.metadata = {{"sectors", sectors},
                       {"train", {{"learning_rate", train_cfg.learning_rate},
                                  {"momentum", train_cfg.momentum},
                                  {"batch_size", train_cfg.batch_size},
                                  {"max_epochs", train_cfg.max_epochs},
                                  {"patience", train_cfg.patience}}},
                       {"seed", seed}};
    return bundle;
}

TrainedModels train_models(const ScenarioConfig &cfg, const TrainingPlan &plan)
{
    validate_config(cfg);
    Rng rng(derive_seed(plan.seed, 0xda7a));
    const SectorDatasets data = build_datasets(cfg, plan.aoa_per_sector, plan.as_per_sector, rng);
    TrainedModels m;
    m.aoa = train_sector_nets(NetTask::AoA, cfg.beams_per_sector, data.aoa, plan.aoa_train, plan.seed);
    m.as = train_sector_nets(NetTask::AS, cfg.beams_per_sector, data.as, plan.as_train, plan.seed ^ 0xa5);
    m.aoa.metadata["config"] = cfg;
    m.as.metadata["config"] = cfg;
    return m;
}

// ---- serialization -------------------------------------------------------

const char *version()
{
    return CCMLAB_VERSION;
}

std::filesystem::path manifest_path(const std::filesystem::path &csv_path)
{
    std::filesystem::path p = csv_path;
    p.replace_extension(".manifest.json");
    return p;
}

void write_results(const MetricsTable &table, const std::filesystem::path &csv_path)
{
    std::ofstream out(csv_path);
    if (!out)
        throw std::runtime_error("cannot write " + csv_path.string());
    out << "method,axis,axis_value,metric,value,n,seed\n" << std::setprecision(17);
    for (const MetricRow &r : table.rows())
        out << r.method << ',' << r.axis << ',' << r.axis_value << ',' << r.metric << ',' << r.value << ',' << r.n
            << ',' << r.seed << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + csv_path.string());
}

void write_results(const MetricsTable &table, const ExperimentSpec &spec, const std::filesystem::path &csv_path)
{
    write_results(table, csv_path);
    const nlohmann::json manifest = {{"spec", spec},
                                     {"seed", spec.base.seed},
                                     {"version", version()},
                                     {"csv", csv_path.filename().string()},
                                     {"rows", table.size()}};
    std::ofstream out(manifest_path(csv_path));
    if (!out)
        throw std::runtime_error("cannot write " + manifest_path(csv_path).string());
    out << manifest.dump(2) << '\n';
}

MetricsTable read_results(const std::filesystem::path &csv_path)
{
    std::ifstream in(csv_path);
    if (!in)
        throw std::runtime_error("cannot read " + csv_path.string());
    std::string line;
    if (!std::getline(in, line) || line != "method,axis,axis_value,metric,value,n,seed")
        throw std::runtime_error(csv_path.string() + ": missing results header");
    MetricsTable table;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 7)
            throw std::runtime_error(csv_path.string() + ":" + std::to_string(lineno) + ": expected 7 fields");
        try {
            table.append({f[0], f[1], std::stod(f[2]), f[3], std::stod(f[4]), std::stol(f[5]), std::stoull(f[6])});
        } catch (const std::logic_error &e) {
            throw std::runtime_error(csv_path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return table;
}

} // namespace ccmlab

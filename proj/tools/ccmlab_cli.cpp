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


// Command-line front end: scenario dumps, data sets, training, sweeps.

#include "ccmlab/harness.hpp"
#include "ccmlab/kernels.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace ccmlab;
using nlohmann::json;

namespace {

struct Common
{
    std::string config;
    std::string models = "models";
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> threads;
};

json read_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config " + path);
    return json::parse(in);
}

// An experiment file (with "base") or a bare scenario config.
ExperimentSpec load_spec(const Common &c)
{
    ExperimentSpec spec;
    if (!c.config.empty()) {
        const json j = read_json(c.config);
        if (j.contains("base") || j.contains("axis_values"))
            spec = j.get<ExperimentSpec>();
        else
            spec.base = j.get<ScenarioConfig>();
    }
    if (c.seed)
        spec.base.seed = *c.seed;
    if (c.trials)
        spec.n_trials = *c.trials;
    if (c.threads)
        spec.threads = *c.threads;
    if (!c.out.empty())
        spec.output = c.out;
    if (spec.threads > 0)
        kernels::set_threads(spec.threads);
    return spec;
}

fs::path out_dir(const Common &c, const char *fallback)
{
    fs::path dir = c.out.empty() ? fs::path(fallback) : fs::path(c.out);
    fs::create_directories(dir);
    return dir;
}

void add_common(CLI::App *app, Common &c, bool models)
{
    app->add_option("--config", c.config, "JSON scenario or experiment file");
    if (models)
        app->add_option("--models", c.models, "Model bundle directory");
    app->add_option("--out", c.out, "Output directory");
    app->add_option("--seed", c.seed, "Experiment seed");
    app->add_option("--trials", c.trials, "Drops per axis point")->check(CLI::PositiveNumber);
    app->add_option("--threads", c.threads, "OpenMP threads");
}

void cmd_scenario(const Common &c)
{
    const ExperimentSpec spec = load_spec(c);
    const json j = sample_scenario(spec.base);
    if (c.out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    const fs::path path = out_dir(c, ".") / "scenario.json";
    std::ofstream(path) << j.dump(2) << '\n';
    std::cout << "wrote " << path.string() << '\n';
}

void cmd_build_data(const Common &c, int aoa_n, int as_n)
{
    const ExperimentSpec spec = load_spec(c);
    const fs::path dir = out_dir(c, "data");
    Rng rng(derive_seed(spec.base.seed, 0xda7a));
    const SectorDatasets data = build_datasets(spec.base, aoa_n, as_n, rng);
    json manifest = {{"config", spec.base}, {"version", version()}, {"files", json::array()}};
    for (int s = 0; s < kSectorCount; ++s) {
        const auto i = static_cast<std::size_t>(s);
        for (auto [name, set] : {std::pair{"aoa", &data.aoa[i]}, std::pair{"as", &data.as[i]}}) {
            if (set->size() == 0)
                continue;
            const std::string file = std::string(name) + "_sector_" + std::to_string(s + 1) + ".csv";
            write_dataset_csv(*set, dir / file);
            manifest["files"].push_back({{"task", name}, {"sector", s + 1}, {"file", file}, {"rows", set->size()}});
        }
    }
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
    std::cout << "wrote data sets to " << dir.string() << '\n';
}

void cmd_train(const Common &c, TrainingPlan plan)
{
    const ExperimentSpec spec = load_spec(c);
    const fs::path dir = c.out.empty() ? fs::path(c.models) : fs::path(c.out);
    if (c.seed)
        plan.seed = *c.seed;
    const TrainedModels m = train_models(spec.base, plan);
    save_bundle(m.aoa, dir / "aoa");
    save_bundle(m.as, dir / "as");
    std::cout << "wrote models to " << dir.string() << '\n';
}

void emit(const MetricsTable &table, const ExperimentSpec &spec, const fs::path &path)
{
    write_results(table, spec, path);
    std::cout << "wrote " << path.string() << " (" << table.size() << " rows)\n";
}

void print_summary(const MetricsTable &table, const std::string &metric)
{
    for (const MetricRow &r : table.rows())
        if (r.metric == metric)
            std::printf("%-16s %s=%-8g %s=%.6g (n=%ld)\n", r.method.c_str(), r.axis.c_str(), r.axis_value,
                        r.metric.c_str(), r.value, r.n);
}

void cmd_eval_aoa(const Common &c)
{
    const ExperimentSpec spec = load_spec(c);
    std::optional<SectorNets> nets;
    if (std::find(spec.methods.begin(), spec.methods.end(), "dnn") != spec.methods.end())
        nets = load_bundle(fs::path(c.models) / "aoa");
    const SweepResult r = run_aoa_sweep(spec, nets ? &*nets : nullptr);
    print_summary(r.table, "mse");
    emit(r.table, spec, out_dir(c, "results") / "aoa.csv");
}

void cmd_eval_as(const Common &c)
{
    const ExperimentSpec spec = load_spec(c);
    const SectorNets nets = load_bundle(fs::path(c.models) / "as");
    const SweepResult r = run_as_sweep(spec, nets);
    print_summary(r.table, "mse");
    emit(r.table, spec, out_dir(c, "results") / "as.csv");
}

void cmd_sinr_cdf(const Common &c)
{
    const ExperimentSpec spec = load_spec(c);
    const SectorNets aoa = load_bundle(fs::path(c.models) / "aoa");
    const SectorNets as = load_bundle(fs::path(c.models) / "as");
    const SinrResult r = run_sinr_cdf(spec, aoa, as);
    print_summary(r.table, "sinr_median_db");
    emit(r.table, spec, out_dir(c, "results") / "sinr.csv");
}

// Instrumented per-estimate counts next to the closed-form cost model.
void cmd_bench_flops(const Common &c)
{
    ExperimentSpec spec = load_spec(c);
    spec.axis_values.resize(1);
    std::optional<SectorNets> nets;
    if (fs::exists(fs::path(c.models) / "aoa" / "manifest.json"))
        nets = load_bundle(fs::path(c.models) / "aoa");
    spec.methods = {"music_dbf", "music_hbf", "maxbeam_dbf", "maxbeam_hbf"};
    if (nets)
        spec.methods.insert(spec.methods.begin(), "dnn");
    const SweepResult r = run_aoa_sweep(spec, nets ? &*nets : nullptr);

    const ScenarioConfig cfg = config_at(spec, 0);
    const GridSet grids = make_grids(cfg.n_antennas, spec.grid_step_deg);
    const int n = cfg.n_antennas, tr = cfg.n_realizations, ns = cfg.beams_per_sector;
    const int g_sec = grids.sector[0].size();
    const int g_full = spec.dbf_sector_grid ? g_sec : grids.full.size();
    std::map<std::string, double> model = {{"music_dbf", music_dbf_flops(n, tr, g_full)},
                                           {"music_hbf", music_hbf_flops(n, ns, tr, g_sec)},
                                           {"maxbeam_dbf", maxbeam_dbf_flops(n, tr, g_full)},
                                           {"maxbeam_hbf", maxbeam_hbf_flops(n, ns, tr, g_sec)}};
    MetricsTable table;
    const auto measured = flops(r.ledger);
    const std::string axis = to_string(spec.axis);
    const double av = spec.axis_values.front();
    for (const auto &[m, v] : measured) {
        const long calls = r.ledger.entries().at(m).calls;
        table.append({m, axis, av, "flops", v, calls, spec.base.seed});
        if (model.count(m))
            table.append({m, axis, av, "flops_model", model[m], 1, spec.base.seed});
        std::printf("%-12s %.4g flops/estimate\n", m.c_str(), v);
    }
    emit(table, spec, out_dir(c, "results") / "flops.csv");
}

void cmd_plot_data(const std::string &in, const std::string &out, const std::string &method,
                   const std::string &metric)
{
    const MetricsTable table = read_results(in);
    MetricsTable tidy;
    for (const MetricRow &r : table.rows())
        if ((method.empty() || r.method == method) && (metric.empty() || r.metric == metric))
            tidy.append(r);
    if (out.empty()) {
        std::cout << "method,axis,axis_value,metric,value,n,seed\n";
        for (const MetricRow &r : tidy.rows())
            std::cout << r.method << ',' << r.axis << ',' << r.axis_value << ',' << r.metric << ',' << r.value << ','
                      << r.n << ',' << r.seed << '\n';
        return;
    }
    write_results(tidy, out);
    std::cout << "wrote " << out << " (" << tidy.size() << " rows)\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ccmlab: parametric CCM estimation and beamforming experiments"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    Common c;
    auto *scenario = app.add_subcommand("scenario", "Dump a sampled scenario as JSON");
    add_common(scenario, c, false);

    int aoa_n = 100000, as_n = 20000;
    auto *build = app.add_subcommand("build-data", "Emit labeled AoA/AS data sets per sector");
    add_common(build, c, false);
    build->add_option("--aoa-samples", aoa_n, "AoA rows per sector")->check(CLI::NonNegativeNumber);
    build->add_option("--as-samples", as_n, "AS rows per sector")->check(CLI::NonNegativeNumber);

    TrainingPlan plan;
    auto *train_cmd = app.add_subcommand("train", "Fit per-sector nets and save the model bundle");
    add_common(train_cmd, c, true);
    train_cmd->add_option("--aoa-samples", plan.aoa_per_sector, "AoA rows per sector")->check(CLI::PositiveNumber);
    train_cmd->add_option("--as-samples", plan.as_per_sector, "AS rows per sector")->check(CLI::PositiveNumber);
    int epochs = 0;
    train_cmd->add_option("--epochs", epochs, "Max epochs for both tasks")->check(CLI::PositiveNumber);

    auto *eval_aoa = app.add_subcommand("eval-aoa", "AoA MSE and P_out sweep");
    add_common(eval_aoa, c, true);
    auto *eval_as = app.add_subcommand("eval-as", "Angular-spread MSE sweep");
    add_common(eval_as, c, true);
    auto *sinr_cmd = app.add_subcommand("sinr-cdf", "SINR samples for perfect and estimated CCMs");
    add_common(sinr_cmd, c, true);
    auto *bench = app.add_subcommand("bench-flops", "Instrumented flop counts per estimator");
    add_common(bench, c, true);

    std::string plot_in, plot_method, plot_metric;
    auto *plot = app.add_subcommand("plot-data", "Re-export a results CSV as tidy CSV");
    plot->add_option("input", plot_in, "Results CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", c.out, "Output CSV (stdout when omitted)");
    plot->add_option("--method", plot_method, "Keep one method");
    plot->add_option("--metric", plot_metric, "Keep one metric");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*scenario)
            cmd_scenario(c);
        else if (*build)
            cmd_build_data(c, aoa_n, as_n);
        else if (*train_cmd) {
            if (epochs > 0)
                plan.aoa_train.max_epochs = plan.as_train.max_epochs = epochs;
            cmd_train(c, plan);
        } else if (*eval_aoa)
            cmd_eval_aoa(c);
        else if (*eval_as)
            cmd_eval_as(c);
        else if (*sinr_cmd)
            cmd_sinr_cdf(c);
        else if (*bench)
            cmd_bench_flops(c);
        else if (*plot)
            cmd_plot_data(plot_in, c.out, plot_method, plot_metric);
    } catch (const std::exception &e) {
        std::cerr << "ccmlab: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

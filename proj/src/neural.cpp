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


#include "ccmlab/neural.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ccmlab {

long Mlp::macs_per_forward() const
{
    long total = 0;
    for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i)
        total += static_cast<long>(layer_sizes[i]) * layer_sizes[i + 1];
    return total;
}

Mlp mlp_new(std::vector<int> layer_sizes, Rng &rng)
{
    if (layer_sizes.size() < 2)
        throw ShapeError("mlp_new: need at least an input and an output layer");
    for (int s : layer_sizes)
        if (s < 1)
            throw ShapeError("mlp_new: layer sizes must be positive");
    Mlp net;
    net.layer_sizes = std::move(layer_sizes);
    for (std::size_t i = 0; i + 1 < net.layer_sizes.size(); ++i) {
        const int fan_in = net.layer_sizes[i];
        const int fan_out = net.layer_sizes[i + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> u(-limit, limit);
        RMatrix w(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c)
                w(r, c) = u(rng);
        net.weights.push_back(std::move(w));
        net.biases.push_back(RVector::Zero(fan_out));
    }
    return net;
}

Mlp mlp_new(std::vector<int> layer_sizes, std::uint64_t seed)
{
    Rng rng(seed);
    Mlp net = mlp_new(std::move(layer_sizes), rng);
    net.seed = seed;
    return net;
}

namespace {

void check_input(const Mlp &net, Eigen::Index rows)
{
    if (rows != net.n_inputs())
        throw ShapeError("forward: input length " + std::to_string(rows) + " differs from n_in " +
                         std::to_string(net.n_inputs()));
}

// Activations of every layer for a batch (columns are samples).
std::vector<RMatrix> forward_all(const Mlp &net, const RMatrix &x)
{
    check_input(net, x.rows());
    std::vector<RMatrix> a;
    a.reserve(net.weights.size() + 1);
    a.push_back(x);
    const int last = net.n_layers() - 1;
    for (int i = 0; i <= last; ++i) {
        RMatrix z = net.weights[i] * a.back();
        z.colwise() += net.biases[i];
        if (i < last)
            z = z.unaryExpr([](double v) { return sigmoid(v); });
        a.push_back(std::move(z));
    }
    return a;
}

} // namespace

ForwardPass forward(const Mlp &net, const RVector &x)
{
    std::vector<RMatrix> a = forward_all(net, x);
    ForwardPass fp;
    for (RMatrix &m : a)
        fp.activations.emplace_back(m.col(0));
    fp.output = fp.activations.back();
    return fp;
}

RMatrix forward_batch(const Mlp &net, const RMatrix &x)
{
    return forward_all(net, x).back();
}

double mse_loss(const Mlp &net, const RMatrix &inputs, const RMatrix &targets)
{
    if (inputs.rows() == 0)
        throw ShapeError("mse_loss: empty batch");
    const RMatrix out = forward_batch(net, inputs.transpose());
    return (out - targets.transpose()).squaredNorm() / static_cast<double>(inputs.rows());
}

Gradients backprop(const Mlp &net, const RMatrix &inputs, const RMatrix &targets)
{
    if (inputs.rows() == 0)
        throw ShapeError("backprop: empty batch");
    if (targets.rows() != inputs.rows() || targets.cols() != net.n_outputs())
        throw ShapeError("backprop: target shape mismatch");
    const std::vector<RMatrix> a = forward_all(net, inputs.transpose());
    const double inv_b = 1.0 / static_cast<double>(inputs.rows());
    const int n_layers = net.n_layers();

    Gradients g;
    g.weights.resize(static_cast<std::size_t>(n_layers));
    g.biases.resize(static_cast<std::size_t>(n_layers));

    // dL/dz for the identity output layer
    RMatrix delta = a.back() - targets.transpose();
    g.loss = delta.squaredNorm() * inv_b;
    delta *= 2.0 * inv_b;
    for (int i = n_layers - 1; i >= 0; --i) {
        g.weights[i] = delta * a[i].transpose();
        g.biases[i] = delta.rowwise().sum();
        if (i > 0) {
            const RMatrix &act = a[i]; // sigmoid output of layer i
            delta = (net.weights[i].transpose() * delta).cwiseProduct(act.cwiseProduct((1.0 - act.array()).matrix()));
        }
    }
    return g;
}

double grad_check(const Mlp &net, const RMatrix &inputs, const RMatrix &targets, const Gradients &claimed)
{
    constexpr double step = 1e-6;
    constexpr double floor = 1e-3;
    Mlp probe = net;
    double worst = 0.0;
    auto compare = [&](double &param, double analytic) {
        const double saved = param;
        param = saved + step;
        const double up = mse_loss(probe, inputs, targets);
        param = saved - step;
        const double down = mse_loss(probe, inputs, targets);
        param = saved;
        const double numeric = (up - down) / (2.0 * step);
        const double err = std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
        worst = std::max(worst, err);
    };
    for (int i = 0; i < probe.n_layers(); ++i) {
        RMatrix &w = probe.weights[i];
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c)
                compare(w(r, c), claimed.weights[i](r, c));
        RVector &b = probe.biases[i];
        for (Eigen::Index r = 0; r < b.size(); ++r)
            compare(b(r), claimed.biases[i](r));
    }
    return worst;
}

double grad_check(const Mlp &net, const RMatrix &inputs, const RMatrix &targets)
{
    return grad_check(net, inputs, targets, backprop(net, inputs, targets));
}

TrainResult train(Mlp net, const LabeledSet &data, const TrainConfig &cfg)
{
    if (!(cfg.learning_rate >= 0.0))
        throw std::invalid_argument("train: learning rate must be non-negative");
    if (!(cfg.momentum >= 0.0 && cfg.momentum < 1.0))
        throw std::invalid_argument("train: momentum must lie in [0, 1)");
    if (cfg.batch_size < 1 || data.size() < cfg.batch_size)
        throw std::invalid_argument("train: data set smaller than one batch");
    if (data.inputs.cols() != net.n_inputs() || data.targets.cols() != net.n_outputs() ||
        data.targets.rows() != data.inputs.rows())
        throw ShapeError("train: data shape does not match the network");

    Rng rng(cfg.seed);
    std::vector<int> order(static_cast<std::size_t>(data.size()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    int n_val = static_cast<int>(std::floor(cfg.validation_fraction * data.size()));
    n_val = std::clamp(n_val, 0, data.size() - cfg.batch_size);
    std::vector<int> val_idx(order.end() - n_val, order.end());
    std::vector<int> train_idx(order.begin(), order.end() - n_val);

    auto gather = [&](const std::vector<int> &idx, std::size_t first, std::size_t count, RMatrix &x, RMatrix &y) {
        x.resize(static_cast<Eigen::Index>(count), data.inputs.cols());
        y.resize(static_cast<Eigen::Index>(count), data.targets.cols());
        for (std::size_t i = 0; i < count; ++i) {
            x.row(static_cast<Eigen::Index>(i)) = data.inputs.row(idx[first + i]);
            y.row(static_cast<Eigen::Index>(i)) = data.targets.row(idx[first + i]);
        }
    };
    RMatrix val_x, val_y;
    gather(val_idx, 0, val_idx.size(), val_x, val_y);

    std::vector<RMatrix> vel_w;
    std::vector<RVector> vel_b;
    for (int i = 0; i < net.n_layers(); ++i) {
        vel_w.push_back(RMatrix::Zero(net.weights[i].rows(), net.weights[i].cols()));
        vel_b.push_back(RVector::Zero(net.biases[i].size()));
    }

    TrainResult result;
    result.net = net;
    result.best_validation_loss = std::numeric_limits<double>::infinity();
    int stale = 0;
    RMatrix bx, by;
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        std::shuffle(train_idx.begin(), train_idx.end(), rng);
        double epoch_loss = 0.0;
        std::size_t seen = 0;
        for (std::size_t first = 0; first < train_idx.size(); first += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_size), train_idx.size() - first);
            gather(train_idx, first, count, bx, by);
            const Gradients g = backprop(net, bx, by);
            for (int i = 0; i < net.n_layers(); ++i) {
                vel_w[i] = cfg.momentum * vel_w[i] + cfg.learning_rate * g.weights[i];
                vel_b[i] = cfg.momentum * vel_b[i] + cfg.learning_rate * g.biases[i];
                net.weights[i] -= vel_w[i];
                net.biases[i] -= vel_b[i];
            }
            epoch_loss += g.loss * static_cast<double>(count);
            seen += count;
        }
        epoch_loss /= static_cast<double>(seen);
        if (!std::isfinite(epoch_loss))
            throw DivergenceError("train: loss became non-finite at epoch " + std::to_string(epoch));
        result.train_loss.push_back(epoch_loss);

        const double val_loss = n_val > 0 ? mse_loss(net, val_x, val_y) : epoch_loss;
        result.validation_loss.push_back(val_loss);
        if (val_loss < result.best_validation_loss) {
            result.best_validation_loss = val_loss;
            result.best_epoch = epoch;
            result.net = net;
            stale = 0;
        } else if (++stale >= cfg.patience) {
            break;
        }
    }
    return result;
}

const char *to_string(NetTask task)
{
    return task == NetTask::AoA ? "aoa" : "as";
}

NetTask net_task_from_string(const std::string &s)
{
    if (s == "aoa")
        return NetTask::AoA;
    if (s == "as")
        return NetTask::AS;
    throw std::invalid_argument("unknown network task '" + s + "'");
}

std::array<std::vector<int>, 8> architectures(int n_sec, NetTask task)
{
    if (n_sec != 4 && n_sec != 8)
        throw std::invalid_argument("architectures: N_sec must be 4 or 8");
    std::array<std::vector<int>, 8> out;
    if (task == NetTask::AoA) {
        for (auto &sizes : out)
            sizes = {n_sec, 16, 16, 1};
        return out;
    }
    const int n_in = 2 * (n_sec == 8 ? 5 : 4);
    using Hidden = std::array<std::vector<int>, 8>;
    const Hidden as4 = {{{32, 32, 32}, {40, 40, 40}, {20, 20, 10}, {40, 20, 10},
                         {32, 32, 16}, {40, 20, 20}, {40, 20, 10}, {40, 20, 10}}};
    // sector 8 lists only {16, 16, 1}
    const Hidden as8 = {{{40, 20, 20}, {40, 20, 20}, {20, 20, 10}, {40, 40, 20},
                         {32, 16, 16}, {40, 20, 20}, {40, 40, 20}, {16, 16}}};
    const Hidden &hidden = n_sec == 4 ? as4 : as8;
    for (std::size_t s = 0; s < out.size(); ++s) {
        out[s].push_back(n_in);
        out[s].insert(out[s].end(), hidden[s].begin(), hidden[s].end());
        out[s].push_back(1);
    }
    return out;
}

void to_json(nlohmann::json &j, const Mlp &net)
{
    j = nlohmann::json{{"layer_sizes", net.layer_sizes},
                       {"hidden_activation", "sigmoid"},
                       {"output_activation", "identity"},
                       {"seed", net.seed},
                       {"weights", nlohmann::json::array()},
                       {"biases", nlohmann::json::array()}};
    for (int i = 0; i < net.n_layers(); ++i) {
        const RMatrix &w = net.weights[i];
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(w.size()));
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c)
                flat.push_back(w(r, c));
        j["weights"].push_back(flat);
        j["biases"].push_back(std::vector<double>(net.biases[i].data(), net.biases[i].data() + net.biases[i].size()));
    }
}

void from_json(const nlohmann::json &j, Mlp &net)
{
    if (j.value("hidden_activation", "sigmoid") != "sigmoid" || j.value("output_activation", "identity") != "identity")
        throw ShapeError("unsupported activation tags in model file");
    net = Mlp{};
    j.at("layer_sizes").get_to(net.layer_sizes);
    net.seed = j.value("seed", std::uint64_t{0});
    const auto &ws = j.at("weights");
    const auto &bs = j.at("biases");
    if (net.layer_sizes.size() < 2 || ws.size() + 1 != net.layer_sizes.size() || bs.size() != ws.size())
        throw ShapeError("model file: layer count mismatch");
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const int rows = net.layer_sizes[i + 1];
        const int cols = net.layer_sizes[i];
        const auto flat = ws[i].get<std::vector<double>>();
        const auto bias = bs[i].get<std::vector<double>>();
        if (flat.size() != static_cast<std::size_t>(rows) * cols || bias.size() != static_cast<std::size_t>(rows))
            throw ShapeError("model file: parameter shape mismatch");
        RMatrix w(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                w(r, c) = flat[static_cast<std::size_t>(r) * cols + c];
        net.weights.push_back(std::move(w));
        net.biases.push_back(Eigen::Map<const RVector>(bias.data(), rows));
    }
}

} // namespace ccmlab

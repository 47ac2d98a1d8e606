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

#ifndef CCMLAB_NEURAL_HPP
#define CCMLAB_NEURAL_HPP

#include "ccmlab/types.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ccmlab {

/// Fully connected network: sigmoid on every hidden layer, identity on the
/// output layer. Layer i maps a(i) to a(i+1) = f(W[i] a(i) + b[i]), with
/// W[i] of shape layer_sizes[i+1] x layer_sizes[i].
struct Mlp
{
    std::vector<int> layer_sizes;
    std::vector<RMatrix> weights;
    std::vector<RVector> biases;
    std::uint64_t seed = 0;

    int n_inputs() const { return layer_sizes.front(); }
    int n_outputs() const { return layer_sizes.back(); }
    int n_layers() const { return static_cast<int>(weights.size()); }

    // Multiply-accumulates for one forward pass (sum of fan_in * fan_out).
    long macs_per_forward() const;
};

class ShapeError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class DivergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Glorot-uniform weights, zero biases.
Mlp mlp_new(std::vector<int> layer_sizes, Rng &rng);
Mlp mlp_new(std::vector<int> layer_sizes, std::uint64_t seed);

struct ForwardPass
{
    RVector output;
    std::vector<RVector> activations; // activations[0] = input, back() = output
};

ForwardPass forward(const Mlp &net, const RVector &x);

// Columns are samples.
RMatrix forward_batch(const Mlp &net, const RMatrix &x);

struct LabeledSet
{
    RMatrix inputs;  // M x n_in
    RMatrix targets; // M x n_out

    int size() const { return static_cast<int>(inputs.rows()); }
};

struct Gradients
{
    std::vector<RMatrix> weights;
    std::vector<RVector> biases;
    double loss = 0.0; // batch loss at the evaluated parameters
};

// Batch-mean of ||y - net(x)||^2.
double mse_loss(const Mlp &net, const RMatrix &inputs, const RMatrix &targets);

// Exact gradient of mse_loss; rows of inputs/targets are samples.
Gradients backprop(const Mlp &net, const RMatrix &inputs, const RMatrix &targets);

// Max over parameters of |g - g_fd| / max(|g|, |g_fd|, 1e-3), with g_fd from
// central differences of step 1e-6.
double grad_check(const Mlp &net, const RMatrix &inputs, const RMatrix &targets);
double grad_check(const Mlp &net, const RMatrix &inputs, const RMatrix &targets, const Gradients &claimed);

struct TrainConfig
{
    double learning_rate = 0.01;
    double momentum = 0.9;
    int batch_size = 128;
    int max_epochs = 200;
    int patience = 20;
    double validation_fraction = 0.1;
    std::uint64_t seed = 7;
};

struct TrainResult
{
    Mlp net; // parameters at the best validation epoch
    std::vector<double> train_loss;
    std::vector<double> validation_loss;
    int best_epoch = -1;
    double best_validation_loss = 0.0;
};

// Mini-batch gradient descent with momentum:
//   a <- momentum * a + learning_rate * grad;  theta <- theta - a
TrainResult train(Mlp net, const LabeledSet &data, const TrainConfig &cfg);

enum class NetTask { AoA, AS };

const char *to_string(NetTask task);
NetTask net_task_from_string(const std::string &s);

// Per-sector layer sizes including input and output, for n_sec in {4, 8}.
std::array<std::vector<int>, 8> architectures(int n_sec, NetTask task);

void to_json(nlohmann::json &j, const Mlp &net);
void from_json(const nlohmann::json &j, Mlp &net);

} // namespace ccmlab

#endif

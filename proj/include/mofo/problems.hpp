/*
 * Copyright 2026 The mofo project
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mofo/partition.hpp"
#include "mofo/rng.hpp"

namespace mofo
{

/// Objective with an exact gradient, a reference point (the "pre-trained"
/// state used for distances and regularizers) and an auxiliary loss tracking
/// how much of the earlier task is retained.
class Problem
{
public:
    virtual ~Problem() = default;

    virtual const LayoutPtr& layout() const = 0;
    virtual const PartitionedVector& theta0() const = 0;

    virtual double loss(const PartitionedVector& theta) const = 0;
    virtual PartitionedVector grad(const PartitionedVector& theta) const = 0;
    virtual std::pair<double, PartitionedVector> loss_and_grad(const PartitionedVector& theta) const
    {
        return {loss(theta), grad(theta)};
    }

    /// Loss on the earlier task (pre-training loss analogue).
    virtual double aux_loss(const PartitionedVector& theta) const = 0;

    /// Seeded mini-batch evaluation; the default ignores batching.
    virtual std::pair<double, PartitionedVector> loss_and_grad_minibatch(
        const PartitionedVector& theta, CounterRng& /*rng*/, std::size_t /*batch_size*/) const
    {
        return loss_and_grad(theta);
    }

    virtual std::optional<double> lipschitz_estimate() const { return std::nullopt; }
};

/// Product objective prod_i (a_i * theta_i - b_i)^2 with a_i, b_i > 0.
/// Its global minima form the union of hyperplanes {theta_i = b_i / a_i}.
/// Evaluated in log-magnitude form so products of many squared factors do not
/// underflow; dimensions up to 20 are supported. The reference point is the
/// origin and the auxiliary loss is the quadratic pre-training loss.
class Example1Problem : public Problem
{
public:
    Example1Problem(std::vector<double> a, std::vector<double> b);

    const LayoutPtr& layout() const override { return layout_; }
    const PartitionedVector& theta0() const override { return theta0_; }
    double loss(const PartitionedVector& theta) const override;
    PartitionedVector grad(const PartitionedVector& theta) const override;
    double aux_loss(const PartitionedVector& theta) const override;

    const std::vector<double>& a() const { return a_; }
    const std::vector<double>& b() const { return b_; }
    /// Index minimizing b_i / a_i: the coordinate the filtered run converges
    /// along when started from the origin.
    std::size_t argmin_ratio() const;

private:
    std::vector<double> a_;
    std::vector<double> b_;
    LayoutPtr layout_;
    PartitionedVector theta0_;
};

/// 0.5 * ||theta||_2^2 and its gradient (= theta).
double pretrain_quadratic_loss(const PartitionedVector& theta);
PartitionedVector pretrain_quadratic_grad(const PartitionedVector& theta);

struct Sample
{
    std::vector<double> x;
    std::vector<double> y;
};
using Batch = std::vector<Sample>;

struct MlpShape
{
    std::size_t input = 2;
    std::size_t hidden = 16;
    std::size_t output = 1;
};

/// One block per weight matrix / bias vector: w1, b1, w2, b2.
LayoutPtr mlp_layout(const MlpShape& shape);

/// Mean squared error over the batch (mean over samples and output dims) for
/// a one-hidden-layer tanh network with a linear output layer.
double mlp_loss(const MlpShape& shape, const PartitionedVector& theta, const Batch& batch);

/// Loss plus the exact gradient via reverse-mode backpropagation.
std::pair<double, PartitionedVector> mlp_loss_and_grad(const MlpShape& shape,
                                                       const PartitionedVector& theta,
                                                       const Batch& batch);

/// Generation knobs for the synthetic two-task regression pair.
struct TwoTaskParams
{
    std::size_t input_dim = 2;
    std::size_t teacher_hidden = 4;
    double feature_range = 1.5;    // teacher hidden weight range
    double bias_range = 0.5;       // teacher hidden bias range
    double output_scale = 0.9;     // teacher output weight range
    double task_shift = 0.4;       // relative shift between the two teachers
    double target_offset = 0.15;   // +/- offset on duplicated task-B inputs
};

/// Two regression datasets from two fixed, distinct teacher networks,
/// deterministic in the seed. Task B is a shifted version of task A's teacher;
/// its inputs come in duplicated pairs with targets offset by +/-
/// target_offset, so its mean squared error has an exact optimizer-independent
/// floor of target_offset^2.
std::pair<Batch, Batch> make_two_task_data(std::uint64_t seed, std::size_t n_per_task,
                                           const TwoTaskParams& params = {});

struct PretrainResult
{
    PartitionedVector theta;
    std::int64_t steps = 0;
    double loss = 0.0;
};

/// Trains the network on task A with Adam (constant lr) from a small seeded
/// random init until the loss drops below `threshold`. Throws NumericError if
/// max_steps is exhausted first.
PretrainResult pretrain_mlp(const MlpShape& shape, const Batch& task_a, std::uint64_t seed,
                            double lr, double threshold, std::int64_t max_steps);

/// Fine-tuning problem: optimize task B, track task A as the auxiliary loss,
/// measure distances from the pretrained theta0.
class MlpProblem : public Problem
{
public:
    MlpProblem(MlpShape shape, Batch train, Batch aux, PartitionedVector theta0);

    const LayoutPtr& layout() const override { return layout_; }
    const PartitionedVector& theta0() const override { return theta0_; }
    double loss(const PartitionedVector& theta) const override;
    PartitionedVector grad(const PartitionedVector& theta) const override;
    std::pair<double, PartitionedVector> loss_and_grad(const PartitionedVector& theta) const override;
    double aux_loss(const PartitionedVector& theta) const override;
    std::pair<double, PartitionedVector> loss_and_grad_minibatch(
        const PartitionedVector& theta, CounterRng& rng, std::size_t batch_size) const override;

    const MlpShape& shape() const { return shape_; }
    const Batch& train_batch() const { return train_; }
    const Batch& aux_batch() const { return aux_; }

private:
    MlpShape shape_;
    Batch train_;
    Batch aux_;
    LayoutPtr layout_;
    PartitionedVector theta0_;
};

}  // namespace mofo

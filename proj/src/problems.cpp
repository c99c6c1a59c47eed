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

#include "mofo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mofo/errors.hpp"
#include "mofo/optimizers.hpp"

namespace mofo
{

namespace
{

constexpr std::size_t kMaxExample1Dim = 20;

void check_dims(const Example1Problem& p, const PartitionedVector& theta)
{
    if (theta.size() != p.a().size())
    {
        throw ConfigError("theta dimension does not match the problem");
    }
}

}  // namespace

Example1Problem::Example1Problem(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)),
      b_(std::move(b)),
      layout_(single_block_layout(a_.size())),
      theta0_(layout_)
{
    if (a_.empty() || a_.size() != b_.size())
    {
        throw ConfigError("coefficient vectors must be non-empty and equally sized");
    }
    if (a_.size() > kMaxExample1Dim)
    {
        throw ConfigError("product objective supports dimensions up to " +
                          std::to_string(kMaxExample1Dim));
    }
    for (std::size_t i = 0; i < a_.size(); ++i)
    {
        if (!(a_[i] > 0.0) || !(b_[i] > 0.0))
        {
            throw ConfigError("all a_i, b_i must be positive");
        }
    }
}

double Example1Problem::loss(const PartitionedVector& theta) const
{
    check_dims(*this, theta);
    double log_sum = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
    {
        const double r = a_[i] * theta[i] - b_[i];
        if (r == 0.0)
        {
            return 0.0;
        }
        log_sum += 2.0 * std::log(std::fabs(r));
    }
    return std::exp(log_sum);
}

PartitionedVector Example1Problem::grad(const PartitionedVector& theta) const
{
    check_dims(*this, theta);
    PartitionedVector g(layout_);
    std::vector<double> r(a_.size());
    double log_sum = 0.0;
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < a_.size(); ++i)
    {
        r[i] = a_[i] * theta[i] - b_[i];
        if (r[i] == 0.0)
        {
            ++zeros;
        }
        else
        {
            log_sum += 2.0 * std::log(std::fabs(r[i]));
        }
    }
    // dL/dtheta_i = 2 a_i r_i * prod_{j != i} r_j^2; any zero factor makes
    // every partial vanish (the differentiated factor contributes r_i, the
    // others contribute r_j^2).
    if (zeros > 0)
    {
        return g;
    }
    for (std::size_t i = 0; i < a_.size(); ++i)
    {
        g[i] = 2.0 * a_[i] * r[i] * std::exp(log_sum - 2.0 * std::log(std::fabs(r[i])));
    }
    return g;
}

double Example1Problem::aux_loss(const PartitionedVector& theta) const
{
    return pretrain_quadratic_loss(theta);
}

std::size_t Example1Problem::argmin_ratio() const
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < a_.size(); ++i)
    {
        if (b_[i] / a_[i] < b_[best] / a_[best])
        {
            best = i;
        }
    }
    return best;
}

double pretrain_quadratic_loss(const PartitionedVector& theta)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        sum += theta[i] * theta[i];
    }
    return 0.5 * sum;
}

PartitionedVector pretrain_quadratic_grad(const PartitionedVector& theta)
{
    return theta;
}

LayoutPtr mlp_layout(const MlpShape& shape)
{
    if (shape.input == 0 || shape.hidden == 0 || shape.output == 0)
    {
        throw ConfigError("layer sizes must be at least 1");
    }
    return BlockLayout::make({{"w1", shape.hidden * shape.input},
                              {"b1", shape.hidden},
                              {"w2", shape.output * shape.hidden},
                              {"b2", shape.output}});
}

namespace
{

struct MlpView
{
    const double* w1;  // hidden x input, row-major
    const double* b1;
    const double* w2;  // output x hidden, row-major
    const double* b2;

    MlpView(const MlpShape& s, const PartitionedVector& theta)
    {
        w1 = theta.values().data();
        b1 = w1 + s.hidden * s.input;
        w2 = b1 + s.hidden;
        b2 = w2 + s.output * s.hidden;
    }
};

void check_batch(const MlpShape& shape, const Batch& batch)
{
    if (batch.empty())
    {
        throw ConfigError("empty batch");
    }
    for (const Sample& s : batch)
    {
        if (s.x.size() != shape.input || s.y.size() != shape.output)
        {
            throw ConfigError("sample dimensions do not match the network shape");
        }
    }
}

void check_theta(const MlpShape& shape, const PartitionedVector& theta)
{
    const std::size_t want =
        shape.hidden * shape.input + shape.hidden + shape.output * shape.hidden + shape.output;
    if (theta.size() != want)
    {
        throw ConfigError("theta size does not match the network shape");
    }
}

}  // namespace

double mlp_loss(const MlpShape& shape, const PartitionedVector& theta, const Batch& batch)
{
    check_theta(shape, theta);
    check_batch(shape, batch);
    const MlpView p(shape, theta);
    std::vector<double> h(shape.hidden);
    double sum = 0.0;
    for (const Sample& s : batch)
    {
        for (std::size_t j = 0; j < shape.hidden; ++j)
        {
            double acc = p.b1[j];
            for (std::size_t i = 0; i < shape.input; ++i)
            {
                acc += p.w1[j * shape.input + i] * s.x[i];
            }
            h[j] = std::tanh(acc);
        }
        for (std::size_t o = 0; o < shape.output; ++o)
        {
            double y = p.b2[o];
            for (std::size_t j = 0; j < shape.hidden; ++j)
            {
                y += p.w2[o * shape.hidden + j] * h[j];
            }
            const double e = y - s.y[o];
            sum += e * e;
        }
    }
    return sum / (static_cast<double>(batch.size()) * static_cast<double>(shape.output));
}

std::pair<double, PartitionedVector> mlp_loss_and_grad(const MlpShape& shape,
                                                       const PartitionedVector& theta,
                                                       const Batch& batch)
{
    check_theta(shape, theta);
    check_batch(shape, batch);
    const MlpView p(shape, theta);
    PartitionedVector grad(theta.layout());
    double* gw1 = grad.values().data();
    double* gb1 = gw1 + shape.hidden * shape.input;
    double* gw2 = gb1 + shape.hidden;
    double* gb2 = gw2 + shape.output * shape.hidden;

    const double inv_n = 1.0 / (static_cast<double>(batch.size()) * static_cast<double>(shape.output));
    std::vector<double> h(shape.hidden);
    std::vector<double> dh(shape.hidden);
    double sum = 0.0;
    for (const Sample& s : batch)
    {
        for (std::size_t j = 0; j < shape.hidden; ++j)
        {
            double acc = p.b1[j];
            for (std::size_t i = 0; i < shape.input; ++i)
            {
                acc += p.w1[j * shape.input + i] * s.x[i];
            }
            h[j] = std::tanh(acc);
        }
        std::fill(dh.begin(), dh.end(), 0.0);
        for (std::size_t o = 0; o < shape.output; ++o)
        {
            double y = p.b2[o];
            for (std::size_t j = 0; j < shape.hidden; ++j)
            {
                y += p.w2[o * shape.hidden + j] * h[j];
            }
            const double e = y - s.y[o];
            sum += e * e;
            const double dy = 2.0 * e * inv_n;
            gb2[o] += dy;
            for (std::size_t j = 0; j < shape.hidden; ++j)
            {
                gw2[o * shape.hidden + j] += dy * h[j];
                dh[j] += dy * p.w2[o * shape.hidden + j];
            }
        }
        for (std::size_t j = 0; j < shape.hidden; ++j)
        {
            const double dpre = dh[j] * (1.0 - h[j] * h[j]);
            gb1[j] += dpre;
            for (std::size_t i = 0; i < shape.input; ++i)
            {
                gw1[j * shape.input + i] += dpre * s.x[i];
            }
        }
    }
    return {sum * inv_n, std::move(grad)};
}

namespace
{

struct Teacher
{
    std::size_t input = 0;
    std::size_t hidden = 0;
    std::vector<double> w1, b1, w2;
    double b2 = 0.0;

    std::vector<double> eval(const std::vector<double>& x) const
    {
        double y = b2;
        for (std::size_t j = 0; j < hidden; ++j)
        {
            double acc = b1[j];
            for (std::size_t i = 0; i < input; ++i)
            {
                acc += w1[j * input + i] * x[i];
            }
            y += w2[j] * std::tanh(acc);
        }
        return {y};
    }
};

std::vector<double> draw(CounterRng& rng, std::size_t n, double lo, double hi)
{
    std::vector<double> out(n);
    for (double& v : out)
    {
        v = rng.uniform(lo, hi);
    }
    return out;
}

}  // namespace

std::pair<Batch, Batch> make_two_task_data(std::uint64_t seed, std::size_t n_per_task,
                                           const TwoTaskParams& params)
{
    if (n_per_task == 0)
    {
        throw ConfigError("n_per_task must be at least 1");
    }
    CounterRng root(seed);
    CounterRng teacher_rng = root.fork(0);
    CounterRng data_a_rng = root.fork(1);
    CounterRng data_b_rng = root.fork(2);

    const std::size_t in = params.input_dim;
    const std::size_t th = params.teacher_hidden;

    Teacher a;
    a.input = in;
    a.hidden = th;
    a.w1 = draw(teacher_rng, th * in, -params.feature_range, params.feature_range);
    a.b1 = draw(teacher_rng, th, -params.bias_range, params.bias_range);
    a.w2 = draw(teacher_rng, th, -params.output_scale, params.output_scale);
    // Output bias bounded away from zero so the pretrained bias block has a
    // non-degenerate norm in relative-distance metrics.
    const double b2_sign = teacher_rng.next_double() < 0.5 ? -1.0 : 1.0;
    a.b2 = b2_sign * teacher_rng.uniform(0.5, 1.0);

    Teacher b = a;
    const double shift = params.task_shift;
    const auto dw1 = draw(teacher_rng, th * in, -params.feature_range, params.feature_range);
    const auto db1 = draw(teacher_rng, th, -params.bias_range, params.bias_range);
    const auto dw2 = draw(teacher_rng, th, -params.output_scale, params.output_scale);
    for (std::size_t i = 0; i < b.w1.size(); ++i)
    {
        b.w1[i] += shift * dw1[i];
    }
    for (std::size_t i = 0; i < b.b1.size(); ++i)
    {
        b.b1[i] += shift * db1[i];
    }
    for (std::size_t i = 0; i < b.w2.size(); ++i)
    {
        b.w2[i] += shift * dw2[i];
    }

    Batch task_a;
    task_a.reserve(n_per_task);
    for (std::size_t s = 0; s < n_per_task; ++s)
    {
        Sample sample;
        sample.x = draw(data_a_rng, in, -1.0, 1.0);
        sample.y = a.eval(sample.x);
        task_a.push_back(std::move(sample));
    }

    // Duplicated inputs with +/- offset targets: any parameter leaves a mean
    // squared residual of at least target_offset^2 on each pair.
    Batch task_b;
    task_b.reserve(n_per_task);
    while (task_b.size() < n_per_task)
    {
        Sample base;
        base.x = draw(data_b_rng, in, -1.0, 1.0);
        base.y = b.eval(base.x);
        Sample plus = base;
        plus.y[0] += params.target_offset;
        task_b.push_back(std::move(plus));
        if (task_b.size() < n_per_task)
        {
            Sample minus = std::move(base);
            minus.y[0] -= params.target_offset;
            task_b.push_back(std::move(minus));
        }
    }
    return {std::move(task_a), std::move(task_b)};
}

PretrainResult pretrain_mlp(const MlpShape& shape, const Batch& task_a, std::uint64_t seed,
                            double lr, double threshold, std::int64_t max_steps)
{
    check_batch(shape, task_a);
    const LayoutPtr layout = mlp_layout(shape);
    CounterRng init_rng = CounterRng(seed).fork(3);
    PartitionedVector theta(layout);
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        theta[i] = init_rng.uniform(-0.2, 0.2);
    }

    HyperParams hp;
    hp.lr = LrSchedule{LrSchedule::Kind::constant, lr};
    Optimizer adam(OptimizerKind::adam, layout, hp);
    for (std::int64_t t = 0; t < max_steps; ++t)
    {
        auto [loss, grad] = mlp_loss_and_grad(shape, theta, task_a);
        if (loss < threshold)
        {
            return PretrainResult{std::move(theta), t, loss};
        }
        adam.step(theta, grad);
    }
    throw NumericError("pretraining did not reach loss threshold " + std::to_string(threshold) +
                       " within " + std::to_string(max_steps) + " steps");
}

MlpProblem::MlpProblem(MlpShape shape, Batch train, Batch aux, PartitionedVector theta0)
    : shape_(shape),
      train_(std::move(train)),
      aux_(std::move(aux)),
      layout_(mlp_layout(shape)),
      theta0_(std::move(theta0))
{
    check_batch(shape_, train_);
    check_batch(shape_, aux_);
    check_theta(shape_, theta0_);
}

double MlpProblem::loss(const PartitionedVector& theta) const
{
    return mlp_loss(shape_, theta, train_);
}

PartitionedVector MlpProblem::grad(const PartitionedVector& theta) const
{
    return mlp_loss_and_grad(shape_, theta, train_).second;
}

std::pair<double, PartitionedVector> MlpProblem::loss_and_grad(const PartitionedVector& theta) const
{
    return mlp_loss_and_grad(shape_, theta, train_);
}

double MlpProblem::aux_loss(const PartitionedVector& theta) const
{
    return mlp_loss(shape_, theta, aux_);
}

std::pair<double, PartitionedVector> MlpProblem::loss_and_grad_minibatch(
    const PartitionedVector& theta, CounterRng& rng, std::size_t batch_size) const
{
    if (batch_size == 0 || batch_size >= train_.size())
    {
        return loss_and_grad(theta);
    }
    std::vector<std::size_t> idx(train_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Batch mini;
    mini.reserve(batch_size);
    for (std::size_t j = 0; j < batch_size; ++j)
    {
        const std::size_t pick = j + rng.next_below(idx.size() - j);
        std::swap(idx[j], idx[pick]);
        mini.push_back(train_[idx[j]]);
    }
    return mlp_loss_and_grad(shape_, theta, mini);
}

}  // namespace mofo

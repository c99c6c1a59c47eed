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

#include "mofo/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mofo/errors.hpp"

namespace mofo
{

namespace
{

double sign_of(double x)
{
    if (x > 0.0)
    {
        return 1.0;
    }
    if (x < 0.0)
    {
        return -1.0;
    }
    return 0.0;
}

}  // namespace

OptimizerKind optimizer_kind_from_string(std::string_view name)
{
    if (name == "adam") return OptimizerKind::adam;
    if (name == "mofo") return OptimizerKind::mofo;
    if (name == "lion") return OptimizerKind::lion;
    if (name == "mofo_lion") return OptimizerKind::mofo_lion;
    if (name == "random_bcd") return OptimizerKind::random_bcd;
    if (name == "grad_filtered") return OptimizerKind::grad_filtered;
    if (name == "mv_filtered") return OptimizerKind::mv_filtered;
    if (name == "gv_filtered") return OptimizerKind::gv_filtered;
    if (name == "block_freeze_half") return OptimizerKind::block_freeze_half;
    throw ConfigError("unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(OptimizerKind kind)
{
    switch (kind)
    {
        case OptimizerKind::adam: return "adam";
        case OptimizerKind::mofo: return "mofo";
        case OptimizerKind::lion: return "lion";
        case OptimizerKind::mofo_lion: return "mofo_lion";
        case OptimizerKind::random_bcd: return "random_bcd";
        case OptimizerKind::grad_filtered: return "grad_filtered";
        case OptimizerKind::mv_filtered: return "mv_filtered";
        case OptimizerKind::gv_filtered: return "gv_filtered";
        case OptimizerKind::block_freeze_half: return "block_freeze_half";
    }
    return "?";
}

bool uses_alpha_filter(OptimizerKind kind)
{
    switch (kind)
    {
        case OptimizerKind::mofo:
        case OptimizerKind::mofo_lion:
        case OptimizerKind::random_bcd:
        case OptimizerKind::grad_filtered:
        case OptimizerKind::mv_filtered:
        case OptimizerKind::gv_filtered: return true;
        default: return false;
    }
}

bool is_lion_family(OptimizerKind kind)
{
    return kind == OptimizerKind::lion || kind == OptimizerKind::mofo_lion;
}

bool is_stochastic(OptimizerKind kind)
{
    return kind == OptimizerKind::random_bcd || kind == OptimizerKind::block_freeze_half;
}

double LrSchedule::at(std::int64_t t) const
{
    if (kind == Kind::inverse_sqrt)
    {
        return base / std::sqrt(static_cast<double>(t));
    }
    return base;
}

LrSchedule::Kind lr_schedule_from_string(std::string_view name)
{
    if (name == "constant") return LrSchedule::Kind::constant;
    if (name == "inverse_sqrt") return LrSchedule::Kind::inverse_sqrt;
    throw ConfigError("unknown lr schedule '" + std::string(name) + "'");
}

std::string_view to_string(LrSchedule::Kind kind)
{
    return kind == LrSchedule::Kind::constant ? "constant" : "inverse_sqrt";
}

void HyperParams::validate(OptimizerKind kind) const
{
    auto in_unit = [](double b) { return b >= 0.0 && b < 1.0; };
    if (!in_unit(beta1) || !in_unit(beta2))
    {
        throw ConfigError("beta1/beta2 must lie in [0, 1)");
    }
    if (!in_unit(lion_beta1) || !in_unit(lion_beta2))
    {
        throw ConfigError("lion_beta1/lion_beta2 must lie in [0, 1)");
    }
    if (epsilon < 0.0 || lion_weight_decay < 0.0 || ratio_epsilon < 0.0)
    {
        throw ConfigError("epsilon, ratio_epsilon and lion_weight_decay must be nonnegative");
    }
    if (!(alpha_pct > 0.0) || alpha_pct > 100.0)
    {
        throw ConfigError("alpha_pct must lie in (0, 100]");
    }
    if (!(lr.base > 0.0))
    {
        throw ConfigError("learning rate must be positive");
    }
    if (theory_mode)
    {
        if (is_lion_family(kind) || kind == OptimizerKind::block_freeze_half)
        {
            throw ConfigError("theory mode applies to the Adam family with per-block "
                              "alpha-cardinality masks");
        }
        if (epsilon != 0.0)
        {
            throw ConfigError("theory mode requires epsilon = 0");
        }
        if (!(beta1 > 0.0) || !(beta1 < std::sqrt(beta2)))
        {
            throw ConfigError("theory mode requires 0 < beta1 < sqrt(beta2) < 1");
        }
    }
}

Optimizer::Optimizer(OptimizerKind kind, LayoutPtr layout, HyperParams params)
    : kind_(kind),
      layout_(std::move(layout)),
      params_(params),
      state_{PartitionedVector(layout_), PartitionedVector(layout_), PartitionedVector(layout_)}
{
    params_.validate(kind_);
}

FilterMask Optimizer::make_mask(const PartitionedVector& grad, CounterRng* rng) const
{
    switch (kind_)
    {
        case OptimizerKind::adam:
        case OptimizerKind::lion:
            return FilterMask(layout_, std::vector<std::uint8_t>(layout_->dim(), 1));
        case OptimizerKind::mofo: return top_alpha_mask(state_.m, params_.alpha_pct);
        case OptimizerKind::mofo_lion: return top_alpha_mask(state_.prev_m, params_.alpha_pct);
        case OptimizerKind::grad_filtered: return top_alpha_mask(grad, params_.alpha_pct);
        case OptimizerKind::mv_filtered:
        case OptimizerKind::gv_filtered:
        {
            const PartitionedVector& num =
                kind_ == OptimizerKind::mv_filtered ? state_.m : grad;
            PartitionedVector ratio(layout_);
            for (std::size_t i = 0; i < ratio.size(); ++i)
            {
                ratio[i] = num[i] / (std::sqrt(state_.v[i]) + params_.ratio_epsilon);
            }
            return top_alpha_mask(ratio, params_.alpha_pct);
        }
        case OptimizerKind::random_bcd:
        {
            std::vector<std::uint8_t> bits(layout_->dim(), 0);
            std::vector<std::size_t> scratch;
            for (std::size_t k = 0; k < layout_->block_count(); ++k)
            {
                const auto& b = layout_->block(k);
                const std::size_t take = top_count(b.length, params_.alpha_pct);
                scratch.resize(b.length);
                std::iota(scratch.begin(), scratch.end(), std::size_t{0});
                for (std::size_t j = 0; j < take; ++j)
                {
                    const std::size_t pick = j + rng->next_below(b.length - j);
                    std::swap(scratch[j], scratch[pick]);
                    bits[b.offset + scratch[j]] = 1;
                }
            }
            return FilterMask(layout_, std::move(bits));
        }
        case OptimizerKind::block_freeze_half:
        {
            std::vector<std::uint8_t> bits(layout_->dim(), 0);
            const std::size_t B = layout_->block_count();
            const std::size_t take = (B + 1) / 2;
            std::vector<std::size_t> blocks(B);
            std::iota(blocks.begin(), blocks.end(), std::size_t{0});
            for (std::size_t j = 0; j < take; ++j)
            {
                const std::size_t pick = j + rng->next_below(B - j);
                std::swap(blocks[j], blocks[pick]);
                const auto& b = layout_->block(blocks[j]);
                std::fill(bits.begin() + static_cast<std::ptrdiff_t>(b.offset),
                          bits.begin() + static_cast<std::ptrdiff_t>(b.offset + b.length), 1);
            }
            return FilterMask(layout_, std::move(bits));
        }
    }
    throw ConfigError("unreachable optimizer kind");
}

StepReport Optimizer::step(PartitionedVector& theta, const PartitionedVector& grad,
                           CounterRng* rng)
{
    require_same_layout(theta, grad, "optimizer step");
    if (!(theta.layout() == layout_ || *theta.layout() == *layout_))
    {
        throw ConfigError("optimizer layout does not match theta");
    }
    grad.ensure_finite("gradient");
    if (is_stochastic(kind_) && rng == nullptr)
    {
        throw ConfigError(std::string(to_string(kind_)) + " requires an rng");
    }
    StepReport report = is_lion_family(kind_) ? step_lion_family(theta, grad)
                                              : step_adam_family(theta, grad, rng);
    theta.ensure_finite("theta after step");
    return report;
}

StepReport Optimizer::step_adam_family(PartitionedVector& theta, const PartitionedVector& grad,
                                       CounterRng* rng)
{
    const std::int64_t t = ++state_.t;
    const double b1 = params_.beta1;
    const double b2 = params_.beta2;

    // Moments advance on every coordinate; only theta is masked.
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        state_.m[i] = b1 * state_.m[i] + (1.0 - b1) * grad[i];
        state_.v[i] = b2 * state_.v[i] + (1.0 - b2) * grad[i] * grad[i];
    }

    const FilterMask mask = make_mask(grad, rng);

    const double lr = params_.lr.at(t);
    const double m_corr = 1.0 - std::pow(b1, static_cast<double>(t));
    const double v_corr = 1.0 - std::pow(b2, static_cast<double>(t));

    double max_abs = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        if (!mask.test(i))
        {
            continue;  // frozen coordinates stay bit-identical
        }
        const double m_hat = state_.m[i] / m_corr;
        const double v_hat = state_.v[i] / v_corr;
        const double den = std::sqrt(v_hat) + params_.epsilon;
        double update;
        if (den == 0.0)
        {
            if (m_hat != 0.0)
            {
                throw NumericError("zero second moment with nonzero first moment at index " +
                                   std::to_string(i));
            }
            update = 0.0;
        }
        else
        {
            update = lr * m_hat / den;
        }
        theta[i] -= update;
        const double a = std::fabs(update);
        max_abs = std::max(max_abs, a);
        sum_sq += update * update;
    }

    StepReport report;
    report.mask_set_counts = mask.set_counts();
    report.mask_count_total = mask.total_set();
    report.lr = lr;
    report.max_abs_update = max_abs;
    report.update_l2 = std::sqrt(sum_sq);
    if (params_.theory_mode)
    {
        report.lemma_bound = lemma_per_coord_coeff(params_) * lr;
        const double l2_cap = lemma_l2_constant(params_, *layout_) * lr;
        report.bound_violated = max_abs > report.lemma_bound || report.update_l2 > l2_cap;
    }
    return report;
}

StepReport Optimizer::step_lion_family(PartitionedVector& theta, const PartitionedVector& grad)
{
    const std::int64_t t = ++state_.t;
    const double b1 = params_.lion_beta1;
    const double b2 = params_.lion_beta2;
    const double decay = params_.lion_weight_decay;
    const double lr = params_.lr.at(t);

    // The filter source is the momentum from before this step.
    const FilterMask mask = make_mask(grad, nullptr);

    double max_abs = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        const double c = b1 * state_.prev_m[i] + (1.0 - b1) * grad[i];
        const double sign_term = mask.test(i) ? sign_of(c) : 0.0;
        state_.prev_m[i] = b2 * state_.prev_m[i] + (1.0 - b2) * grad[i];
        if (sign_term == 0.0 && decay == 0.0)
        {
            continue;
        }
        const double update = lr * (sign_term + decay * theta[i]);
        theta[i] -= update;
        const double a = std::fabs(update);
        max_abs = std::max(max_abs, a);
        sum_sq += update * update;
    }

    StepReport report;
    report.mask_set_counts = mask.set_counts();
    report.mask_count_total = mask.total_set();
    report.lr = lr;
    report.max_abs_update = max_abs;
    report.update_l2 = std::sqrt(sum_sq);
    return report;
}

double lemma_per_coord_coeff(const HyperParams& params)
{
    const double root = std::sqrt(params.beta2);
    return 1.0 / (std::sqrt(1.0 - params.beta2) * (1.0 - params.beta1 / root));
}

double lemma_l2_constant(const HyperParams& params, const BlockLayout& layout)
{
    const double selected = static_cast<double>(layout.dim()) * (params.alpha_pct / 100.0) +
                            static_cast<double>(layout.block_count());
    return std::sqrt(selected) * lemma_per_coord_coeff(params);
}

bool check_lemma_bound(const StepReport& report, const HyperParams& params,
                       const BlockLayout& layout, std::int64_t t)
{
    if (!params.theory_mode)
    {
        throw ConfigError("check_lemma_bound requires theory mode");
    }
    const double lr = params.lr.at(t);
    const double per_coord_cap = lemma_per_coord_coeff(params) * lr;
    const double l2_cap = lemma_l2_constant(params, layout) * lr;
    return report.max_abs_update <= per_coord_cap && report.update_l2 <= l2_cap;
}

}  // namespace mofo

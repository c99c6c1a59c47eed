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
#include <string>
#include <string_view>
#include <vector>

#include "mofo/filter.hpp"
#include "mofo/partition.hpp"
#include "mofo/rng.hpp"

namespace mofo
{

enum class OptimizerKind
{
    adam,              // full update, no filter
    mofo,              // update masked by the top-alpha% filter of m_t
    lion,              // sign update, no filter
    mofo_lion,         // sign update masked by the filter of m_{t-1}
    random_bcd,        // mask of top_count(d_k, alpha) uniformly random entries per block
    grad_filtered,     // mask from |g_t|
    mv_filtered,       // mask from |m_t / (sqrt(v_t) + eps_div)|
    gv_filtered,       // mask from |g_t / (sqrt(v_t) + eps_div)|
    block_freeze_half  // a random half of whole blocks updated fully
};

OptimizerKind optimizer_kind_from_string(std::string_view name);
std::string_view to_string(OptimizerKind kind);
bool uses_alpha_filter(OptimizerKind kind);
bool is_lion_family(OptimizerKind kind);
bool is_stochastic(OptimizerKind kind);

struct LrSchedule
{
    enum class Kind
    {
        constant,     // eta_t = eta
        inverse_sqrt  // eta_t = eta / sqrt(t)
    };

    Kind kind = Kind::constant;
    double base = 1e-3;

    double at(std::int64_t t) const;  // t >= 1
};

LrSchedule::Kind lr_schedule_from_string(std::string_view name);
std::string_view to_string(LrSchedule::Kind kind);

struct HyperParams
{
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;   // added to sqrt(v_hat) in the Adam-family update
    double alpha_pct = 100.0;
    double lion_beta1 = 0.9;
    double lion_beta2 = 0.99;
    double lion_weight_decay = 0.0;
    double ratio_epsilon = 1e-12;  // ranking-only guard inside m/sqrt(v), g/sqrt(v)
    LrSchedule lr;
    bool theory_mode = false;  // epsilon = 0, 0 < beta1 < sqrt(beta2) < 1

    void validate(OptimizerKind kind) const;
};

struct StepReport
{
    std::vector<std::size_t> mask_set_counts;  // per block
    std::size_t mask_count_total = 0;
    double lr = 0.0;              // eta_t used for this step
    double max_abs_update = 0.0;  // max_i |theta'_i - theta_i|
    double update_l2 = 0.0;       // ||theta' - theta||_2
    double lemma_bound = 0.0;     // per-coordinate cap (theory mode only, else 0)
    bool bound_violated = false;  // theory mode only
};

struct OptimizerState
{
    PartitionedVector m;       // first moment (Adam family)
    PartitionedVector v;       // second moment (Adam family)
    PartitionedVector prev_m;  // running momentum m_{t-1} (Lion family)
    std::int64_t t = 0;
};

/// One optimizer = one evolving state over a fixed layout. Stepping mutates
/// theta in place; coordinates outside the step's mask are left bit-identical.
/// A step behaves as the pure function (theta, state) -> (theta', state').
class Optimizer
{
public:
    Optimizer(OptimizerKind kind, LayoutPtr layout, HyperParams params);

    /// Advances one step. `rng` is required for the stochastic kinds
    /// (random_bcd, block_freeze_half) and ignored otherwise.
    /// Throws NumericError on a non-finite gradient and ConfigError on a
    /// layout mismatch or missing rng.
    StepReport step(PartitionedVector& theta, const PartitionedVector& grad,
                    CounterRng* rng = nullptr);

    OptimizerKind kind() const { return kind_; }
    const HyperParams& params() const { return params_; }
    const OptimizerState& state() const { return state_; }
    std::int64_t step_count() const { return state_.t; }

private:
    StepReport step_adam_family(PartitionedVector& theta, const PartitionedVector& grad,
                                CounterRng* rng);
    StepReport step_lion_family(PartitionedVector& theta, const PartitionedVector& grad);
    FilterMask make_mask(const PartitionedVector& grad, CounterRng* rng) const;

    OptimizerKind kind_;
    LayoutPtr layout_;
    HyperParams params_;
    OptimizerState state_;
};

/// 1 / (sqrt(1 - beta2) * (1 - beta1 / sqrt(beta2))): the per-coordinate
/// update cap per unit learning rate for the full-batch Adam-family update.
double lemma_per_coord_coeff(const HyperParams& params);

/// sqrt(d * (alpha_pct/100) + B) * lemma_per_coord_coeff: cap on
/// ||theta_t - theta_{t-1}||_2 per unit learning rate.
double lemma_l2_constant(const HyperParams& params, const BlockLayout& layout);

/// True iff the step obeyed both the per-coordinate cap and the l2 cap.
/// Throws ConfigError when called outside theory mode.
bool check_lemma_bound(const StepReport& report, const HyperParams& params,
                       const BlockLayout& layout, std::int64_t t);

}  // namespace mofo

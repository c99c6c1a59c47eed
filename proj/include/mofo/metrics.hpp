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
#include <utility>
#include <vector>

#include "mofo/optimizers.hpp"
#include "mofo/partition.hpp"

namespace mofo
{

/// One trace row per optimizer step. `loss` and `grad_inf` describe the point
/// the step's gradient was taken at; `aux_loss`, `distance` and the mask
/// counts describe the state after the step.
struct RunRow
{
    std::int64_t t = 0;
    double lr = 0.0;
    double loss = 0.0;
    double aux_loss = 0.0;
    double grad_inf = 0.0;
    double distance = 0.0;
    std::size_t mask_count_total = 0;
};

struct RunSummary
{
    double min_grad_inf = 0.0;
    double final_loss = 0.0;
    double final_aux_loss = 0.0;
    double final_distance = 0.0;
    double significant_change_fraction = 0.0;
};

struct RunRecord
{
    std::vector<RunRow> rows;
    LrSchedule::Kind lr_kind = LrSchedule::Kind::constant;
    RunSummary summary;
    std::int64_t lemma_violations = 0;  // theory-mode runs only
};

/// Mean over blocks of the relative l2 change ||th^(k) - th0^(k)|| / ||th0^(k)||.
/// Blocks with a zero-norm reference contribute the absolute change instead,
/// keeping the metric zero exactly when theta == theta0.
double block_distance(const PartitionedVector& theta, const PartitionedVector& theta0);

/// Fraction of coordinates with |theta_i - theta0_i| strictly above threshold.
double significant_change_fraction(const PartitionedVector& theta,
                                   const PartitionedVector& theta0, double threshold);

struct EnvelopeResult
{
    /// (T, min_{t <= T} grad_inf) for every recorded step.
    std::vector<std::pair<std::int64_t, double>> min_grad_curve;
    /// Least-squares slope of log(min grad) vs log(T) over the last decade of T.
    double fitted_rate_exponent = 0.0;
    /// False for constant-lr records, where the rate test does not apply.
    bool exponent_applicable = false;
};

/// Running-minimum gradient-norm curve plus a loose rate check: a fitted
/// slope <= -0.3 over T in [T_max/10, T_max] is consistent with a 1/sqrt(T)
/// decay up to log factors. Requires at least 100 steps.
EnvelopeResult convergence_envelope(const RunRecord& record);

}  // namespace mofo

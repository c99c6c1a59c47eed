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

#include "mofo/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mofo/errors.hpp"

namespace mofo
{

double block_distance(const PartitionedVector& theta, const PartitionedVector& theta0)
{
    require_same_layout(theta, theta0, "block_distance");
    const BlockLayout& layout = *theta.layout();
    double total = 0.0;
    for (std::size_t k = 0; k < layout.block_count(); ++k)
    {
        const auto cur = theta.block(k);
        const auto ref = theta0.block(k);
        double diff_sq = 0.0;
        double ref_sq = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i)
        {
            const double d = cur[i] - ref[i];
            diff_sq += d * d;
            ref_sq += ref[i] * ref[i];
        }
        const double diff = std::sqrt(diff_sq);
        const double ref_norm = std::sqrt(ref_sq);
        total += ref_norm > 0.0 ? diff / ref_norm : diff;
    }
    return total / static_cast<double>(layout.block_count());
}

double significant_change_fraction(const PartitionedVector& theta,
                                   const PartitionedVector& theta0, double threshold)
{
    require_same_layout(theta, theta0, "significant_change_fraction");
    if (!(threshold > 0.0))
    {
        throw ConfigError("threshold must be positive");
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        if (std::fabs(theta[i] - theta0[i]) > threshold)
        {
            ++count;
        }
    }
    return static_cast<double>(count) / static_cast<double>(theta.size());
}

EnvelopeResult convergence_envelope(const RunRecord& record)
{
    if (record.rows.size() < 100)
    {
        throw ConfigError("convergence envelope needs at least 100 steps");
    }
    EnvelopeResult result;
    result.min_grad_curve.reserve(record.rows.size());
    double running = record.rows.front().grad_inf;
    for (const RunRow& row : record.rows)
    {
        running = std::min(running, row.grad_inf);
        result.min_grad_curve.emplace_back(row.t, running);
    }

    result.exponent_applicable = record.lr_kind == LrSchedule::Kind::inverse_sqrt;

    // Slope of log(min grad) vs log(T) over the last decade. Exact zeros are
    // clamped to the smallest positive double; a run that touched an exact
    // critical point fits an arbitrarily steep decay.
    const std::int64_t t_max = record.rows.back().t;
    const std::int64_t t_lo = t_max / 10;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const auto& [t, g] : result.min_grad_curve)
    {
        if (t < t_lo)
        {
            continue;
        }
        const double x = std::log(static_cast<double>(t));
        const double y = std::log(std::max(g, 5e-324));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    result.fitted_rate_exponent = denom != 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / denom
                                               : 0.0;
    return result;
}

}  // namespace mofo

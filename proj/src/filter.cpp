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

#include "mofo/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mofo/errors.hpp"

namespace mofo
{

namespace
{

void require_alpha(double alpha_pct)
{
    if (!(alpha_pct > 0.0) || alpha_pct > 100.0 || !std::isfinite(alpha_pct))
    {
        throw ConfigError("alpha_pct must lie in (0, 100], got " + std::to_string(alpha_pct));
    }
}

// Indices of the top-k magnitudes of `block`, magnitude descending, index
// ascending on ties. The comparator is a total order, so any conforming sort
// returns the same selection on every platform.
void select_top(std::span<const double> block, std::size_t k, std::vector<std::size_t>& order)
{
    order.resize(block.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto cmp = [&block](std::size_t a, std::size_t b)
    {
        const double ma = std::fabs(block[a]);
        const double mb = std::fabs(block[b]);
        if (ma != mb)
        {
            return ma > mb;
        }
        return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      cmp);
}

}  // namespace

FilterMask::FilterMask(LayoutPtr layout, std::vector<std::uint8_t> bits)
    : layout_(std::move(layout)), bits_(std::move(bits))
{
    if (!layout_)
    {
        throw ConfigError("null layout");
    }
    if (bits_.size() != layout_->dim())
    {
        throw ConfigError("mask bit count does not match layout dimension");
    }
    set_counts_.reserve(layout_->block_count());
    for (std::size_t k = 0; k < layout_->block_count(); ++k)
    {
        const auto& b = layout_->block(k);
        std::size_t count = 0;
        for (std::size_t i = b.offset; i < b.offset + b.length; ++i)
        {
            count += bits_[i] != 0 ? 1 : 0;
        }
        set_counts_.push_back(count);
        total_set_ += count;
    }
}

std::size_t top_count(std::size_t block_len, double alpha_pct)
{
    require_alpha(alpha_pct);
    // ceil(block_len * alpha_pct / 100) can overshoot when the product is not
    // exactly representable (e.g. 30 * 0.1); fix up against k*100 >= d*alpha,
    // which is exact whenever alpha itself is.
    const double target = static_cast<double>(block_len) * alpha_pct;
    auto k = static_cast<std::size_t>(std::ceil(target / 100.0));
    while (k > 0 && static_cast<double>(k - 1) * 100.0 >= target)
    {
        --k;
    }
    while (static_cast<double>(k) * 100.0 < target)
    {
        ++k;
    }
    return std::clamp<std::size_t>(k, 1, block_len);
}

FilterMask top_alpha_mask(const PartitionedVector& v, double alpha_pct)
{
    require_alpha(alpha_pct);
    v.ensure_finite("top_alpha_mask input");
    std::vector<std::uint8_t> bits(v.size(), 0);
    std::vector<std::size_t> order;
    const auto& layout = *v.layout();
    for (std::size_t k = 0; k < layout.block_count(); ++k)
    {
        const auto block = v.block(k);
        const std::size_t take = top_count(block.size(), alpha_pct);
        select_top(block, take, order);
        const std::size_t offset = layout.block(k).offset;
        for (std::size_t j = 0; j < take; ++j)
        {
            bits[offset + order[j]] = 1;
        }
    }
    return FilterMask(v.layout(), std::move(bits));
}

double top_alpha_norm(const PartitionedVector& v, double alpha_pct)
{
    const FilterMask mask = top_alpha_mask(v, alpha_pct);
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (mask.test(i))
        {
            sum += std::fabs(v[i]);
        }
    }
    return sum;
}

PartitionedVector apply_mask(const PartitionedVector& v, const FilterMask& mask)
{
    if (!(v.layout() == mask.layout() || *v.layout() == *mask.layout()))
    {
        throw ConfigError("layout mismatch in apply_mask");
    }
    PartitionedVector out(v.layout());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        out[i] = mask.test(i) ? v[i] : 0.0;
    }
    return out;
}

}  // namespace mofo

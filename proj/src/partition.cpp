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

#include "mofo/partition.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mofo/errors.hpp"

namespace mofo
{

std::shared_ptr<const BlockLayout> BlockLayout::make(
    const std::vector<std::pair<std::string, std::size_t>>& blocks)
{
    if (blocks.empty())
    {
        throw ConfigError("layout needs at least one block");
    }
    auto layout = std::shared_ptr<BlockLayout>(new BlockLayout());
    std::unordered_set<std::string> seen;
    std::size_t offset = 0;
    for (const auto& [name, length] : blocks)
    {
        if (length == 0)
        {
            throw ConfigError("block '" + name + "' has zero length");
        }
        if (!seen.insert(name).second)
        {
            throw ConfigError("duplicate block name '" + name + "'");
        }
        layout->blocks_.push_back(Block{name, length, offset});
        offset += length;
    }
    layout->dim_ = offset;
    return layout;
}

const BlockLayout::Block& BlockLayout::block(std::size_t k) const
{
    if (k >= blocks_.size())
    {
        throw ConfigError("block index " + std::to_string(k) + " out of range (B=" +
                          std::to_string(blocks_.size()) + ")");
    }
    return blocks_[k];
}

bool BlockLayout::operator==(const BlockLayout& other) const
{
    if (dim_ != other.dim_ || blocks_.size() != other.blocks_.size())
    {
        return false;
    }
    for (std::size_t k = 0; k < blocks_.size(); ++k)
    {
        if (blocks_[k].name != other.blocks_[k].name ||
            blocks_[k].length != other.blocks_[k].length)
        {
            return false;
        }
    }
    return true;
}

LayoutPtr single_block_layout(std::size_t length, std::string_view name)
{
    return BlockLayout::make({{std::string(name), length}});
}

PartitionedVector::PartitionedVector(LayoutPtr layout)
    : layout_(std::move(layout)), values_(layout_ ? layout_->dim() : 0, 0.0)
{
    if (!layout_)
    {
        throw ConfigError("null layout");
    }
}

PartitionedVector::PartitionedVector(LayoutPtr layout, std::vector<double> values)
    : layout_(std::move(layout)), values_(std::move(values))
{
    if (!layout_)
    {
        throw ConfigError("null layout");
    }
    if (values_.size() != layout_->dim())
    {
        throw ConfigError("value count " + std::to_string(values_.size()) +
                          " does not match layout dimension " + std::to_string(layout_->dim()));
    }
    ensure_finite("vector construction");
}

std::span<double> PartitionedVector::block(std::size_t k)
{
    const auto& b = layout_->block(k);
    return std::span<double>(values_.data() + b.offset, b.length);
}

std::span<const double> PartitionedVector::block(std::size_t k) const
{
    const auto& b = layout_->block(k);
    return std::span<const double>(values_.data() + b.offset, b.length);
}

void PartitionedVector::ensure_finite(std::string_view what) const
{
    for (std::size_t i = 0; i < values_.size(); ++i)
    {
        if (!std::isfinite(values_[i]))
        {
            throw NumericError("non-finite entry at index " + std::to_string(i) + " in " +
                               std::string(what));
        }
    }
}

void PartitionedVector::fill(double value)
{
    std::fill(values_.begin(), values_.end(), value);
}

bool same_layout(const PartitionedVector& a, const PartitionedVector& b)
{
    return a.layout() == b.layout() || *a.layout() == *b.layout();
}

void require_same_layout(const PartitionedVector& a, const PartitionedVector& b,
                         std::string_view context)
{
    if (!same_layout(a, b))
    {
        throw ConfigError("layout mismatch in " + std::string(context));
    }
}

}  // namespace mofo

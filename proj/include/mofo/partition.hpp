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

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mofo
{

/// Immutable description of a flat parameter vector split into named
/// contiguous blocks (one block per weight matrix / bias vector in the MLP
/// setting). Offsets are contiguous starting at 0.
class BlockLayout
{
public:
    struct Block
    {
        std::string name;
        std::size_t length = 0;
        std::size_t offset = 0;
    };

    /// Builds a layout from ordered (name, length) pairs.
    /// Throws ConfigError on an empty list, a zero length, or a duplicate name.
    static std::shared_ptr<const BlockLayout> make(
        const std::vector<std::pair<std::string, std::size_t>>& blocks);

    std::size_t dim() const { return dim_; }
    std::size_t block_count() const { return blocks_.size(); }
    const Block& block(std::size_t k) const;
    const std::vector<Block>& blocks() const { return blocks_; }

    bool operator==(const BlockLayout& other) const;

private:
    BlockLayout() = default;

    std::vector<Block> blocks_;
    std::size_t dim_ = 0;
};

using LayoutPtr = std::shared_ptr<const BlockLayout>;

/// Shorthand for the common single-block layout.
LayoutPtr single_block_layout(std::size_t length, std::string_view name = "theta");

/// Flat vector of 64-bit floats with a shared block layout. Value type: copies
/// are deep and never alias. All entries must be finite; a constructor with
/// values rejects NaN/Inf.
class PartitionedVector
{
public:
    explicit PartitionedVector(LayoutPtr layout);
    PartitionedVector(LayoutPtr layout, std::vector<double> values);

    const LayoutPtr& layout() const { return layout_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Read/write view of block k. Throws ConfigError if k is out of range.
    std::span<double> block(std::size_t k);
    std::span<const double> block(std::size_t k) const;

    /// Throws NumericError naming `what` if any entry is NaN or Inf.
    void ensure_finite(std::string_view what) const;

    void fill(double value);

private:
    LayoutPtr layout_;
    std::vector<double> values_;
};

/// True when both vectors share structurally equal layouts.
bool same_layout(const PartitionedVector& a, const PartitionedVector& b);

/// Throws ConfigError unless the two layouts match.
void require_same_layout(const PartitionedVector& a, const PartitionedVector& b,
                         std::string_view context);

}  // namespace mofo

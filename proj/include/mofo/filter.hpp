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
#include <cstdint>
#include <vector>

#include "mofo/partition.hpp"

namespace mofo
{

/// Per-block boolean selection. Within each block, exactly
/// top_count(d_k, alpha) bits are set, marking the largest-magnitude entries,
/// ties resolved toward smaller indices.
class FilterMask
{
public:
    FilterMask(LayoutPtr layout, std::vector<std::uint8_t> bits);

    const LayoutPtr& layout() const { return layout_; }
    bool test(std::size_t i) const { return bits_[i] != 0; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    /// Number of set bits in block k.
    const std::vector<std::size_t>& set_counts() const { return set_counts_; }
    std::size_t total_set() const { return total_set_; }

private:
    LayoutPtr layout_;
    std::vector<std::uint8_t> bits_;
    std::vector<std::size_t> set_counts_;
    std::size_t total_set_ = 0;
};

/// Number of entries selected in a block of length `block_len` at update
/// fraction alpha_pct: the smallest k with k * 100 >= block_len * alpha_pct
/// (i.e. ceil(block_len * alpha_pct / 100) evaluated without floating-point
/// ceil overshoot), clamped to [1, block_len].
std::size_t top_count(std::size_t block_len, double alpha_pct);

/// The top-alpha% filter: per block, marks the top_count(d_k, alpha) entries
/// of largest |value|; ties go to the smallest index. Deterministic: identical
/// input bits give identical mask bits.
/// Throws ConfigError if alpha_pct is outside (0, 100].
FilterMask top_alpha_mask(const PartitionedVector& v, double alpha_pct);

/// Sum of |value| over the entries selected by top_alpha_mask(v, alpha_pct).
/// Equals the l1 norm at alpha = 100. This is a norm on R^d.
double top_alpha_norm(const PartitionedVector& v, double alpha_pct);

/// Elementwise product of v with the 0/1 mask. Throws ConfigError on layout
/// mismatch.
PartitionedVector apply_mask(const PartitionedVector& v, const FilterMask& mask);

}  // namespace mofo

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

#include <optional>
#include <string_view>
#include <utility>

#include "mofo/partition.hpp"

namespace mofo
{

enum class RegKind
{
    none,
    l1,  // lambda * ||theta - theta0||_1, subgradient lambda * sign(theta - theta0)
    l2   // lambda * ||theta - theta0||_2^2, gradient 2 * lambda * (theta - theta0)
};

RegKind reg_kind_from_string(std::string_view name);
std::string_view to_string(RegKind kind);

/// Distance-to-initialization penalty added to a base objective.
struct RegSpec
{
    RegKind kind = RegKind::none;
    double lambda = 0.0;
    std::optional<PartitionedVector> theta0;  // required unless kind == none

    void validate(const LayoutPtr& layout) const;
};

/// Adds the penalty value to base_loss and the (sub)gradient to base_grad.
/// sign(0) = 0 for the l1 subgradient.
std::pair<double, PartitionedVector> regularized_loss_and_grad(double base_loss,
                                                               const PartitionedVector& base_grad,
                                                               const PartitionedVector& theta,
                                                               const RegSpec& spec);

}  // namespace mofo

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

#include "mofo/regularizers.hpp"

#include <cmath>

#include "mofo/errors.hpp"

namespace mofo
{

RegKind reg_kind_from_string(std::string_view name)
{
    if (name == "none") return RegKind::none;
    if (name == "l1") return RegKind::l1;
    if (name == "l2") return RegKind::l2;
    throw ConfigError("unknown regularizer '" + std::string(name) + "'");
}

std::string_view to_string(RegKind kind)
{
    switch (kind)
    {
        case RegKind::none: return "none";
        case RegKind::l1: return "l1";
        case RegKind::l2: return "l2";
    }
    return "?";
}

void RegSpec::validate(const LayoutPtr& layout) const
{
    if (lambda < 0.0)
    {
        throw ConfigError("regularizer lambda must be nonnegative");
    }
    if (kind == RegKind::none)
    {
        return;
    }
    if (!theta0.has_value())
    {
        throw ConfigError("regularizer needs a reference point theta0");
    }
    if (!(theta0->layout() == layout || *theta0->layout() == *layout))
    {
        throw ConfigError("regularizer theta0 layout mismatch");
    }
}

std::pair<double, PartitionedVector> regularized_loss_and_grad(double base_loss,
                                                               const PartitionedVector& base_grad,
                                                               const PartitionedVector& theta,
                                                               const RegSpec& spec)
{
    require_same_layout(base_grad, theta, "regularized_loss_and_grad");
    spec.validate(theta.layout());
    if (spec.kind == RegKind::none)
    {
        return {base_loss, base_grad};
    }

    const PartitionedVector& ref = *spec.theta0;
    require_same_layout(ref, theta, "regularized_loss_and_grad theta0");

    double penalty = 0.0;
    PartitionedVector grad = base_grad;
    for (std::size_t i = 0; i < theta.size(); ++i)
    {
        const double d = theta[i] - ref[i];
        if (spec.kind == RegKind::l2)
        {
            penalty += d * d;
            grad[i] += 2.0 * spec.lambda * d;
        }
        else
        {
            penalty += std::fabs(d);
            if (d > 0.0)
            {
                grad[i] += spec.lambda;
            }
            else if (d < 0.0)
            {
                grad[i] -= spec.lambda;
            }
        }
    }
    return {base_loss + spec.lambda * penalty, std::move(grad)};
}

}  // namespace mofo

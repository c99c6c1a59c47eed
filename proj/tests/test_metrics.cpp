#include <doctest.h>

#include <cmath>

#include "mofo/errors.hpp"
#include "mofo/metrics.hpp"
#include "mofo/rng.hpp"

using namespace mofo;

TEST_CASE("block distance is the mean relative change per block")
{
    const auto single = single_block_layout(2);
    const PartitionedVector ref(single, {3.0, 4.0});
    CHECK(block_distance(ref, ref) == 0.0);
    const PartitionedVector doubled(single, {6.0, 8.0});
    CHECK(block_distance(doubled, ref) == doctest::Approx(1.0).epsilon(1e-15));

    const auto two = BlockLayout::make({{"a", 2}, {"b", 2}});
    const PartitionedVector theta0(two, {1.0, 0.0, 0.0, 2.0});
    const PartitionedVector theta(two, {1.2, 0.0, 0.0, 2.8});
    CHECK(block_distance(theta, theta0) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("zero-reference blocks fall back to absolute change")
{
    const auto layout = BlockLayout::make({{"a", 2}, {"b", 1}});
    const PartitionedVector theta0(layout, {0.0, 0.0, 2.0});
    const PartitionedVector theta(layout, {3.0, 4.0, 2.0});
    CHECK(block_distance(theta, theta0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(block_distance(theta0, theta0) == 0.0);
}

TEST_CASE("block distance scales linearly in the perturbation")
{
    CounterRng rng(21);
    const auto layout = BlockLayout::make({{"a", 3}, {"b", 4}});
    PartitionedVector theta0(layout);
    PartitionedVector delta(layout);
    for (std::size_t i = 0; i < theta0.size(); ++i)
    {
        theta0[i] = rng.uniform(0.5, 2.0);  // no zero-norm blocks
        delta[i] = rng.uniform(-1.0, 1.0);
    }
    PartitionedVector theta1(layout);
    PartitionedVector theta3(layout);
    for (std::size_t i = 0; i < theta0.size(); ++i)
    {
        theta1[i] = theta0[i] + delta[i];
        theta3[i] = theta0[i] + 3.0 * delta[i];
    }
    CHECK(block_distance(theta3, theta0) ==
          doctest::Approx(3.0 * block_distance(theta1, theta0)).epsilon(1e-12));

    PartitionedVector other(single_block_layout(7));
    CHECK_THROWS_AS(block_distance(theta0, other), ConfigError);
}

TEST_CASE("significant change counts strict threshold crossings")
{
    const auto layout = single_block_layout(4);
    const PartitionedVector theta0(layout);
    CHECK(significant_change_fraction(theta0, theta0, 2e-6) == 0.0);

    const PartitionedVector at_threshold(layout, {2e-6, 0.0, 0.0, 0.0});
    CHECK(significant_change_fraction(at_threshold, theta0, 2e-6) == 0.0);

    const PartitionedVector half(layout, {1.0, 1.0, 0.0, 0.0});
    CHECK(significant_change_fraction(half, theta0, 2e-6) == 0.5);

    CHECK_THROWS_AS(significant_change_fraction(theta0, theta0, 0.0), ConfigError);
    CHECK_THROWS_AS(significant_change_fraction(theta0, theta0, -1.0), ConfigError);
}

namespace
{

RunRecord synth_record(const std::vector<double>& grads, LrSchedule::Kind kind)
{
    RunRecord record;
    record.lr_kind = kind;
    for (std::size_t i = 0; i < grads.size(); ++i)
    {
        RunRow row;
        row.t = static_cast<std::int64_t>(i + 1);
        row.lr = kind == LrSchedule::Kind::inverse_sqrt
                     ? 0.1 / std::sqrt(static_cast<double>(i + 1))
                     : 0.1;
        row.grad_inf = grads[i];
        record.rows.push_back(row);
    }
    return record;
}

}  // namespace

TEST_CASE("the envelope of a strictly decreasing sequence is the sequence")
{
    std::vector<double> grads(200);
    for (std::size_t i = 0; i < grads.size(); ++i)
    {
        grads[i] = 10.0 - static_cast<double>(i) * 0.01;
    }
    const auto env = convergence_envelope(synth_record(grads, LrSchedule::Kind::inverse_sqrt));
    for (std::size_t i = 0; i < grads.size(); ++i)
    {
        CHECK(env.min_grad_curve[i].second == grads[i]);
    }
}

TEST_CASE("a c/sqrt(t) sequence fits an exponent near -1/2")
{
    std::vector<double> grads(10000);
    for (std::size_t i = 0; i < grads.size(); ++i)
    {
        grads[i] = 3.7 / std::sqrt(static_cast<double>(i + 1));
    }
    const auto env = convergence_envelope(synth_record(grads, LrSchedule::Kind::inverse_sqrt));
    CHECK(env.exponent_applicable);
    CHECK(env.fitted_rate_exponent == doctest::Approx(-0.5).epsilon(0.05));
}

TEST_CASE("a constant sequence fits an exponent near zero")
{
    const std::vector<double> grads(1000, 2.5);
    const auto env = convergence_envelope(synth_record(grads, LrSchedule::Kind::inverse_sqrt));
    CHECK(std::fabs(env.fitted_rate_exponent) < 1e-9);
}

TEST_CASE("constant-lr records compute the envelope but flag the exponent")
{
    std::vector<double> grads(500);
    for (std::size_t i = 0; i < grads.size(); ++i)
    {
        grads[i] = 1.0 / static_cast<double>(i + 1);
    }
    const auto env = convergence_envelope(synth_record(grads, LrSchedule::Kind::constant));
    CHECK_FALSE(env.exponent_applicable);
    CHECK(env.min_grad_curve.size() == 500);
}

TEST_CASE("running minimum never increases")
{
    CounterRng rng(22);
    std::vector<double> grads(400);
    for (double& g : grads)
    {
        g = rng.uniform(0.0, 5.0);
    }
    const auto env = convergence_envelope(synth_record(grads, LrSchedule::Kind::inverse_sqrt));
    for (std::size_t i = 1; i < env.min_grad_curve.size(); ++i)
    {
        CHECK(env.min_grad_curve[i].second <= env.min_grad_curve[i - 1].second);
    }
}

TEST_CASE("short records are rejected")
{
    const std::vector<double> grads(99, 1.0);
    CHECK_THROWS_AS(convergence_envelope(synth_record(grads, LrSchedule::Kind::inverse_sqrt)),
                    ConfigError);
}

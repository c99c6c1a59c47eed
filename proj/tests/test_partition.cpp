#include <doctest.h>

#include <cmath>
#include <limits>

#include "mofo/errors.hpp"
#include "mofo/partition.hpp"
#include "mofo/rng.hpp"

using namespace mofo;

TEST_CASE("layout offsets are contiguous")
{
    const auto layout = BlockLayout::make({{"w1", 4}, {"b1", 2}});
    CHECK(layout->dim() == 6);
    CHECK(layout->block_count() == 2);
    CHECK(layout->block(0).offset == 0);
    CHECK(layout->block(1).offset == 4);
    CHECK(layout->block(1).name == "b1");

    const auto single = BlockLayout::make({{"x", 1}});
    CHECK(single->dim() == 1);
    CHECK(single->block_count() == 1);
}

TEST_CASE("layout construction rejects bad block lists")
{
    CHECK_THROWS_AS(BlockLayout::make({{"a", 2}, {"a", 3}}), ConfigError);
    CHECK_THROWS_AS(BlockLayout::make({{"a", 0}}), ConfigError);
    CHECK_THROWS_AS(BlockLayout::make({}), ConfigError);
}

TEST_CASE("block views select exactly the block's entries")
{
    const auto layout = BlockLayout::make({{"w1", 4}, {"b1", 2}});
    PartitionedVector v(layout, {0, 1, 2, 3, 4, 5});
    const auto b1 = v.block(1);
    REQUIRE(b1.size() == 2);
    CHECK(b1[0] == 4);
    CHECK(b1[1] == 5);

    const auto single = BlockLayout::make({{"x", 3}});
    PartitionedVector w(single, {7, 8, 9});
    CHECK(w.block(0).size() == 3);

    CHECK_THROWS_AS(v.block(2), ConfigError);
}

TEST_CASE("vectors reject non-finite and mis-sized values")
{
    const auto layout = single_block_layout(2);
    CHECK_THROWS_AS(PartitionedVector(layout, {1.0}), ConfigError);
    CHECK_THROWS_AS(PartitionedVector(layout, {1.0, std::nan("")}), NumericError);
    CHECK_THROWS_AS(
        PartitionedVector(layout, {1.0, std::numeric_limits<double>::infinity()}),
        NumericError);
}

TEST_CASE("writes through block views match writes to flat indices")
{
    CounterRng rng(101);
    for (int trial = 0; trial < 200; ++trial)
    {
        const std::size_t n_blocks = 1 + rng.next_below(4);
        std::vector<std::pair<std::string, std::size_t>> spec;
        for (std::size_t k = 0; k < n_blocks; ++k)
        {
            spec.emplace_back("blk" + std::to_string(k), 1 + rng.next_below(8));
        }
        const auto layout = BlockLayout::make(spec);
        PartitionedVector via_view(layout);
        PartitionedVector via_flat(layout);
        for (std::size_t k = 0; k < layout->block_count(); ++k)
        {
            auto view = via_view.block(k);
            const std::size_t offset = layout->block(k).offset;
            for (std::size_t i = 0; i < view.size(); ++i)
            {
                const double x = rng.uniform(-5, 5);
                view[i] = x;
                via_flat[offset + i] = x;
            }
        }
        for (std::size_t i = 0; i < layout->dim(); ++i)
        {
            CHECK(via_view[i] == via_flat[i]);
        }
    }
}

TEST_CASE("concatenating block views reconstructs the flat vector")
{
    CounterRng rng(102);
    const auto layout = BlockLayout::make({{"a", 3}, {"b", 1}, {"c", 5}});
    PartitionedVector v(layout);
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        v[i] = rng.uniform(-1, 1);
    }
    std::vector<double> concat;
    for (std::size_t k = 0; k < layout->block_count(); ++k)
    {
        const auto view = v.block(k);
        concat.insert(concat.end(), view.begin(), view.end());
    }
    REQUIRE(concat.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        CHECK(concat[i] == v[i]);
    }
}

TEST_CASE("copies never alias")
{
    const auto layout = single_block_layout(3);
    PartitionedVector a(layout, {1, 2, 3});
    PartitionedVector b = a;
    b[0] = 99;
    CHECK(a[0] == 1);
}

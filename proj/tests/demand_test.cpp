#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "ddl/demand.hpp"
#include "oracles.hpp"

using namespace ddl;

TEST(DurationVector, PaperExample)
{
    const DurationVector d = duration_vector(DemandProfile({1, 2, 2, 3, 6}, 6));
    EXPECT_EQ(d.counts(), (IntVector{5, 4, 2, 1, 1, 1}));
    EXPECT_EQ(d.population(), 5);
}

TEST(DurationVector, TrivialProfiles)
{
    EXPECT_EQ(duration_vector(DemandProfile({}, 3)).counts(), (IntVector{0, 0, 0}));
    EXPECT_EQ(duration_vector(DemandProfile({3, 3}, 3)).counts(), (IntVector{2, 2, 2}));
    EXPECT_EQ(duration_vector(DemandProfile({0, 0, 1}, 2)).counts(), (IntVector{1, 0}));
}

TEST(DemandProfile, RejectsOutOfRangeDurations)
{
    EXPECT_THROW(DemandProfile({4}, 3), InvalidInput);
    EXPECT_THROW(DemandProfile({-1}, 3), InvalidInput);
}

TEST(DurationVector, RejectsIncreasingCountsOrSmallPopulation)
{
    EXPECT_THROW(DurationVector({1, 2}, 3), InvalidInput);
    EXPECT_THROW(DurationVector({3, 2}, 2), InvalidInput);
    EXPECT_THROW(DurationVector({-1}, 2), InvalidInput);
}

TEST(DemandProfileFromDurations, Examples)
{
    EXPECT_EQ(demand_profile(DurationVector({5, 4, 2, 1, 1, 1}, 5)).durations(), (IntVector{6, 3, 2, 2, 1}));
    EXPECT_EQ(demand_profile(DurationVector({0, 0, 0}, 2)).durations(), (IntVector{0, 0}));
    EXPECT_EQ(demand_profile(DurationVector({14, 0, 0, 0, 0, 0}, 14)).durations(), IntVector(14, 1));
}

TEST(DemandProfileFromDurations, RoundTripAndConservation)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10000; ++trial)
    {
        const DemandProfile h = oracle::random_profile(rng, 1 + trial % 8, 9);
        const DurationVector d = duration_vector(h);
        EXPECT_TRUE(std::is_sorted(d.counts().rbegin(), d.counts().rend()));
        EXPECT_EQ(d.energy(), h.energy());

        const DemandProfile back = demand_profile(d);
        EXPECT_TRUE(std::is_permutation(back.durations().begin(), back.durations().end(), h.durations().begin(),
                                        h.durations().end()));
        EXPECT_EQ(duration_vector(back), d);
    }
}

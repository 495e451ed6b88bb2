#include <random>

#include <gtest/gtest.h>

#include "ddl/procurement.hpp"
#include "oracles.hpp"

using namespace ddl;

namespace
{
const DurationVector kDemand({5, 4, 2, 1, 1, 1}, 5);
}

TEST(ClosedForm, Examples)
{
    // Tail deficits (0,0,-1,-1,0,1).
    EXPECT_EQ(optimal_supplement_cost(IntVector{2, 5, 3, 2, 2, 0}, kDemand, Rational(1)), Rational(1));
    EXPECT_EQ(optimal_supplement_cost(IntVector{1, 5, 3, 1, 2, 2}, kDemand, Rational(7)), Rational(0));
    EXPECT_EQ(optimal_supplement_cost(IntVector(6, 0), kDemand, Rational(1)), Rational(14));
    EXPECT_THROW(optimal_supplement_cost(IntVector(6, 0), kDemand, Rational(-1)), InvalidInput);
}

TEST(OraclePurchase, Examples)
{
    const PurchasePlan plan = oracle_purchase(IntVector{2, 5, 3, 2, 2, 0}, kDemand, Rational(1));
    EXPECT_EQ(plan.purchases, (IntVector{0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(plan.total_cost, Rational(1));
    // Brute force over every a with entries <= 2 agrees on the minimal total.
    EXPECT_EQ(oracle::min_purchase({2, 5, 3, 2, 2, 0}, kDemand.counts(), 2), 1);

    EXPECT_EQ(oracle_purchase(IntVector{1, 5, 3, 1, 2, 2}, kDemand, Rational(3)).purchases, IntVector(6, 0));

    const PurchasePlan shortfall_two = oracle_purchase(IntVector{0, 0}, DurationVector({1, 1}, 1), Rational(2));
    EXPECT_EQ(total(shortfall_two.purchases), 2);
    EXPECT_EQ(shortfall_two.total_cost, Rational(4));
}

TEST(RuntimePurchase, PaperTrace)
{
    const RuntimePurchase out = runtime_purchase(kDemand, IntVector{2, 5, 3, 2, 2, 0});
    EXPECT_EQ(out.plan.purchases, (IntVector{0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(out.plan.total_cost, Rational(1));
    EXPECT_TRUE(verify_allocation(out.allocation, IntVector{2, 5, 3, 2, 2, 1}, demand_profile(kDemand)));
}

TEST(RuntimePurchase, HandTraces)
{
    // a_1 = (d_2 - p_1)^+ = 1, then (1, a_2) must cover (1, 1).
    const RuntimePurchase out = runtime_purchase(DurationVector({1, 1}, 1), IntVector{0, 0});
    EXPECT_EQ(out.plan.purchases, (IntVector{1, 1}));
    EXPECT_EQ(out.plan.total_cost, Rational(2));

    EXPECT_EQ(runtime_purchase(kDemand, IntVector{1, 5, 3, 1, 2, 2}).plan.purchases, IntVector(6, 0));
}

TEST(RuntimePurchase, StepMatchesSubsetEnumeration)
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 3000; ++trial)
    {
        const std::size_t horizon = 1 + trial % 8;
        const IntVector d = sort_desc(oracle::random_vector(rng, horizon, 6));
        const IntVector revealed = oracle::random_vector(rng, 1 + trial % horizon, 6);
        EXPECT_EQ(runtime_step(revealed, d), oracle::runtime_step(revealed, d));
    }
}

TEST(Procurement, ThreeWayAgreementFeasibilityAndMonotonicity)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 2000; ++trial)
    {
        const std::size_t horizon = 1 + trial % 6;
        const DemandProfile h = oracle::random_profile(rng, horizon, 6);
        const DurationVector d = duration_vector(h);
        const IntVector p = oracle::random_vector(rng, horizon, 6);
        const Rational c = oracle::random_price(rng, 9);

        const Rational closed = optimal_supplement_cost(p, d, c);
        const PurchasePlan oracle_plan = oracle_purchase(p, d, c);
        const RuntimePurchase runtime = runtime_purchase(d, p, c);
        EXPECT_EQ(oracle_plan.total_cost, closed);
        EXPECT_EQ(runtime.plan.total_cost, closed);

        for (const IntVector* a : {&oracle_plan.purchases, &runtime.plan.purchases})
        {
            IntVector q = p;
            for (std::size_t t = 0; t < horizon; ++t)
                q[t] += (*a)[t];
            EXPECT_TRUE(weakly_majorizes(d.counts(), q));
            EXPECT_TRUE(verify_allocation(llf_allocate(q, h), q, h));
        }

        std::uniform_int_distribution<std::size_t> slot(0, horizon - 1);
        IntVector more = p;
        ++more[slot(rng)];
        EXPECT_LE(optimal_supplement_cost(more, d, c), closed);
    }
}

TEST(Procurement, ClosedFormMatchesBruteForceBox)
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial)
    {
        const std::size_t horizon = 1 + trial % 4;
        const IntVector d = sort_desc(oracle::random_vector(rng, horizon, 4));
        const IntVector p = oracle::random_vector(rng, horizon, 4);
        EXPECT_EQ(shortfall(p, d), oracle::min_purchase(p, d, 4));
    }
}

// Decisions for a shared prefix never depend on the supply still to come.
TEST(RuntimePurchase, UsesOnlyRevealedSupply)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial)
    {
        const std::size_t horizon = 2 + trial % 6;
        const DurationVector d = duration_vector(oracle::random_profile(rng, horizon, 6));
        IntVector first = oracle::random_vector(rng, horizon, 5);
        IntVector second = first;
        std::uniform_int_distribution<std::size_t> cut(1, horizon - 1);
        const std::size_t prefix = cut(rng);
        const IntVector tail = oracle::random_vector(rng, horizon - prefix, 5);
        std::copy(tail.begin(), tail.end(), second.begin() + static_cast<std::ptrdiff_t>(prefix));

        const IntVector a = runtime_purchase(d, first).plan.purchases;
        const IntVector b = runtime_purchase(d, second).plan.purchases;
        EXPECT_TRUE(std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(prefix), b.begin()));
    }
}

#include <gtest/gtest.h>

#include "detstat/box_counts.hpp"

using namespace detstat;

TEST(BoxCounts, Anchors) {
    EXPECT_EQ(count_box(2, 2, 1), 41);
    EXPECT_EQ(count_box(2, 3, 1), 33);
    EXPECT_EQ(count_box(2, 4, 1), 33);
    EXPECT_EQ(count_box(2, 3, 10), 79233);
    EXPECT_EQ(count_box(2, 1, 2), 625);
    EXPECT_EQ(count_box(1, 2, 3), 3);
}

TEST(BoxCounts, FastPathMatchesEnumeration) {
    for (std::int64_t m = 1; m <= 6; ++m) {
        for (std::int64_t H = 1; H <= 3; ++H) {
            const BoxSpec box = BoxSpec::uniform(2, H);
            EXPECT_EQ(BoxCounter(box).count_mod(m), count_box_enumerate(box, m)) << m << "," << H;
        }
    }
    for (std::int64_t m : {2, 3, 4, 5, 7}) {
        const BoxSpec box = BoxSpec::uniform(3, 1);
        EXPECT_EQ(BoxCounter(box).count_mod(m), count_box_enumerate(box, m)) << m;
    }
    const BoxSpec mixed3(3, {1, 2, 1, 1, 1, 2, 2, 1, 1});
    EXPECT_EQ(BoxCounter(mixed3).count_mod(3), count_box_enumerate(mixed3, 3));
}

TEST(BoxCounts, PerEntryBounds) {
    const BoxSpec box(2, {1, 2, 2, 2});
    EXPECT_EQ(box.size(), 375);
    EXPECT_EQ(count_box_general(2, 2, box.bounds()), count_box_enumerate(box, 2));
    EXPECT_EQ(count_box_general(2, 5, std::vector<std::int64_t>(4, 3)), count_box(2, 5, 3));
    EXPECT_THROW(BoxSpec(2, {1, 0, 1, 1}), DomainError);
}

TEST(BoxCounts, EquidistributionGivesZeroResidual) {
    for (std::int64_t m = 1; m <= 6; ++m) {
        for (std::int64_t H = 1; H <= 20; ++H) {
            if ((2 * H + 1) % m != 0) continue;
            EXPECT_EQ(residual_record(BoxSpec::uniform(2, H), m).residual, 0) << m << "," << H;
        }
    }
    // 2H_ij + 1 = 3 or 9, all divisible by 3
    EXPECT_EQ(residual_record(BoxSpec(2, {1, 4, 4, 1}), 3).residual, 0);
}

TEST(BoxCounts, Residuals) {
    const ResidualRecord a = residual_record(BoxSpec::uniform(2, 1), 2);
    EXPECT_EQ(a.exact_count, 41);
    EXPECT_EQ(a.main_term, Rational(405, 8));
    EXPECT_EQ(a.residual, Rational(-77, 8));
    EXPECT_EQ(Rational(a.exact_count) - a.main_term, a.residual);
    ASSERT_TRUE(a.normalized_exponent.has_value());
    const ResidualRecord b = residual_record(BoxSpec::uniform(2, 1), 4);
    EXPECT_EQ(b.residual, Rational(165, 32));
    EXPECT_FALSE(residual_record(BoxSpec::uniform(2, 10), 3).normalized_exponent.has_value());
    const ResidualReport rep = residual_report(2, {2, 4, 5, 7}, {1, 2});
    EXPECT_EQ(rep.records.size(), 8u);
    EXPECT_TRUE(std::isfinite(rep.slope));
}

TEST(FixedDet, Anchors) {
    EXPECT_EQ(count_fixed_det(2, 1, 0), 33);
    EXPECT_EQ(count_fixed_det(2, 1, 1), 20);
    EXPECT_EQ(count_fixed_det(2, 1, 5), 0);
    EXPECT_EQ(count_fixed_det(2, 2, 0), 129);
    EXPECT_EQ(count_fixed_det(2, 2, 1), 52);
}

TEST(FixedDet, DistributionProperties) {
    for (int n : {2, 3}) {
        for (std::int64_t H : {1, 2}) {
            const DetDistribution d = det_distribution(BoxSpec::uniform(n, H));
            EXPECT_EQ(d.total(), BoxSpec::uniform(n, H).size());
            EXPECT_GE(d.lo, -hadamard_range_i64(n, H));
            EXPECT_LE(d.hi(), hadamard_range_i64(n, H));
            for (std::int64_t a = d.lo; a <= d.hi(); ++a) ASSERT_EQ(d.at(a), d.at(-a));
        }
    }
    // distribution against plain enumeration
    const BoxSpec box = BoxSpec::uniform(3, 1);
    std::map<std::int64_t, std::int64_t> seen;
    enumerate_box(box, {}, [&](std::int64_t det) { ++seen[det]; });
    const DetDistribution d = det_distribution(box);
    for (auto [a, c] : seen) EXPECT_EQ(d.at(a), c) << a;
}

TEST(FixedDet, ModCountsAreSumsOfFixedCounts) {
    for (std::int64_t H : {1, 2}) {
        const DetDistribution d = det_distribution(BoxSpec::uniform(2, H));
        for (std::int64_t m = 1; m <= 4; ++m) {
            BigInt s = 0;
            for (std::int64_t a = d.lo; a <= d.hi(); ++a) {
                if (a % m == 0) s += d.at(a);
            }
            EXPECT_EQ(s, count_box(2, m, H));
        }
    }
}

TEST(FixedDet, MaxReport) {
    const auto rows = fixed_det_max_report(2, {1, 2, 3, 4, 5});
    EXPECT_EQ(rows[0].argmax, 0);
    EXPECT_EQ(rows[0].max_count, 33);
    EXPECT_EQ(rows[1].max_count, 129);
    for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_GE(rows[k].max_count, rows[k - 1].max_count);
}

TEST(BoxCounts, BudgetAndThreads) {
    EnumOptions tight;
    tight.budget = 100;
    EXPECT_THROW(count_box_enumerate(BoxSpec::uniform(2, 3), 2, tight), BudgetExceeded);
    EXPECT_THROW(count_box(3, 2, 2, tight), BudgetExceeded);
    EnumOptions many;
    many.threads = 3;
    EXPECT_EQ(count_box(3, 4, 2, many), count_box(3, 4, 2));
}

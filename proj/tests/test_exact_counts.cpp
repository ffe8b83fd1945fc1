#include <gtest/gtest.h>

#include "detstat/exact_counts.hpp"

using namespace detstat;

TEST(ClosedForms, AnchorValues) {
    EXPECT_EQ(closed_form_N(2, 2), 10);
    EXPECT_EQ(closed_form_N(2, 3), 33);
    EXPECT_EQ(closed_form_N(2, 6), 330);
    EXPECT_EQ(closed_form_N_sq(2, 2), 88);
    EXPECT_EQ(closed_form_N_sq(2, 3), 945);
    EXPECT_EQ(closed_form_N(1, 7), 1);
    EXPECT_EQ(closed_form_N(3, 1), 1);  // the one matrix mod 1 is singular
    EXPECT_THROW(closed_form_N(2, 4), DomainError);
    EXPECT_THROW(closed_form_N_sq(2, 12), DomainError);
}

TEST(ClosedForms, MatchEnumeration) {
    for (std::int64_t d = 1; d <= 12; ++d) {
        if (!is_squarefree(d)) continue;
        EXPECT_EQ(closed_form_N(2, d), oracle_singular_count(2, d)) << d;
    }
    for (std::int64_t d : {2, 3, 5}) EXPECT_EQ(closed_form_N(3, d), oracle_singular_count(3, d)) << d;
    for (std::int64_t d : {2, 3, 5, 6}) EXPECT_EQ(closed_form_N_sq(2, d), oracle_singular_count(2, d * d)) << d;
    EXPECT_EQ(closed_form_N_sq(3, 2), oracle_singular_count(3, 4));
}

TEST(ClosedForms, Multiplicative) {
    EXPECT_EQ(closed_form_N(2, 15), closed_form_N(2, 3) * closed_form_N(2, 5));
    EXPECT_EQ(closed_form_N_sq(3, 6), closed_form_N_sq(3, 2) * closed_form_N_sq(3, 3));
}

TEST(Recurrence, MatchesClosedForm) {
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
        EXPECT_EQ(prime_recurrence_N(0, p), 0);
        EXPECT_EQ(prime_recurrence_N(1, p), 1);
        for (int n = 1; n <= 5; ++n) EXPECT_EQ(prime_recurrence_N(n, p), closed_form_N(n, p)) << n << "," << p;
    }
    EXPECT_THROW(prime_recurrence_N(2, 6), DomainError);
}

TEST(SingularCount, PicksTheRightRoute) {
    EXPECT_EQ(singular_count(2, 6).source, CountSource::ClosedForm);
    EXPECT_EQ(singular_count(2, 36).source, CountSource::ClosedForm);
    const CountRecord r8 = singular_count(2, 8);
    EXPECT_EQ(r8.source, CountSource::Oracle);
    EXPECT_EQ(r8.count, oracle_singular_count(2, 8));
    EXPECT_EQ(singular_count(2, 1).count, 1);
}

TEST(SingularCount, BudgetRefusal) {
    EnumOptions opts;
    opts.budget = 1000;
    EXPECT_THROW(oracle_singular_count(2, 8, opts), BudgetExceeded);
    EXPECT_NO_THROW(oracle_singular_count(2, 5, opts));
}

TEST(SingularCount, ThreadCountDoesNotChangeHistograms) {
    const std::vector<std::int64_t> form{1, 2, 0, 3, 0, 1, 4, 0, 2};
    EnumOptions one, four;
    four.threads = 4;
    EXPECT_EQ(singular_histogram(3, 6, form, one), singular_histogram(3, 6, form, four));
}

TEST(SingularCount, IterationCounterIsCharged) {
    IterationCounter counter;
    EnumOptions opts;
    opts.counter = &counter;
    oracle_singular_count(2, 5, opts);
    EXPECT_EQ(counter.get(), 625u);
}

TEST(LinearSection, FormulaAndOracle) {
    EXPECT_EQ(linear_section_count(2, 2, first_column_form(2, std::vector<std::int64_t>{1, 0})), 6);
    EXPECT_EQ(linear_section_count(2, 3, first_column_form(2, std::vector<std::int64_t>{1, 2})), 15);
    EXPECT_EQ(linear_section_count(3, 2, first_column_form(3, std::vector<std::int64_t>{1, 0, 0})), 184);
    for (auto [n, p] : std::vector<std::pair<int, std::int64_t>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        std::vector<std::int64_t> column(static_cast<std::size_t>(n), 0);
        const auto reference = linear_section_count(n, p, first_column_form(n, [&] {
                                                        auto c = column;
                                                        c[0] = 1;
                                                        return c;
                                                    }()));
        while (detail::advance_digits(column, p)) {
            const auto grid = first_column_form(n, column);
            ASSERT_EQ(linear_section_oracle(n, p, grid), linear_section_count(n, p, grid));
            ASSERT_EQ(linear_section_count(n, p, grid), reference);
        }
    }
}

TEST(LinearSection, RejectsBadForms) {
    EXPECT_THROW(linear_section_count(2, 3, std::vector<std::int64_t>{1, 1, 0, 0}), DomainError);
    EXPECT_THROW(linear_section_count(2, 3, first_column_form(2, std::vector<std::int64_t>{3, 6})), DomainError);
    EXPECT_THROW(linear_section_count(1, 3, std::vector<std::int64_t>{1}), DomainError);
}

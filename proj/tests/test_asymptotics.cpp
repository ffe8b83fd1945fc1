#include <gtest/gtest.h>

#include <fstream>

#include <json.hpp>

#include "detstat/asymptotics.hpp"
#include "detstat/verify.hpp"

using namespace detstat;

TEST(Squarefree, Anchors) {
    EXPECT_EQ(squarefree_direct(2, 1), 48);
    EXPECT_EQ(squarefree_direct(2, 2), 384);
    EXPECT_EQ(squarefree_direct(1, 1), 2);
    EXPECT_EQ(squarefree_sieve(2, 1), 48);
    EXPECT_EQ(squarefree_sieve(2, 2), 384);
    // n = 1 reduces to square-free integers up to H in absolute value
    for (std::int64_t H : {1, 5, 12, 30}) {
        std::int64_t expected = 0;
        for (std::int64_t a = 1; a <= H; ++a) expected += is_squarefree(a) ? 2 : 0;
        EXPECT_EQ(squarefree_sieve(1, H), expected);
        EXPECT_EQ(squarefree_direct(1, H), expected);
    }
}

TEST(Squarefree, NonzeroDivisibleCounts) {
    const NonzeroDivisibleCounter h2(2, 2, {});
    EXPECT_EQ(h2.singular(), 129);
    EXPECT_EQ(h2(1), 496);
    EXPECT_EQ(h2(4), 112);
    const NonzeroDivisibleCounter h1(2, 1, {});
    EXPECT_EQ(h1(1), 48);
    EXPECT_EQ(h1(2), 8);
}

TEST(Squarefree, SieveEqualsDirect) {
    for (std::int64_t H = 1; H <= 8; ++H) {
        EXPECT_EQ(squarefree_sieve(2, H), squarefree_direct(2, H)) << H;
        EXPECT_EQ(squarefree_sieve(2, H, {}, 2), squarefree_direct(2, H)) << H;
    }
    for (std::int64_t H : {1, 2}) EXPECT_EQ(squarefree_sieve(3, H), squarefree_direct(3, H)) << H;
}

TEST(PhiSum, Anchors) {
    EXPECT_EQ(phi_sum_direct(2, 1), 44);
    EXPECT_EQ(phi_sum_direct(2, 2), Rational(4612, 15));
    EXPECT_EQ(phi_sum_direct(1, 2), 3);
    EXPECT_EQ(phi_sum_direct(1, 1), 2);
    EXPECT_EQ(phi_sum_sieve(2, 1), 44);
    EXPECT_EQ(phi_sum_sieve(1, 1), 2);
}

TEST(PhiSum, SieveEqualsDirect) {
    for (std::int64_t H = 1; H <= 8; ++H) {
        EXPECT_EQ(phi_sum_sieve(2, H), phi_sum_direct(2, H)) << H;
        EXPECT_EQ(phi_sum_sieve(2, H, {}, 2), phi_sum_direct(2, H)) << H;
    }
    for (std::int64_t H : {1, 2}) EXPECT_EQ(phi_sum_sieve(3, H), phi_sum_direct(3, H)) << H;
}

TEST(Exponents, ExactValues) {
    EXPECT_EQ(exponent_gamma(2), Rational(10, 19));
    EXPECT_EQ(exponent_gamma(3), Rational(27, 52));
    EXPECT_EQ(exponent_theta(2), Rational(8, 9));
    EXPECT_EQ(exponent_theta(3), Rational(27, 28));
    for (int n : {2, 3, 4}) {
        EXPECT_EQ(delta_exponent(n, SieveKind::Squarefree), exponent_gamma(n));
        EXPECT_EQ(delta_exponent(n, SieveKind::Phi), exponent_theta(n));
        EXPECT_GT(exponent_gamma(n), Rational(1, 2));
        EXPECT_LT(exponent_theta(n), 1);
    }
    EXPECT_NEAR(delta_choice(2, 1000, SieveKind::Phi), std::pow(1000.0, 8.0 / 9), 1e-9);
    EXPECT_THROW(exponent_gamma(1), DomainError);
    EXPECT_THROW(delta_choice(2, 1, SieveKind::Phi), DomainError);
}

TEST(Exponents, SplitPlanStaysInRange) {
    for (std::int64_t H : {2, 5, 40, 1000}) {
        for (auto kind : {SieveKind::Squarefree, SieveKind::Phi}) {
            const SplitPlan p = split_plan(2, H, kind);
            EXPECT_GE(p.delta, 1.0);
            EXPECT_LE(p.delta, static_cast<double>(p.d_max));
        }
    }
}

namespace {

Real zeta_series(int s) {
    // direct partial sum plus Euler-Maclaurin tail, accurate far beyond 1e-12
    const int N = 2000;
    Real sum = 0;
    for (int k = 1; k < N; ++k) sum += 1 / pow(Real(k), s);
    const Real n(N);
    sum += 1 / ((s - 1) * pow(n, s - 1)) + 1 / (2 * pow(n, s)) + Real(s) / (12 * pow(n, s + 1));
    return sum;
}

}  // namespace

TEST(Constants, ZetaCrossChecks) {
    const Real target = 1 / (zeta_series(2) * zeta_series(3));
    const ConstantInterval s2 = euler_constant_S(2, 1'000'000);
    EXPECT_TRUE(s2.contains(target));
    EXPECT_LE(s2.width(), Real("1e-8"));
    EXPECT_LE(abs(s2.mid() - target), Real("1e-9"));
    const Real inv2 = 1 / zeta_series(2);
    EXPECT_TRUE(euler_constant_S(1, 1'000'000).contains(inv2));
    EXPECT_TRUE(euler_constant_sigma(1, 1'000'000).contains(inv2));
    // S_3 = 1/(zeta(2) zeta(3) zeta(4))
    EXPECT_TRUE(euler_constant_S(3, 100'000).contains(target / zeta_series(4)));
}

TEST(Constants, TrivialTruncation) {
    const ConstantInterval c = euler_constant_S(2, 1);
    EXPECT_LT(c.lo, 1);
    EXPECT_GT(c.hi, 1);
    EXPECT_EQ(c.tail_bound_method, "crude 2(n+1)/P");
    const ConstantInterval s = euler_constant_sigma(3, 1);
    EXPECT_TRUE(s.contains(Real(1)));
    EXPECT_THROW(euler_constant_S(2, 0), DomainError);
}

TEST(Constants, IntervalsNest) {
    for (auto which : {EulerConstant::SquarefreeDensity, EulerConstant::PhiDensity}) {
        ConstantInterval prev = euler_constant(which, 2, 1);
        for (std::int64_t P : {2, 3, 10, 58, 59, 60, 100, 1000, 88789, 100'000, 355991, 400'000}) {
            const ConstantInterval cur = euler_constant(which, 2, P);
            EXPECT_LE(prev.lo, cur.lo) << P;
            EXPECT_GE(prev.hi, cur.hi) << P;
            EXPECT_LT(cur.lo, cur.hi);
            prev = cur;
        }
    }
}

TEST(Constants, SigmaTwoRegression) {
    // frozen at implementation time from the P = 10^6 enclosure
    const ConstantInterval c = euler_constant_sigma(2, 1'000'000);
    EXPECT_TRUE(c.contains(Real("0.53589615390")));
    EXPECT_LE(c.width(), Real("1e-8"));
}

TEST(Convergence, LadderGoldens) {
    std::ifstream in(std::string(DETSTAT_TEST_DATA) + "/ladder_goldens.json");
    ASSERT_TRUE(in.good());
    const auto doc = nlohmann::json::parse(in);
    std::vector<std::int64_t> Hs;
    for (const auto& row : doc["ladder"]) Hs.push_back(row["H"].get<std::int64_t>());
    const ConvergenceTable t = convergence_study(2, Hs);
    ASSERT_EQ(t.rows.size(), Hs.size());
    for (std::size_t k = 0; k < Hs.size(); ++k) {
        const auto& g = doc["ladder"][k];
        EXPECT_EQ(t.rows[k].squarefree, BigInt(g["squarefree"].get<std::int64_t>())) << Hs[k];
        EXPECT_EQ(to_string(t.rows[k].phi_sum), g["phi_sum"].get<std::string>()) << Hs[k];
        EXPECT_GE(t.rows[k].squarefree_density, 0);
        EXPECT_LE(t.rows[k].squarefree_density, 1);
        EXPECT_GE(t.rows[k].phi_density, 0);
        EXPECT_LE(t.rows[k].phi_density, 1);
        if (k > 0) {
            EXPECT_LT(t.rows[k].squarefree_gap, t.rows[k - 1].squarefree_gap);
            EXPECT_LT(t.rows[k].phi_gap, t.rows[k - 1].phi_gap);
        }
    }
    EXPECT_EQ(t.rows[0].squarefree_density, Rational(48, 81));
    EXPECT_EQ(t.rows[1].squarefree_density, Rational(384, 625));
    EXPECT_LT(t.squarefree_slope, 0);
    EXPECT_LT(t.phi_slope, 0);
}

TEST(Verify, EverySuiteTagRuns) {
    EXPECT_THROW(run_suite("L9.9", {}), DomainError);
    for (const char* tag : {"L2.2", "L3.1", "L3.3", "L3.6", "L3.7", "C3.9", "L4.2", "L4.3"}) {
        const auto checks = run_suite(tag, {});
        ASSERT_FALSE(checks.empty()) << tag;
        for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.group << " " << c.name << ": " << c.actual;
    }
}

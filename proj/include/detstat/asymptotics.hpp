#pragma once

// Square-free determinant counts S_n(H), the weighted sum
// Phi_n(H) = sum_{det A != 0} phi(|det A|)/|det A|, their Mobius-sieve
// recomputations, the decay exponents and the density ladder.
//
// Both sieves use N*(m; H), the number of A in the box with m | det A and
// det A != 0. Matrices with det A = 0 are divisible by every m, so leaving
// them in would make the identities fail.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "detstat/box_counts.hpp"
#include "detstat/common.hpp"
#include "detstat/euler_products.hpp"
#include "detstat/matrix.hpp"
#include "detstat/sieve.hpp"

namespace detstat {

enum class SieveKind { Squarefree, Phi };

inline const char* to_string(SieveKind k) { return k == SieveKind::Squarefree ? "squarefree" : "phi"; }

namespace detail {

inline std::int64_t determinant_range(int n, std::int64_t H) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    if (H < 1) throw DomainError("box bound must be at least 1");
    return hadamard_range_i64(n, H);
}

}  // namespace detail

/// #{A : |a_ij| <= H, det A != 0 and square-free}.
inline BigInt squarefree_direct(int n, std::int64_t H, const EnumOptions& opts = {}) {
    const std::int64_t R = detail::determinant_range(n, H);
    const DetDistribution dist = det_distribution(BoxSpec::uniform(n, H), opts);
    const SieveTables sieve(std::max<std::int64_t>(R, 2));
    BigInt total = 0;
    for (std::int64_t a = dist.lo; a <= dist.hi(); ++a) {
        if (a != 0 && sieve.is_squarefree(a < 0 ? -a : a)) total += dist.at(a);
    }
    return total;
}

/// sum_{A, det A != 0} phi(|det A|) / |det A|, exactly.
inline Rational phi_sum_direct(int n, std::int64_t H, const EnumOptions& opts = {}) {
    const std::int64_t R = detail::determinant_range(n, H);
    const DetDistribution dist = det_distribution(BoxSpec::uniform(n, H), opts);
    const SieveTables sieve(std::max<std::int64_t>(R, 2));
    std::vector<std::int64_t> by_abs(static_cast<std::size_t>(R + 1), 0);
    for (std::int64_t a = dist.lo; a <= dist.hi(); ++a) {
        if (a != 0) by_abs[static_cast<std::size_t>(a < 0 ? -a : a)] += dist.at(a);
    }
    Rational total = 0;
    for (std::int64_t k = 1; k <= R; ++k) {
        if (by_abs[static_cast<std::size_t>(k)] == 0) continue;
        total += Rational(BigInt(by_abs[static_cast<std::size_t>(k)]) * sieve.euler_phi(k), BigInt(k));
    }
    return total;
}

/// N*(m; H) for every m in `moduli`, sharing one box counter.
class NonzeroDivisibleCounter {
public:
    NonzeroDivisibleCounter(int n, std::int64_t H, const EnumOptions& opts)
        : counter_(BoxSpec::uniform(n, H), opts), range_(detail::determinant_range(n, H)) {
        // no nonzero determinant is divisible by anything above the range
        zero_ = counter_.count_mod(range_ + 1);
    }

    BigInt operator()(std::int64_t m) const {
        if (m > range_) return 0;
        return counter_.count_mod(m) - zero_;
    }

    const BigInt& singular() const noexcept { return zero_; }
    std::int64_t range() const noexcept { return range_; }

private:
    BoxCounter counter_;
    std::int64_t range_;
    BigInt zero_;
};

/// Largest d the sieve must visit: isqrt(n! H^n) for squares, n! H^n for phi.
inline std::int64_t sieve_cutoff(int n, std::int64_t H, SieveKind kind) {
    const std::int64_t R = detail::determinant_range(n, H);
    return kind == SieveKind::Squarefree ? isqrt(R) : R;
}

/// sum_{d <= cutoff} mu(d) N*(d^2; H). `cutoff_scale` > 1 widens the range.
inline BigInt squarefree_sieve(int n, std::int64_t H, const EnumOptions& opts = {}, std::int64_t cutoff_scale = 1) {
    if (cutoff_scale < 1) throw DomainError("cutoff scale must be at least 1");
    const std::int64_t D = sieve_cutoff(n, H, SieveKind::Squarefree) * cutoff_scale;
    const NonzeroDivisibleCounter nstar(n, H, opts);
    const SieveTables sieve(std::max<std::int64_t>(D, 2));
    BigInt total = 0;
    for (std::int64_t d = 1; d <= D; ++d) {
        const int mu = sieve.mobius(d);
        if (mu == 0) continue;
        if (d > nstar.range() / d) break;  // d^2 beyond the range contributes 0 from here on
        total += mu * nstar(d * d);
    }
    return total;
}

/// sum_{d <= cutoff} mu(d)/d N*(d; H).
inline Rational phi_sum_sieve(int n, std::int64_t H, const EnumOptions& opts = {}, std::int64_t cutoff_scale = 1) {
    if (cutoff_scale < 1) throw DomainError("cutoff scale must be at least 1");
    const std::int64_t D = sieve_cutoff(n, H, SieveKind::Phi) * cutoff_scale;
    const NonzeroDivisibleCounter nstar(n, H, opts);
    const SieveTables sieve(std::max<std::int64_t>(D, 2));
    Rational total = 0;
    for (std::int64_t d = 1; d <= std::min(D, nstar.range()); ++d) {
        const int mu = sieve.mobius(d);
        if (mu == 0) continue;
        total += Rational(mu * nstar(d), BigInt(d));
    }
    return total;
}

/// Error-term exponent for square-free determinants:
/// 1/2 + (n-1) / (2(n^3 + 3n^2 - n + 1)).
inline Rational exponent_gamma(int n) {
    if (n < 2) throw DomainError("exponent needs n >= 2");
    const std::int64_t N = n;
    return Rational(1, 2) + Rational(N - 1, 2 * (N * N * N + 3 * N * N - N + 1));
}

/// Error-term exponent for the phi sum: 1 - 1/(n^3 + 1).
inline Rational exponent_theta(int n) {
    if (n < 2) throw DomainError("exponent needs n >= 2");
    const std::int64_t N = n;
    return Rational(1) - Rational(1, N * N * N + 1);
}

/// Exponent e of the split threshold Delta = H^e.
inline Rational delta_exponent(int n, SieveKind kind) {
    if (n < 2) throw DomainError("split threshold needs n >= 2");
    const std::int64_t N = n;
    if (kind == SieveKind::Squarefree) {
        return Rational(N * N * (N + 3), 2 * N * N * (N + 3) - 2 * N + 2);
    }
    return Rational(N * N * N, N * N * N + 1);
}

inline double delta_choice(int n, std::int64_t H, SieveKind kind) {
    if (H < 2) throw DomainError("split threshold needs H >= 2");
    return std::pow(static_cast<double>(H), static_cast<double>(delta_exponent(n, kind)));
}

/// Where the sieve sum is split into a main range d <= Delta and a tail.
struct SplitPlan {
    int n = 0;
    std::int64_t H = 0;
    SieveKind kind = SieveKind::Squarefree;
    double delta = 1.0;
    std::int64_t d_max = 1;
};

inline SplitPlan split_plan(int n, std::int64_t H, SieveKind kind) {
    SplitPlan plan{n, H, kind, delta_choice(n, H, kind), sieve_cutoff(n, H, kind)};
    // at desk scale the asymptotic threshold can overshoot the cutoff
    plan.delta = std::clamp(plan.delta, 1.0, static_cast<double>(std::max<std::int64_t>(plan.d_max, 1)));
    return plan;
}

struct ConvergenceRow {
    std::int64_t H = 0;
    BigInt squarefree;
    Rational phi_sum;
    Rational squarefree_density;  // S / (2H+1)^{n^2}
    Rational phi_density;         // Phi / (2H+1)^{n^2}
    double squarefree_prediction = 0;  // 2^{n^2} S_n H^{n^2} / (2H+1)^{n^2}
    double phi_prediction = 0;
    double squarefree_gap = 0;  // |density - prediction|
    double phi_gap = 0;
    double squarefree_raw_gap = 0;  // |density - constant|
    double phi_raw_gap = 0;
};

struct ConvergenceTable {
    int n = 0;
    std::int64_t truncation = 0;
    ConstantInterval squarefree_constant;
    ConstantInterval phi_constant;
    std::vector<ConvergenceRow> rows;
    double squarefree_slope = std::nan("");  // log gap against log H
    double phi_slope = std::nan("");
};

inline ConvergenceTable convergence_study(int n, const std::vector<std::int64_t>& Hs, const EnumOptions& opts = {},
                                          std::int64_t truncation = 1'000'000) {
    ConvergenceTable t;
    t.n = n;
    t.truncation = truncation;
    t.squarefree_constant = euler_constant_S(n, truncation);
    t.phi_constant = euler_constant_sigma(n, truncation);
    const double cs = static_cast<double>(t.squarefree_constant.mid());
    const double cp = static_cast<double>(t.phi_constant.mid());
    std::vector<double> xs, ys_s, ys_p;
    for (auto H : Hs) {
        ConvergenceRow row;
        row.H = H;
        row.squarefree = squarefree_direct(n, H, opts);
        row.phi_sum = phi_sum_direct(n, H, opts);
        const auto cells = static_cast<std::uint64_t>(n * n);
        const BigInt volume = big_pow(BigInt(2 * H + 1), cells);
        row.squarefree_density = Rational(row.squarefree, volume);
        row.phi_density = row.phi_sum / Rational(volume);
        const double shrink = std::pow(2.0 * static_cast<double>(H) / (2.0 * static_cast<double>(H) + 1.0),
                                       static_cast<double>(cells));
        row.squarefree_prediction = cs * shrink;
        row.phi_prediction = cp * shrink;
        row.squarefree_gap = std::abs(static_cast<double>(row.squarefree_density) - row.squarefree_prediction);
        row.phi_gap = std::abs(static_cast<double>(row.phi_density) - row.phi_prediction);
        row.squarefree_raw_gap = std::abs(static_cast<double>(row.squarefree_density) - cs);
        row.phi_raw_gap = std::abs(static_cast<double>(row.phi_density) - cp);
        t.rows.push_back(row);
        xs.push_back(std::log(static_cast<double>(H)));
        ys_s.push_back(std::log(std::max(row.squarefree_gap, 1e-300)));
        ys_p.push_back(std::log(std::max(row.phi_gap, 1e-300)));
    }
    t.squarefree_slope = fit_slope(xs, ys_s);
    t.phi_slope = fit_slope(xs, ys_p);
    return t;
}

}  // namespace detstat

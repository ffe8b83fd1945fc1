#pragma once

// Rigorous enclosures of the Euler products
//
//   S_n     = prod_p prod_{j=2}^{n+1} (1 - p^{-j})
//   sigma_n = prod_p (1 - 1/p) (1 + (1/p) prod_{j=2}^{n} (1 - p^{-j}))
//
// The product over p <= P is formed in 50-digit binary floating point and
// widened by a bound on its accumulated rounding error. Every factor is
// below 1, so the tail over p > P is exp(-T) with T = sum_{p>P} g(p),
// g(p) = -log f_p >= 0. T is enclosed in three ways:
//
//   * crude:   |g(p)| <= 2(n+1)/p^2, so |T| <= 2(n+1) sum_{m>P} m^{-2} <= 2(n+1)/P;
//   * prime counting: c_lo p^{-2} <= g(p) <= c_hi p^{-2} for p > P and
//     sum_{p>P} p^{-2} = -pi(P)/P^2 + 2 int_P^inf pi(t) t^{-3} dt, with
//     pi(t) bracketed by the explicit Rosser-Schoenfeld bounds
//     x/ln x (1 + 1/(2 ln x)) < pi(x) (x >= 59) and
//     pi(x) < x/ln x (1 + 3/(2 ln x)) (x > 1), or Dusart's sharper
//     x/ln x (1 + 1/ln x + 1.8/ln^2 x) <= pi(x) (x >= 88789) and
//     pi(x) <= x/ln x (1 + 1/ln x + 2.51/ln^2 x) (x >= 355991);
//   * the same enclosures taken at every prime Q <= P and carried forward
//     through the exactly known factors between Q and P, then intersected.
//     This makes the intervals nest as P grows.

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "detstat/common.hpp"
#include "detstat/sieve.hpp"

namespace detstat {

using Real = boost::multiprecision::cpp_bin_float_50;

enum class EulerConstant { SquarefreeDensity, PhiDensity };

struct ConstantInterval {
    std::string name;
    int n = 0;
    std::int64_t truncation = 0;
    Real lo;
    Real hi;
    std::string tail_bound_method;

    Real width() const { return hi - lo; }
    Real mid() const { return (lo + hi) / 2; }
    bool contains(const Real& v) const { return lo <= v && v <= hi; }
};

namespace detail {

struct TailInterval {
    long double lo;
    long double hi;
};

// Relative slack applied to long double computations of tail quantities;
// far above the few-ulp error of the operations involved.
inline constexpr long double kTailSlack = 1e-15L;

// Encloses J_k = int_Q^inf t^{-2} (ln t)^{-k} dt for k = 1..3 via
// J_k = 1/(Q L^k) - k J_{k+1}, starting from 0 <= J_K <= 1/(Q L^K).
inline std::vector<TailInterval> log_power_integrals(long double Q) {
    constexpr int K = 10;
    const long double L = std::log(Q);
    std::vector<TailInterval> J(K + 1);
    J[K] = {0.0L, 1.0L / (Q * std::pow(L, K))};
    for (int k = K - 1; k >= 1; --k) {
        const long double head = 1.0L / (Q * std::pow(L, k));
        J[k] = {head - k * J[k + 1].hi, head - k * J[k + 1].lo};
        J[k].lo = std::max(0.0L, J[k].lo * (1 - kTailSlack));
        J[k].hi *= 1 + kTailSlack;
    }
    return J;
}

// Enclosure of sum_{p > Q} p^{-2} given pi(Q); empty optional semantics via
// ok = false when no explicit prime bound applies at Q.
struct PrimeTail {
    bool ok = false;
    TailInterval sum{0, 0};
    std::string method;
};

inline PrimeTail prime_square_tail(std::int64_t Q, std::int64_t pi_Q) {
    PrimeTail out;
    if (Q < 59) return out;
    const auto q = static_cast<long double>(Q);
    const auto J = log_power_integrals(q);
    // pi(t) t^{-3} = t^{-2} (1/ln t)(1 + a/ln t + b/ln^2 t)
    long double a_lo = 0.5L, b_lo = 0.0L, a_hi = 1.5L, b_hi = 0.0L;
    std::string lower = "Rosser-Schoenfeld", upper = "Rosser-Schoenfeld";
    if (Q >= 88789) {
        a_lo = 1.0L;
        b_lo = 1.8L;
        lower = "Dusart";
    }
    if (Q >= 355991) {
        a_hi = 1.0L;
        b_hi = 2.51L;
        upper = "Dusart";
    }
    const long double head = static_cast<long double>(pi_Q) / (q * q);
    const long double lo = -head + 2 * (J[1].lo + a_lo * J[2].lo + b_lo * J[3].lo);
    const long double hi = -head + 2 * (J[1].hi + a_hi * J[2].hi + b_hi * J[3].hi);
    out.ok = true;
    out.sum = {std::max(0.0L, lo * (1 - kTailSlack) - 1e-30L), hi * (1 + kTailSlack) + 1e-30L};
    out.method = lower == upper ? lower : lower + "/" + upper;
    return out;
}

// Bounds c_lo, c_hi with c_lo p^{-2} <= g(p) <= c_hi p^{-2} for all p > Q.
inline TailInterval per_prime_coefficients(EulerConstant which, std::int64_t Q) {
    const auto q = static_cast<long double>(Q);
    if (which == EulerConstant::SquarefreeDensity) {
        return {1.0L, 1.0L / ((1 - 1 / q) * (1 - 1 / (q * q))) * (1 + kTailSlack)};
    }
    const long double delta_max = (1 / (q * q)) * (1 + 1 / (q - 1));
    return {(1 - 1 / (q * (q - 1))) * (1 - kTailSlack), (1 + 1 / (q - 1)) / (1 - delta_max) * (1 + kTailSlack)};
}

// Enclosure of T(Q) = sum_{p > Q} g(p) from the best method valid at Q.
inline TailInterval tail_at(EulerConstant which, int n, std::int64_t Q, std::int64_t pi_Q, std::string* method) {
    const long double crude = 2.0L * (n + 1) / static_cast<long double>(std::max<std::int64_t>(Q, 1)) * (1 + kTailSlack);
    TailInterval t{-crude, crude};
    std::string m = "crude 2(n+1)/P";
    const PrimeTail pt = prime_square_tail(Q, pi_Q);
    if (pt.ok) {
        const TailInterval c = per_prime_coefficients(which, Q);
        const TailInterval refined{c.lo * pt.sum.lo, c.hi * pt.sum.hi};
        t.lo = std::max(t.lo, refined.lo);
        t.hi = std::min(t.hi, refined.hi);
        m = pt.method + " prime-counting tail";
    }
    if (method != nullptr) *method = m;
    return t;
}

// g(p) = -log f_p in long double, and f_p in 50 digits.
inline long double neg_log_factor(EulerConstant which, int n, std::int64_t p) {
    const auto P = static_cast<long double>(p);
    if (which == EulerConstant::SquarefreeDensity) {
        long double g = 0;
        for (int j = 2; j <= n + 1; ++j) g -= std::log1p(-std::pow(P, -j));
        return g;
    }
    long double inner = 1;
    for (int j = 2; j <= n; ++j) inner *= 1 - std::pow(P, -j);
    return -(std::log1p(-1 / P) + std::log1p(inner / P));
}

inline Real factor(EulerConstant which, int n, std::int64_t p) {
    const Real P(p);
    if (which == EulerConstant::SquarefreeDensity) {
        Real f = 1;
        Real pj = P * P;
        for (int j = 2; j <= n + 1; ++j) {
            f *= 1 - 1 / pj;
            pj *= P;
        }
        return f;
    }
    Real inner = 1;
    Real pj = P * P;
    for (int j = 2; j <= n; ++j) {
        inner *= 1 - 1 / pj;
        pj *= P;
    }
    return (1 - 1 / P) * (1 + inner / P);
}

}  // namespace detail

inline ConstantInterval euler_constant(EulerConstant which, int n, std::int64_t P) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    if (P < 1) throw DomainError("truncation point must be at least 1");
    ConstantInterval out;
    out.name = which == EulerConstant::SquarefreeDensity ? "S_n" : "sigma_n";
    out.n = n;
    out.truncation = P;

    // Running enclosure of T_eff = -log(true / prod_{p <= current}).
    std::string method;
    detail::TailInterval eff = detail::tail_at(which, n, 1, 0, &method);
    std::string eff_method = method;

    Real prod = 1;
    std::uint64_t ops = 0;
    if (P >= 2) {
        const SieveTables sieve(P);
        std::int64_t pi = 0;
        for (std::int64_t p : sieve.primes()) {
            ++pi;
            prod *= detail::factor(which, n, p);
            ops += static_cast<std::uint64_t>(3 * n + 6);
            const long double g = detail::neg_log_factor(which, n, p);
            // moving the checkpoint past p removes g(p) from the tail
            eff.lo = eff.lo - g * (1 + detail::kTailSlack) - 1e-30L;
            eff.hi = eff.hi - g * (1 - detail::kTailSlack) + 1e-30L;
            const detail::TailInterval here = detail::tail_at(which, n, p, pi, &method);
            if (here.lo >= eff.lo) eff.lo = here.lo;
            if (here.hi <= eff.hi) {
                eff.hi = here.hi;
                eff_method = method;
            }
        }
    }
    // a genuine tail is a product of factors in (0, 1]
    eff.lo = std::max(eff.lo, 0.0L);
    if (P < 2) eff.lo = std::min(eff.lo, -2.0L * (n + 1) / static_cast<long double>(P));

    const Real rounding = Real(static_cast<double>(ops + 16)) * std::numeric_limits<Real>::epsilon() * 4;
    out.lo = prod * (1 - rounding) * exp(Real(static_cast<double>(-eff.hi))) * (1 - rounding);
    out.hi = prod * (1 + rounding) * exp(Real(static_cast<double>(-eff.lo))) * (1 + rounding);
    out.tail_bound_method = eff_method;
    return out;
}

inline ConstantInterval euler_constant_S(int n, std::int64_t P) {
    return euler_constant(EulerConstant::SquarefreeDensity, n, P);
}

inline ConstantInterval euler_constant_sigma(int n, std::int64_t P) {
    return euler_constant(EulerConstant::PhiDensity, n, P);
}

}  // namespace detstat

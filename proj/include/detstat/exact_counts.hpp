#pragma once

// Counts of singular matrices over Z/m: closed forms for square-free d and
// d^2, the prime recurrence, the linear-section count over F_p, and the
// exhaustive oracles they are checked against.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "detstat/common.hpp"
#include "detstat/residue_enum.hpp"
#include "detstat/sieve.hpp"

namespace detstat {

enum class CountSource { ClosedForm, Oracle, Recurrence };

inline const char* to_string(CountSource s) {
    switch (s) {
        case CountSource::ClosedForm: return "closed-form";
        case CountSource::Oracle: return "oracle";
        case CountSource::Recurrence: return "recurrence";
    }
    return "unknown";
}

struct CountRecord {
    int n = 0;
    std::int64_t modulus = 1;
    BigInt count;
    CountSource source = CountSource::Oracle;
    std::string params;
};

namespace detail {

// d^{n^2 * power} * prod_{p | d} (1 - prod_{j=first}^{last} (1 - p^{-j}))
inline BigInt singular_closed_form(int n, std::int64_t d, int power, int first, int last) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    require_squarefree(d);
    Rational acc = rational_pow(Rational(d), static_cast<std::int64_t>(n) * n * power);
    for (auto [p, e] : factorize(d)) {
        Rational nonsingular = 1;
        for (int j = first; j <= last; ++j) nonsingular *= Rational(1) - rational_pow(Rational(p), -j);
        acc *= Rational(1) - nonsingular;
    }
    if (boost::multiprecision::denominator(acc) != 1) {
        throw Error("internal error: closed form is not integral for n=" + std::to_string(n) +
                    ", d=" + std::to_string(d));
    }
    return boost::multiprecision::numerator(acc);
}

}  // namespace detail

/// N_n(d) = d^{n^2} prod_{p|d} (1 - prod_{j=1}^{n} (1 - p^{-j})), d square-free.
inline BigInt closed_form_N(int n, std::int64_t d) { return detail::singular_closed_form(n, d, 1, 1, n); }

/// N_n(d^2) = d^{2n^2} prod_{p|d} (1 - prod_{j=2}^{n+1} (1 - p^{-j})), d square-free.
inline BigInt closed_form_N_sq(int n, std::int64_t d) { return detail::singular_closed_form(n, d, 2, 2, n + 1); }

/// Number of X in (Z/m)^{n x n} with det X = 0, by exhaustive enumeration.
inline std::int64_t oracle_singular_count(int n, std::int64_t m, const EnumOptions& opts = {}) {
    std::vector<std::int64_t> zero(static_cast<std::size_t>(n > 0 ? n * n : 0), 0);
    const auto hist = singular_histogram(n, m, zero, opts);
    return hist[0];
}

/// N_n(p) via N_n(p) = (1 - p^{-n}) p^{2n-1} N_{n-1}(p) + p^{n^2-n},
/// seeded with N_0(p) = 0 (so that N_1(p) = 1).
inline BigInt prime_recurrence_N(int n, std::int64_t p) {
    require_prime(p);
    if (n < 0) throw DomainError("dimension must be non-negative");
    BigInt prev = 0;  // N_0(p)
    for (int k = 1; k <= n; ++k) {
        const BigInt pk = big_pow(BigInt(p), static_cast<std::uint64_t>(k));
        // (1 - p^{-k}) p^{2k-1} = (p^k - 1) p^{k-1}
        prev = (pk - 1) * big_pow(BigInt(p), static_cast<std::uint64_t>(k - 1)) * prev +
               big_pow(BigInt(p), static_cast<std::uint64_t>(k * k - k));
    }
    return prev;
}

/// Closed form for N_n(m) when m is square-free or the square of a
/// square-free integer; otherwise falls back to the oracle.
inline CountRecord singular_count(int n, std::int64_t m, const EnumOptions& opts = {}) {
    require_modulus(m);
    CountRecord rec{n, m, 0, CountSource::ClosedForm, ""};
    if (is_squarefree(m)) {
        rec.count = closed_form_N(n, m);
        rec.params = "d=" + std::to_string(m);
        return rec;
    }
    const std::int64_t r = isqrt(m);
    if (r * r == m && is_squarefree(r)) {
        rec.count = closed_form_N_sq(n, r);
        rec.params = "d=" + std::to_string(r) + ", modulus=d^2";
        return rec;
    }
    rec.count = oracle_singular_count(n, m, opts);
    rec.source = CountSource::Oracle;
    return rec;
}

/// Coefficients of a linear form l(z) on the first column of an n x n
/// matrix, embedded as an n*n row-major grid.
inline std::vector<std::int64_t> first_column_form(int n, std::span<const std::int64_t> column) {
    if (column.size() != static_cast<std::size_t>(n)) throw DomainError("first-column form needs n coefficients");
    std::vector<std::int64_t> grid(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i * n)] = column[static_cast<std::size_t>(i)];
    return grid;
}

namespace detail {

inline void require_first_column_form(int n, std::int64_t p, std::span<const std::int64_t> grid) {
    if (grid.size() != static_cast<std::size_t>(n * n)) throw DomainError("linear form must have n*n coefficients");
    bool nontrivial = false;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::int64_t v = grid[static_cast<std::size_t>(i * n + j)];
            if (j != 0 && v != 0) throw DomainError("linear form must only involve the first column");
            if (j == 0 && mod_floor(v, p) != 0) nontrivial = true;
        }
    }
    if (!nontrivial) throw DomainError("first-column form is trivial modulo " + std::to_string(p));
}

}  // namespace detail

/// #{(z, Z) in F_p^n x F_p^{n x (n-1)} : det(z|Z) = 0, l(z) = 0}
///   = p^{n(n-1)} + (p^{n-1} - 1) p^{n-1} N_{n-1}(p).
inline BigInt linear_section_count(int n, std::int64_t p, std::span<const std::int64_t> form) {
    if (n < 2) throw DomainError("linear section count needs n >= 2");
    require_prime(p);
    detail::require_first_column_form(n, p, form);
    const BigInt P(p);
    return big_pow(P, static_cast<std::uint64_t>(n * (n - 1))) +
           (big_pow(P, static_cast<std::uint64_t>(n - 1)) - 1) * big_pow(P, static_cast<std::uint64_t>(n - 1)) *
               prime_recurrence_N(n - 1, p);
}

/// Same count by enumerating every (z, Z).
inline std::int64_t linear_section_oracle(int n, std::int64_t p, std::span<const std::int64_t> form,
                                          const EnumOptions& opts = {}) {
    if (n < 2) throw DomainError("linear section count needs n >= 2");
    require_prime(p);
    detail::require_first_column_form(n, p, form);
    return singular_histogram(n, p, form, opts)[0];
}

}  // namespace detstat

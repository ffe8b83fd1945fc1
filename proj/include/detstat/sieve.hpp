#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "detstat/common.hpp"

namespace detstat {

/// Multiplicative-function tables over [1, limit], built by a linear sieve.
/// Index 0 is unused; k = 1 carries mu = 1, phi = 1, squarefree = true.
class SieveTables {
public:
    explicit SieveTables(std::int64_t limit) : limit_(limit) {
        if (limit < 2) throw DomainError("sieve limit must be at least 2, got " + std::to_string(limit));
        const auto n = static_cast<std::size_t>(limit);
        spf_.assign(n + 1, 0);
        mu_.assign(n + 1, 0);
        phi_.assign(n + 1, 0);
        mu_[1] = 1;
        phi_[1] = 1;
        spf_[1] = 1;
        for (std::size_t k = 2; k <= n; ++k) {
            if (spf_[k] == 0) {
                spf_[k] = static_cast<std::int64_t>(k);
                mu_[k] = -1;
                phi_[k] = static_cast<std::int64_t>(k) - 1;
                primes_.push_back(static_cast<std::int64_t>(k));
            }
            for (std::int64_t p : primes_) {
                const std::size_t q = k * static_cast<std::size_t>(p);
                if (p > spf_[k] || q > n) break;
                spf_[q] = p;
                if (p == spf_[k]) {
                    mu_[q] = 0;
                    phi_[q] = phi_[k] * p;
                } else {
                    mu_[q] = -mu_[k];
                    phi_[q] = phi_[k] * (p - 1);
                }
            }
        }
    }

    std::int64_t limit() const noexcept { return limit_; }
    const std::vector<std::int64_t>& primes() const noexcept { return primes_; }

    std::int64_t smallest_prime_factor(std::int64_t k) const { return spf_.at(index(k)); }
    int mobius(std::int64_t k) const { return mu_.at(index(k)); }
    std::int64_t euler_phi(std::int64_t k) const { return phi_.at(index(k)); }
    bool is_squarefree(std::int64_t k) const { return mu_.at(index(k)) != 0; }
    bool is_prime(std::int64_t k) const { return k >= 2 && spf_.at(index(k)) == k; }

    /// Distinct prime factors of k in increasing order.
    std::vector<std::int64_t> prime_factors(std::int64_t k) const {
        std::vector<std::int64_t> out;
        std::size_t i = index(k);
        while (i > 1) {
            const std::int64_t p = spf_[i];
            out.push_back(p);
            while (i % static_cast<std::size_t>(p) == 0) i /= static_cast<std::size_t>(p);
        }
        return out;
    }

private:
    std::size_t index(std::int64_t k) const {
        if (k < 1 || k > limit_) {
            throw DomainError("value " + std::to_string(k) + " outside sieve range [1, " + std::to_string(limit_) + "]");
        }
        return static_cast<std::size_t>(k);
    }

    std::int64_t limit_;
    std::vector<std::int64_t> spf_;
    std::vector<int> mu_;
    std::vector<std::int64_t> phi_;
    std::vector<std::int64_t> primes_;
};

inline SieveTables build_sieves(std::int64_t limit) { return SieveTables(limit); }

// Trial division; the moduli used here are small.
inline bool is_prime(std::int64_t k) {
    if (k < 2) return false;
    if (k % 2 == 0) return k == 2;
    for (std::int64_t q = 3; q <= k / q; q += 2) {
        if (k % q == 0) return false;
    }
    return true;
}

/// Prime factorisation as (prime, exponent) pairs, increasing primes.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t k) {
    if (k < 1) throw DomainError("factorize expects a positive integer, got " + std::to_string(k));
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t q = 2; q <= k / q; ++q) {
        if (k % q != 0) continue;
        int e = 0;
        while (k % q == 0) {
            k /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (k > 1) out.emplace_back(k, 1);
    return out;
}

inline void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw DomainError("expected a prime, got " + std::to_string(p));
}

inline void require_modulus(std::int64_t m) {
    if (m < 1) throw DomainError("modulus must be at least 1, got " + std::to_string(m));
}

/// Throws DomainError naming the repeated prime when d is not square-free.
inline void require_squarefree(std::int64_t d) {
    if (d < 1) throw DomainError("expected a positive square-free integer, got " + std::to_string(d));
    for (auto [p, e] : factorize(d)) {
        if (e > 1) {
            throw DomainError(std::to_string(d) + " is not square-free: divisible by " + std::to_string(p) + "^2");
        }
    }
}

inline bool is_squarefree(std::int64_t d) {
    if (d == 0) return false;
    if (d < 0) d = -d;
    for (auto [p, e] : factorize(d)) {
        if (e > 1) return false;
    }
    return true;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = detail::mod_floor(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1) throw DomainError(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    return detail::mod_floor(old_s, m);
}

inline std::int64_t isqrt(std::int64_t v) {
    if (v < 0) throw DomainError("isqrt of a negative value");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

}  // namespace detstat

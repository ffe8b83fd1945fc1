#pragma once

// Shared vocabulary for the detstat library: exact number types, the error
// hierarchy, enumeration limits and a deterministic parallel reduction.

#include <algorithm>
#include <exception>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace detstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr const char* kVersion = "1.0.0";

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters: non-prime where a prime is required, zero modulus,
// non-square-free d, malformed linear forms.
class DomainError : public Error {
public:
    using Error::Error;
};

// Raised before any work starts when an enumeration would exceed its budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : Error("enumeration needs " + std::to_string(required) +
                " iterations, budget is " + std::to_string(budget)),
          required_(required), budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

class ArithmeticOverflow : public Error {
public:
    using Error::Error;
};

// Shared tally of enumeration work, filled in by library calls when supplied.
struct IterationCounter {
    std::atomic<std::uint64_t> value{0};
    void add(std::uint64_t k) noexcept { value.fetch_add(k, std::memory_order_relaxed); }
    std::uint64_t get() const noexcept { return value.load(std::memory_order_relaxed); }
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ULL;

struct EnumOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
    IterationCounter* counter = nullptr;
};

inline unsigned default_threads() {
    unsigned t = std::thread::hardware_concurrency();
    return t == 0 ? 1U : t;
}

namespace detail {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > kSaturated / base) return kSaturated;
        r *= base;
    }
    return r;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

// Throws BudgetExceeded if `required` exceeds the budget, otherwise records it.
inline void charge(const EnumOptions& opts, std::uint64_t required) {
    if (required > opts.budget) throw BudgetExceeded(required, opts.budget);
    if (opts.counter != nullptr) opts.counter->add(required);
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
    return r;
}

// Splits [0, total) into contiguous chunks, one per worker, and folds the
// partial results left to right. The result does not depend on `threads`
// as long as `combine` is associative.
template <class T, class ChunkFn, class Combine>
T parallel_reduce(std::uint64_t total, unsigned threads, T init, ChunkFn chunk, Combine combine) {
    threads = std::max(1U, threads);
    if (threads == 1 || total < 2 * static_cast<std::uint64_t>(threads)) {
        return combine(std::move(init), chunk(std::uint64_t{0}, total));
    }
    std::vector<T> partial(threads);
    std::vector<std::exception_ptr> failures(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = total * t / threads;
            const std::uint64_t hi = total * (t + 1) / threads;
            pool.emplace_back([&, t, lo, hi] {
                try {
                    partial[t] = chunk(lo, hi);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
    }
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    for (auto& p : partial) init = combine(std::move(init), std::move(p));
    return init;
}

// Element-wise sum of equally sized count vectors.
inline std::vector<std::int64_t> add_counts(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
    if (a.empty()) return b;
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace detail

inline std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline bool fits_int64(const BigInt& v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r *= base;
    return r;
}

inline Rational rational_pow(const Rational& base, std::int64_t exp) {
    Rational r = 1;
    const Rational b = exp < 0 ? Rational(1) / base : base;
    for (std::int64_t i = 0; i < (exp < 0 ? -exp : exp); ++i) r *= b;
    return r;
}

// Least-squares slope of ys against xs.
inline double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t k = std::min(xs.size(), ys.size());
    if (k < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxx == 0 ? std::numeric_limits<double>::quiet_NaN() : sxy / sxx;
}

}  // namespace detstat

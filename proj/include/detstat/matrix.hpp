#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "detstat/common.hpp"
#include "detstat/sieve.hpp"

namespace detstat {

/// Dense square matrix of signed 64-bit integers, stored row-major.
class IntMatrix {
public:
    IntMatrix() = default;

    explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
        if (n < 1) throw DomainError("matrix dimension must be at least 1");
    }

    IntMatrix(int n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
        if (n < 1) throw DomainError("matrix dimension must be at least 1");
        if (a_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
            throw DomainError("expected " + std::to_string(n * n) + " entries, got " + std::to_string(a_.size()));
        }
    }

    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : n_(static_cast<int>(rows.size())) {
        for (const auto& row : rows) {
            if (row.size() != rows.size()) throw DomainError("matrix rows must all have length n");
            a_.insert(a_.end(), row.begin(), row.end());
        }
        if (n_ < 1) throw DomainError("matrix dimension must be at least 1");
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int n() const noexcept { return n_; }
    std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    std::span<const std::int64_t> entries() const noexcept { return a_; }

    std::int64_t max_abs() const {
        std::int64_t r = 0;
        for (auto v : a_) r = std::max(r, v < 0 ? -v : v);
        return r;
    }

    /// Matrix with row i and column j removed.
    IntMatrix minor(int i, int j) const {
        IntMatrix out(n_ - 1);
        int r = 0;
        for (int a = 0; a < n_; ++a) {
            if (a == i) continue;
            int c = 0;
            for (int b = 0; b < n_; ++b) {
                if (b == j) continue;
                out(r, c++) = (*this)(a, b);
            }
            ++r;
        }
        return out;
    }

    bool operator==(const IntMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<std::int64_t> a_;
};

namespace detail {

inline std::int64_t checked_op(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return checked_sub(checked_mul(a, b), checked_mul(c, d));
}

inline BigInt checked_op(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
    return a * b - c * d;
}

}  // namespace detail

/// Fraction-free (Bareiss) elimination over T. For T = int64_t every step
/// is overflow-checked and ArithmeticOverflow is thrown instead of wrapping.
template <class T>
T det_bareiss(int n, std::vector<T> a) {
    auto at = [&](int i, int j) -> T& { return a[static_cast<std::size_t>(i * n + j)]; };
    T prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i) {
                if (at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) return T(0);
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                // exact division: Sylvester's identity
                at(i, j) = detail::checked_op(at(i, j), at(k, k), at(i, k), at(k, j)) / prev;
            }
        }
        prev = at(k, k);
    }
    T d = at(n - 1, n - 1);
    return sign < 0 ? T(-d) : d;
}

/// Exact determinant. Runs checked 64-bit Bareiss and falls back to
/// arbitrary precision if an intermediate overflows.
inline BigInt det_exact(const IntMatrix& m) {
    const auto e = m.entries();
    try {
        return BigInt(det_bareiss<std::int64_t>(m.n(), std::vector<std::int64_t>(e.begin(), e.end())));
    } catch (const ArithmeticOverflow&) {
        std::vector<BigInt> big(e.begin(), e.end());
        return det_bareiss<BigInt>(m.n(), std::move(big));
    }
}

/// 64-bit determinant with no fallback; throws ArithmeticOverflow.
inline std::int64_t det_exact_i64(const IntMatrix& m) {
    const auto e = m.entries();
    return det_bareiss<std::int64_t>(m.n(), std::vector<std::int64_t>(e.begin(), e.end()));
}

/// Laplace expansion along the first row. Exponential cost, used as the
/// independent second route for small n.
inline BigInt det_cofactor(const IntMatrix& m) {
    const int n = m.n();
    if (n == 1) return BigInt(m(0, 0));
    if (n == 2) return BigInt(m(0, 0)) * m(1, 1) - BigInt(m(0, 1)) * m(1, 0);
    BigInt acc = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        BigInt term = BigInt(m(0, j)) * det_cofactor(m.minor(0, j));
        if (j % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

/// Determinant of an n x n row-major grid modulo m, entries already reduced
/// into [0, m). Euclidean row reduction keeps everything in Z/m even when m
/// is composite; products stay below m^2 < 2^62 for m < 2^31.
inline std::int64_t det_mod_reduced(int n, std::int64_t* a, std::int64_t m) {
    if (m == 1) return 0;
    auto at = [&](int i, int j) -> std::int64_t& { return a[i * n + j]; };
    std::int64_t det = 1;
    for (int k = 0; k < n; ++k) {
        for (int i = k + 1; i < n; ++i) {
            while (at(i, k) != 0) {
                const std::int64_t q = at(k, k) / at(i, k);
                for (int j = k; j < n; ++j) {
                    at(k, j) = detail::mod_floor(at(k, j) - q * at(i, j) % m, m);
                }
                for (int j = k; j < n; ++j) std::swap(at(k, j), at(i, j));
                det = m - det;
                if (det == m) det = 0;
            }
        }
        if (at(k, k) == 0) return 0;
        det = det * at(k, k) % m;
    }
    return det;
}

inline std::int64_t det_mod(const IntMatrix& mat, std::int64_t m) {
    if (m < 1) throw DomainError("invalid modulus " + std::to_string(m));
    std::vector<std::int64_t> a;
    a.reserve(mat.entries().size());
    for (auto v : mat.entries()) a.push_back(detail::mod_floor(v, m));
    return det_mod_reduced(mat.n(), a.data(), m);
}

/// Rank over F_p of a rows x cols row-major grid.
inline int rank_mod_p(int rows, int cols, std::span<const std::int64_t> grid, std::int64_t p) {
    require_prime(p);
    if (grid.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw DomainError("grid size does not match rows x cols");
    }
    std::vector<std::int64_t> a;
    a.reserve(grid.size());
    for (auto v : grid) a.push_back(detail::mod_floor(v, p));
    auto at = [&](int i, int j) -> std::int64_t& { return a[static_cast<std::size_t>(i * cols + j)]; };
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i) {
            if (at(i, c) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(at(rank, j), at(pivot, j));
        const std::int64_t inv = mod_inverse(at(rank, c), p);
        for (int j = 0; j < cols; ++j) at(rank, j) = at(rank, j) * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || at(i, c) == 0) continue;
            const std::int64_t f = at(i, c);
            for (int j = 0; j < cols; ++j) at(i, j) = detail::mod_floor(at(i, j) - f * at(rank, j), p);
        }
        ++rank;
    }
    return rank;
}

inline int rank_mod_p(const IntMatrix& m, std::int64_t p) { return rank_mod_p(m.n(), m.n(), m.entries(), p); }

/// n! * H^n, the a-priori bound on |det A| for entries in [-H, H].
inline BigInt hadamard_range(int n, std::int64_t H) {
    if (n < 1 || H < 1) throw DomainError("hadamard_range needs n >= 1 and H >= 1");
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r * big_pow(BigInt(H), static_cast<std::uint64_t>(n));
}

inline std::int64_t hadamard_range_i64(int n, std::int64_t H) {
    const BigInt r = hadamard_range(n, H);
    if (!fits_int64(r)) throw ArithmeticOverflow("n!*H^n exceeds 64 bits");
    return static_cast<std::int64_t>(r);
}

}  // namespace detstat

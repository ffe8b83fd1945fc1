#pragma once

// Exhaustive enumeration of n x n matrices over Z/m.
//
// Matrices are visited in row-major lexicographic order with the last row
// fastest. For each assignment of the first n-1 rows the cofactors of the
// last row are computed once, after which det X = sum_j c_j x_nj is
// updated incrementally while the last row runs through [0, m)^n. Work is
// split across threads by contiguous ranges of the first n-1 rows and the
// per-thread tallies are summed in range order.

#include <cstdint>
#include <span>
#include <vector>

#include "detstat/common.hpp"
#include "detstat/matrix.hpp"

namespace detstat {

namespace detail {

// Decodes `index` into `digits` base m, most significant digit first.
inline void decode_digits(std::uint64_t index, std::int64_t m, std::span<std::int64_t> digits) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        digits[k] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(m));
        index /= static_cast<std::uint64_t>(m);
    }
}

// Increments a base-m odometer; returns false after the last state.
inline bool advance_digits(std::span<std::int64_t> digits, std::int64_t m) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < m) return true;
        digits[k] = 0;
    }
    return false;
}

// Cofactors of the last row of an n x n matrix whose first n-1 rows are
// `top` (row-major, reduced mod m). Result reduced into [0, m).
inline void last_row_cofactors(int n, std::span<const std::int64_t> top, std::int64_t m,
                               std::span<std::int64_t> out, std::vector<std::int64_t>& scratch) {
    if (n == 1) {
        out[0] = 1 % m;
        return;
    }
    const int k = n - 1;
    scratch.resize(static_cast<std::size_t>(k * k));
    for (int j = 0; j < n; ++j) {
        for (int r = 0; r < k; ++r) {
            int c = 0;
            for (int col = 0; col < n; ++col) {
                if (col == j) continue;
                scratch[static_cast<std::size_t>(r * k + c++)] = top[static_cast<std::size_t>(r * n + col)];
            }
        }
        std::int64_t minor = det_mod_reduced(k, scratch.data(), m);
        // sign (-1)^{(n-1)+j}
        if (((n - 1 + j) & 1) != 0 && minor != 0) minor = m - minor;
        out[static_cast<std::size_t>(j)] = minor;
    }
}

// Visits every matrix in [0,m)^{n x n} with outer index in [lo, hi); calls
// visit(det_mod, last_row_linear_value) per matrix where the linear value
// is sum a_ij x_ij mod m for the supplied reduced coefficients.
template <class Visit>
void enumerate_residue_block(int n, std::int64_t m, std::span<const std::int64_t> coeffs, std::uint64_t lo,
                             std::uint64_t hi, Visit&& visit) {
    const auto un = static_cast<std::size_t>(n);
    const std::size_t top_cells = un * (un - 1);
    std::vector<std::int64_t> top(top_cells, 0);
    std::vector<std::int64_t> cof(un, 0), last(un, 0), scratch;
    if (lo >= hi) return;
    decode_digits(lo, m, top);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        last_row_cofactors(n, top, m, cof, scratch);
        std::int64_t lin = 0;
        for (std::size_t c = 0; c < top_cells; ++c) lin = (lin + coeffs[c] * top[c]) % m;
        const std::span<const std::int64_t> last_coeffs = coeffs.subspan(top_cells, un);
        std::fill(last.begin(), last.end(), 0);
        std::int64_t det = 0;
        for (;;) {
            visit(det, lin);
            std::size_t j = un;
            for (;;) {
                --j;
                // adding c_j m times returns det to its value, so a wrap needs no correction
                det += cof[j];
                if (det >= m) det -= m;
                lin += last_coeffs[j];
                if (lin >= m) lin -= m;
                if (++last[j] < m) break;
                last[j] = 0;
                if (j == 0) break;
            }
            if (j == 0 && last[0] == 0) break;
        }
        advance_digits(top, m);
    }
}

inline std::uint64_t residue_space_size(int n, std::int64_t m) {
    return sat_pow(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n));
}

inline std::vector<std::int64_t> reduce_coeffs(std::span<const std::int64_t> coeffs, std::int64_t m) {
    std::vector<std::int64_t> out;
    out.reserve(coeffs.size());
    for (auto v : coeffs) out.push_back(mod_floor(v, m));
    return out;
}

}  // namespace detail

/// h[r] = #{X in (Z/m)^{n x n} : det X = 0, L(X) = r}, for L given by its
/// n*n row-major coefficient grid. Charges m^{n^2} iterations.
inline std::vector<std::int64_t> singular_histogram(int n, std::int64_t m, std::span<const std::int64_t> coeffs,
                                                    const EnumOptions& opts) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    require_modulus(m);
    if (coeffs.size() != static_cast<std::size_t>(n * n)) throw DomainError("linear form must have n*n coefficients");
    if (m > (std::int64_t{1} << 31)) throw DomainError("modulus too large for residue enumeration");
    detail::charge(opts, detail::residue_space_size(n, m));
    const std::vector<std::int64_t> reduced = detail::reduce_coeffs(coeffs, m);
    const std::uint64_t outer = detail::sat_pow(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n * (n - 1)));
    auto chunk = [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::int64_t> hist(static_cast<std::size_t>(m), 0);
        detail::enumerate_residue_block(n, m, reduced, lo, hi, [&](std::int64_t det, std::int64_t lin) {
            if (det == 0) ++hist[static_cast<std::size_t>(lin)];
        });
        return hist;
    };
    return detail::parallel_reduce(outer, opts.threads, std::vector<std::int64_t>{}, chunk, detail::add_counts);
}

/// All singular matrices mod m, flattened row-major (n*n entries each), in
/// enumeration order. Charges m^{n^2} iterations.
inline std::vector<std::int32_t> singular_matrices(int n, std::int64_t m, const EnumOptions& opts) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    require_modulus(m);
    if (m > (std::int64_t{1} << 30)) throw DomainError("modulus too large for residue enumeration");
    detail::charge(opts, detail::residue_space_size(n, m));
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::int32_t> out;
    std::vector<std::int64_t> digits(un * un, 0);
    do {
        std::vector<std::int64_t> copy(digits);
        if (det_mod_reduced(n, copy.data(), m) == 0) out.insert(out.end(), digits.begin(), digits.end());
    } while (detail::advance_digits(digits, m));
    return out;
}

}  // namespace detstat

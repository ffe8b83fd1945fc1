#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "detstat/common.hpp"

namespace detstat {

/// L(X) = sum_{i,j} a_ij x_ij, stored as an n x n row-major coefficient grid.
class LinearForm {
public:
    LinearForm() = default;

    LinearForm(int n, std::vector<std::int64_t> coeffs) : n_(n), a_(std::move(coeffs)) {
        if (n < 1) throw DomainError("linear form dimension must be at least 1");
        if (a_.size() != static_cast<std::size_t>(n * n)) {
            throw DomainError("linear form needs " + std::to_string(n * n) + " coefficients, got " +
                              std::to_string(a_.size()));
        }
    }

    static LinearForm zero(int n) { return {n, std::vector<std::int64_t>(static_cast<std::size_t>(n * n), 0)}; }

    /// c * x_{ij} (zero-based indices).
    static LinearForm monomial(int n, int i, int j, std::int64_t c = 1) {
        LinearForm f = zero(n);
        f.a_[static_cast<std::size_t>(i * n + j)] = c;
        return f;
    }

    /// Parses "a11,a12;a21,a22": rows separated by ';', entries by ','.
    static LinearForm parse(const std::string& text) {
        std::vector<std::vector<std::int64_t>> rows;
        std::stringstream rs(text);
        std::string row;
        while (std::getline(rs, row, ';')) {
            std::vector<std::int64_t> vals;
            std::stringstream cs(row);
            std::string cell;
            while (std::getline(cs, cell, ',')) {
                const auto b = cell.find_first_not_of(" \t");
                const auto e = cell.find_last_not_of(" \t");
                if (b == std::string::npos) throw DomainError("empty coefficient in form '" + text + "'");
                const std::string tok = cell.substr(b, e - b + 1);
                std::size_t used = 0;
                std::int64_t v = 0;
                try {
                    v = std::stoll(tok, &used);
                } catch (const std::exception&) {
                    throw DomainError("bad coefficient '" + tok + "' in form '" + text + "'");
                }
                if (used != tok.size()) throw DomainError("bad coefficient '" + tok + "' in form '" + text + "'");
                vals.push_back(v);
            }
            rows.push_back(std::move(vals));
        }
        const int n = static_cast<int>(rows.size());
        if (n == 0) throw DomainError("empty linear form");
        std::vector<std::int64_t> grid;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != n) throw DomainError("form '" + text + "' is not a square grid");
            grid.insert(grid.end(), r.begin(), r.end());
        }
        return {n, std::move(grid)};
    }

    int n() const noexcept { return n_; }
    std::span<const std::int64_t> coeffs() const noexcept { return a_; }
    std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](std::int64_t v) { return v == 0; });
    }

    bool is_monomial() const {
        return std::count_if(a_.begin(), a_.end(), [](std::int64_t v) { return v != 0; }) == 1;
    }

    bool is_first_column() const {
        for (int i = 0; i < n_; ++i) {
            for (int j = 1; j < n_; ++j) {
                if ((*this)(i, j) != 0) return false;
            }
        }
        return true;
    }

    /// gcd of all coefficients and m; lies in [1, m].
    std::int64_t gcd_with(std::int64_t m) const {
        std::int64_t g = m;
        for (auto v : a_) g = std::gcd(g, v < 0 ? -v : v);
        return g;
    }

    bool vanishes_mod(std::int64_t m) const { return gcd_with(m) == m; }

    LinearForm scaled(std::int64_t c) const {
        LinearForm f = *this;
        for (auto& v : f.a_) v *= c;
        return f;
    }

    LinearForm negated() const { return scaled(-1); }

    LinearForm reduced(std::int64_t m) const {
        LinearForm f = *this;
        for (auto& v : f.a_) v = detail::mod_floor(v, m);
        return f;
    }

    LinearForm transposed() const {
        LinearForm f = *this;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) f.a_[static_cast<std::size_t>(j * n_ + i)] = (*this)(i, j);
        }
        return f;
    }

    /// Row i of the result is row perm[i] of this form; columns likewise.
    LinearForm permuted(std::span<const int> row_perm, std::span<const int> col_perm) const {
        LinearForm f = *this;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                f.a_[static_cast<std::size_t>(i * n_ + j)] =
                    (*this)(row_perm[static_cast<std::size_t>(i)], col_perm[static_cast<std::size_t>(j)]);
            }
        }
        return f;
    }

    std::string to_string() const {
        std::string out;
        for (int i = 0; i < n_; ++i) {
            if (i > 0) out += ';';
            for (int j = 0; j < n_; ++j) {
                if (j > 0) out += ',';
                out += std::to_string((*this)(i, j));
            }
        }
        return out;
    }

    bool operator==(const LinearForm&) const = default;
    auto operator<=>(const LinearForm& o) const { return a_ <=> o.a_; }

private:
    int n_ = 0;
    std::vector<std::int64_t> a_;
};

/// Smallest grid (lexicographically, after reduction mod m) in the orbit of
/// `form` under row permutations, column permutations and transposition,
/// together with the orbit size.
inline std::pair<LinearForm, std::size_t> symmetry_canonical(const LinearForm& form, std::int64_t m) {
    const int n = form.n();
    std::vector<int> rp(static_cast<std::size_t>(n)), cp(static_cast<std::size_t>(n));
    std::vector<LinearForm> orbit;
    const LinearForm base = form.reduced(m);
    for (const LinearForm& g : {base, base.transposed()}) {
        std::iota(rp.begin(), rp.end(), 0);
        do {
            std::iota(cp.begin(), cp.end(), 0);
            do {
                orbit.push_back(g.permuted(rp, cp));
            } while (std::next_permutation(cp.begin(), cp.end()));
        } while (std::next_permutation(rp.begin(), rp.end()));
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return {orbit.front(), orbit.size()};
}

}  // namespace detstat

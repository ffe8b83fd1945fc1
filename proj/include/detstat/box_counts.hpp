#pragma once

// Counting integer matrices in boxes |a_ij| <= H_ij by determinant
// condition: divisibility by m, or a prescribed value.
//
// n = 2 goes through product-value distributions: with c_v the number of
// (a, d) with ad = v (or = v mod m) and c'_v the same for (b, c), the
// answers are sums of c_v * c'_w over the admissible pairs. For n >= 3 the
// (n-1) x n bottom block is enumerated once and grouped by its vector of
// first-row cofactors, after which each query only runs over first rows.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detstat/common.hpp"
#include "detstat/exact_counts.hpp"
#include "detstat/matrix.hpp"

namespace detstat {

/// Per-entry bounds H_ij >= 1 of the box {A : |a_ij| <= H_ij}.
class BoxSpec {
public:
    BoxSpec(int n, std::vector<std::int64_t> bounds) : n_(n), h_(std::move(bounds)) {
        if (n < 1) throw DomainError("box dimension must be at least 1");
        if (h_.size() != static_cast<std::size_t>(n * n)) throw DomainError("box needs n*n bounds");
        for (auto v : h_) {
            if (v < 1) throw DomainError("box bounds must be at least 1");
        }
    }

    static BoxSpec uniform(int n, std::int64_t H) {
        return {n, std::vector<std::int64_t>(static_cast<std::size_t>(n > 0 ? n * n : 0), H)};
    }

    int n() const noexcept { return n_; }
    std::int64_t bound(int i, int j) const { return h_[static_cast<std::size_t>(i * n_ + j)]; }
    std::int64_t width(int i, int j) const { return 2 * bound(i, j) + 1; }
    const std::vector<std::int64_t>& bounds() const noexcept { return h_; }

    bool is_uniform() const {
        for (auto v : h_) {
            if (v != h_.front()) return false;
        }
        return true;
    }

    /// prod (2 H_ij + 1)
    BigInt size() const {
        BigInt s = 1;
        for (auto v : h_) s *= 2 * v + 1;
        return s;
    }

    std::uint64_t size_saturated() const {
        std::uint64_t s = 1;
        for (auto v : h_) s = detail::sat_mul(s, static_cast<std::uint64_t>(2 * v + 1));
        return s;
    }

    std::string describe() const {
        if (is_uniform()) return "H=" + std::to_string(h_.front());
        std::string out = "H=[";
        for (std::size_t k = 0; k < h_.size(); ++k) {
            if (k > 0) out += (k % static_cast<std::size_t>(n_) == 0) ? ";" : ",";
            out += std::to_string(h_[k]);
        }
        return out + "]";
    }

private:
    int n_;
    std::vector<std::int64_t> h_;
};

/// Exact distribution of det A over a box: counts[k] matrices with
/// det A = lo + k.
struct DetDistribution {
    std::int64_t lo = 0;
    std::vector<std::int64_t> counts;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(counts.size()) - 1; }

    std::int64_t at(std::int64_t a) const {
        if (a < lo || a > hi()) return 0;
        return counts[static_cast<std::size_t>(a - lo)];
    }

    BigInt total() const {
        BigInt s = 0;
        for (auto c : counts) s += c;
        return s;
    }
};

class BoxCounter {
public:
    explicit BoxCounter(BoxSpec box, const EnumOptions& opts = {}) : box_(std::move(box)), opts_(opts) {
        if (box_.size_saturated() >= (std::uint64_t{1} << 62)) {
            throw ArithmeticOverflow("box has more than 2^62 matrices");
        }
        const int n = box_.n();
        if (n == 2) {
            detail::charge(opts_, detail::sat_add(static_cast<std::uint64_t>(box_.width(0, 0) * box_.width(1, 1)),
                                                  static_cast<std::uint64_t>(box_.width(0, 1) * box_.width(1, 0))));
            diag_ = product_distribution(box_.bound(0, 0), box_.bound(1, 1));
            anti_ = product_distribution(box_.bound(0, 1), box_.bound(1, 0));
        } else if (n >= 3) {
            group_bottom_block();
        }
    }

    const BoxSpec& box() const noexcept { return box_; }

    /// #{A in box : det A = 0 mod m}.
    BigInt count_mod(std::int64_t m) const {
        require_modulus(m);
        const int n = box_.n();
        if (n == 1) {
            const std::int64_t H = box_.bound(0, 0);
            return BigInt(2 * (H / m) + 1);
        }
        if (n == 2) return count_mod_2x2(m);
        return count_mod_general(m);
    }

    DetDistribution distribution() const {
        const int n = box_.n();
        if (n == 1) {
            const std::int64_t H = box_.bound(0, 0);
            return {-H, std::vector<std::int64_t>(static_cast<std::size_t>(2 * H + 1), 1)};
        }
        if (n == 2) return distribution_2x2();
        return distribution_general();
    }

private:
    struct ProductDist {
        std::int64_t range = 0;           // products lie in [-range, range]
        std::vector<std::int64_t> count;  // count[v + range]
    };

    static ProductDist product_distribution(std::int64_t Hx, std::int64_t Hy) {
        ProductDist d;
        d.range = Hx * Hy;
        d.count.assign(static_cast<std::size_t>(2 * d.range + 1), 0);
        for (std::int64_t x = -Hx; x <= Hx; ++x) {
            for (std::int64_t y = -Hy; y <= Hy; ++y) ++d.count[static_cast<std::size_t>(x * y + d.range)];
        }
        return d;
    }

    static std::vector<std::int64_t> residues(const ProductDist& d, std::int64_t m) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(m), 0);
        for (std::int64_t v = -d.range; v <= d.range; ++v) {
            c[static_cast<std::size_t>(detail::mod_floor(v, m))] += d.count[static_cast<std::size_t>(v + d.range)];
        }
        return c;
    }

    BigInt count_mod_2x2(std::int64_t m) const {
        detail::charge(opts_, static_cast<std::uint64_t>(diag_.count.size() + anti_.count.size()) +
                                  static_cast<std::uint64_t>(m));
        const auto c = residues(diag_, m);
        const auto cp = residues(anti_, m);
        BigInt total = 0;
        for (std::size_t v = 0; v < c.size(); ++v) total += BigInt(c[v]) * cp[v];
        return total;
    }

    DetDistribution distribution_2x2() const {
        std::vector<std::pair<std::int64_t, std::int64_t>> a, b;
        for (std::int64_t v = -diag_.range; v <= diag_.range; ++v) {
            if (auto k = diag_.count[static_cast<std::size_t>(v + diag_.range)]) a.emplace_back(v, k);
        }
        for (std::int64_t v = -anti_.range; v <= anti_.range; ++v) {
            if (auto k = anti_.count[static_cast<std::size_t>(v + anti_.range)]) b.emplace_back(v, k);
        }
        detail::charge(opts_, detail::sat_mul(a.size(), b.size()));
        DetDistribution out;
        const std::int64_t R = diag_.range + anti_.range;
        out.lo = -R;
        out.counts.assign(static_cast<std::size_t>(2 * R + 1), 0);
        for (auto [v, kv] : a) {
            for (auto [w, kw] : b) out.counts[static_cast<std::size_t>(v - w + R)] += kv * kw;
        }
        return out;
    }

    void group_bottom_block() {
        const int n = box_.n();
        const auto un = static_cast<std::size_t>(n);
        const std::size_t cells = un * (un - 1);
        std::uint64_t block = 1;
        for (std::size_t c = 0; c < cells; ++c) {
            block = detail::sat_mul(block, static_cast<std::uint64_t>(2 * box_.bounds()[un + c] + 1));
        }
        detail::charge(opts_, block);
        std::vector<std::int64_t> x(cells);
        for (std::size_t c = 0; c < cells; ++c) x[c] = -box_.bounds()[un + c];
        std::map<std::vector<std::int64_t>, std::int64_t> groups;
        std::vector<std::int64_t> cof(un);
        const int k = n - 1;
        std::vector<std::int64_t> minor(static_cast<std::size_t>(k * k));
        for (;;) {
            for (int j = 0; j < n; ++j) {
                for (int r = 0; r < k; ++r) {
                    int cc = 0;
                    for (int col = 0; col < n; ++col) {
                        if (col == j) continue;
                        minor[static_cast<std::size_t>(r * k + cc++)] = x[static_cast<std::size_t>(r * n + col)];
                    }
                }
                const std::int64_t mdet = det_bareiss<std::int64_t>(k, minor);
                cof[static_cast<std::size_t>(j)] = (j % 2 == 0) ? mdet : -mdet;
            }
            ++groups[cof];
            std::size_t c = cells;
            bool more = false;
            while (c-- > 0) {
                if (++x[c] <= box_.bounds()[un + c]) {
                    more = true;
                    break;
                }
                x[c] = -box_.bounds()[un + c];
            }
            if (!more) break;
        }
        groups_.assign(groups.begin(), groups.end());
    }

    // Visits every first row (a_1, ..., a_n) of the box with its dot product
    // against `c`, maintained incrementally.
    template <class Visit>
    void for_each_first_row(const std::vector<std::int64_t>& c, Visit&& visit) const {
        const int n = box_.n();
        std::vector<std::int64_t> a(static_cast<std::size_t>(n));
        std::int64_t dot = 0;
        for (int j = 0; j < n; ++j) {
            a[static_cast<std::size_t>(j)] = -box_.bound(0, j);
            dot += a[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)];
        }
        for (;;) {
            visit(dot);
            int j = n;
            bool more = false;
            while (j-- > 0) {
                auto& aj = a[static_cast<std::size_t>(j)];
                const std::int64_t cj = c[static_cast<std::size_t>(j)];
                if (aj < box_.bound(0, j)) {
                    ++aj;
                    dot += cj;
                    more = true;
                    break;
                }
                dot -= 2 * box_.bound(0, j) * cj;
                aj = -box_.bound(0, j);
            }
            if (!more) break;
        }
    }

    std::uint64_t first_row_size() const {
        std::uint64_t s = 1;
        for (int j = 0; j < box_.n(); ++j) s = detail::sat_mul(s, static_cast<std::uint64_t>(box_.width(0, j)));
        return s;
    }

    BigInt count_mod_general(std::int64_t m) const {
        // regroup cofactor vectors by residue class first
        std::map<std::vector<std::int64_t>, std::int64_t> by_residue;
        for (const auto& [cof, mult] : groups_) {
            std::vector<std::int64_t> r(cof.size());
            for (std::size_t j = 0; j < cof.size(); ++j) r[j] = detail::mod_floor(cof[j], m);
            by_residue[r] += mult;
        }
        detail::charge(opts_, detail::sat_mul(by_residue.size(), first_row_size()));
        BigInt total = 0;
        for (const auto& [cof, mult] : by_residue) {
            std::int64_t hits = 0;
            for_each_first_row(cof, [&](std::int64_t dot) {
                if (detail::mod_floor(dot, m) == 0) ++hits;
            });
            total += BigInt(hits) * mult;
        }
        return total;
    }

    DetDistribution distribution_general() const {
        detail::charge(opts_, detail::sat_mul(groups_.size(), first_row_size()));
        std::int64_t R = 0;
        for (const auto& [cof, mult] : groups_) {
            std::int64_t r = 0;
            for (int j = 0; j < box_.n(); ++j) {
                r = detail::checked_add(r, detail::checked_mul(box_.bound(0, j), std::abs(cof[static_cast<std::size_t>(j)])));
            }
            R = std::max(R, r);
        }
        DetDistribution out;
        out.lo = -R;
        out.counts.assign(static_cast<std::size_t>(2 * R + 1), 0);
        for (const auto& [cof, mult] : groups_) {
            for_each_first_row(cof, [&](std::int64_t dot) { out.counts[static_cast<std::size_t>(dot + R)] += mult; });
        }
        return out;
    }

    BoxSpec box_;
    EnumOptions opts_;
    ProductDist diag_, anti_;
    std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> groups_;
};

/// N_n(m; H) = #{A : |a_ij| <= H, det A = 0 mod m}.
inline BigInt count_box(int n, std::int64_t m, std::int64_t H, const EnumOptions& opts = {}) {
    return BoxCounter(BoxSpec::uniform(n, H), opts).count_mod(m);
}

/// N_n(m; H_ij) with per-entry bounds.
inline BigInt count_box_general(int n, std::int64_t m, const std::vector<std::int64_t>& bounds,
                                const EnumOptions& opts = {}) {
    return BoxCounter(BoxSpec(n, bounds), opts).count_mod(m);
}

/// Plain enumeration of the whole box, one Bareiss determinant per matrix.
/// Used to check the fast paths. `visit(det)` is called per matrix.
template <class Visit>
void enumerate_box(const BoxSpec& box, const EnumOptions& opts, Visit&& visit) {
    detail::charge(opts, box.size_saturated());
    const int n = box.n();
    const auto cells = static_cast<std::size_t>(n * n);
    std::vector<std::int64_t> x(cells);
    for (std::size_t c = 0; c < cells; ++c) x[c] = -box.bounds()[c];
    for (;;) {
        visit(det_bareiss<std::int64_t>(n, x));
        std::size_t c = cells;
        bool more = false;
        while (c-- > 0) {
            if (++x[c] <= box.bounds()[c]) {
                more = true;
                break;
            }
            x[c] = -box.bounds()[c];
        }
        if (!more) break;
    }
}

inline std::int64_t count_box_enumerate(const BoxSpec& box, std::int64_t m, const EnumOptions& opts = {}) {
    require_modulus(m);
    std::int64_t hits = 0;
    enumerate_box(box, opts, [&](std::int64_t det) {
        if (detail::mod_floor(det, m) == 0) ++hits;
    });
    return hits;
}

inline DetDistribution det_distribution(const BoxSpec& box, const EnumOptions& opts = {}) {
    return BoxCounter(box, opts).distribution();
}

/// #{A : |a_ij| <= H, det A = a}.
inline BigInt count_fixed_det(int n, std::int64_t H, std::int64_t a, const EnumOptions& opts = {}) {
    return BigInt(det_distribution(BoxSpec::uniform(n, H), opts).at(a));
}

struct ResidualRecord {
    int n = 0;
    std::int64_t modulus = 1;
    std::string box;
    BigInt exact_count;
    Rational main_term;
    Rational residual;
    std::optional<double> normalized_exponent;  // log|residual| / log m
};

/// N_n(m) * prod(2H_ij + 1) / m^{n^2}
inline Rational box_main_term(const BoxSpec& box, std::int64_t m, const EnumOptions& opts = {}) {
    const int n = box.n();
    const CountRecord nm = singular_count(n, m, opts);
    return Rational(nm.count * box.size()) / Rational(big_pow(BigInt(m), static_cast<std::uint64_t>(n * n)));
}

inline ResidualRecord residual_record(const BoxSpec& box, std::int64_t m, const EnumOptions& opts = {}) {
    ResidualRecord r;
    r.n = box.n();
    r.modulus = m;
    r.box = box.describe();
    r.exact_count = BoxCounter(box, opts).count_mod(m);
    r.main_term = box_main_term(box, m, opts);
    r.residual = Rational(r.exact_count) - r.main_term;
    if (r.residual != 0 && m > 1) {
        const double mag = std::abs(static_cast<double>(r.residual));
        r.normalized_exponent = std::log(mag) / std::log(static_cast<double>(m));
    }
    return r;
}

struct ResidualReport {
    std::vector<ResidualRecord> records;
    double slope = std::nan("");  // fit of log|residual| against log m, nonzero residuals only
};

/// One record per (m, H) pair of the sweep.
inline ResidualReport residual_report(int n, const std::vector<std::int64_t>& moduli,
                                      const std::vector<std::int64_t>& Hs, const EnumOptions& opts = {}) {
    ResidualReport rep;
    std::vector<double> xs, ys;
    for (auto m : moduli) {
        for (auto H : Hs) {
            rep.records.push_back(residual_record(BoxSpec::uniform(n, H), m, opts));
            const auto& r = rep.records.back();
            if (r.residual != 0 && m > 1) {
                xs.push_back(std::log(static_cast<double>(m)));
                ys.push_back(std::log(std::abs(static_cast<double>(r.residual))));
            }
        }
    }
    rep.slope = fit_slope(xs, ys);
    return rep;
}

struct FixedDetMaxRow {
    std::int64_t H = 0;
    std::int64_t argmax = 0;
    std::int64_t max_count = 0;
    double normalized = 0.0;  // max_count / (H^{n^2-n} log(H+1))
};

/// For each H, the most popular determinant value and its count.
inline std::vector<FixedDetMaxRow> fixed_det_max_report(int n, const std::vector<std::int64_t>& Hs,
                                                        const EnumOptions& opts = {}) {
    std::vector<FixedDetMaxRow> rows;
    for (auto H : Hs) {
        const DetDistribution dist = det_distribution(BoxSpec::uniform(n, H), opts);
        FixedDetMaxRow row;
        row.H = H;
        // ties resolve to the smallest |a|, then the negative one
        for (std::int64_t a = dist.lo; a <= dist.hi(); ++a) {
            const std::int64_t c = dist.at(a);
            if (c > row.max_count || (c == row.max_count && std::abs(a) < std::abs(row.argmax))) {
                row.max_count = c;
                row.argmax = a;
            }
        }
        const double scale = std::pow(static_cast<double>(H), static_cast<double>(n * n - n)) *
                             std::log(static_cast<double>(H) + 1.0);
        row.normalized = static_cast<double>(row.max_count) / scale;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace detstat

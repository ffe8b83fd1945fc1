#pragma once

// Complete exponential sums S_m(L) = sum_{det X = 0 mod m} e_m(L(X)).
//
// Every sum is first computed as an exact histogram of L-values over the
// singular matrices; the complex value is formed once from that histogram.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "detstat/common.hpp"
#include "detstat/exact_counts.hpp"
#include "detstat/linear_form.hpp"
#include "detstat/residue_enum.hpp"
#include "detstat/sieve.hpp"

namespace detstat {

struct ExpSumResult {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> histogram;  // h[r] = #{X : det X = 0, L(X) = r}
    std::complex<double> value;
    double magnitude = 0.0;

    std::int64_t mass() const {
        std::int64_t s = 0;
        for (auto h : histogram) s += h;
        return s;
    }
};

/// sum_r h[r] e(r/m). Pairs r with m - r so that symmetric histograms give
/// an exactly real value, and quarter turns use exact unit values.
inline std::complex<double> combine_roots(const std::vector<std::int64_t>& h) {
    const auto m = static_cast<std::int64_t>(h.size());
    long double re = static_cast<long double>(h[0]);
    long double im = 0.0L;
    for (std::int64_t r = 1; 2 * r < m; ++r) {
        const auto plus = static_cast<long double>(h[static_cast<std::size_t>(r)] + h[static_cast<std::size_t>(m - r)]);
        const auto minus = static_cast<long double>(h[static_cast<std::size_t>(r)] - h[static_cast<std::size_t>(m - r)]);
        long double c, s;
        if (4 * r == m) {
            c = 0.0L;
            s = 1.0L;
        } else {
            const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) /
                                      static_cast<long double>(m);
            c = std::cos(angle);
            s = std::sin(angle);
        }
        re += plus * c;
        im += minus * s;
    }
    if (m % 2 == 0 && m > 1) re -= static_cast<long double>(h[static_cast<std::size_t>(m / 2)]);
    return {static_cast<double>(re), static_cast<double>(im)};
}

inline ExpSumResult make_expsum(std::int64_t m, std::vector<std::int64_t> histogram) {
    ExpSumResult r;
    r.modulus = m;
    r.histogram = std::move(histogram);
    r.value = combine_roots(r.histogram);
    r.magnitude = std::abs(r.value);
    return r;
}

inline ExpSumResult eval_expsum(int n, std::int64_t m, const LinearForm& L, const EnumOptions& opts = {}) {
    if (L.n() != n) throw DomainError("linear form dimension does not match n");
    return make_expsum(m, singular_histogram(n, m, L.coeffs(), opts));
}

/// Histogram over the singular set of a precomputed list (n*n entries per
/// matrix), for forms evaluated many times against the same modulus.
inline std::vector<std::int64_t> histogram_over(std::span<const std::int32_t> matrices, int n, std::int64_t m,
                                                const LinearForm& L) {
    const auto cells = static_cast<std::size_t>(n * n);
    const LinearForm R = L.reduced(m);
    const auto a = R.coeffs();
    std::vector<std::int64_t> hist(static_cast<std::size_t>(m), 0);
    for (std::size_t off = 0; off < matrices.size(); off += cells) {
        std::int64_t v = 0;
        for (std::size_t c = 0; c < cells; ++c) v += a[c] * matrices[off + c];
        ++hist[static_cast<std::size_t>(v % m)];
    }
    return hist;
}

/// h'[lambda r mod m] = h[r]; the histogram of lambda*L for a unit lambda.
inline std::vector<std::int64_t> scale_histogram(const std::vector<std::int64_t>& h, std::int64_t lambda) {
    const auto m = static_cast<std::int64_t>(h.size());
    std::vector<std::int64_t> out(h.size(), 0);
    for (std::int64_t r = 0; r < m; ++r) {
        out[static_cast<std::size_t>(detail::mod_floor(lambda * r, m))] += h[static_cast<std::size_t>(r)];
    }
    return out;
}

/// S_p(L) = p^{n(n-1)} - p^{n-1} N_{n-1}(p) for every form depending only on
/// the first column and nontrivial mod p.
inline BigInt monomial_exact(int n, std::int64_t p) {
    require_prime(p);
    if (n < 2) throw DomainError("monomial_exact needs n >= 2");
    const BigInt P(p);
    return big_pow(P, static_cast<std::uint64_t>(n * (n - 1))) -
           big_pow(P, static_cast<std::uint64_t>(n - 1)) * prime_recurrence_N(n - 1, p);
}

enum class ModulusKind { Squarefree, Square };

inline const char* to_string(ModulusKind k) { return k == ModulusKind::Squarefree ? "d" : "d^2"; }

/// One prime factor of the CRT split: modulus q = p or p^2, weight
/// w = ((M/q)^{-1} mod q) with M = d or d^2, and the form w*L mod q.
struct CrtFactor {
    std::int64_t prime = 0;
    std::int64_t modulus = 0;
    std::int64_t weight = 0;
    LinearForm form;
};

/// e_M(x) = prod_q e_q(w_q x) for the factors returned here, so
/// S_M(L) = prod_q S_q(w_q L).
inline std::vector<CrtFactor> crt_split(std::int64_t d, const LinearForm& L,
                                        ModulusKind kind = ModulusKind::Squarefree) {
    require_squarefree(d);
    const std::int64_t M = kind == ModulusKind::Squarefree ? d : d * d;
    std::vector<CrtFactor> out;
    for (auto [p, e] : factorize(d)) {
        const std::int64_t q = kind == ModulusKind::Squarefree ? p : p * p;
        const std::int64_t w = mod_inverse((M / q) % q, q);
        out.push_back({p, q, w, L.scaled(w).reduced(q)});
    }
    return out;
}

/// h_M[r] = prod_q h_q[r mod q], where h_q is the histogram of L (not of
/// w_q L) modulo q. This is the exact form of the CRT product identity.
inline std::vector<std::int64_t> crt_combine_histograms(
    const std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>& parts) {
    std::int64_t M = 1;
    for (const auto& [q, h] : parts) M *= q;
    std::vector<std::int64_t> out(static_cast<std::size_t>(M), 0);
    for (std::int64_t r = 0; r < M; ++r) {
        std::int64_t v = 1;
        for (const auto& [q, h] : parts) v *= h[static_cast<std::size_t>(r % q)];
        out[static_cast<std::size_t>(r)] = v;
    }
    return out;
}

struct CrtEvaluation {
    std::vector<CrtFactor> factors;
    std::vector<ExpSumResult> parts;  // S_q(w_q L), one per factor
    std::complex<double> product{1.0, 0.0};
};

/// S_M(L) computed as the product of its prime (or prime-square) parts.
inline CrtEvaluation expsum_via_crt(int n, std::int64_t d, const LinearForm& L, ModulusKind kind,
                                    const EnumOptions& opts = {}) {
    CrtEvaluation out;
    out.factors = crt_split(d, L, kind);
    for (const auto& f : out.factors) {
        out.parts.push_back(eval_expsum(n, f.modulus, f.form, opts));
        out.product *= out.parts.back().value;
    }
    return out;
}

struct GcdDecomposition {
    std::int64_t D = 1;  // gcd(L, d^2) = e * f^2
    std::int64_t e = 1;
    std::int64_t f = 1;
};

/// Splits gcd(L, d^2) = e f^2 with e, f square-free, coprime, dividing d.
inline GcdDecomposition gcd_decompose_sq(const LinearForm& L, std::int64_t d) {
    require_squarefree(d);
    if (L.is_zero()) throw DomainError("gcd decomposition is undefined for the zero form");
    GcdDecomposition g;
    g.D = L.gcd_with(d * d);
    for (auto [p, ignored] : factorize(d)) {
        if (g.D % (p * p) == 0) {
            g.f *= p;
        } else if (g.D % p == 0) {
            g.e *= p;
        }
    }
    return g;
}

enum class FormFamily { AllNontrivial, Monomial, FirstColumn };

inline const char* to_string(FormFamily f) {
    switch (f) {
        case FormFamily::AllNontrivial: return "all";
        case FormFamily::Monomial: return "monomial";
        case FormFamily::FirstColumn: return "first-column";
    }
    return "unknown";
}

inline FormFamily parse_family(const std::string& s) {
    if (s == "all" || s == "all-nontrivial") return FormFamily::AllNontrivial;
    if (s == "monomial") return FormFamily::Monomial;
    if (s == "first-column") return FormFamily::FirstColumn;
    throw DomainError("unknown form family '" + s + "'");
}

struct BoundRow {
    LinearForm form;
    std::complex<double> value;
    double magnitude = 0.0;
    std::vector<double> ratios;  // one per scale of the owning report
    std::size_t orbit_size = 1;
};

struct BoundReport {
    int n = 0;
    std::int64_t modulus = 0;
    std::string family;
    std::vector<std::string> scale_names;
    std::vector<double> scales;
    std::vector<BoundRow> rows;
    std::vector<double> max_ratio;
    double max_magnitude = 0.0;
    std::size_t skipped = 0;  // forms removed by the precondition filter

    void add(BoundRow row) {
        row.ratios.clear();
        for (double s : scales) row.ratios.push_back(row.magnitude / s);
        if (max_ratio.size() != scales.size()) max_ratio.assign(scales.size(), 0.0);
        for (std::size_t k = 0; k < scales.size(); ++k) max_ratio[k] = std::max(max_ratio[k], row.ratios[k]);
        max_magnitude = std::max(max_magnitude, row.magnitude);
        rows.push_back(std::move(row));
    }
};

namespace detail {

inline bool in_family(const LinearForm& f, FormFamily family) {
    switch (family) {
        case FormFamily::AllNontrivial: return !f.is_zero();
        case FormFamily::Monomial: return f.is_monomial();
        case FormFamily::FirstColumn: return !f.is_zero() && f.is_first_column();
    }
    return false;
}

}  // namespace detail

/// |S_p(L)| for every form of a family (coefficients in [0, p)), against
/// the scales p^{n^2-3/2}, p^{n^2-(n+1)/2} and p^{n^2-n}. With
/// `up_to_symmetry` each orbit under row/column permutation and transpose
/// is evaluated once and its in-family size recorded.
inline BoundReport bound_report_prime(int n, std::int64_t p, FormFamily family, const EnumOptions& opts = {},
                                      bool up_to_symmetry = false) {
    require_prime(p);
    if (n < 1) throw DomainError("dimension must be at least 1");
    const std::uint64_t space = detail::residue_space_size(n, p);
    std::uint64_t forms = 0;
    switch (family) {
        case FormFamily::AllNontrivial: forms = space - 1; break;
        case FormFamily::Monomial: forms = static_cast<std::uint64_t>(n * n) * static_cast<std::uint64_t>(p - 1); break;
        case FormFamily::FirstColumn:
            forms = detail::sat_pow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n)) - 1;
            break;
    }
    detail::charge(opts, detail::sat_mul(forms, space));

    BoundReport rep;
    rep.n = n;
    rep.modulus = p;
    rep.family = to_string(family);
    const double P = static_cast<double>(p);
    const double nn = static_cast<double>(n);
    rep.scale_names = {"p^(n^2-3/2)", "p^(n^2-(n+1)/2)", "p^(n^2-n)"};
    rep.scales = {std::pow(P, nn * nn - 1.5), std::pow(P, nn * nn - (nn + 1) / 2), std::pow(P, nn * nn - nn)};
    rep.max_ratio.assign(rep.scales.size(), 0.0);

    EnumOptions inner = opts;
    inner.counter = nullptr;
    inner.budget = std::numeric_limits<std::uint64_t>::max();
    const auto singular = singular_matrices(n, p, inner);

    std::map<LinearForm, std::size_t> orbit_slot;
    std::vector<std::int64_t> digits(static_cast<std::size_t>(n * n), 0);
    while (detail::advance_digits(digits, p)) {
        LinearForm f(n, digits);
        if (!detail::in_family(f, family)) continue;
        if (up_to_symmetry) {
            const LinearForm key = symmetry_canonical(f, p).first;
            auto it = orbit_slot.find(key);
            if (it != orbit_slot.end()) {
                ++rep.rows[it->second].orbit_size;
                continue;
            }
            orbit_slot.emplace(key, rep.rows.size());
        }
        const ExpSumResult s = make_expsum(p, histogram_over(singular, n, p, f));
        rep.add({f, s.value, s.magnitude, {}, 1});
    }
    return rep;
}

/// Forms used by the p^2 sweep: every unit monomial x_ij, followed by
/// `samples` pseudo-random forms with coefficients in [0, p^2).
inline std::vector<LinearForm> prime_square_forms(int n, std::int64_t p, std::size_t samples, std::uint64_t seed) {
    std::vector<LinearForm> out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out.push_back(LinearForm::monomial(n, i, j));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coef(0, p * p - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(n * n));
        for (auto& v : c) v = coef(rng);
        out.emplace_back(n, std::move(c));
    }
    return out;
}

/// |S_{p^2}(L)| against p^{2n^2-(n+3)/2}; forms vanishing mod p are skipped.
inline BoundReport bound_report_prime_sq(int n, std::int64_t p, const std::vector<LinearForm>& forms,
                                         const EnumOptions& opts = {}) {
    require_prime(p);
    const std::int64_t q = p * p;
    const std::uint64_t space = detail::residue_space_size(n, q);
    detail::charge(opts, detail::sat_add(space, detail::sat_mul(forms.size(), space)));

    BoundReport rep;
    rep.n = n;
    rep.modulus = q;
    rep.family = "prime-square";
    const double nn = static_cast<double>(n);
    rep.scale_names = {"p^(2n^2-(n+3)/2)"};
    rep.scales = {std::pow(static_cast<double>(p), 2 * nn * nn - (nn + 3) / 2)};
    rep.max_ratio.assign(1, 0.0);

    EnumOptions inner = opts;
    inner.counter = nullptr;
    inner.budget = std::numeric_limits<std::uint64_t>::max();
    const auto singular = singular_matrices(n, q, inner);
    for (const auto& f : forms) {
        if (f.n() != n) throw DomainError("form dimension does not match n");
        if (f.vanishes_mod(p)) {
            ++rep.skipped;
            continue;
        }
        const ExpSumResult s = make_expsum(q, histogram_over(singular, n, q, f));
        rep.add({f.reduced(q), s.value, s.magnitude, {}, 1});
    }
    return rep;
}

struct CompositeBound {
    int n = 0;
    std::int64_t d = 1;
    ModulusKind kind = ModulusKind::Squarefree;
    LinearForm form;
    std::complex<double> value{1.0, 0.0};
    double magnitude = 1.0;
    std::int64_t D = 1;
    std::optional<GcdDecomposition> decomposition;
    std::vector<std::string> scale_names;
    std::vector<double> scales;
    std::vector<double> ratios;
};

/// |S_d(L)| or |S_{d^2}(L)| (via the CRT product) compared with the
/// composite-modulus scales, without the d^{o(1)} factors:
///   d:   d^{n^2} (D/d)^n for monomials, d^{n^2} (D/d)^{(n+1)/2} otherwise;
///   d^2: d^{2n^2-(n+3)/2} e f^{(n+3)/2} and d^{2n^2} (D/d^2)^{(n+3)/4}.
inline CompositeBound bound_report_composite(int n, std::int64_t d, const LinearForm& L, ModulusKind kind,
                                             const EnumOptions& opts = {}) {
    if (L.n() != n) throw DomainError("form dimension does not match n");
    CompositeBound out;
    out.n = n;
    out.d = d;
    out.kind = kind;
    out.form = L;
    const CrtEvaluation crt = expsum_via_crt(n, d, L, kind, opts);
    out.value = crt.product;
    out.magnitude = std::abs(crt.product);
    const double nn = static_cast<double>(n);
    const double dd = static_cast<double>(d);
    if (kind == ModulusKind::Squarefree) {
        out.D = L.gcd_with(d);
        const double rel = static_cast<double>(out.D) / dd;
        if (L.is_monomial()) {
            out.scale_names = {"d^(n^2) (D/d)^n"};
            out.scales = {std::pow(dd, nn * nn) * std::pow(rel, nn)};
        } else {
            out.scale_names = {"d^(n^2) (D/d)^((n+1)/2)"};
            out.scales = {std::pow(dd, nn * nn) * std::pow(rel, (nn + 1) / 2)};
        }
    } else {
        out.D = L.gcd_with(d * d);
        out.scale_names = {"d^(2n^2-(n+3)/2) e f^((n+3)/2)", "d^(2n^2) (D/d^2)^((n+3)/4)"};
        double gcd_scale = std::nan("");
        if (!L.is_zero()) {
            out.decomposition = gcd_decompose_sq(L, d);
            gcd_scale = std::pow(dd, 2 * nn * nn - (nn + 3) / 2) * static_cast<double>(out.decomposition->e) *
                          std::pow(static_cast<double>(out.decomposition->f), (nn + 3) / 2);
        }
        out.scales = {gcd_scale,
                      std::pow(dd, 2 * nn * nn) * std::pow(static_cast<double>(out.D) / (dd * dd), (nn + 3) / 4)};
    }
    for (double s : out.scales) out.ratios.push_back(out.magnitude / s);
    return out;
}

}  // namespace detstat

#pragma once

// Command-line front end. run() parses argv, dispatches to the library and
// writes one JSON document (or CSV table) to `out`; diagnostics go to `err`.
// Exit codes: 0 success, 1 invalid input, 2 budget refusal, 3 failed checks.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "detstat/asymptotics.hpp"
#include "detstat/box_counts.hpp"
#include "detstat/common.hpp"
#include "detstat/euler_products.hpp"
#include "detstat/exact_counts.hpp"
#include "detstat/expsums.hpp"
#include "detstat/verify.hpp"

namespace detstat::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kInvalid = 1, kBudget = 2, kChecksFailed = 3 };

struct RunConfig {
    std::string command;
    int n = 2;
    std::optional<std::int64_t> m;
    std::optional<std::int64_t> d;
    std::vector<std::int64_t> h;
    std::string bounds;
    std::string form;
    std::string family = "all-nontrivial";
    std::string method = "both";
    std::int64_t prime_limit = 1'000'000;
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
    std::string format = "json";
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::size_t samples = 16;
    bool timing = false;
};

/// Rows of the report plus document-level fields.
struct Report {
    std::vector<Json> records;
    Json summary = Json::object();
};

namespace detail {

inline Json number(const BigInt& v) {
    if (fits_int64(v)) return static_cast<std::int64_t>(v);
    return v.str();
}

inline Json number(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) return number(BigInt(boost::multiprecision::numerator(q)));
    return to_string(q);
}

inline Json real_text(const Real& v) { return v.str(30, std::ios_base::scientific); }

inline Json finite(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline std::int64_t need(const std::optional<std::int64_t>& v, const char* flag) {
    if (!v) throw DomainError(std::string("missing required flag ") + flag);
    return *v;
}

inline std::vector<std::int64_t> need_h(const RunConfig& cfg) {
    if (cfg.h.empty()) throw DomainError("missing required flag --h");
    return cfg.h;
}

inline Json echo(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["n"] = c.n;
    j["m"] = c.m ? Json(*c.m) : Json(nullptr);
    j["d"] = c.d ? Json(*c.d) : Json(nullptr);
    j["h"] = c.h;
    j["bounds"] = c.bounds;
    j["form"] = c.form;
    j["family"] = c.family;
    j["method"] = c.method;
    j["prime_limit"] = c.prime_limit;
    j["budget"] = c.budget;
    j["threads"] = c.threads;
    j["format"] = c.format;
    j["suite"] = c.suite;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    return j;
}

// FNV-1a over the serialized config, for quick comparison of runs.
inline std::string config_hash(const Json& config) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : config.dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline Json histogram_json(const std::vector<std::int64_t>& h) { return Json(h); }

inline Json bound_rows(const BoundReport& rep, Report& out) {
    Json scales = Json::array();
    for (std::size_t k = 0; k < rep.scales.size(); ++k) {
        scales.push_back({{"name", rep.scale_names[k]}, {"value", rep.scales[k]}, {"max_ratio", rep.max_ratio[k]}});
    }
    for (const auto& row : rep.rows) {
        Json r;
        r["form"] = row.form.to_string();
        r["value_re"] = row.value.real();
        r["value_im"] = row.value.imag();
        r["magnitude"] = row.magnitude;
        for (std::size_t k = 0; k < row.ratios.size(); ++k) r["ratio_" + std::to_string(k + 1)] = row.ratios[k];
        r["orbit_size"] = row.orbit_size;
        out.records.push_back(std::move(r));
    }
    return scales;
}

// --- command handlers ----------------------------------------------------

inline Report cmd_count_singular(const RunConfig& c, const EnumOptions& opts) {
    const std::int64_t m = need(c.m, "--m");
    const CountRecord rec = singular_count(c.n, m, opts);
    Report r;
    r.records.push_back({{"n", rec.n}, {"modulus", rec.modulus}, {"count", number(rec.count)},
                         {"source", to_string(rec.source)}, {"params", rec.params}});
    return r;
}

inline Report cmd_count_box(const RunConfig& c, const EnumOptions& opts) {
    const std::int64_t m = need(c.m, "--m");
    Report r;
    std::vector<BoxSpec> boxes;
    if (!c.bounds.empty()) {
        const LinearForm grid = LinearForm::parse(c.bounds);
        if (grid.n() != c.n) throw DomainError("--bounds grid does not match --n");
        boxes.emplace_back(c.n, std::vector<std::int64_t>(grid.coeffs().begin(), grid.coeffs().end()));
    } else {
        for (auto H : need_h(c)) boxes.push_back(BoxSpec::uniform(c.n, H));
    }
    for (const auto& box : boxes) {
        const ResidualRecord rec = residual_record(box, m, opts);
        r.records.push_back({{"n", rec.n},
                             {"modulus", rec.modulus},
                             {"box", rec.box},
                             {"count", number(rec.exact_count)},
                             {"main_term", number(rec.main_term)},
                             {"residual", number(rec.residual)},
                             {"normalized_exponent", rec.normalized_exponent ? Json(*rec.normalized_exponent) : Json(nullptr)}});
    }
    return r;
}

inline Report cmd_fixed_det(const RunConfig& c, const EnumOptions& opts) {
    Report r;
    const auto Hs = need_h(c);
    if (c.d) {
        for (auto H : Hs) {
            r.records.push_back({{"n", c.n}, {"H", H}, {"determinant", *c.d}, {"count", number(count_fixed_det(c.n, H, *c.d, opts))}});
        }
        return r;
    }
    for (const auto& row : fixed_det_max_report(c.n, Hs, opts)) {
        r.records.push_back({{"n", c.n}, {"H", row.H}, {"argmax", row.argmax}, {"max_count", row.max_count},
                             {"normalized", row.normalized}});
    }
    return r;
}

inline Report cmd_expsum(const RunConfig& c, const EnumOptions& opts) {
    const std::int64_t m = need(c.m, "--m");
    if (c.form.empty()) throw DomainError("missing required flag --form");
    const LinearForm L = LinearForm::parse(c.form);
    if (L.n() != c.n) throw DomainError("--form grid does not match --n");
    const ExpSumResult s = eval_expsum(c.n, m, L, opts);
    Report r;
    Json rec{{"n", c.n}, {"modulus", m}, {"form", L.to_string()}, {"value_re", s.value.real()},
             {"value_im", s.value.imag()}, {"magnitude", s.magnitude}, {"mass", s.mass()},
             {"histogram", histogram_json(s.histogram)}};
    const std::int64_t root = isqrt(m);
    std::optional<std::pair<std::int64_t, ModulusKind>> split;
    if (m > 1 && is_squarefree(m)) split = {{m, ModulusKind::Squarefree}};
    else if (m > 1 && root * root == m && is_squarefree(root)) split = {{root, ModulusKind::Square}};
    if (split) {
        const CrtEvaluation crt = expsum_via_crt(c.n, split->first, L, split->second, opts);
        Json parts = Json::array();
        for (std::size_t k = 0; k < crt.factors.size(); ++k) {
            parts.push_back({{"prime", crt.factors[k].prime}, {"modulus", crt.factors[k].modulus},
                             {"weight", crt.factors[k].weight}, {"value_re", crt.parts[k].value.real()},
                             {"value_im", crt.parts[k].value.imag()}});
        }
        r.summary["crt_parts"] = parts;
        r.summary["crt_product_re"] = crt.product.real();
        r.summary["crt_product_im"] = crt.product.imag();
    }
    r.records.push_back(std::move(rec));
    return r;
}

inline Report cmd_expsum_sweep(const RunConfig& c, const EnumOptions& opts) {
    const std::int64_t m = need(c.m, "--m");
    Report r;
    if (is_prime(m)) {
        const BoundReport rep = bound_report_prime(c.n, m, parse_family(c.family), opts);
        r.summary["family"] = rep.family;
        r.summary["scales"] = bound_rows(rep, r);
        r.summary["max_magnitude"] = rep.max_magnitude;
        return r;
    }
    const std::int64_t p = isqrt(m);
    if (p * p == m && is_prime(p)) {
        const BoundReport rep = bound_report_prime_sq(c.n, p, prime_square_forms(c.n, p, c.samples, c.seed), opts);
        r.summary["family"] = rep.family;
        r.summary["scales"] = bound_rows(rep, r);
        r.summary["max_magnitude"] = rep.max_magnitude;
        r.summary["skipped"] = rep.skipped;
        return r;
    }
    throw DomainError("expsum-sweep needs a prime or the square of a prime for --m");
}

inline void check_method(const std::string& method) {
    if (method != "direct" && method != "sieve" && method != "both") {
        throw DomainError("--method must be direct, sieve or both");
    }
}

inline Report cmd_squarefree(const RunConfig& c, const EnumOptions& opts) {
    check_method(c.method);
    Report r;
    for (auto H : need_h(c)) {
        Json rec{{"n", c.n}, {"H", H}, {"sieve_cutoff", sieve_cutoff(c.n, H, SieveKind::Squarefree)}};
        std::optional<BigInt> direct, sieve;
        if (c.method != "sieve") direct = squarefree_direct(c.n, H, opts);
        if (c.method != "direct") sieve = squarefree_sieve(c.n, H, opts);
        rec["direct"] = direct ? number(*direct) : Json(nullptr);
        rec["sieve"] = sieve ? number(*sieve) : Json(nullptr);
        rec["agree"] = direct && sieve ? Json(*direct == *sieve) : Json(nullptr);
        const BigInt value = direct ? *direct : *sieve;
        rec["density"] = number(Rational(value, big_pow(BigInt(2 * H + 1), static_cast<std::uint64_t>(c.n * c.n))));
        r.records.push_back(std::move(rec));
    }
    return r;
}

inline Report cmd_phi_sum(const RunConfig& c, const EnumOptions& opts) {
    check_method(c.method);
    Report r;
    for (auto H : need_h(c)) {
        Json rec{{"n", c.n}, {"H", H}, {"sieve_cutoff", sieve_cutoff(c.n, H, SieveKind::Phi)}};
        std::optional<Rational> direct, sieve;
        if (c.method != "sieve") direct = phi_sum_direct(c.n, H, opts);
        if (c.method != "direct") sieve = phi_sum_sieve(c.n, H, opts);
        rec["direct"] = direct ? number(*direct) : Json(nullptr);
        rec["sieve"] = sieve ? number(*sieve) : Json(nullptr);
        rec["agree"] = direct && sieve ? Json(*direct == *sieve) : Json(nullptr);
        const Rational value = direct ? *direct : *sieve;
        rec["density"] = number(value / Rational(big_pow(BigInt(2 * H + 1), static_cast<std::uint64_t>(c.n * c.n))));
        r.records.push_back(std::move(rec));
    }
    return r;
}

inline Json interval_json(const ConstantInterval& ci) {
    return {{"name", ci.name},
            {"n", ci.n},
            {"truncation", ci.truncation},
            {"lo", real_text(ci.lo)},
            {"hi", real_text(ci.hi)},
            {"mid", static_cast<double>(ci.mid())},
            {"width", static_cast<double>(ci.width())},
            {"tail_bound_method", ci.tail_bound_method}};
}

inline Report cmd_constants(const RunConfig& c, const EnumOptions&) {
    Report r;
    r.records.push_back(interval_json(euler_constant_S(c.n, c.prime_limit)));
    r.records.push_back(interval_json(euler_constant_sigma(c.n, c.prime_limit)));
    return r;
}

inline Report cmd_exponents(const RunConfig& c, const EnumOptions&) {
    Report r;
    Json rec{{"n", c.n},
             {"gamma", to_string(exponent_gamma(c.n))},
             {"theta", to_string(exponent_theta(c.n))},
             {"squarefree_split_exponent", to_string(delta_exponent(c.n, SieveKind::Squarefree))},
             {"phi_split_exponent", to_string(delta_exponent(c.n, SieveKind::Phi))}};
    if (!c.h.empty() && c.h.front() >= 2) {
        const SplitPlan sq = split_plan(c.n, c.h.front(), SieveKind::Squarefree);
        const SplitPlan ph = split_plan(c.n, c.h.front(), SieveKind::Phi);
        rec["H"] = c.h.front();
        rec["squarefree_delta"] = sq.delta;
        rec["squarefree_d_max"] = sq.d_max;
        rec["phi_delta"] = ph.delta;
        rec["phi_d_max"] = ph.d_max;
    }
    r.records.push_back(std::move(rec));
    return r;
}

inline Report cmd_convergence(const RunConfig& c, const EnumOptions& opts) {
    const ConvergenceTable t = convergence_study(c.n, need_h(c), opts, c.prime_limit);
    Report r;
    for (const auto& row : t.rows) {
        r.records.push_back({{"H", row.H},
                             {"squarefree", number(row.squarefree)},
                             {"phi_sum", number(row.phi_sum)},
                             {"squarefree_density", number(row.squarefree_density)},
                             {"phi_density", number(row.phi_density)},
                             {"squarefree_prediction", row.squarefree_prediction},
                             {"phi_prediction", row.phi_prediction},
                             {"squarefree_gap", row.squarefree_gap},
                             {"phi_gap", row.phi_gap},
                             {"squarefree_raw_gap", row.squarefree_raw_gap},
                             {"phi_raw_gap", row.phi_raw_gap}});
    }
    r.summary["squarefree_constant"] = interval_json(t.squarefree_constant);
    r.summary["phi_constant"] = interval_json(t.phi_constant);
    r.summary["squarefree_slope"] = finite(t.squarefree_slope);
    r.summary["phi_slope"] = finite(t.phi_slope);
    return r;
}

inline Report cmd_verify(const RunConfig& c, const EnumOptions& opts) {
    VerifyContext ctx{opts, c.seed};
    Report r;
    std::size_t passed = 0;
    for (const Check& ch : run_suite(c.suite, ctx)) {
        passed += ch.pass ? 1 : 0;
        r.records.push_back({{"suite", ch.group}, {"check", ch.name}, {"expected", ch.expected}, {"actual", ch.actual},
                             {"pass", ch.pass}});
    }
    r.summary["checks"] = r.records.size();
    r.summary["passed"] = passed;
    r.summary["all_pass"] = passed == r.records.size();
    return r;
}

// --- output ---------------------------------------------------------------

inline std::string csv_cell(const Json& v) {
    std::string s;
    if (v.is_string()) {
        s = v.get<std::string>();
    } else if (v.is_null()) {
        s = "";
    } else if (v.is_array()) {
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + csv_cell(v[k]);
    } else {
        s = v.dump();
    }
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    return s;
}

inline void write_csv(const Report& r, std::ostream& out) {
    std::vector<std::string> header;
    for (const auto& rec : r.records) {
        for (const auto& [key, ignored] : rec.items()) {
            if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
        }
    }
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << csv_cell(header[k]);
    out << "\n";
    for (const auto& rec : r.records) {
        for (std::size_t k = 0; k < header.size(); ++k) {
            out << (k ? "," : "") << (rec.contains(header[k]) ? csv_cell(rec[header[k]]) : "");
        }
        out << "\n";
    }
}

inline std::uint64_t env_budget() {
    const char* v = std::getenv("DETSTAT_BUDGET");
    if (v == nullptr || *v == '\0') return kDefaultBudget;
    char* end = nullptr;
    const unsigned long long b = std::strtoull(v, &end, 10);
    if (*end != '\0' || b == 0) throw DomainError("DETSTAT_BUDGET must be a positive integer");
    return b;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg.budget = detail::env_budget();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    cfg.threads = default_threads();

    CLI::App app{"Counts of integer matrices by determinant arithmetic", "detstat"};
    app.require_subcommand(1, 1);
    app.set_help_flag("--help", "print this help");
    app.set_version_flag("--version", kVersion);

    struct Spec {
        const char* name;
        const char* help;
        std::vector<std::string> flags;
        Report (*handler)(const RunConfig&, const EnumOptions&);
    };
    const std::vector<Spec> specs{
        {"count-singular", "N_n(m): singular matrices modulo m", {"n", "m"}, detail::cmd_count_singular},
        {"count-box", "matrices in a box with m | det, against the main term", {"n", "m", "h", "bounds"}, detail::cmd_count_box},
        {"fixed-det", "matrices in a box with a given determinant", {"n", "h", "d"}, detail::cmd_fixed_det},
        {"expsum", "exponential sum of a linear form over singular matrices", {"n", "m", "form"}, detail::cmd_expsum},
        {"expsum-sweep", "sums for a family of forms against the bound scales", {"n", "m", "family", "samples"}, detail::cmd_expsum_sweep},
        {"squarefree", "matrices with square-free determinant", {"n", "h", "method"}, detail::cmd_squarefree},
        {"phi-sum", "sum of phi(|det|)/|det| over nonsingular matrices", {"n", "h", "method"}, detail::cmd_phi_sum},
        {"constants", "enclosures of the density constants", {"n", "prime-limit"}, detail::cmd_constants},
        {"exponents", "error-term exponents and split thresholds", {"n", "h"}, detail::cmd_exponents},
        {"convergence", "densities along a ladder of box sizes", {"n", "h", "prime-limit"}, detail::cmd_convergence},
        {"verify", "run a suite of checks", {"suite"}, detail::cmd_verify},
    };

    for (const auto& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->set_help_flag("--help", "print this help");  // "-h" would clash with --h
        for (const auto& f : s.flags) {
            if (f == "n") sub->add_option("--n", cfg.n, "matrix dimension")->check(CLI::Range(1, 12));
            if (f == "m") sub->add_option("--m", cfg.m, "modulus")->check(CLI::PositiveNumber);
            if (f == "d") sub->add_option("--d", cfg.d, "target determinant");
            if (f == "h") sub->add_option("--h", cfg.h, "box bound(s) H")->delimiter(',')->check(CLI::PositiveNumber);
            if (f == "bounds") sub->add_option("--bounds", cfg.bounds, "per-entry bounds grid \"a,b;c,d\"");
            if (f == "form") sub->add_option("--form", cfg.form, "linear form grid \"a11,a12;a21,a22\"");
            if (f == "family")
                sub->add_option("--family", cfg.family, "all-nontrivial | monomial | first-column")
                    ->check(CLI::IsMember({"all-nontrivial", "monomial", "first-column"}));
            if (f == "samples") sub->add_option("--samples", cfg.samples, "random forms for prime-square sweeps");
            if (f == "method")
                sub->add_option("--method", cfg.method, "direct | sieve | both")
                    ->check(CLI::IsMember({"direct", "sieve", "both"}));
            if (f == "prime-limit") sub->add_option("--prime-limit", cfg.prime_limit, "Euler product truncation")->check(CLI::PositiveNumber);
            if (f == "suite") sub->add_option("--suite", cfg.suite, "suite tag or 'all'");
        }
        sub->add_option("--budget", cfg.budget, "maximum iterations per enumeration")->check(CLI::PositiveNumber);
        sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", cfg.seed, "seed for sampled forms");
        sub->add_flag("--timing", cfg.timing, "record wall time (makes output run-dependent)");
    }

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInvalid;
    }

    const Spec* chosen = nullptr;
    for (const auto& s : specs) {
        if (app.got_subcommand(s.name)) chosen = &s;
    }
    cfg.command = chosen->name;

    IterationCounter counter;
    const EnumOptions opts{cfg.budget, cfg.threads, &counter};
    const auto start = std::chrono::steady_clock::now();
    Report report;
    try {
        report = chosen->handler(cfg, opts);
    } catch (const BudgetExceeded& e) {
        err << "budget refused: " << e.what() << "\n";
        return kBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (cfg.format == "csv") {
        detail::write_csv(report, out);
        if (cfg.timing) err << "wall time: " << wall << " s\n";
    } else {
        Json doc;
        doc["tool"] = "detstat";
        doc["version"] = kVersion;
        doc["command"] = cfg.command;
        doc["config"] = detail::echo(cfg);
        doc["config_hash"] = detail::config_hash(doc["config"]);
        if (report.records.size() == 1) {
            for (const auto& [k, v] : report.records.front().items()) doc[k] = v;
        }
        for (const auto& [k, v] : report.summary.items()) doc[k] = v;
        doc["results"] = report.records;
        doc["iterations"] = counter.get();
        doc["wall_time_s"] = cfg.timing ? Json(wall) : Json(nullptr);
        out << doc.dump(2) << "\n";
    }
    if (cfg.command == "verify" && !report.summary.value("all_pass", false)) {
        err << "verification failed\n";
        return kChecksFailed;
    }
    return kOk;
}

}  // namespace detstat::cli

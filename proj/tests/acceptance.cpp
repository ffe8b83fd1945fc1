// Runs the thirteen acceptance criteria and prints one line per criterion.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "detstat/verify.hpp"

using namespace detstat;

namespace {

struct Criterion {
    int id;
    const char* title;
    std::vector<CheckGroup> groups;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "closed forms for N_n(d) and N_n(d^2) equal enumeration", {check_closed_forms}},
        {2, "anchor counts N_2(2,3,6,4,9)", {check_singular_anchors}},
        {3, "linear-section count equals enumeration", {check_linear_sections}},
        {4, "monomial sums equal the exact value", {check_monomial_sums}},
        {5, "sums mod 4 and 6, CRT product identity", {check_crt}},
        {6, "prime sweep max ratio below pinned constants", {check_prime_sweep}},
        {7, "box counts, equidistribution, fast path", {check_box_counts}},
        {8, "fixed-determinant anchors", {check_fixed_det}},
        {9, "square-free direct count equals sieve", {check_squarefree_pipeline}},
        {10, "phi sum direct equals sieve", {check_phi_pipeline}},
        {11, "Euler product enclosures", {check_constant_S, check_constant_sigma}},
        {12, "exact exponents and split thresholds", {check_exponent_gamma, check_exponent_theta}},
        {13, "convergence ladder goldens and decreasing gap", {check_ladder}},
    };

    VerifyContext ctx;
    ctx.opts.threads = default_threads();
    ctx.seed = 1;
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<Check> checks;
        std::string error;
        try {
            for (const auto& g : c.groups) g(ctx, checks);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::size_t passed = 0;
        for (const auto& ch : checks) passed += ch.pass ? 1 : 0;
        const bool ok = error.empty() && passed == checks.size() && !checks.empty();
        failed += ok ? 0 : 1;
        std::printf("criterion %2d %s  %s (%zu/%zu checks, %.1fs)\n", c.id, ok ? "PASS" : "FAIL", c.title, passed,
                    checks.size(), secs);
        for (const auto& ch : checks) {
            if (!ch.pass) {
                std::printf("    failed %s: %s expected %s, got %s\n", ch.group.c_str(), ch.name.c_str(),
                            ch.expected.c_str(), ch.actual.c_str());
            }
        }
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

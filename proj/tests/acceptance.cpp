/*
 * acceptance.cpp - end-to-end acceptance gate.  Ten numbered criteria, one
 * [PASS]/[FAIL] line each; any failure aborts with exit 1.  Budgets and
 * tolerances are asserted, not just printed.
 */
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "fredholm.hpp"
#include "kernelmat.hpp"
#include "montecarlo.hpp"
#include "verify.hpp"

namespace {

// Always-on requirement: never compiled out in Release.
#define REQUIRE(cond, msg)                                                \
    do {                                                                  \
        if (!(cond)) {                                                    \
            std::fprintf(stderr, "[FAIL] %s:%d %s\n", __FILE__, __LINE__, \
                         std::string(msg).c_str());                       \
            std::exit(1);                                                 \
        }                                                                 \
    } while (0)

constexpr std::uint64_t kSeed = 0x5EED0001ULL;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void pass(int criterion, const std::string& label, double elapsed) {
    std::printf("[PASS] criterion %2d: %s (%.1fs)\n", criterion, label.c_str(),
                elapsed);
    std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

// Level grid shared by the bridge criterion: dense enough for a sup-norm
// and reaching past the soft edge by several fluctuation widths.
std::vector<double> bridge_levels(int n) {
    const double hi = std::sqrt(4.0 * n + 8.0 * std::cbrt(double(n)) + 12.0);
    std::vector<double> out(600);
    for (int i = 0; i < 600; ++i) out[i] = 0.02 + (hi - 0.02) * i / 599.0;
    return out;
}

void criterion_1_determinant_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n = 1; n <= 16; ++n) {
        for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double d1 = bridgeloe::det_I_minus(bridgeloe::build_H(n, r));
            const bridgeloe::lrr_data lrr = bridgeloe::build_L_R1_R2(n, r);
            bridgeloe::mat m2 = lrr.L;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m2(i, j) += lrr.R1[i] * lrr.R2[j];
            const double d2 = bridgeloe::det_I_minus(m2);
            const double rel =
                std::fabs(d1 * d1 - d2) / std::max(1.0, std::fabs(d2));
            worst = std::max(worst, rel);
            REQUIRE(rel <= 1e-9,
                    fmt("determinant identity off by %.3e at N, r", rel));
        }
    }
    const double dt = seconds_since(t0);
    REQUIRE(dt < 5.0, fmt("determinant sweep took %.1fs (budget 5s)", dt));
    pass(1, "squared determinant equals rank-one-corrected determinant, "
            "N in 1..16, worst rel err " + fmt("%.3e", worst), dt);
}

void criterion_2_bridge_sampler() {
    const auto t0 = std::chrono::steady_clock::now();
    const bridgeloe::path_grid grid = bridgeloe::make_uniform_s_grid(2000);
    double worst = 0.0;
    for (int n : {1, 2, 3, 5}) {
        const std::vector<double> levels = bridge_levels(n);
        const bridgeloe::bridge_cdf_estimate est =
            bridgeloe::run_bridge_ensemble(n, grid, 20000, kSeed, levels);
        double sup = 0.0;
        for (std::size_t j = 0; j < levels.size(); ++j) {
            const double exact =
                bridgeloe::maxheight_cdf(n, levels[j] / std::sqrt(2.0));
            sup = std::max(sup, std::fabs(est.prob[j] - exact));
        }
        worst = std::max(worst, sup);
        REQUIRE(sup < 0.025,
                fmt("bridge sampler KS %.4f at N=%g (gate 0.025)", sup, n));
    }
    const double dt = seconds_since(t0);
    REQUIRE(dt < 600.0, fmt("bridge sampling took %.1fs (budget 600s)", dt));
    pass(2, "non-intersecting bridge sampler matches the exact law, "
            "N in {1,2,3,5}, worst KS " + fmt("%.4f", worst), dt);
}

void criterion_3_eigenvalue_sampler() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n : {1, 2, 4, 8}) {
        const bridgeloe::sample_summary summary =
            bridgeloe::run_loe_ensemble(n, 10000, kSeed);
        const double ks = bridgeloe::ks_statistic(
            summary, [n](double x) { return bridgeloe::loe_cdf(n, x); });
        worst = std::max(worst, ks);
        REQUIRE(ks < 0.02, fmt("eigenvalue KS %.4f at N=%g (gate 0.02)", ks, n));
    }
    const double dt = seconds_since(t0);
    REQUIRE(dt < 60.0, fmt("eigenvalue sampling took %.1fs (budget 60s)", dt));
    pass(3, "covariance-ensemble sampler matches the exact law, "
            "N in {1,2,4,8}, worst KS " + fmt("%.4f", worst), dt);
}

void criterion_4_closed_form_anchors() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double m = 0.05 + (3.0 - 0.05) * i / 49.0;
        const double err = std::fabs(bridgeloe::maxheight_cdf(1, m) -
                                     (1.0 - std::exp(-2.0 * m * m)));
        worst = std::max(worst, err);
        REQUIRE(err <= 1e-12, fmt("height law off by %.3e at m=%g", err, m));
    }
    for (int i = 0; i < 50; ++i) {
        const double s = 0.1 + (20.0 - 0.1) * i / 49.0;
        const double err =
            std::fabs(bridgeloe::loe_cdf(1, s) - (1.0 - std::exp(-s / 2.0)));
        worst = std::max(worst, err);
        REQUIRE(err <= 1e-12, fmt("eigenvalue law off by %.3e at s=%g", err, s));
    }
    pass(4, "N=1 laws equal their classical closed forms on 50-point grids, "
            "worst err " + fmt("%.3e", worst), seconds_since(t0));
}

void criterion_5_matrix_identity_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> ns;
    for (int n = 1; n <= 16; ++n) ns.push_back(n);
    const bridgeloe::verification_report rep =
        bridgeloe::verify_matrix_identities(ns, {0.25, 0.5, 1.0, 2.0, 4.0});
    for (const bridgeloe::check_result& c : rep.checks)
        REQUIRE(c.pass, c.name + " failed: max_err " + fmt("%.3e", c.max_err) +
                            " tol " + fmt("%.0e", c.tol) + " (" + c.params + ")");
    REQUIRE(rep.pass, "matrix identity report did not pass");
    const double dt = seconds_since(t0);
    REQUIRE(dt < 10.0, fmt("matrix identity suite took %.1fs (budget 10s)", dt));
    pass(5, "kernel-matrix identities (algebraic at 1e-8, derivatives at 1e-5) "
            "over N in 1..16, r in {0.25,0.5,1,2,4}", dt);
}

void criterion_6_summation_lemmas() {
    const auto t0 = std::chrono::steady_clock::now();
    const bridgeloe::verification_report rep = bridgeloe::verify_support_lemmas();
    for (const bridgeloe::check_result& c : rep.checks) {
        REQUIRE(c.pass, c.name + " failed: max_err " + fmt("%.3e", c.max_err));
        if (c.name == "binomial-convolution-exact")
            REQUIRE(c.max_err == 0.0, "binomial convolution had mismatches");
        if (c.name == "hermite-overlap-three-routes")
            REQUIRE(c.max_err <= 1e-9, "three-route overlap above 1e-9");
        if (c.name == "laguerre-sum-swap-identity")
            REQUIRE(c.max_err <= 1e-10, "summation swap above 1e-10");
    }
    REQUIRE(rep.checks.size() == 4, "summation lemma suite incomplete");
    pass(6, "binomial convolution exact; overlap and summation lemmas within "
            "1e-9 / 1e-10 with three-way route agreement", seconds_since(t0));
}

void criterion_7_reflection_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
        for (double l : {0.5, 1.0, 2.0}) {
            for (double r : {0.5, 1.0, 2.0}) {
                const bridgeloe::verification_report rep =
                    bridgeloe::verify_reflection_identity(n, r, l,
                                                          std::max(n, 8));
                worst = std::max(worst, rep.checks[0].max_err);
                REQUIRE(rep.pass,
                        fmt("reflection residual %.3e at some (N, L, r)",
                            rep.checks[0].max_err));
            }
        }
    }
    pass(7, "heat-reflection factorization residual <= 1e-7 over N <= 8, "
            "L in {0.5,1,2}, r in {0.5,1,2}, worst " + fmt("%.3e", worst),
         seconds_since(t0));
}

void criterion_8_path_integral() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> m_grid;
    for (int i = 0; i <= 13; ++i) m_grid.push_back(0.4 + 0.2 * i);
    const bridgeloe::verification_report rep1 =
        bridgeloe::verify_pathintegral_smallN(1, m_grid);
    REQUIRE(rep1.pass, fmt("N=1 path integral off by %.3e (tol 1e-6)",
                           rep1.checks[0].max_err));
    const bridgeloe::verification_report rep2 =
        bridgeloe::verify_pathintegral_smallN(2, m_grid);
    REQUIRE(rep2.pass, fmt("N=2 path integral off by %.3e (tol 1e-4)",
                           rep2.checks[0].max_err));
    pass(8, "path-integral representation matches the exact law on "
            "m in [0.4, 3]: N=1 within 1e-6, N=2 within 1e-4",
         seconds_since(t0));
}

void criterion_9_limit_study() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> s_grid(121);
    for (int i = 0; i < 121; ++i) s_grid[i] = -4.0 + 6.0 * i / 120.0;
    const bridgeloe::limit_comparison cmp =
        bridgeloe::tw_limit_compare({8, 16, 32}, s_grid);
    REQUIRE(cmp.sup_err_bridge.size() == 3, "limit study incomplete");
    REQUIRE(cmp.sup_err_bridge[1] < cmp.sup_err_bridge[0],
            fmt("sup err rose from %.4f to %.4f between N=8 and N=16",
                cmp.sup_err_bridge[0], cmp.sup_err_bridge[1]));
    REQUIRE(cmp.sup_err_bridge[2] < cmp.sup_err_bridge[1],
            fmt("sup err rose from %.4f to %.4f between N=16 and N=32",
                cmp.sup_err_bridge[1], cmp.sup_err_bridge[2]));
    REQUIRE(cmp.sup_err_bridge[2] <= 0.1,
            fmt("sup err %.4f at N=32 exceeds 0.1", cmp.sup_err_bridge[2]));
    REQUIRE(cmp.matched_max_diff <= 1e-9,
            fmt("the two soft-edge scalings disagree by %.3e",
                cmp.matched_max_diff));
    const double dt = seconds_since(t0);
    REQUIRE(dt < 120.0, fmt("limit study took %.1fs (budget 120s)", dt));
    pass(9, "distance to the soft-edge limit decreases along N in {8,16,32} "
            "(" + fmt("%.4f -> %.4f", cmp.sup_err_bridge[0],
                      cmp.sup_err_bridge[1]) +
            fmt(" -> %.4f", cmp.sup_err_bridge[2]) +
            "), matched scalings agree to " + fmt("%.1e", cmp.matched_max_diff),
         dt);
}

void criterion_10_limit_evaluator_self_consistency() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double r : {-3.0, -1.0, 0.0, 1.0}) {
        const double a = bridgeloe::fgoe(r, 64, 10.0);
        const double b = bridgeloe::fgoe(r, 128, 20.0);
        worst = std::max(worst, std::fabs(a - b));
        REQUIRE(std::fabs(a - b) < 1e-8,
                fmt("order doubling moved the limit CDF by %.3e at r=%g",
                    std::fabs(a - b), r));
    }
    double prev = -1.0;
    double first = 0.0, last = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = -8.0 + 13.0 * i / 99.0;
        const double v = bridgeloe::fgoe(r);
        REQUIRE(v >= prev, fmt("limit CDF decreased at r=%g", r));
        prev = v;
        if (i == 0) first = v;
        if (i == 99) last = v;
    }
    REQUIRE(last - first > 0.99, "limit CDF traverses less than 0.99 mass");
    pass(10, "limit CDF stable under order doubling (worst move " +
             fmt("%.1e", worst) + ") and monotone on a 100-point grid",
         seconds_since(t0));
}

}  // namespace

int main() {
    criterion_1_determinant_identity();
    criterion_2_bridge_sampler();
    criterion_3_eigenvalue_sampler();
    criterion_4_closed_form_anchors();
    criterion_5_matrix_identity_suite();
    criterion_6_summation_lemmas();
    criterion_7_reflection_identity();
    criterion_8_path_integral();
    criterion_9_limit_study();
    criterion_10_limit_evaluator_self_consistency();
    std::printf("all 10 acceptance criteria passed\n");
    return 0;
}

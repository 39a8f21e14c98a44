// Implementation of the public C API: opaque handles over the C++ core,
// exceptions mapped to status codes, messages kept per thread.
//
// SPDX-License-Identifier: MIT

#include "bridge_loe.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fredholm.hpp"
#include "kernelmat.hpp"
#include "montecarlo.hpp"
#include "verify.hpp"

struct bloe_table {
    std::vector<double> args;
    std::vector<double> probs;
};

struct bloe_report {
    bridgeloe::verification_report rep;
};

struct bloe_limit {
    bridgeloe::limit_comparison cmp;
};

namespace {

thread_local std::string t_last_error;

bloe_status fail(bloe_status code, const char* message) {
    t_last_error = message;
    return code;
}

// Runs the body and maps thrown exceptions onto status codes: domain
// violations from the core become BLOE_EDOM, numerical certificate
// failures (and anything else) BLOE_ENUMERIC.
template <typename Body>
bloe_status guarded(Body&& body) {
    try {
        body();
        return BLOE_OK;
    } catch (const std::invalid_argument& e) {
        return fail(BLOE_EDOM, e.what());
    } catch (const std::domain_error& e) {
        return fail(BLOE_EDOM, e.what());
    } catch (const std::runtime_error& e) {
        return fail(BLOE_ENUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(BLOE_ENUMERIC, e.what());
    }
}

bool grid_ok(double lo, double hi, int steps) {
    return std::isfinite(lo) && std::isfinite(hi) && lo <= hi && steps >= 2;
}

std::vector<double> inclusive_grid(double lo, double hi, int steps) {
    std::vector<double> out(steps);
    for (int i = 0; i < steps; ++i)
        out[i] = lo + (hi - lo) * i / (steps - 1);
    return out;
}

}  // namespace

extern "C" {

const char* bloe_version(void) { return "1.0.0"; }

const char* bloe_last_error(void) { return t_last_error.c_str(); }

// ---------------------------------------------------------------------
// Scalar evaluation
// ---------------------------------------------------------------------

bloe_status bloe_cdf(int kind, int n, double arg, double* out) {
    if (out == nullptr) return fail(BLOE_EINVAL, "bloe_cdf: out is NULL");
    if (kind != BLOE_CDF_MAXHEIGHT && kind != BLOE_CDF_LOE)
        return fail(BLOE_EINVAL, "bloe_cdf: unknown kind");
    return guarded([&] {
        const bridgeloe::cdf_kind k = (kind == BLOE_CDF_MAXHEIGHT)
                                          ? bridgeloe::cdf_kind::max_height
                                          : bridgeloe::cdf_kind::loe;
        *out = bridgeloe::cdf_table(n, k, {arg})[0];
    });
}

bloe_status bloe_fgoe(double r, double* out) {
    if (out == nullptr) return fail(BLOE_EINVAL, "bloe_fgoe: out is NULL");
    return guarded([&] { *out = bridgeloe::fgoe(r); });
}

// ---------------------------------------------------------------------
// CDF tables
// ---------------------------------------------------------------------

bloe_status bloe_cdf_table_create(int kind, int n, double lo, double hi,
                                  int steps, bloe_table** out) {
    if (out == nullptr)
        return fail(BLOE_EINVAL, "bloe_cdf_table_create: out is NULL");
    *out = nullptr;
    if (kind != BLOE_CDF_MAXHEIGHT && kind != BLOE_CDF_LOE)
        return fail(BLOE_EINVAL, "bloe_cdf_table_create: unknown kind");
    if (!grid_ok(lo, hi, steps))
        return fail(BLOE_EINVAL,
                    "bloe_cdf_table_create: need finite lo <= hi and steps >= 2");
    return guarded([&] {
        const bridgeloe::cdf_kind k = (kind == BLOE_CDF_MAXHEIGHT)
                                          ? bridgeloe::cdf_kind::max_height
                                          : bridgeloe::cdf_kind::loe;
        auto t = new bloe_table;
        t->args = inclusive_grid(lo, hi, steps);
        try {
            t->probs = bridgeloe::cdf_table(n, k, t->args);
        } catch (...) {
            delete t;
            throw;
        }
        *out = t;
    });
}

int bloe_table_rows(const bloe_table* t) {
    return t ? static_cast<int>(t->args.size()) : 0;
}

bloe_status bloe_table_row(const bloe_table* t, int i, double* arg,
                           double* prob) {
    if (t == nullptr || arg == nullptr || prob == nullptr)
        return fail(BLOE_EINVAL, "bloe_table_row: NULL argument");
    if (i < 0 || i >= static_cast<int>(t->args.size()))
        return fail(BLOE_EINVAL, "bloe_table_row: index out of range");
    *arg = t->args[i];
    *prob = t->probs[i];
    return BLOE_OK;
}

void bloe_table_free(bloe_table* t) { delete t; }

// ---------------------------------------------------------------------
// Identity verification
// ---------------------------------------------------------------------

bloe_status bloe_verify_run(const int* n_set, int n_count, const double* r_set,
                            int r_count, bloe_report** out) {
    if (out == nullptr) return fail(BLOE_EINVAL, "bloe_verify_run: out is NULL");
    *out = nullptr;
    if (n_set == nullptr || r_set == nullptr || n_count <= 0 || r_count <= 0)
        return fail(BLOE_EINVAL, "bloe_verify_run: empty parameter set");
    return guarded([&] {
        const std::vector<int> ns(n_set, n_set + n_count);
        const std::vector<double> rs(r_set, r_set + r_count);
        auto rep = new bloe_report;
        try {
            rep->rep = bridgeloe::run_full_verification(ns, rs);
        } catch (...) {
            delete rep;
            throw;
        }
        *out = rep;
    });
}

int bloe_report_size(const bloe_report* rep) {
    return rep ? static_cast<int>(rep->rep.checks.size()) : 0;
}

int bloe_report_pass(const bloe_report* rep) {
    return (rep && rep->rep.pass) ? 1 : 0;
}

bloe_status bloe_report_check(const bloe_report* rep, int index,
                              bloe_check_view* out) {
    if (rep == nullptr || out == nullptr)
        return fail(BLOE_EINVAL, "bloe_report_check: NULL argument");
    if (index < 0 || index >= static_cast<int>(rep->rep.checks.size()))
        return fail(BLOE_EINVAL, "bloe_report_check: index out of range");
    const bridgeloe::check_result& c = rep->rep.checks[index];
    out->name = c.name.c_str();
    out->anchor = c.anchor.c_str();
    out->params = c.params.c_str();
    out->max_err = c.max_err;
    out->tol = c.tol;
    out->pass = c.pass ? 1 : 0;
    out->informational = c.informational ? 1 : 0;
    return BLOE_OK;
}

void bloe_report_free(bloe_report* rep) { delete rep; }

// ---------------------------------------------------------------------
// Monte Carlo cross-checks
// ---------------------------------------------------------------------

bloe_status bloe_mc_loe_ks(int n, int64_t samples, uint64_t seed,
                           double* ks_out) {
    if (ks_out == nullptr)
        return fail(BLOE_EINVAL, "bloe_mc_loe_ks: ks_out is NULL");
    if (samples < 10 || samples > std::numeric_limits<int>::max())
        return fail(BLOE_EDOM, "bloe_mc_loe_ks: samples must be in [10, 2^31)");
    return guarded([&] {
        const bridgeloe::sample_summary summary =
            bridgeloe::run_loe_ensemble(n, static_cast<int>(samples), seed);
        *ks_out = bridgeloe::ks_statistic(
            summary, [n](double x) { return bridgeloe::loe_cdf(n, x); });
    });
}

bloe_status bloe_mc_bridges_ks(int n, int64_t samples, int grid_segments,
                               uint64_t seed, int crossing_correction,
                               double* sup_out) {
    if (sup_out == nullptr)
        return fail(BLOE_EINVAL, "bloe_mc_bridges_ks: sup_out is NULL");
    if (samples < 10 || samples > std::numeric_limits<int>::max())
        return fail(BLOE_EDOM,
                    "bloe_mc_bridges_ks: samples must be in [10, 2^31)");
    return guarded([&] {
        const bridgeloe::path_grid grid = bridgeloe::make_uniform_s_grid(
            grid_segments, 5.75, crossing_correction != 0);
        // Level grid spanning essentially all of the law's mass: the upper
        // end sits past the soft edge by several fluctuation widths.
        const double hi = std::sqrt(4.0 * n + 8.0 * std::cbrt(double(n)) + 12.0);
        const std::vector<double> levels = inclusive_grid(0.02, hi, 600);
        const bridgeloe::bridge_cdf_estimate est = bridgeloe::run_bridge_ensemble(
            n, grid, static_cast<int>(samples), seed, levels);
        double sup = 0.0;
        for (std::size_t j = 0; j < levels.size(); ++j) {
            const double exact =
                bridgeloe::maxheight_cdf(n, levels[j] / std::sqrt(2.0));
            sup = std::max(sup, std::fabs(est.prob[j] - exact));
        }
        *sup_out = sup;
    });
}

// ---------------------------------------------------------------------
// Tracy-Widom limit study
// ---------------------------------------------------------------------

bloe_status bloe_limit_create(const int* n_list, int n_count, double s_lo,
                              double s_hi, int steps, bloe_limit** out) {
    if (out == nullptr)
        return fail(BLOE_EINVAL, "bloe_limit_create: out is NULL");
    *out = nullptr;
    if (n_list == nullptr || n_count <= 0)
        return fail(BLOE_EINVAL, "bloe_limit_create: empty N list");
    if (!grid_ok(s_lo, s_hi, steps))
        return fail(BLOE_EINVAL,
                    "bloe_limit_create: need finite s_lo <= s_hi and steps >= 2");
    return guarded([&] {
        const std::vector<int> ns(n_list, n_list + n_count);
        const std::vector<double> grid = inclusive_grid(s_lo, s_hi, steps);
        auto lim = new bloe_limit;
        try {
            lim->cmp = bridgeloe::tw_limit_compare(ns, grid);
        } catch (...) {
            delete lim;
            throw;
        }
        *out = lim;
    });
}

bloe_status bloe_limit_counts(const bloe_limit* lim, int* n_count,
                              int* grid_count) {
    if (lim == nullptr || n_count == nullptr || grid_count == nullptr)
        return fail(BLOE_EINVAL, "bloe_limit_counts: NULL argument");
    *n_count = static_cast<int>(lim->cmp.n_values.size());
    *grid_count = static_cast<int>(lim->cmp.s_grid.size());
    return BLOE_OK;
}

bloe_status bloe_limit_n_value(const bloe_limit* lim, int n_index, int* n_out) {
    if (lim == nullptr || n_out == nullptr)
        return fail(BLOE_EINVAL, "bloe_limit_n_value: NULL argument");
    if (n_index < 0 || n_index >= static_cast<int>(lim->cmp.n_values.size()))
        return fail(BLOE_EINVAL, "bloe_limit_n_value: index out of range");
    *n_out = lim->cmp.n_values[n_index];
    return BLOE_OK;
}

bloe_status bloe_limit_row(const bloe_limit* lim, int n_index, int grid_index,
                           double* s, double* g_n, double* limit,
                           double* abs_err) {
    if (lim == nullptr || s == nullptr || g_n == nullptr || limit == nullptr ||
        abs_err == nullptr)
        return fail(BLOE_EINVAL, "bloe_limit_row: NULL argument");
    if (n_index < 0 || n_index >= static_cast<int>(lim->cmp.n_values.size()))
        return fail(BLOE_EINVAL, "bloe_limit_row: N index out of range");
    if (grid_index < 0 ||
        grid_index >= static_cast<int>(lim->cmp.s_grid.size()))
        return fail(BLOE_EINVAL, "bloe_limit_row: grid index out of range");
    *s = lim->cmp.s_grid[grid_index];
    *g_n = lim->cmp.bridge_cdf[n_index][grid_index];
    *limit = lim->cmp.limit_bridge[grid_index];
    *abs_err = std::fabs(*g_n - *limit);
    return BLOE_OK;
}

bloe_status bloe_limit_sup_err(const bloe_limit* lim, int n_index,
                               double* out) {
    if (lim == nullptr || out == nullptr)
        return fail(BLOE_EINVAL, "bloe_limit_sup_err: NULL argument");
    if (n_index < 0 || n_index >= static_cast<int>(lim->cmp.n_values.size()))
        return fail(BLOE_EINVAL, "bloe_limit_sup_err: index out of range");
    *out = lim->cmp.sup_err_bridge[n_index];
    return BLOE_OK;
}

bloe_status bloe_limit_matched_diff(const bloe_limit* lim, double* out) {
    if (lim == nullptr || out == nullptr)
        return fail(BLOE_EINVAL, "bloe_limit_matched_diff: NULL argument");
    *out = lim->cmp.matched_max_diff;
    return BLOE_OK;
}

void bloe_limit_free(bloe_limit* lim) { delete lim; }

}  // extern "C"

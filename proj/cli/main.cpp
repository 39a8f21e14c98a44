/*
 * main.cpp - bridge-loe command line tool.
 *
 * Subcommands:
 *   cdf         exact finite-N CDF table (CSV: arg,prob)
 *   verify      run the identity suite (JSON report; exit 0 iff it passes)
 *   mc-loe      Monte Carlo eigenvalue check (JSON; exit 0 iff KS < threshold)
 *   mc-bridges  Monte Carlo bridge check (JSON; exit 0 iff sup < threshold)
 *   tw-limit    finite-N laws against the GOE limit (CSV per N-block)
 *
 * Exit codes: 0 success, 1 check failure, 2 argument/usage error,
 * 3 numeric non-convergence.  With --output the file is written atomically
 * (temp file + rename); otherwise the table goes to stdout.  Runs with the
 * same configuration produce byte-identical output, including the Monte
 * Carlo subcommands (seeded counter-based streams; BRIDGE_LOE_THREADS only
 * changes the wall time).
 *
 * SPDX-License-Identifier: MIT
 */
#include <cerrno>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bridge_loe.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5EED0001ULL;  // documented default

enum exit_code : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_usage = 2,
    exit_numeric = 3,
};

// Inclusive uniform grid "min:max:steps".
struct grid_range {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 0;
};

bool parse_grid(const std::string& text, grid_range& out) {
    std::istringstream is(text);
    char c1 = 0, c2 = 0;
    if (!(is >> out.lo >> c1 >> out.hi >> c2 >> out.steps)) return false;
    if (c1 != ':' || c2 != ':' || !is.eof()) return false;
    return out.steps >= 2 && out.lo <= out.hi;
}

std::string format17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int fail_usage(const std::string& msg) {
    std::fprintf(stderr, "error: %s\nsee 'bridge-loe --help' for usage\n",
                 msg.c_str());
    return exit_usage;
}

// Maps a failed C API call onto the exit-code partition: domain and
// request errors are usage errors, numeric certificates map to their own
// code so CI can tell them apart.
int fail_status(bloe_status status) {
    std::fprintf(stderr, "error: %s\n", bloe_last_error());
    return status == BLOE_ENUMERIC ? exit_numeric : exit_usage;
}

int emit(const std::string& content, const std::string& output_path) {
    if (output_path.empty()) {
        std::fputs(content.c_str(), stdout);
        return exit_ok;
    }
    const std::string tmp = output_path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) return fail_usage("cannot open '" + tmp + "' for writing");
        os << content;
        os.flush();
        if (!os) return fail_usage("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), output_path.c_str()) != 0) {
        std::remove(tmp.c_str());
        return fail_usage("cannot rename '" + tmp + "' to '" + output_path +
                          "': " + std::strerror(errno));
    }
    return exit_ok;
}

// One-check JSON report shared by the Monte Carlo subcommands.
std::string mc_report(const std::string& suite, std::uint64_t seed,
                      const std::string& name, const std::string& anchor,
                      double value, double threshold, bool pass) {
    nlohmann::ordered_json doc;
    doc["suite"] = suite;
    doc["seed"] = seed;
    doc["checks"] = nlohmann::ordered_json::array();
    doc["checks"].push_back({{"name", name},
                             {"anchor", anchor},
                             {"max_err", value},
                             {"tol", threshold},
                             {"pass", pass}});
    doc["pass"] = pass;
    return doc.dump(2) + "\n";
}

int run_cdf(const std::string& kind, int n, const grid_range& grid,
            const std::string& output) {
    const int k = (kind == "maxheight") ? BLOE_CDF_MAXHEIGHT : BLOE_CDF_LOE;
    bloe_table* table = nullptr;
    const bloe_status status =
        bloe_cdf_table_create(k, n, grid.lo, grid.hi, grid.steps, &table);
    if (status != BLOE_OK) return fail_status(status);
    std::string body = "arg,prob\n";
    for (int i = 0; i < bloe_table_rows(table); ++i) {
        double arg = 0.0, prob = 0.0;
        bloe_table_row(table, i, &arg, &prob);
        body += format17(arg) + "," + format17(prob) + "\n";
    }
    bloe_table_free(table);
    return emit(body, output);
}

int run_verify(int n_max, const std::vector<double>& r_set, std::uint64_t seed,
               const std::string& output) {
    std::vector<int> n_set;
    for (int n = 1; n <= n_max; ++n) n_set.push_back(n);
    bloe_report* rep = nullptr;
    const bloe_status status =
        bloe_verify_run(n_set.data(), static_cast<int>(n_set.size()),
                        r_set.data(), static_cast<int>(r_set.size()), &rep);
    if (status != BLOE_OK) return fail_status(status);

    nlohmann::ordered_json doc;
    doc["suite"] = "verify";
    doc["seed"] = seed;
    doc["checks"] = nlohmann::ordered_json::array();
    for (int i = 0; i < bloe_report_size(rep); ++i) {
        bloe_check_view view{};
        bloe_report_check(rep, i, &view);
        doc["checks"].push_back({{"name", view.name},
                                 {"anchor", view.anchor},
                                 {"max_err", view.max_err},
                                 {"tol", view.tol},
                                 {"pass", view.pass != 0}});
    }
    const bool pass = bloe_report_pass(rep) != 0;
    doc["pass"] = pass;
    bloe_report_free(rep);

    const int rc = emit(doc.dump(2) + "\n", output);
    if (rc != exit_ok) return rc;
    return pass ? exit_ok : exit_check_failed;
}

int run_mc_loe(int n, std::int64_t samples, std::uint64_t seed,
               double threshold, const std::string& output) {
    double ks = 0.0;
    const bloe_status status = bloe_mc_loe_ks(n, samples, seed, &ks);
    if (status != BLOE_OK) return fail_status(status);
    const bool pass = ks < threshold;
    const int rc = emit(
        mc_report("mc-loe", seed, "ks-distance-top-eigenvalue",
                  "sup_x |F_hat(x) - F(x)| below threshold for the largest "
                  "covariance-ensemble eigenvalue",
                  ks, threshold, pass),
        output);
    if (rc != exit_ok) return rc;
    return pass ? exit_ok : exit_check_failed;
}

int run_mc_bridges(int n, std::int64_t samples, int segments,
                   std::uint64_t seed, bool correction, double threshold,
                   const std::string& output) {
    double sup = 0.0;
    const bloe_status status =
        bloe_mc_bridges_ks(n, samples, segments, seed, correction ? 1 : 0, &sup);
    if (status != BLOE_OK) return fail_status(status);
    const bool pass = sup < threshold;
    const int rc = emit(
        mc_report("mc-bridges", seed, "sup-distance-max-height",
                  "sup over the level grid of |P_hat(max height <= m) - "
                  "P(max height <= m)| below threshold",
                  sup, threshold, pass),
        output);
    if (rc != exit_ok) return rc;
    return pass ? exit_ok : exit_check_failed;
}

int run_tw_limit(const std::vector<int>& n_list, const grid_range& grid,
                 const std::string& output) {
    bloe_limit* lim = nullptr;
    const bloe_status status =
        bloe_limit_create(n_list.data(), static_cast<int>(n_list.size()),
                          grid.lo, grid.hi, grid.steps, &lim);
    if (status != BLOE_OK) return fail_status(status);
    int n_count = 0, grid_count = 0;
    bloe_limit_counts(lim, &n_count, &grid_count);
    std::string body;
    for (int k = 0; k < n_count; ++k) {
        int n_val = 0;
        bloe_limit_n_value(lim, k, &n_val);
        if (k > 0) body += "\n";
        body += "# N=" + std::to_string(n_val) + "\n";
        body += "s,G_N,F_GOE,abs_err\n";
        for (int i = 0; i < grid_count; ++i) {
            double s = 0.0, gn = 0.0, limit = 0.0, err = 0.0;
            bloe_limit_row(lim, k, i, &s, &gn, &limit, &err);
            body += format17(s) + "," + format17(gn) + "," + format17(limit) +
                    "," + format17(err) + "\n";
        }
    }
    bloe_limit_free(lim);
    return emit(body, output);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact maximal-height laws of non-intersecting Brownian "
                 "bridges and the matching covariance-eigenvalue laws"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bloe_version()));

    // --- cdf -----------------------------------------------------------
    auto* cdf = app.add_subcommand("cdf", "Exact CDF table (CSV: arg,prob)");
    std::string cdf_kind = "maxheight";
    int cdf_n = 1;
    std::string cdf_grid_text;
    std::string cdf_format = "csv";
    std::string cdf_output;
    cdf->add_option("--kind", cdf_kind, "maxheight | loe")
        ->check(CLI::IsMember({"maxheight", "loe"}));
    cdf->add_option("--n", cdf_n, "matrix order / number of bridges")
        ->required();
    cdf->add_option("--grid", cdf_grid_text, "evaluation grid min:max:steps")
        ->required();
    cdf->add_option("--format", cdf_format, "output format (csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    cdf->add_option("--output", cdf_output, "write here (atomically)");

    // --- verify --------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "Run the identity suite (JSON report; exit 0 iff pass)");
    int verify_n_max = 8;
    std::vector<double> verify_r = {0.5, 1.0, 2.0};
    std::uint64_t verify_seed = kDefaultSeed;
    std::string verify_format = "json";
    std::string verify_output;
    verify->add_option("--n-max", verify_n_max,
                       "cover matrix orders 1..n-max (default 8)");
    verify->add_option("--r", verify_r,
                       "comma-separated barrier positions (default 0.5,1,2)")
        ->delimiter(',');
    verify->add_option("--seed", verify_seed,
                       "seed recorded in the report (default 0x5EED0001)");
    verify->add_option("--format", verify_format, "output format (json)")
        ->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--output", verify_output, "write here (atomically)");

    // --- mc-loe --------------------------------------------------------
    auto* mc_loe = app.add_subcommand(
        "mc-loe", "Monte Carlo eigenvalue KS check (exit 0 iff below threshold)");
    int loe_n = 1;
    std::int64_t loe_samples = 10000;
    std::uint64_t loe_seed = kDefaultSeed;
    double loe_threshold = 0.02;
    std::string loe_format = "json";
    std::string loe_output;
    mc_loe->add_option("--n", loe_n, "matrix order")->required();
    mc_loe->add_option("--samples", loe_samples, "sample count (default 10000)");
    mc_loe->add_option("--seed", loe_seed, "master seed (default 0x5EED0001)");
    mc_loe->add_option("--ks-threshold", loe_threshold,
                       "pass iff KS below this (default 0.02)");
    mc_loe->add_option("--format", loe_format, "output format (json)")
        ->check(CLI::IsMember({"csv", "json"}));
    mc_loe->add_option("--output", loe_output, "write here (atomically)");

    // --- mc-bridges ----------------------------------------------------
    auto* mc_bridges = app.add_subcommand(
        "mc-bridges",
        "Monte Carlo bridge-height check (exit 0 iff below threshold)");
    int br_n = 1;
    std::int64_t br_samples = 10000;
    int br_segments = 2000;
    std::uint64_t br_seed = kDefaultSeed;
    double br_threshold = 0.025;
    bool br_no_correction = false;
    std::string br_format = "json";
    std::string br_output;
    mc_bridges->add_option("--n", br_n, "number of bridges")->required();
    mc_bridges->add_option("--samples", br_samples,
                           "sample count (default 10000)");
    mc_bridges->add_option("--segments", br_segments,
                           "time steps per path (default 2000)");
    mc_bridges->add_option("--seed", br_seed, "master seed (default 0x5EED0001)");
    mc_bridges->add_option("--ks-threshold", br_threshold,
                           "pass iff sup distance below this (default 0.025)");
    mc_bridges->add_flag("--no-correction", br_no_correction,
                         "disable the diffusion crossing correction");
    mc_bridges->add_option("--format", br_format, "output format (json)")
        ->check(CLI::IsMember({"csv", "json"}));
    mc_bridges->add_option("--output", br_output, "write here (atomically)");

    // --- tw-limit ------------------------------------------------------
    auto* tw = app.add_subcommand(
        "tw-limit", "Finite-N laws vs the GOE limit (CSV per N-block)");
    std::vector<int> tw_n = {8, 16, 32};
    std::string tw_grid_text = "-4:2:61";
    std::string tw_format = "csv";
    std::string tw_output;
    tw->add_option("--n", tw_n, "comma-separated orders (default 8,16,32)")
        ->delimiter(',');
    tw->add_option("--grid", tw_grid_text,
                   "scaled-argument grid min:max:steps (default -4:2:61)");
    tw->add_option("--format", tw_format, "output format (csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    tw->add_option("--output", tw_output, "write here (atomically)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::fputs(app.help().c_str(), stdout);
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        std::printf("%s\n", bloe_version());
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
        return exit_usage;
    }

    // Tables are CSV, reports are JSON; the other pairing has no defined
    // schema and is rejected rather than invented on the fly.
    if (cdf->parsed()) {
        if (cdf_format != "csv")
            return fail_usage("cdf emits CSV only (--format csv)");
        grid_range grid;
        if (!parse_grid(cdf_grid_text, grid))
            return fail_usage("--grid must be min:max:steps with min <= max "
                              "and steps >= 2");
        return run_cdf(cdf_kind, cdf_n, grid, cdf_output);
    }
    if (verify->parsed()) {
        if (verify_format != "json")
            return fail_usage("verify emits JSON only (--format json)");
        if (verify_r.empty()) return fail_usage("--r must not be empty");
        return run_verify(verify_n_max, verify_r, verify_seed, verify_output);
    }
    if (mc_loe->parsed()) {
        if (loe_format != "json")
            return fail_usage("mc-loe emits JSON only (--format json)");
        return run_mc_loe(loe_n, loe_samples, loe_seed, loe_threshold,
                          loe_output);
    }
    if (mc_bridges->parsed()) {
        if (br_format != "json")
            return fail_usage("mc-bridges emits JSON only (--format json)");
        return run_mc_bridges(br_n, br_samples, br_segments, br_seed,
                              !br_no_correction, br_threshold, br_output);
    }
    if (tw->parsed()) {
        if (tw_format != "csv")
            return fail_usage("tw-limit emits CSV only (--format csv)");
        if (tw_n.empty()) return fail_usage("--n must not be empty");
        grid_range grid;
        if (!parse_grid(tw_grid_text, grid))
            return fail_usage("--grid must be min:max:steps with min <= max "
                              "and steps >= 2");
        return run_tw_limit(tw_n, grid, tw_output);
    }
    return fail_usage("missing subcommand");
}

// Monte Carlo cross-checks: Gram-matrix top-eigenvalue sampler, Hermitian
// Brownian-bridge simulation, logistic time change, and KS scoring.
//
// SPDX-License-Identifier: MIT

#include "montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bridgeloe {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
// Half-width (on the unscaled bridge axis) of the level window above a
// sample's grid maximum inside which the crossing correction is evaluated.
// Beyond the window every segment's crossing probability is below
// exp(-2 * 0.15^2 / dt_max), which is negligible for the grids in use.
constexpr double kCorrectionWindow = 0.15;

// ---------------------------------------------------------------------------
// Cyclic Jacobi diagonalization
// ---------------------------------------------------------------------------

// In-place cyclic Jacobi on the symmetric n x n matrix stored row-major in
// w.  On return the eigenvalues sit on the diagonal (unsorted).  Rotations
// with |a_pq| below target/(2n) are skipped: if a full sweep skips every
// pivot, the off-diagonal norm is already below half the target, so the
// convergence test after the sweep is guaranteed to pass.
void jacobi_diagonalize(double* w, int n) {
    if (n <= 1) return;
    double fro2 = 0.0;
    for (int i = 0; i < n * n; ++i) fro2 += w[i] * w[i];
    if (fro2 == 0.0) return;
    const double target2 = 1e-22 * fro2;  // (1e-11 * ||M||_F)^2
    const double skip = std::sqrt(target2) / (2.0 * n);

    for (int sweep = 0; sweep <= 30; ++sweep) {
        double off2 = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off2 += 2.0 * w[p * n + q] * w[p * n + q];
        if (off2 <= target2) return;
        if (sweep == 30) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = w[p * n + q];
                if (std::fabs(apq) <= skip) continue;
                const double app = w[p * n + p];
                const double aqq = w[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e10) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = w[k * n + p];
                    const double akq = w[k * n + q];
                    const double rp = c * akp - s * akq;
                    const double rq = s * akp + c * akq;
                    w[k * n + p] = rp;
                    w[p * n + k] = rp;
                    w[k * n + q] = rq;
                    w[q * n + k] = rq;
                }
            }
        }
    }
    throw std::runtime_error(
        "symmetric_eigenvalues: Jacobi iteration did not converge within 30 sweeps");
}

double max_diagonal(const double* w, int n) {
    double top = w[0];
    for (int i = 1; i < n; ++i) top = std::max(top, w[i * n + i]);
    return top;
}

// Fill the 2n x 2n embedding [[X, -Y], [Y, X]] of X + iY from packed entry
// states: d = diagonal of X, re/im = upper-triangle entries of X and Y in
// lexicographic (i, j) order.
void fill_embedding(double* w, int n, const double* d, const double* re,
                    const double* im) {
    const int m = 2 * n;
    std::fill(w, w + m * m, 0.0);
    for (int i = 0; i < n; ++i) {
        w[i * m + i] = d[i];
        w[(i + n) * m + (i + n)] = d[i];
    }
    int idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++idx) {
            const double x = re[idx];
            const double y = im[idx];
            // X block (symmetric) twice on the diagonal of blocks.
            w[i * m + j] = x;
            w[j * m + i] = x;
            w[(i + n) * m + (j + n)] = x;
            w[(j + n) * m + (i + n)] = x;
            // Y antisymmetric: upper-right block -Y, lower-left block +Y.
            w[i * m + (j + n)] = -y;
            w[j * m + (i + n)] = y;
            w[(i + n) * m + j] = y;
            w[(j + n) * m + i] = -y;
        }
    }
}

// ---------------------------------------------------------------------------
// Hermitian bridge paths
// ---------------------------------------------------------------------------

struct bridge_workspace {
    std::vector<double> diag;    // N real bridge states, variance factor 1
    std::vector<double> off_re;  // N(N-1)/2 states, variance factor 1/2
    std::vector<double> off_im;  // N(N-1)/2 states, variance factor 1/2
    std::vector<double> emb;     // (2N)^2 embedding buffer
    std::vector<double> path;    // K+1 top-eigenvalue values
};

// Fill ws.path with the top eigenvalue of the Hermitian bridge at every
// grid time.  The draw order per time step is frozen as part of the
// determinism contract: diagonal entries in index order, then upper
// off-diagonal pairs (i, j) lexicographically, real component before
// imaginary.
void bridge_top_path(int N, const path_grid& grid, rng_stream& g,
                     bridge_workspace& ws) {
    const int K1 = static_cast<int>(grid.t.size());
    const int npair = N * (N - 1) / 2;
    ws.diag.assign(N, 0.0);
    ws.off_re.assign(npair, 0.0);
    ws.off_im.assign(npair, 0.0);
    ws.path.assign(K1, 0.0);
    if (N >= 2) ws.emb.assign(4 * N * N, 0.0);

    for (int k = 1; k + 1 < K1; ++k) {
        const double ta = grid.t[k - 1];
        const double tb = grid.t[k];
        // Conditional bridge step from value x at ta, pinned to 0 at t=1:
        //   x' = x (1-tb)/(1-ta) + xi sqrt(v (tb-ta)(1-tb)/(1-ta)).
        const double shrink = (1.0 - tb) / (1.0 - ta);
        const double step_var = (tb - ta) * shrink;
        const double sd_diag = std::sqrt(step_var);
        const double sd_off = std::sqrt(0.5 * step_var);
        for (int i = 0; i < N; ++i)
            ws.diag[i] = ws.diag[i] * shrink + sd_diag * g.next_gaussian();
        for (int p = 0; p < npair; ++p) {
            ws.off_re[p] = ws.off_re[p] * shrink + sd_off * g.next_gaussian();
            ws.off_im[p] = ws.off_im[p] * shrink + sd_off * g.next_gaussian();
        }
        if (N == 1) {
            ws.path[k] = ws.diag[0];
        } else {
            fill_embedding(ws.emb.data(), N, ws.diag.data(), ws.off_re.data(),
                           ws.off_im.data());
            jacobi_diagonalize(ws.emb.data(), 2 * N);
            ws.path[k] = max_diagonal(ws.emb.data(), 2 * N);
        }
    }
    // Pinned endpoints: the matrix is zero at t=0 and t=1.
}

void validate_grid(const path_grid& grid) {
    const int K1 = static_cast<int>(grid.t.size());
    if (K1 < 3) throw std::invalid_argument("path_grid: need at least 2 segments");
    if (grid.t.front() != 0.0 || grid.t.back() != 1.0)
        throw std::invalid_argument("path_grid: endpoints must be exactly 0 and 1");
    for (int k = 1; k < K1; ++k)
        if (!(grid.t[k] > grid.t[k - 1]))
            throw std::invalid_argument("path_grid: times must be strictly increasing");
}

// ---------------------------------------------------------------------------
// Deterministic chunked parallelism
// ---------------------------------------------------------------------------

int env_thread_count() {
    if (const char* e = std::getenv("BRIDGE_LOE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(e, &end, 10);
        if (end != e && v >= 1) return static_cast<int>(std::min(v, 256L));
    }
    unsigned hc = std::thread::hardware_concurrency();
    if (hc == 0) hc = 1;
    return static_cast<int>(std::min(hc, 64u));
}

constexpr int kChunkSize = 256;

// Run body(chunk_index, begin, end) over [0, n_items) in fixed chunks.
// Work distribution across threads is dynamic, but all outputs are keyed
// by chunk or sample index, so results never depend on the thread count.
void run_chunked(int n_items,
                 const std::function<void(int, int, int)>& body) {
    const int n_chunks = (n_items + kChunkSize - 1) / kChunkSize;
    const int threads = std::min(env_thread_count(), n_chunks);
    if (threads <= 1) {
        for (int c = 0; c < n_chunks; ++c)
            body(c, c * kChunkSize, std::min(n_items, (c + 1) * kChunkSize));
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        try {
            for (;;) {
                const int c = next.fetch_add(1);
                if (c >= n_chunks) return;
                body(c, c * kChunkSize, std::min(n_items, (c + 1) * kChunkSize));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

path_grid make_uniform_s_grid(int K, double s_star, bool crossing_correction) {
    if (K < 2) throw std::invalid_argument("make_uniform_s_grid: K must be >= 2");
    if (!(s_star > 0.0))
        throw std::invalid_argument("make_uniform_s_grid: s_star must be positive");
    path_grid grid;
    grid.crossing_correction = crossing_correction;
    grid.t.reserve(K + 1);
    grid.t.push_back(0.0);
    const int m = K - 1;  // interior points
    if (m == 1) {
        grid.t.push_back(0.5);
    } else {
        for (int j = 0; j < m; ++j) {
            const double s = -s_star + 2.0 * s_star * j / (m - 1);
            grid.t.push_back(1.0 / (1.0 + std::exp(-2.0 * s)));
        }
    }
    grid.t.push_back(1.0);
    validate_grid(grid);
    return grid;
}

double sample_summary::empirical_cdf(double x) const {
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) /
           static_cast<double>(samples.size());
}

std::vector<double> symmetric_eigenvalues(const mat& a) {
    if (a.n < 1) throw std::invalid_argument("symmetric_eigenvalues: empty matrix");
    std::vector<double> w(a.a);
    jacobi_diagonalize(w.data(), a.n);
    std::vector<double> ev(a.n);
    for (int i = 0; i < a.n; ++i) ev[i] = w[i * a.n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

mat hermitian_embedding(const mat& re_part, const mat& im_part) {
    const int n = re_part.n;
    if (im_part.n != n)
        throw std::invalid_argument("hermitian_embedding: size mismatch");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (re_part(i, j) != re_part(j, i) || im_part(i, j) != -im_part(j, i))
                throw std::invalid_argument(
                    "hermitian_embedding: need symmetric real part and "
                    "antisymmetric imaginary part");
        }
    }
    std::vector<double> d(n), re, im;
    for (int i = 0; i < n; ++i) d[i] = re_part(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            re.push_back(re_part(i, j));
            im.push_back(im_part(i, j));
        }
    mat out(2 * n);
    fill_embedding(out.a.data(), n, d.data(), re.data(), im.data());
    return out;
}

double sample_loe_max(int N, rng_stream& stream) {
    if (N < 1) throw std::invalid_argument("sample_loe_max: N must be >= 1");
    const int rows = N + 1;
    std::vector<double> x(rows * N);
    for (int i = 0; i < rows * N; ++i) x[i] = stream.next_gaussian();
    std::vector<double> g(N * N, 0.0);
    for (int i = 0; i < rows; ++i) {
        const double* xi = &x[i * N];
        for (int j = 0; j < N; ++j) {
            const double xij = xi[j];
            for (int k = j; k < N; ++k) g[j * N + k] += xij * xi[k];
        }
    }
    for (int j = 0; j < N; ++j)
        for (int k = j + 1; k < N; ++k) g[k * N + j] = g[j * N + k];
    jacobi_diagonalize(g.data(), N);
    return max_diagonal(g.data(), N);
}

double sample_bridges_max(int N, const path_grid& grid, rng_stream& stream) {
    if (N < 1) throw std::invalid_argument("sample_bridges_max: N must be >= 1");
    validate_grid(grid);
    bridge_workspace ws;
    bridge_top_path(N, grid, stream, ws);
    return *std::max_element(ws.path.begin(), ws.path.end());
}

dyson_path time_change_to_dyson(const std::vector<double>& t,
                                const std::vector<double>& b) {
    if (t.size() != b.size() || t.empty())
        throw std::invalid_argument("time_change_to_dyson: mismatched inputs");
    dyson_path out;
    out.s.resize(t.size());
    out.lambda.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!(t[k] > 0.0 && t[k] < 1.0))
            throw std::domain_error("time_change_to_dyson: t must lie in (0,1)");
        out.s[k] = 0.5 * std::log(t[k] / (1.0 - t[k]));
        out.lambda[k] = b[k] / std::sqrt(2.0 * t[k] * (1.0 - t[k]));
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> time_change_from_dyson(
    const dyson_path& path) {
    if (path.s.size() != path.lambda.size() || path.s.empty())
        throw std::invalid_argument("time_change_from_dyson: mismatched inputs");
    std::vector<double> t(path.s.size()), b(path.s.size());
    for (std::size_t k = 0; k < path.s.size(); ++k) {
        t[k] = 1.0 / (1.0 + std::exp(-2.0 * path.s[k]));
        b[k] = path.lambda[k] * std::sqrt(2.0 * t[k] * (1.0 - t[k]));
    }
    return {t, b};
}

double ks_statistic(const sample_summary& summary,
                    const std::function<double(double)>& cdf) {
    const int n = summary.n();
    if (n < 10) throw std::invalid_argument("ks_statistic: need at least 10 samples");
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = cdf(summary.samples[i]);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

sample_summary run_loe_ensemble(int N, int n_samples,
                                std::uint64_t master_seed) {
    if (N < 1) throw std::invalid_argument("run_loe_ensemble: N must be >= 1");
    if (n_samples < 1)
        throw std::invalid_argument("run_loe_ensemble: need at least one sample");
    sample_summary out;
    out.label = "loe-top-eigenvalue N=" + std::to_string(N);
    out.master_seed = master_seed;
    out.corrected = false;
    out.samples.resize(n_samples);
    run_chunked(n_samples, [&](int, int begin, int end) {
        for (int idx = begin; idx < end; ++idx) {
            rng_stream g(master_seed, static_cast<std::uint64_t>(idx));
            out.samples[idx] = sample_loe_max(N, g);
        }
    });
    std::sort(out.samples.begin(), out.samples.end());
    return out;
}

bridge_cdf_estimate run_bridge_ensemble(int N, const path_grid& grid,
                                        int n_samples,
                                        std::uint64_t master_seed,
                                        const std::vector<double>& levels) {
    if (N < 1) throw std::invalid_argument("run_bridge_ensemble: N must be >= 1");
    if (n_samples < 1)
        throw std::invalid_argument("run_bridge_ensemble: need at least one sample");
    validate_grid(grid);
    const int L = static_cast<int>(levels.size());
    if (L < 1) throw std::invalid_argument("run_bridge_ensemble: empty level grid");
    for (int j = 1; j < L; ++j)
        if (!(levels[j] > levels[j - 1]))
            throw std::invalid_argument("run_bridge_ensemble: levels must increase");

    // Levels are on the sqrt(2)-scaled axis; the paths (and the crossing
    // probability formula, which assumes unit diffusion rate) live on the
    // unscaled axis.
    std::vector<double> mlev(L);
    for (int j = 0; j < L; ++j) mlev[j] = levels[j] / kSqrt2;

    const int K1 = static_cast<int>(grid.t.size());
    std::vector<double> dt(K1 - 1);
    for (int k = 0; k + 1 < K1; ++k) dt[k] = grid.t[k + 1] - grid.t[k];

    const int n_chunks = (n_samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::vector<double>> chunk_f(n_chunks), chunk_suffix(n_chunks);
    std::vector<double> samples(n_samples);

    run_chunked(n_samples, [&](int chunk, int begin, int end) {
        std::vector<double>& f = chunk_f[chunk];
        std::vector<double>& suffix = chunk_suffix[chunk];
        f.assign(L, 0.0);
        suffix.assign(L + 1, 0.0);
        bridge_workspace ws;
        std::vector<double> seg_a, seg_b, seg_dt;
        for (int idx = begin; idx < end; ++idx) {
            rng_stream g(master_seed, static_cast<std::uint64_t>(idx));
            bridge_top_path(N, grid, g, ws);
            const double m_max =
                *std::max_element(ws.path.begin(), ws.path.end());
            samples[idx] = kSqrt2 * m_max;

            const int jlo = static_cast<int>(
                std::lower_bound(mlev.begin(), mlev.end(), m_max) - mlev.begin());
            if (!grid.crossing_correction) {
                suffix[jlo] += 1.0;
                continue;
            }
            const int jhi = static_cast<int>(
                std::lower_bound(mlev.begin(), mlev.end(),
                                 m_max + kCorrectionWindow) -
                mlev.begin());
            suffix[jhi] += 1.0;  // full weight above the correction window
            if (jlo >= jhi) continue;

            // Only segments reaching within twice the window of the grid
            // maximum can contribute a non-negligible crossing probability.
            seg_a.clear();
            seg_b.clear();
            seg_dt.clear();
            const double floor = m_max - 2.0 * kCorrectionWindow;
            for (int k = 0; k + 1 < K1; ++k) {
                if (std::max(ws.path[k], ws.path[k + 1]) >= floor) {
                    seg_a.push_back(ws.path[k]);
                    seg_b.push_back(ws.path[k + 1]);
                    seg_dt.push_back(dt[k]);
                }
            }
            for (int j = jlo; j < jhi; ++j) {
                const double m = mlev[j];
                double keep = 1.0;
                for (std::size_t q = 0; q < seg_a.size(); ++q) {
                    keep *= 1.0 - std::exp(-2.0 * (m - seg_a[q]) *
                                           (m - seg_b[q]) / seg_dt[q]);
                }
                f[j] += keep;
            }
        }
    });

    bridge_cdf_estimate out;
    out.levels = levels;
    out.prob.assign(L, 0.0);
    double carried = 0.0;  // samples fully below every remaining level
    std::vector<double> total_f(L, 0.0), total_suffix(L + 1, 0.0);
    for (int c = 0; c < n_chunks; ++c) {
        for (int j = 0; j < L; ++j) total_f[j] += chunk_f[c][j];
        for (int j = 0; j <= L; ++j) total_suffix[j] += chunk_suffix[c][j];
    }
    for (int j = 0; j < L; ++j) {
        carried += total_suffix[j];
        out.prob[j] = (total_f[j] + carried) / n_samples;
    }

    out.summary.label = "bridges-max-sqrt2 N=" + std::to_string(N);
    out.summary.master_seed = master_seed;
    out.summary.corrected = grid.crossing_correction;
    out.summary.samples = std::move(samples);
    std::sort(out.summary.samples.begin(), out.summary.samples.end());
    return out;
}

}  // namespace bridgeloe

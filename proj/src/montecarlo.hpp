// Monte Carlo cross-checks for the exact distributions.
//
// Two independent stochastic oracles live here: direct sampling of the top
// eigenvalue of a Gaussian (N+1)xN Gram matrix, and simulation of N
// non-intersecting Brownian bridges realized as the eigenvalue paths of a
// Hermitian Brownian bridge.  Both feed Kolmogorov-Smirnov comparisons
// against the determinantal CDFs.
//
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kernelmat.hpp"
#include "rng.hpp"

namespace bridgeloe {

// Discretization of the bridge time interval [0, 1].
struct path_grid {
    // Strictly increasing time points with t.front() == 0 and t.back() == 1.
    std::vector<double> t;
    // Whether CDF estimates built on this grid compensate for level
    // crossings between grid points.
    bool crossing_correction = true;

    int segments() const { return static_cast<int>(t.size()) - 1; }
};

// Grid with K segments whose interior points are uniform in the logistic
// coordinate s = (1/2) log(t/(1-t)), s in [-s_star, s_star].  Uniform-in-s
// spacing concentrates points near t = 0 and t = 1 where the pinned paths
// move fastest relative to the local time scale.
path_grid make_uniform_s_grid(int K, double s_star = 5.75,
                              bool crossing_correction = true);

// Result of a sampling run: sorted draws plus the metadata needed to
// reproduce them.
struct sample_summary {
    std::string label;
    std::uint64_t master_seed = 0;
    // True when the run's CDF estimate includes the crossing correction.
    bool corrected = false;
    std::vector<double> samples;  // ascending

    int n() const { return static_cast<int>(samples.size()); }
    // Right-continuous empirical CDF: fraction of samples <= x.
    double empirical_cdf(double x) const;
};

// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi rotations.
// Converged when the off-diagonal Frobenius norm drops below 1e-11 times
// the Frobenius norm of the input; throws std::runtime_error if that takes
// more than 30 sweeps.
std::vector<double> symmetric_eigenvalues(const mat& a);

// Real-symmetric 2n x 2n embedding [[X, -Y], [Y, X]] of the Hermitian
// matrix X + iY (X symmetric, Y antisymmetric).  Its spectrum is the
// Hermitian spectrum with every eigenvalue doubled.
mat hermitian_embedding(const mat& re_part, const mat& im_part);

// One draw of the largest eigenvalue of G = X^T X where X is (N+1) x N
// with independent standard normal entries.
double sample_loe_max(int N, rng_stream& stream);

// One draw of max over grid times of the top eigenvalue of a Hermitian
// Brownian bridge (diagonal entries standard real Brownian bridges,
// off-diagonal components of variance t(1-t)/2).
double sample_bridges_max(int N, const path_grid& grid, rng_stream& stream);

// Logistic time change between the bridge picture on t in (0, 1) and the
// stationary picture on s in R:
//   s = (1/2) log(t/(1-t)),  lambda = B / sqrt(2 t (1-t)).
// The event {max_t sqrt(2) B(t) <= r} maps exactly to the barrier event
// {lambda(s) <= r cosh(s) at every mapped grid point}.
struct dyson_path {
    std::vector<double> s;
    std::vector<double> lambda;
};
dyson_path time_change_to_dyson(const std::vector<double>& t,
                                const std::vector<double>& b);
// Inverse map; returns (t, B).
std::pair<std::vector<double>, std::vector<double>> time_change_from_dyson(
    const dyson_path& path);

// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of the
// summary and a model CDF, evaluated at the sample points.
double ks_statistic(const sample_summary& summary,
                    const std::function<double(double)>& cdf);

// Ensemble of sample_loe_max draws; sample i uses stream index i, so the
// result is a pure function of (N, n_samples, master_seed) regardless of
// the worker-thread count (BRIDGE_LOE_THREADS).
sample_summary run_loe_ensemble(int N, int n_samples,
                                std::uint64_t master_seed);

// Bridge ensemble with a CDF estimate on a level grid.  Samples are the
// scaled maxima sqrt(2) * max_t B(t); prob[j] estimates
// P(sqrt(2) max B <= levels[j]), with the per-segment crossing correction
// p = exp(-2 (m-a)(m-b) / dt) applied when the grid's flag is set.
struct bridge_cdf_estimate {
    sample_summary summary;
    std::vector<double> levels;  // ascending, on the sqrt(2)-scaled axis
    std::vector<double> prob;
};
bridge_cdf_estimate run_bridge_ensemble(int N, const path_grid& grid,
                                        int n_samples,
                                        std::uint64_t master_seed,
                                        const std::vector<double>& levels);

}  // namespace bridgeloe

/*
 * fredholm.hpp - Nystrom evaluation of the GOE Tracy-Widom distribution
 * F(r) = det(I - A_r) with kernel A_r(x,y) = Ai(x + y + r) on (0, T), and
 * the comparison of the exact finite-N laws against that limit under the
 * two soft-edge scalings (bridge height and covariance top eigenvalue).
 */
#pragma once

#include <vector>

#include "kernelmat.hpp"

namespace bridgeloe {

// Discretized kernel matrix A_ij = sqrt(w_i w_j) Ai(x_i + x_j + r) on a
// Gauss-Legendre grid over (0, T'), where T' = min(T, (40 - r)/2) keeps
// every Airy argument inside the supported range.  Exactly symmetric.
mat airy_kernel_matrix(double r, int m, double T);

// Tracy-Widom GOE CDF at r via det(I - A_r), certified by doubling both
// the quadrature order and the truncation: the result is accepted once
// consecutive refinements differ by < 1e-8.  Requires r in [-10, 10],
// m in [8, 128] (the doubled order must stay <= 256) and T >= 5.
// Throws std::runtime_error if the certificate never holds.
double fgoe(double r, int m = 128, double T = 12.0);

// G_N(s) = P(2 N^{1/6} (max bridge height - sqrt(N)) <= s), the exact
// finite-N law expressed in the variable that converges to the GOE
// Tracy-Widom limit.  Requires sqrt(N) + s N^{-1/6}/2 > 0.
double finite_n_scaled_cdf(int N, double s);

// Side-by-side comparison of the finite-N laws with their common limit.
struct limit_comparison {
    std::vector<int> n_values;
    std::vector<double> s_grid;
    // Row k holds the curve for n_values[k] over s_grid.
    std::vector<std::vector<double>> bridge_cdf;   // G_N(s)
    std::vector<std::vector<double>> loe_scaled_cdf;
    std::vector<double> limit_bridge;              // F(4^{1/3} s)
    std::vector<double> limit_loe;                 // F(s)
    std::vector<double> sup_err_bridge;            // per N
    std::vector<double> sup_err_loe;               // per N
    // Largest disagreement between the two finite-N routes evaluated at
    // matched arguments (they are the same determinant analytically).
    double matched_max_diff = 0.0;
};

// Evaluates both scalings over the grid.  Requires every N >= 4 and the
// grid inside [-5, 3] (so every Tracy-Widom argument stays in-range).
limit_comparison tw_limit_compare(const std::vector<int>& n_list,
                                  const std::vector<double>& s_grid,
                                  int quad_m = 128, double T = 12.0);

} // namespace bridgeloe

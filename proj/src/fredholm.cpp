/*
 * fredholm.cpp - Nystrom determinants for the Tracy-Widom GOE limit and
 * the finite-N comparison curves.
 */
#include "fredholm.hpp"

#include <cmath>
#include <stdexcept>

#include "specfun.hpp"

namespace bridgeloe {

mat airy_kernel_matrix(double r, int m, double T) {
    if (m < 8 || m > 512) throw std::invalid_argument("airy_kernel_matrix: m out of range");
    if (!(T >= 5.0)) throw std::invalid_argument("airy_kernel_matrix: T must be >= 5");
    if (!(r >= -10.0 && r <= 10.0))
        throw std::invalid_argument("airy_kernel_matrix: r must lie in [-10, 10]");
    // Keep x + y + r <= 40 so the Airy evaluation stays in its domain; the
    // discarded tail is far below the quadrature error (Ai(20) ~ 1e-27).
    double T_eff = std::min(T, 0.5 * (40.0 - r));
    auto rule = make_quadrature(quad_kind::gauss_legendre, m);
    std::vector<double> x(m), sw(m);
    for (int i = 0; i < m; ++i) {
        x[i] = 0.5 * T_eff * (rule.nodes[i] + 1.0);
        sw[i] = std::sqrt(0.5 * T_eff * rule.weights[i]);
    }
    mat A(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double v = sw[i] * sw[j] * airy_ai(x[i] + x[j] + r);
            A(i, j) = v;
            A(j, i) = v;
        }
    return A;
}

double fgoe(double r, int m, double T) {
    if (!(r >= -10.0 && r <= 10.0))
        throw std::invalid_argument("fgoe: r must lie in [-10, 10]");
    if (m < 8 || m > 128)
        throw std::invalid_argument("fgoe: m must lie in [8, 128] so the doubled order fits");
    if (!(T >= 5.0)) throw std::invalid_argument("fgoe: T must be >= 5");
    double coarse = det_I_minus(airy_kernel_matrix(r, m, T));
    while (true) {
        int m2 = 2 * m;
        double T2 = 2.0 * T;
        double fine = det_I_minus(airy_kernel_matrix(r, m2, T2));
        if (std::fabs(fine - coarse) < 1e-8) return fine;
        if (m2 >= 256)
            throw std::runtime_error("fgoe: refinement did not converge at the maximum order");
        m = m2;
        T = T2;
        coarse = fine;
    }
}

double finite_n_scaled_cdf(int N, double s) {
    if (N < 1) throw std::invalid_argument("finite_n_scaled_cdf: N must be >= 1");
    double arg = std::sqrt(static_cast<double>(N)) + 0.5 * s * std::pow(N, -1.0 / 6.0);
    if (!(arg > 0.0))
        throw std::invalid_argument("finite_n_scaled_cdf: scaled argument must be positive");
    return maxheight_cdf(N, arg);
}

limit_comparison tw_limit_compare(const std::vector<int>& n_list,
                                  const std::vector<double>& s_grid,
                                  int quad_m, double T) {
    for (int N : n_list)
        if (N < 4) throw std::invalid_argument("tw_limit_compare: every N must be >= 4");
    for (double s : s_grid)
        if (!(s >= -5.0 && s <= 3.0))
            throw std::invalid_argument("tw_limit_compare: grid must lie in [-5, 3]");

    limit_comparison out;
    out.n_values = n_list;
    out.s_grid = s_grid;
    const double cbrt4 = std::cbrt(4.0);
    out.limit_bridge.reserve(s_grid.size());
    out.limit_loe.reserve(s_grid.size());
    for (double s : s_grid) {
        out.limit_bridge.push_back(fgoe(cbrt4 * s, quad_m, T));
        out.limit_loe.push_back(fgoe(s, quad_m, T));
    }
    for (int N : n_list) {
        std::vector<double> gb, gl;
        gb.reserve(s_grid.size());
        gl.reserve(s_grid.size());
        double sup_b = 0.0, sup_l = 0.0;
        const double n13 = std::cbrt(static_cast<double>(N));
        for (size_t i = 0; i < s_grid.size(); ++i) {
            double s = s_grid[i];
            double vb = finite_n_scaled_cdf(N, s);
            double vl = loe_cdf(N, 4.0 * N + std::pow(2.0, 4.0 / 3.0) * n13 * s);
            gb.push_back(vb);
            gl.push_back(vl);
            sup_b = std::max(sup_b, std::fabs(vb - out.limit_bridge[i]));
            sup_l = std::max(sup_l, std::fabs(vl - out.limit_loe[i]));
            // Same determinant through either normalization: evaluate the
            // covariance route at the argument matching this bridge height.
            double mh = std::sqrt(static_cast<double>(N)) + 0.5 * s * std::pow(N, -1.0 / 6.0);
            double matched = loe_cdf(N, 4.0 * mh * mh);
            out.matched_max_diff = std::max(out.matched_max_diff, std::fabs(matched - vb));
        }
        out.bridge_cdf.push_back(std::move(gb));
        out.loe_scaled_cdf.push_back(std::move(gl));
        out.sup_err_bridge.push_back(sup_b);
        out.sup_err_loe.push_back(sup_l);
    }
    return out;
}

} // namespace bridgeloe

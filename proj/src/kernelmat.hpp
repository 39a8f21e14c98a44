/*
 * kernelmat.hpp - finite N x N kernel matrices whose Fredholm-style
 * determinants give two exact distribution functions:
 *
 *   maxheight_cdf(N, m): the law of the maximal height of N non-crossing
 *     Brownian bridges on [0,1], P(max <= m) = det(I - H(N, sqrt(2) m))
 *     with H_nm = int phi_n(x) phi_m(2r - x) dx;
 *
 *   loe_cdf(N, s): the law of the largest eigenvalue of the (N+1) x N
 *     real-Gaussian covariance ensemble, obtained from the same data in
 *     Laguerre form, P(lambda_max <= s) = sqrt(det(I - L - R1 (x) R2))
 *     evaluated at r = sqrt(s/2).
 *
 * The auxiliary factorizations (banded form Htilde, the triangular
 * similarity S, the rank-one data R1/R2 and the lowering matrix Q) are the
 * objects the verification suite exercises identity by identity.
 */
#pragma once

#include <vector>

#include "dd.hpp"

namespace bridgeloe {

// Dense square matrix, row-major.
struct mat {
    int n = 0;
    std::vector<double> a;

    mat() = default;
    explicit mat(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Same layout in double-double, for the verification paths whose
// cancellation exceeds what 53 bits can absorb.
struct ddmat {
    int n = 0;
    std::vector<dd> a;

    ddmat() = default;
    explicit ddmat(int size) : n(size), a(static_cast<size_t>(size) * size) {}
    dd& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    dd operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// H_nm = int phi_n(x) phi_m(2r - x) dx for n, m < N, evaluated with a
// Gauss-Hermite rule after centering at r (quad_points = 0 chooses the
// smallest exact rule, N points; the integrand is a polynomial of degree
// 2N - 2 under a centered Gaussian).  Throws std::invalid_argument for
// N < 1 or r < 0.
mat build_H(int N, double r, int quad_points = 0);

// Banded alternative form: Htilde_ij = (-1)^N (psi_{i+j-N} - psi_{i+j-N+1})
// evaluated at 2r^2, zero above the anti-diagonal i + j = N - 1 (psi with a
// negative index is zero).
mat build_Htilde(int N, double r);

// Triangular similarity S (and its inverse in closed form) conjugating
// Htilde into H.  Requires r > 0.
struct s_pair {
    mat S;
    mat S_inv;
};
s_pair build_S_pair(int N, double r);

// Laguerre-side data at x0 = 2r^2: L = Htilde^2 (equivalently the Gram
// matrix int_{x0}^inf psi_i psi_j), R1_j = psi_j(x0), R2_j = int_0^{x0} psi_j.
struct lrr_data {
    mat L;
    std::vector<double> R1;
    std::vector<double> R2;
};
lrr_data build_L_R1_R2(int N, double r);

// Direct quadrature evaluation of int_{2r^2}^inf psi_i psi_j used to
// cross-check the algebraic route above.
mat build_L_quadrature(int N, double r, int quad_points = 400);

// Lower-triangular difference generator Q (diagonal -2r, strictly below
// -4r) together with the alternating vectors u, v satisfying
// Q v = (-1)^N 4 r u.
struct quv_data {
    mat Q;
    std::vector<double> u;
    std::vector<double> v;
};
quv_data build_Q_u_v(int N, double r);

// det(I - A) through LU with partial pivoting, accumulating the magnitude
// in log space.  Throws std::runtime_error when a pivot collapses below
// 1e-300.
double det_I_minus(const mat& A);

// P(max height of N non-crossing bridges <= m); zero for m <= 0.
double maxheight_cdf(int N, double m);

// P(largest covariance-ensemble eigenvalue <= s); zero for s <= 0.  The
// implementation evaluates both determinant routes and insists they agree
// before returning the square-root form.
double loe_cdf(int N, double s);

enum class cdf_kind { max_height, loe };

// Vectorized CDF evaluation with clamping to [0, 1]; values straying more
// than 1e-12 outside that interval indicate a numerical breakdown and
// raise std::runtime_error.
std::vector<double> cdf_table(int N, cdf_kind kind, const std::vector<double>& args);

// ---------------------------------------------------------------------------
// Double-double builders.  All carry "hatted" matrices with the e^{-r^2}
// prefactor divided out, so only polynomial arithmetic (plus sqrt) runs in
// double-double; the prefactor is reattached in plain double where needed.
// ---------------------------------------------------------------------------

// Closed-form overlap sum: Hhat_nm = (2r)^{n+m} / sqrt(2^{n+m} n! m!) *
// sum_l (-2)^l l! C(n,l) C(m,l) (2r)^{-2l}.
ddmat build_H_hat_dd(int N, double r);

// Same matrix through the banded Laguerre route:
// Hhat_ij = (c_j / c_i) sum_{k=i}^{j} C(j-i, k-i) (-1)^k L_k(2r^2), j >= i.
ddmat build_H_hat_laguerre_dd(int N, double r);

// Banded form with the exponential factored out:
// Htildehat_ij = (-1)^N (L_{i+j-N} - L_{i+j-N+1})(2r^2).
ddmat build_Htilde_hat_dd(int N, double r);

struct s_pair_dd {
    ddmat S;
    ddmat S_inv;
};
s_pair_dd build_S_pair_dd(int N, double r);

// Helpers shared by the verification suite.
ddmat ddmat_mul(const ddmat& A, const ddmat& B);
mat mat_mul(const mat& A, const mat& B);

} // namespace bridgeloe

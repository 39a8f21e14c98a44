// Implementation of the identity suite.
//
// SPDX-License-Identifier: MIT

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "dd.hpp"
#include "kernelmat.hpp"
#include "montecarlo.hpp"
#include "specfun.hpp"

namespace bridgeloe {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kFdStep = 1e-4;        // central finite-difference step in r
constexpr double kSpectralGate = 0.999;  // resolvent checks need rho(Ht) below this

// ---------------------------------------------------------------------------
// Small dense helpers
// ---------------------------------------------------------------------------

mat identity(int n) {
    mat I(n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

mat add(const mat& a, const mat& b, double sb = 1.0) {
    mat out(a.n);
    for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] = a.a[k] + sb * b.a[k];
    return out;
}

double max_abs(const mat& a) {
    double m = 0.0;
    for (double v : a.a) m = std::max(m, std::fabs(v));
    return m;
}

// Gauss-Jordan inverse with partial pivoting; the callers gate conditioning
// beforehand, so a collapsing pivot is a hard error.
mat invert(const mat& a) {
    const int n = a.n;
    mat w = a;
    mat inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::fabs(w(i, col)) > std::fabs(w(piv, col))) piv = i;
        if (std::fabs(w(piv, col)) < 1e-200)
            throw std::runtime_error("invert: pivot collapsed");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const double d = 1.0 / w(col, col);
        for (int j = 0; j < n; ++j) {
            w(col, j) *= d;
            inv(col, j) *= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = w(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w(i, j) -= f * w(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

dd dd_pow(dd base, int n) {
    dd out(1.0);
    for (int i = 0; i < n; ++i) out *= base;
    return out;
}

// Hermite polynomial row p_0..p_nmax (orthonormal weights, no Gaussian
// factor): p_0 = pi^{-1/4}, p_{k+1} = x sqrt(2/(k+1)) p_k - sqrt(k/(k+1)) p_{k-1}.
std::vector<double> hermite_p_row(int n_max, double x) {
    std::vector<double> out(n_max + 1);
    out[0] = 0.75112554446494248286;  // pi^{-1/4}
    if (n_max >= 1) out[1] = x * std::sqrt(2.0) * out[0];
    for (int n = 1; n < n_max; ++n)
        out[n + 1] = x * std::sqrt(2.0 / (n + 1)) * out[n] -
                     std::sqrt(n / (n + 1.0)) * out[n - 1];
    return out;
}

std::string format_set(const std::vector<int>& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

std::string format_set(const std::vector<double>& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Reflection residual (shared by the single-triple op and the full sweep)
// ---------------------------------------------------------------------------

double reflection_residual(int N, double r, double l_horizon, int quad_points) {
    const double q = 1.0 - std::exp(-2.0 * l_horizon);
    const double el = std::exp(-l_horizon);
    const double sq = std::sqrt(q);
    const quadrature_rule rule =
        make_quadrature(quad_kind::gauss_hermite, quad_points);

    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(-2.0 + 0.5 * k);

    std::vector<double> expn(N);
    for (int n = 0; n < N; ++n) expn[n] = std::exp(l_horizon * n);

    double worst = 0.0;
    for (double y : grid) {
        const double w2r = 2.0 * r - y;
        // in[n] = int phi_n(z) R_{[-L,0]}(z,y) dz; completing the square in z
        // leaves a Gaussian centered at e^{-L} (2r-y) with width sqrt(q).
        std::vector<double> in(N, 0.0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const std::vector<double> p =
                hermite_p_row(N - 1, el * w2r + rule.nodes[i] * sq);
            for (int n = 0; n < N; ++n) in[n] += rule.weights[i] * p[n];
        }
        const double factor = std::exp(-w2r * w2r / 2.0) / std::sqrt(kPi);
        const std::vector<double> rhs_row = hermite_phi_row(N - 1, w2r);
        for (double x : grid) {
            const std::vector<double> px = hermite_phi_row(N - 1, x);
            double lhs = 0.0, rhs = 0.0;
            for (int n = 0; n < N; ++n) {
                lhs += expn[n] * px[n] * in[n] * factor;
                rhs += px[n] * rhs_row[n];
            }
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Path-integral quadrature
// ---------------------------------------------------------------------------

// Composite Gauss-Legendre panels on [0, m sqrt(74)]; the Gaussian weight
// is below 1e-16 beyond that point.
struct panel_rule {
    std::vector<double> x, w;
};

panel_rule pathint_rule(double m) {
    const double ymax = m * std::sqrt(74.0);
    const int panels = std::max(8, static_cast<int>(ymax * 3.0));
    const quadrature_rule gl = make_quadrature(quad_kind::gauss_legendre, 12);
    panel_rule out;
    for (int p = 0; p < panels; ++p) {
        const double a = ymax * p / panels;
        const double b = ymax * (p + 1) / panels;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            out.x.push_back(0.5 * (b - a) * gl.nodes[i] + 0.5 * (a + b));
            out.w.push_back(0.5 * (b - a) * gl.weights[i]);
        }
    }
    return out;
}

double pathint_n1(double m) {
    const panel_rule rule = pathint_rule(m);
    double tot = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double y = rule.x[i];
        const double s = std::sin(y);
        tot += rule.w[i] * std::exp(-y * y / (2.0 * m * m)) * s * s;
    }
    return 4.0 / (std::sqrt(2.0 * kPi) * m) * tot;
}

// For N=2 the squared 2x2 determinant integrand separates after expansion:
// with f = sin y and g = y cos y (the j=1,2 columns y^{j-1} cos(y + j pi/2)
// up to signs), int (f_1 g_2 - g_1 f_2)^2 = 2 (S_ff S_gg - S_fg^2).
double pathint_n2(double m) {
    const panel_rule rule = pathint_rule(m);
    double s_ff = 0.0, s_gg = 0.0, s_fg = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double y = rule.x[i];
        const double wg = rule.w[i] * std::exp(-y * y / (2.0 * m * m));
        const double f = std::sin(y);
        const double g = y * std::cos(y);
        s_ff += wg * f * f;
        s_gg += wg * g * g;
        s_fg += wg * f * g;
    }
    const double i2 = 2.0 * (s_ff * s_gg - s_fg * s_fg);
    return 4.0 / (kPi * m * m * m * m) * i2;
}

// ---------------------------------------------------------------------------
// Support-lemma helpers
// ---------------------------------------------------------------------------

// Extended binomial with the Gamma-limit convention at negative equal
// arguments: C(k,k) = 1 also for k < 0 (in particular C(-1,-1) = 1), zero
// for any other out-of-range pair.
dd c_ext_dd(int k, int l) {
    if (l < 0) return (k == l) ? dd(1.0) : dd(0.0);
    if (k < 0) return dd(0.0);
    return binomial_dd(k, l);
}

std::int64_t c_ext_int(const std::vector<std::vector<std::int64_t>>& pascal,
                       int k, int l) {
    if (l < 0) return (k == l) ? 1 : 0;
    if (k < 0) return 0;
    if (l > k) return 0;
    return pascal[k][l];
}

// Closed form of int phi_n(x) phi_m(2r - x) dx, summed in double-double
// with the Gaussian factor attached at the end:
//   e^{-r^2} / sqrt(2^{n+m} n! m!) * sum_l (-2)^l l! C(n,l) C(m,l) (2r)^{n+m-2l}.
double overlap_closed(int n, int m, double r) {
    dd sum(0.0);
    dd sign(1.0);
    const dd two_r(2.0 * r);
    for (int l = 0; l <= std::min(n, m); ++l) {
        sum += sign * factorial_dd(l) * binomial_dd(n, l) * binomial_dd(m, l) *
               dd_pow(two_r, n + m - 2 * l);
        sign *= dd(-2.0);
    }
    const dd norm =
        dd_sqrt(dd_pow(dd(2.0), n + m) * factorial_dd(n) * factorial_dd(m));
    return to_double(sum / norm) * std::exp(-r * r);
}

// Laguerre-sum route to the same overlap (n >= m, r > 0):
//   r^{m-n} sqrt(2^m n! / (2^n m!)) e^{-r^2}
//     * sum_{k=m}^{n} C(n-m, k-m) (-1)^k L_k(2 r^2).
double overlap_laguerre(int n, int m, double r) {
    const double s2 = 2.0 * r * r;
    const std::vector<dd> lrow = laguerre_l_row_dd(n, dd(s2));
    dd sum(0.0);
    for (int k = m; k <= n; ++k) {
        const dd term = binomial_dd(n - m, k - m) * lrow[k];
        sum += (k % 2 == 0) ? term : -term;
    }
    const dd pref = dd_sqrt(dd_pow(dd(2.0), m) * factorial_dd(n) /
                            (dd_pow(dd(2.0), n) * factorial_dd(m)));
    const dd rpow = dd_pow(dd(r), n - m);
    return to_double(pref * sum / rpow) * std::exp(-r * r);
}

// ---------------------------------------------------------------------------
// Error-operator decay (informational)
// ---------------------------------------------------------------------------

double heat_kernel(double l_horizon, double x, double y) {
    const double q = 1.0 - std::exp(-2.0 * l_horizon);
    const double d = std::exp(-l_horizon) * x - y;
    return std::exp((y * y - x * x) / 2.0) / std::sqrt(kPi * q) *
           std::exp(-d * d / q);
}

double reflection_kernel(double l1, double l2, double r, double x, double y) {
    const double a = 0.25 * std::exp(2.0 * l1);
    const double b = 0.25 * std::exp(2.0 * l2);
    const double e1 = std::exp(l1), e2 = std::exp(l2);
    const double z = e1 * x + e2 * y - 2.0 * r * (a + b) - r;
    const double expo = 0.5 * (y * y - x * x) + l2 - r * (e2 * y - e1 * x) +
                        r * r * (b - a) - z * z / (4.0 * (b - a));
    return std::exp(expo) / std::sqrt(4.0 * kPi * (b - a));
}

// Hilbert-Schmidt norm of the discretized error operator at one horizon.
double error_operator_hs_norm(int N, double r, double l_horizon) {
    const int m = 120;
    const double T = 14.0;
    const quadrature_rule gl = make_quadrature(quad_kind::gauss_legendre, m);
    std::vector<double> xs(m), sw(m);
    for (int i = 0; i < m; ++i) {
        xs[i] = T * gl.nodes[i];
        sw[i] = std::sqrt(T * gl.weights[i]);
    }
    std::vector<std::vector<double>> phi(m);
    for (int i = 0; i < m; ++i) phi[i] = hermite_phi_row(N - 1, xs[i]);

    mat A(m), B1(m), B2(m);
    std::vector<double> expn(N);
    for (int n = 0; n < N; ++n) expn[n] = std::exp(l_horizon * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double aij = 0.0;
            for (int n = 0; n < N; ++n) aij += expn[n] * phi[i][n] * phi[j][n];
            A(i, j) = sw[i] * aij * sw[j];
            B1(i, j) = sw[i] *
                       (heat_kernel(l_horizon, xs[i], xs[j]) -
                        reflection_kernel(-l_horizon, 0.0, r, xs[i], xs[j])) *
                       sw[j];
            B2(i, j) = sw[i] *
                       (heat_kernel(l_horizon, xs[i], xs[j]) -
                        reflection_kernel(0.0, l_horizon, r, xs[i], xs[j])) *
                       sw[j];
        }
    }
    const double rc = r * std::cosh(l_horizon);
    // Right-multiplication by a cut projector: zero the columns outside it.
    auto project_cols = [&](const mat& in, bool above, double cut) {
        mat out = in;
        for (int j = 0; j < m; ++j) {
            const bool keep = above ? (xs[j] > cut) : (xs[j] <= cut);
            if (keep) continue;
            for (int i = 0; i < m; ++i) out(i, j) = 0.0;
        }
        return out;
    };
    // core = B1 Pbar_r B2
    const mat core = mat_mul(project_cols(B1, false, r), B2);
    // Omega~ = A P_rc core Pbar_rc A + A core P_rc A
    const mat o1 = mat_mul(
        mat_mul(project_cols(A, true, rc), project_cols(core, false, rc)), A);
    const mat o2 = mat_mul(mat_mul(A, project_cols(core, true, rc)), A);
    const mat om = add(o1, o2);
    double hs2 = 0.0;
    for (double v : om.a) hs2 += v * v;
    return std::sqrt(hs2);
}

}  // namespace

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

void verification_report::add(check_result c) {
    if (c.anchor.empty()) c.pass = false;  // fail closed
    checks.push_back(std::move(c));
    std::stable_sort(checks.begin(), checks.end(),
                     [](const check_result& a, const check_result& b) {
                         return a.name < b.name;
                     });
    pass = true;
    for (const check_result& k : checks)
        if (!k.informational) pass = pass && k.pass;
}

void verification_report::merge(const verification_report& other) {
    for (const check_result& k : other.checks) add(k);
}

// ---------------------------------------------------------------------------
// Matrix identities
// ---------------------------------------------------------------------------

verification_report verify_matrix_identities(const std::vector<int>& n_set,
                                             const std::vector<double>& r_set) {
    if (n_set.empty() || r_set.empty())
        throw std::invalid_argument("verify_matrix_identities: empty parameter set");
    for (int n : n_set)
        if (n < 1 || n > 16)
            throw std::invalid_argument("verify_matrix_identities: N must be in [1,16]");
    for (double r : r_set)
        if (!(r > 0.0 && r <= 8.0))
            throw std::invalid_argument("verify_matrix_identities: r must be in (0,8]");

    double err_conj = 0.0, err_square = 0.0, err_edge = 0.0, err_anti = 0.0;
    double err_det = 0.0, err_dband = 0.0, err_dresolv = 0.0;
    int derivative_pairs = 0;
    int resolvent_pairs = 0;

    for (int N : n_set) {
        for (double r : r_set) {
            const double scale = std::exp(-r * r);

            // (i) similarity conjugation, in double-double on the
            // Gaussian-factored matrices (the factor cancels between sides).
            {
                const s_pair_dd sp = build_S_pair_dd(N, r);
                const ddmat ht = build_Htilde_hat_dd(N, r);
                const ddmat h = build_H_hat_dd(N, r);
                const ddmat lhs = ddmat_mul(ddmat_mul(sp.S_inv, ht), sp.S);
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        err_conj = std::max(
                            err_conj,
                            std::fabs(to_double(lhs(i, j) - h(i, j))) * scale);
            }

            const mat ht = build_Htilde(N, r);
            const quv_data quv = build_Q_u_v(N, r);
            const lrr_data lrr = build_L_R1_R2(N, r);

            // (ii) banded square against the independent tail-Gram quadrature.
            err_square = std::max(
                err_square,
                max_abs(add(mat_mul(ht, ht), build_L_quadrature(N, r), -1.0)));

            // (iii) closed-form edge vectors.
            std::vector<double> ht_u(N, 0.0), r2_alg(N, 0.0);
            for (int i = 0; i < N; ++i) {
                double su = 0.0, sv = 0.0;
                for (int j = 0; j < N; ++j) {
                    su += ht(i, j) * quv.u[j];
                    sv += ht(i, j) * quv.v[j];
                }
                ht_u[i] = su;
                r2_alg[i] = quv.v[i] - sv;
            }
            for (int i = 0; i < N; ++i) {
                err_edge = std::max(err_edge, std::fabs(lrr.R1[i] - ht_u[i]));
                err_edge = std::max(err_edge, std::fabs(lrr.R2[i] - r2_alg[i]));
            }

            // (anti) Q Ht + Ht Q + E = 0 with E = 4r (Ht u)(x) u.
            mat e_rank1(N);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    e_rank1(i, j) = 4.0 * r * ht_u[i] * quv.u[j];
            err_anti = std::max(
                err_anti,
                max_abs(add(add(mat_mul(quv.Q, ht), mat_mul(ht, quv.Q)), e_rank1)));

            // (det) determinant product identity, relative form.
            {
                const double d1 = det_I_minus(build_H(N, r));
                mat m2 = lrr.L;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        m2(i, j) += lrr.R1[i] * lrr.R2[j];
                const double d2 = det_I_minus(m2);
                err_det = std::max(err_det, std::fabs(d1 * d1 - d2) /
                                                std::max(1.0, std::fabs(d2)));
            }

            // (iv) banded derivative by central differences.
            if (r > 2.0 * kFdStep) {
                ++derivative_pairs;
                const mat hp = build_Htilde(N, r + kFdStep);
                const mat hm = build_Htilde(N, r - kFdStep);
                mat fd(N);
                for (std::size_t k = 0; k < fd.a.size(); ++k)
                    fd.a[k] = (hp.a[k] - hm.a[k]) / (2.0 * kFdStep);
                err_dband =
                    std::max(err_dband, max_abs(add(fd, mat_mul(quv.Q, ht), -1.0)));
            }

            // (v) resolvent derivative, gated on the spectral radius of Ht
            // (shared with H through the similarity (i)).
            const std::vector<double> ev = symmetric_eigenvalues(build_H(N, r));
            const double rho =
                std::max(std::fabs(ev.front()), std::fabs(ev.back()));
            if (rho < kSpectralGate && r > 2.0 * kFdStep) {
                ++resolvent_pairs;
                const mat I = identity(N);
                const mat inv0 = invert(add(I, ht));
                const mat winv = invert(add(I, mat_mul(ht, ht), -1.0));
                const mat rhs = add(mat_mul(winv, mat_mul(ht, quv.Q)),
                                    mat_mul(mat_mul(winv, e_rank1), inv0));
                const mat invp = invert(add(I, build_Htilde(N, r + kFdStep)));
                const mat invm = invert(add(I, build_Htilde(N, r - kFdStep)));
                mat fd(N);
                for (std::size_t k = 0; k < fd.a.size(); ++k)
                    fd.a[k] = (invp.a[k] - invm.a[k]) / (2.0 * kFdStep);
                err_dresolv = std::max(err_dresolv, max_abs(add(fd, rhs, -1.0)));
            }
        }
    }

    const std::string params =
        "N in " + format_set(n_set) + ", r in " + format_set(r_set);
    verification_report rep;
    rep.add({"similarity-conjugation", "S^{-1} Ht S = H", params, err_conj, 1e-8,
             err_conj <= 1e-8, false});
    rep.add({"banded-square-equals-tail-gram",
             "Ht^2 = L, L_jk = int_{2r^2}^inf psi_j psi_k", params, err_square,
             1e-8, err_square <= 1e-8, false});
    rep.add({"edge-vectors-closed-form", "R1 = Ht u and R2 = (I - Ht) v", params,
             err_edge, 1e-8, err_edge <= 1e-8, false});
    rep.add({"generator-anticommutator",
             "Q Ht + Ht Q + E = 0, E = 4r (Ht u)(x)u", params, err_anti, 1e-8,
             err_anti <= 1e-8, false});
    rep.add({"determinant-product-identity",
             "det(I - H)^2 = det(I - L - R1 (x) R2)", params, err_det, 1e-8,
             err_det <= 1e-8, false});
    rep.add({"banded-derivative-closed-form", "d/dr Ht = Q Ht", params,
             err_dband, 1e-5, derivative_pairs > 0 && err_dband <= 1e-5, false});
    {
        std::ostringstream os;
        os << params << "; evaluated on " << resolvent_pairs
           << " pairs with rho(Ht) < " << kSpectralGate;
        const bool ok = resolvent_pairs > 0 && err_dresolv <= 1e-5;
        rep.add({"resolvent-derivative-closed-form",
                 "d/dr (I+Ht)^{-1} = (I-Ht^2)^{-1} Ht Q + (I-Ht^2)^{-1} E (I+Ht)^{-1}",
                 os.str(), err_dresolv, 1e-5, ok, false});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Summation lemmas
// ---------------------------------------------------------------------------

verification_report verify_support_lemmas() {
    verification_report rep;

    // Binomial convolution, exact integer arithmetic.
    {
        const int rows = 42;
        std::vector<std::vector<std::int64_t>> pascal(rows);
        for (int n = 0; n < rows; ++n) {
            pascal[n].assign(n + 1, 1);
            for (int k = 1; k < n; ++k)
                pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
        }
        auto choose = [&](int n, int k) -> std::int64_t {
            if (k < 0 || k > n) return 0;
            return pascal[n][k];
        };
        std::int64_t mismatches = 0;
        for (int n = 0; n <= 20; ++n) {
            for (int m = 0; m <= 20; ++m) {
                for (int a = -20; a <= 20; ++a) {
                    std::int64_t lhs = 0;
                    for (int i = 0; i <= n; ++i) {
                        const int j = i + a;
                        if (j < 0) continue;
                        const std::int64_t t = choose(n, i) * choose(j, m);
                        lhs += (i % 2 == 0) ? t : -t;
                    }
                    std::int64_t rhs;
                    if (a >= 0) {
                        const std::int64_t c =
                            (m - n >= 0 && m - n <= a) ? choose(a, m - n) : 0;
                        rhs = (n % 2 == 0) ? c : -c;
                    } else if (n >= m - a) {
                        const std::int64_t c =
                            c_ext_int(pascal, n - m - 1, n - m + a);
                        rhs = ((m - a) % 2 == 0) ? c : -c;
                    } else {
                        rhs = 0;
                    }
                    if (lhs != rhs) ++mismatches;
                }
            }
        }
        rep.add({"binomial-convolution-exact",
                 "sum_i (-1)^i C(n,i) C(i+a,m) = signed single binomial",
                 "n,m in [0,20], a in [-20,20], exact int64",
                 static_cast<double>(mismatches), 0.0, mismatches == 0, false});
    }

    // Hermite cross-overlap, three routes pairwise.
    {
        double worst = 0.0;
        for (double r : {0.3, 1.0, 2.5}) {
            const mat h = build_H(16, r);  // quadrature route, exact rule
            for (int n = 0; n <= 15; ++n) {
                for (int m = 0; m <= n; ++m) {
                    const double a = overlap_closed(n, m, r);
                    const double b = overlap_laguerre(n, m, r);
                    const double c = h(n, m);
                    worst = std::max({worst, std::fabs(a - b), std::fabs(a - c),
                                      std::fabs(b - c)});
                }
            }
        }
        rep.add({"hermite-overlap-three-routes",
                 "int phi_n(x) phi_m(2r-x) dx: closed form = Laguerre sum = quadrature",
                 "n >= m, n <= 15, r in {0.3,1,2.5}", worst, 1e-9, worst <= 1e-9,
                 false});
    }

    // The same overlap at r = 0 collapses to parity orthonormality.
    {
        const mat h0 = build_H(16, 0.0);
        double worst = 0.0;
        for (int n = 0; n <= 15; ++n)
            for (int m = 0; m <= 15; ++m) {
                const double want = (n == m) ? ((n % 2 == 0) ? 1.0 : -1.0) : 0.0;
                worst = std::max(worst, std::fabs(h0(n, m) - want));
            }
        rep.add({"hermite-overlap-at-zero",
                 "int phi_n(x) phi_m(-x) dx = (-1)^n 1{n=m}", "n,m <= 15", worst,
                 1e-9, worst <= 1e-9, false});
    }

    // Laguerre summation swap as a value identity, in double-double.
    {
        double worst = 0.0;
        for (double x : {0.1, 1.0, 7.3}) {
            for (int n = 0; n <= 15; ++n) {
                const std::vector<dd> lrow = laguerre_l_row_dd(n, dd(x));
                for (int m = 0; m <= n; ++m) {
                    dd lhs(0.0);
                    for (int k = 0; k <= m; ++k)
                        lhs += c_ext_dd(n - k - 1, n - m - 1) * lrow[k];
                    lhs *= dd_pow(dd(x), n) / factorial_dd(n);
                    if (m % 2 != 0) lhs = -lhs;
                    dd rhs(0.0);
                    for (int k = m; k <= n; ++k) {
                        const dd term = binomial_dd(n - m, k - m) * lrow[k];
                        rhs += (k % 2 == 0) ? term : -term;
                    }
                    rhs *= dd_pow(dd(x), m) / factorial_dd(m);
                    worst = std::max(worst, std::fabs(to_double(lhs - rhs)));
                }
            }
        }
        rep.add({"laguerre-sum-swap-identity",
                 "(-1)^m x^n/n! sum_{k<=m} C(n-k-1,n-m-1) L_k = "
                 "x^m/m! sum_{k=m}^{n} C(n-m,k-m) (-1)^k L_k",
                 "n >= m, n <= 15, x in {0.1,1,7.3}, C(-1,-1)=1", worst, 1e-10,
                 worst <= 1e-10, false});
    }

    return rep;
}

// ---------------------------------------------------------------------------
// Reflection identity and path integral
// ---------------------------------------------------------------------------

verification_report verify_reflection_identity(int N, double r,
                                               double l_horizon,
                                               int quad_points) {
    if (N < 1 || N > 8)
        throw std::invalid_argument("verify_reflection_identity: N must be in [1,8]");
    if (!(r > 0.0 && r <= 4.0))
        throw std::invalid_argument("verify_reflection_identity: r must be in (0,4]");
    if (!(l_horizon >= 0.5 && l_horizon <= 3.0))
        throw std::invalid_argument(
            "verify_reflection_identity: horizon must be in [0.5,3]");
    if (quad_points < N)
        throw std::invalid_argument(
            "verify_reflection_identity: quadrature too small for N");

    const double worst = reflection_residual(N, r, l_horizon, quad_points);
    std::ostringstream os;
    os << "N=" << N << ", r=" << r << ", L=" << l_horizon
       << ", quad=" << quad_points << ", grid {-2..2}^2";
    verification_report rep;
    rep.add({"heat-reflection-factorization",
             "sum_n e^{Ln} phi_n(x) int phi_n(z) R_{[-L,0]}(z,y) dz = "
             "sum_n phi_n(x) phi_n(2r-y)",
             os.str(), worst, 1e-7, worst <= 1e-7, false});
    return rep;
}

verification_report verify_pathintegral_smallN(int N,
                                               const std::vector<double>& m_grid) {
    if (N != 1 && N != 2)
        throw std::invalid_argument("verify_pathintegral_smallN: N must be 1 or 2");
    if (m_grid.empty())
        throw std::invalid_argument("verify_pathintegral_smallN: empty m grid");
    for (double m : m_grid)
        if (!(m >= 0.4 && m <= 3.0))
            throw std::invalid_argument(
                "verify_pathintegral_smallN: m must be in [0.4,3]");

    double worst = 0.0;
    for (double m : m_grid) {
        const double got = (N == 1) ? pathint_n1(m) : pathint_n2(m);
        const double want =
            (N == 1) ? 1.0 - std::exp(-2.0 * m * m) : maxheight_cdf(2, m);
        worst = std::max(worst, std::fabs(got - want));
    }
    const double tol = (N == 1) ? 1e-6 : 1e-4;
    verification_report rep;
    rep.add({std::string("path-integral-cdf-n") + (N == 1 ? "1" : "2"),
             "2^{2N} (2pi)^{-N/2} m^{-N^2} prod(j!)^{-1} int e^{-|y|^2/2m^2} "
             "det[y_i^{j-1} cos(y_i + j pi/2)]^2 dy = P(max height <= m)",
             "m in " + format_set(m_grid), worst, tol, worst <= tol, false});
    return rep;
}

verification_report verify_error_kernel_decay() {
    const std::vector<double> horizons = {1.0, 1.5, 2.0, 2.5};
    std::vector<double> hs;
    for (double L : horizons) hs.push_back(error_operator_hs_norm(2, 1.0, L));
    double worst_rise = 0.0;
    bool decreasing = true;
    std::ostringstream os;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        if (k) {
            if (hs[k] >= hs[k - 1]) decreasing = false;
            worst_rise = std::max(worst_rise, hs[k] - hs[k - 1]);
        }
        os << (k ? ", " : "") << "HS(L=" << horizons[k] << ")=" << hs[k];
    }
    verification_report rep;
    rep.add({"error-kernel-hs-decay",
             "||Omega~_L||_HS decreasing over L in {1,1.5,2,2.5} at N=2, r=1",
             os.str(), std::max(0.0, worst_rise), 0.0, decreasing, true});
    return rep;
}

// ---------------------------------------------------------------------------
// Full suite
// ---------------------------------------------------------------------------

verification_report run_full_verification(const std::vector<int>& n_set,
                                          const std::vector<double>& r_set) {
    verification_report rep = verify_matrix_identities(n_set, r_set);
    rep.merge(verify_support_lemmas());

    // Reflection sweep over the admissible part of the parameter sets.
    {
        std::vector<int> ns;
        for (int n : n_set)
            if (n <= 8) ns.push_back(n);
        std::vector<double> rs;
        for (double r : r_set)
            if (r <= 4.0) rs.push_back(r);
        const std::vector<double> ls = {0.5, 1.0, 2.0};
        double worst = 0.0;
        for (int n : ns)
            for (double r : rs)
                for (double l : ls)
                    worst = std::max(
                        worst, reflection_residual(n, r, l, std::max(n, 8)));
        std::ostringstream os;
        os << "N in " << format_set(ns) << ", r in " << format_set(rs)
           << ", L in {0.5,1,2}";
        const bool covered = !ns.empty() && !rs.empty();
        rep.add({"heat-reflection-factorization",
                 "sum_n e^{Ln} phi_n(x) int phi_n(z) R_{[-L,0]}(z,y) dz = "
                 "sum_n phi_n(x) phi_n(2r-y)",
                 covered ? os.str() : "no admissible parameters", worst, 1e-7,
                 covered && worst <= 1e-7, false});
    }

    const std::vector<double> m_grid = {0.4, 0.7, 1.0, 1.5, 2.0, 3.0};
    rep.merge(verify_pathintegral_smallN(1, m_grid));
    rep.merge(verify_pathintegral_smallN(2, m_grid));
    rep.merge(verify_error_kernel_decay());
    return rep;
}

}  // namespace bridgeloe

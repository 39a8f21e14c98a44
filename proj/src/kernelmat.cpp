/*
 * kernelmat.cpp - construction of the finite kernel matrices and the
 * determinant evaluations built on them.
 */
#include "kernelmat.hpp"

#include <cmath>
#include <stdexcept>

#include "specfun.hpp"

namespace bridgeloe {

namespace {

void check_N(int N) {
    if (N < 1) throw std::invalid_argument("matrix order N must be >= 1");
}

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// c_k = r^{N-1-k} sqrt(2^{N-1-k} k! / (N-1)!), the diagonal scaling of S.
std::vector<double> c_vector(int N, double r) {
    std::vector<double> c(N);
    for (int k = 0; k < N; ++k) {
        double ratio = 1.0;                       // k! / (N-1)!
        for (int j = k + 1; j <= N - 1; ++j) ratio /= j;
        c[k] = std::pow(r, N - 1 - k) * std::sqrt(std::pow(2.0, N - 1 - k) * ratio);
    }
    return c;
}

std::vector<dd> c_vector_dd(int N, double r) {
    std::vector<dd> c(N);
    dd fact_top = factorial_dd(N - 1);
    for (int k = 0; k < N; ++k) {
        dd rp(1.0), two_p(1.0);
        for (int j = 0; j < N - 1 - k; ++j) {
            rp *= dd(r);
            two_p *= dd(2.0);
        }
        c[k] = rp * dd_sqrt(two_p * factorial_dd(k) / fact_top);
    }
    return c;
}

} // namespace

mat build_H(int N, double r, int quad_points) {
    check_N(N);
    check_finite(r, "r");
    if (r < 0.0) throw std::invalid_argument("build_H: r must be >= 0");
    if (quad_points < 0 || quad_points > 512)
        throw std::invalid_argument("build_H: quad_points out of range");
    mat H(N);
    if (r * r > 600.0) return H;  // every entry is below ~e^{-600}: gone in double
    int Q = quad_points == 0 ? N : quad_points;
    auto rule = gauss_hermite_modified(Q);
    // H = A^T B with A_in = sqrt(w_i) phi_n(r + x_i), B_im = sqrt(w_i) phi_m(r - x_i).
    std::vector<std::vector<double>> A(Q), B(Q);
    for (int i = 0; i < Q; ++i) {
        double sw = std::sqrt(rule.weights[i]);
        A[i] = hermite_phi_row(N - 1, r + rule.nodes[i]);
        B[i] = hermite_phi_row(N - 1, r - rule.nodes[i]);
        for (int n = 0; n < N; ++n) {
            A[i][n] *= sw;
            B[i][n] *= sw;
        }
    }
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
            double s = 0.0;
            for (int i = 0; i < Q; ++i) s += A[i][n] * B[i][m];
            H(n, m) = s;
        }
    return H;
}

mat build_Htilde(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    if (r < 0.0) throw std::invalid_argument("build_Htilde: r must be >= 0");
    mat Ht(N);
    auto psi = laguerre_psi_row(N - 1, 2.0 * r * r);
    double sgn = (N % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i + j < N - 1) continue;  // zero block above the anti-diagonal
            int k = i + j - N;
            double a = (k >= 0) ? psi[k] : 0.0;
            double b = psi[k + 1];
            Ht(i, j) = sgn * (a - b);
        }
    return Ht;
}

s_pair build_S_pair(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    if (!(r > 0.0)) throw std::invalid_argument("build_S_pair: r must be > 0");
    s_pair out{mat(N), mat(N)};
    auto c = c_vector(N, r);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            double b = to_double(binomial_dd(N - 1 - i, j - i));
            double sgn = ((N - 1 + j) % 2 == 0) ? 1.0 : -1.0;
            out.S(i, j) = c[j] * b * sgn;
            out.S_inv(i, j) = b * sgn / c[i];
        }
    return out;
}

lrr_data build_L_R1_R2(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    if (r < 0.0) throw std::invalid_argument("build_L_R1_R2: r must be >= 0");
    lrr_data out;
    mat Ht = build_Htilde(N, r);
    out.L = mat_mul(Ht, Ht);
    out.R1 = laguerre_psi_row(N - 1, 2.0 * r * r);
    out.R2 = laguerre_psi_integral_row(N - 1, 2.0 * r * r);
    return out;
}

mat build_L_quadrature(int N, double r, int quad_points) {
    check_N(N);
    check_finite(r, "r");
    if (r < 0.0) throw std::invalid_argument("build_L_quadrature: r must be >= 0");
    // Composite Gauss-Legendre over [x0, x0 + 120] in width-5 panels; the
    // integrands psi_i psi_j die off like e^{-x} well before the cutoff.
    const double x0 = 2.0 * r * r;
    const int per_panel = 16;
    int panels = std::max(8, quad_points / per_panel);
    const double width = 120.0 / panels;
    auto rule = make_quadrature(quad_kind::gauss_legendre, per_panel);
    mat L(N);
    for (int p = 0; p < panels; ++p) {
        double lo = x0 + p * width;
        for (int q = 0; q < per_panel; ++q) {
            double x = lo + 0.5 * width * (rule.nodes[q] + 1.0);
            double w = 0.5 * width * rule.weights[q];
            auto psi = laguerre_psi_row(N - 1, x);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) L(i, j) += w * psi[i] * psi[j];
        }
    }
    return L;
}

quv_data build_Q_u_v(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    quv_data out{mat(N), std::vector<double>(N), std::vector<double>(N)};
    for (int i = 0; i < N; ++i) {
        out.Q(i, i) = -2.0 * r;
        for (int j = 0; j < i; ++j) out.Q(i, j) = -4.0 * r;
        out.u[i] = (N % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N-1}
        out.v[i] = (i % 2 == 0) ? 2.0 : -2.0;  // (-1)^i 2
    }
    return out;
}

double det_I_minus(const mat& A) {
    const int n = A.n;
    mat B(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = (i == j ? 1.0 : 0.0) - A(i, j);
    double sign = 1.0, log_mag = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(B(i, k)) > std::fabs(B(piv, k))) piv = i;
        double p = B(piv, k);
        if (std::fabs(p) < 1e-300)
            throw std::runtime_error("det_I_minus: pivot collapsed, matrix numerically singular");
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(B(piv, j), B(k, j));
            sign = -sign;
        }
        p = B(k, k);
        if (p < 0.0) sign = -sign;
        log_mag += std::log(std::fabs(p));
        for (int i = k + 1; i < n; ++i) {
            double f = B(i, k) / p;
            B(i, k) = 0.0;
            for (int j = k + 1; j < n; ++j) B(i, j) -= f * B(k, j);
        }
    }
    return sign * std::exp(log_mag);
}

double maxheight_cdf(int N, double m) {
    check_N(N);
    check_finite(m, "m");
    if (m <= 0.0) return 0.0;  // non-crossing paths attain positive height a.s.
    return det_I_minus(build_H(N, std::sqrt(2.0) * m));
}

double loe_cdf(int N, double s) {
    check_N(N);
    check_finite(s, "s");
    if (s <= 0.0) return 0.0;  // the covariance matrix is positive semidefinite
    double r = std::sqrt(0.5 * s);
    double d1 = det_I_minus(build_H(N, r));
    lrr_data d = build_L_R1_R2(N, r);
    mat M = d.L;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) M(i, j) += d.R1[i] * d.R2[j];
    double d2 = det_I_minus(M);
    // The two determinant routes compute the same probability; a mismatch
    // means the evaluation left its reliable regime.
    if (std::fabs(d1 * d1 - d2) > 1e-7 * std::max(1.0, std::fabs(d2)))
        throw std::runtime_error("loe_cdf: determinant routes disagree");
    return std::sqrt(std::max(d2, 0.0));
}

std::vector<double> cdf_table(int N, cdf_kind kind, const std::vector<double>& args) {
    check_N(N);
    std::vector<double> out;
    out.reserve(args.size());
    for (double a : args) {
        double v = (kind == cdf_kind::max_height) ? maxheight_cdf(N, a) : loe_cdf(N, a);
        if (v < -1e-12 || v > 1.0 + 1e-12)
            throw std::runtime_error("cdf_table: value strayed outside [0, 1]");
        out.push_back(std::min(1.0, std::max(0.0, v)));
    }
    return out;
}

ddmat build_H_hat_dd(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    if (r < 0.0) throw std::invalid_argument("build_H_hat_dd: r must be >= 0");
    ddmat H(N);
    // Powers of 2r and shared factorials.
    std::vector<dd> tr_pow(2 * N - 1);
    tr_pow[0] = dd(1.0);
    for (size_t k = 1; k < tr_pow.size(); ++k) tr_pow[k] = tr_pow[k - 1] * dd(2.0 * r);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m <= n; ++m) {
            dd sum(0.0);
            dd term_scale(1.0);  // (-2)^l l!
            for (int l = 0; l <= m; ++l) {
                if (l > 0) term_scale = term_scale * dd(-2.0 * l);
                sum += term_scale * binomial_dd(n, l) * binomial_dd(m, l) * tr_pow[n + m - 2 * l];
            }
            dd two_pow(1.0);
            for (int k = 0; k < n + m; ++k) two_pow *= dd(2.0);
            dd norm = dd_sqrt(two_pow * factorial_dd(n) * factorial_dd(m));
            H(n, m) = sum / norm;
            H(m, n) = H(n, m);
        }
    return H;
}

ddmat build_H_hat_laguerre_dd(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    if (!(r > 0.0)) throw std::invalid_argument("build_H_hat_laguerre_dd: r must be > 0");
    dd x0 = dd(2.0) * dd(r) * dd(r);
    auto lag = laguerre_l_row_dd(N - 1, x0);
    ddmat H(N);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            dd sum(0.0);
            for (int k = i; k <= j; ++k) {
                dd t = binomial_dd(j - i, k - i) * lag[k];
                sum += (k % 2 == 0) ? t : -t;
            }
            // c_j / c_i = r^{i-j} sqrt(2^{i-j} j! / i!).
            dd rp(1.0), tp(1.0);
            for (int k = 0; k < j - i; ++k) {
                rp *= dd(r);
                tp *= dd(2.0);
            }
            dd ratio = dd_sqrt(factorial_dd(j) / (tp * factorial_dd(i))) / rp;
            H(i, j) = ratio * sum;
            H(j, i) = H(i, j);
        }
    return H;
}

ddmat build_Htilde_hat_dd(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    if (r < 0.0) throw std::invalid_argument("build_Htilde_hat_dd: r must be >= 0");
    dd x0 = dd(2.0) * dd(r) * dd(r);
    auto lag = laguerre_l_row_dd(std::max(N - 1, 0), x0);
    ddmat Ht(N);
    bool even = (N % 2 == 0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i + j < N - 1) continue;
            int k = i + j - N;
            dd a = (k >= 0) ? lag[k] : dd(0.0);
            dd diff = a - lag[k + 1];
            Ht(i, j) = even ? diff : -diff;
        }
    return Ht;
}

s_pair_dd build_S_pair_dd(int N, double r) {
    check_N(N);
    check_finite(r, "r");
    if (!(r > 0.0)) throw std::invalid_argument("build_S_pair_dd: r must be > 0");
    s_pair_dd out{ddmat(N), ddmat(N)};
    auto c = c_vector_dd(N, r);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            dd b = binomial_dd(N - 1 - i, j - i);
            if ((N - 1 + j) % 2 != 0) b = -b;
            out.S(i, j) = c[j] * b;
            out.S_inv(i, j) = b / c[i];
        }
    return out;
}

ddmat ddmat_mul(const ddmat& A, const ddmat& B) {
    const int n = A.n;
    ddmat C(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            dd aik = A(i, k);
            if (aik.hi == 0.0 && aik.lo == 0.0) continue;
            for (int j = 0; j < n; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

mat mat_mul(const mat& A, const mat& B) {
    const int n = A.n;
    mat C(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double aik = A(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

} // namespace bridgeloe

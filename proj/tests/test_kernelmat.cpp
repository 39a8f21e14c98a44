/*
 * test_kernelmat.cpp - unit tests for the kernel matrix builders, the
 * determinant identity linking the two CDF routes, and the closed-form
 * anchors small cases reduce to.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kernelmat.hpp"
#include "specfun.hpp"

using namespace bridgeloe;

namespace {

double max_abs_diff(const mat& A, const mat& B) {
    double worst = 0.0;
    for (size_t i = 0; i < A.a.size(); ++i)
        worst = std::max(worst, std::fabs(A.a[i] - B.a[i]));
    return worst;
}

mat dd_to_mat(const ddmat& A, double scale) {
    mat out(A.n);
    for (size_t i = 0; i < A.a.size(); ++i) out.a[i] = to_double(A.a[i]) * scale;
    return out;
}

} // namespace

TEST_CASE("H matrix anchors") {
    for (double r : {0.0, 0.5, 1.0, 3.0}) {
        mat H = build_H(1, r);
        CHECK(std::fabs(H(0, 0) - std::exp(-r * r)) < 1e-14);
    }
    mat H21 = build_H(2, 1.0);
    CHECK(std::fabs(H21(0, 0) - std::exp(-1.0)) < 1e-14);
    CHECK(std::fabs(H21(0, 1) - std::sqrt(2.0) * std::exp(-1.0)) < 1e-14);
    CHECK(std::fabs(H21(1, 0) - std::sqrt(2.0) * std::exp(-1.0)) < 1e-14);
    CHECK(std::fabs(H21(1, 1) - std::exp(-1.0)) < 1e-14);
    // At r = 0 the overlap is a pure parity pairing.
    mat H0 = build_H(5, 0.0);
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 5; ++m) {
            double want = (n == m) ? ((n % 2 == 0) ? 1.0 : -1.0) : 0.0;
            CHECK(std::fabs(H0(n, m) - want) < 1e-14);
        }
}

TEST_CASE("H is insensitive to raising the quadrature order") {
    for (int N : {2, 8, 16}) {
        for (double r : {0.5, 2.0}) {
            mat a = build_H(N, r);
            mat b = build_H(N, r, 2 * N);
            CHECK(max_abs_diff(a, b) < 1e-12);
        }
    }
}

TEST_CASE("H agrees across quadrature, closed-form and Laguerre routes") {
    for (int N : {1, 8, 16}) {
        for (double r : {0.3, 1.0, 2.5, 4.0}) {
            mat quad = build_H(N, r);
            double scale = std::exp(-r * r);
            mat closed = dd_to_mat(build_H_hat_dd(N, r), scale);
            mat lagu = dd_to_mat(build_H_hat_laguerre_dd(N, r), scale);
            CHECK(max_abs_diff(quad, closed) < 1e-9);
            CHECK(max_abs_diff(quad, lagu) < 1e-9);
            CHECK(max_abs_diff(closed, lagu) < 1e-10);
        }
    }
}

TEST_CASE("Htilde anchors and band structure") {
    for (double r : {0.3, 1.0, 2.0}) {
        mat Ht = build_Htilde(1, r);
        CHECK(std::fabs(Ht(0, 0) - std::exp(-r * r)) < 1e-14);
    }
    mat Ht2 = build_Htilde(2, 1.0);
    CHECK(Ht2(0, 0) == 0.0);
    CHECK(std::fabs(Ht2(0, 1) + std::exp(-1.0)) < 1e-14);
    for (int N : {3, 7}) {
        mat Ht = build_Htilde(N, 0.8);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (i + j < N - 1) CHECK(Ht(i, j) == 0.0);
    }
}

TEST_CASE("S times its closed-form inverse is the identity") {
    for (int N : {2, 8, 16, 24}) {
        for (double r : {0.5, 1.0, 2.0}) {
            s_pair_dd sp = build_S_pair_dd(N, r);
            ddmat P = ddmat_mul(sp.S, sp.S_inv);
            double worst = 0.0;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    double want = (i == j) ? 1.0 : 0.0;
                    worst = std::max(worst, std::fabs(to_double(P(i, j)) - want));
                }
            CHECK(worst < 1e-10);
        }
    }
    // The plain double builders carry the same values entrywise.
    s_pair sd = build_S_pair(6, 1.3);
    s_pair_dd sdd = build_S_pair_dd(6, 1.3);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            CHECK(std::fabs(sd.S(i, j) - to_double(sdd.S(i, j)))
                  < 1e-13 * std::max(1.0, std::fabs(sd.S(i, j))));
            CHECK(std::fabs(sd.S_inv(i, j) - to_double(sdd.S_inv(i, j)))
                  < 1e-13 * std::max(1.0, std::fabs(sd.S_inv(i, j))));
        }
}

TEST_CASE("conjugating the banded form recovers H") {
    for (int N : {4, 10, 16}) {
        for (double r : {0.5, 1.0}) {
            s_pair_dd sp = build_S_pair_dd(N, r);
            ddmat conj = ddmat_mul(sp.S_inv, ddmat_mul(build_Htilde_hat_dd(N, r), sp.S));
            double scale = std::exp(-r * r);
            mat got = dd_to_mat(conj, scale);
            mat want = dd_to_mat(build_H_hat_dd(N, r), scale);
            CHECK(max_abs_diff(got, want) < 1e-10);
        }
    }
}

TEST_CASE("L and the rank-one data") {
    for (double r : {0.4, 1.0, 2.0}) {
        lrr_data d = build_L_R1_R2(1, r);
        CHECK(std::fabs(d.L(0, 0) - std::exp(-2.0 * r * r)) < 1e-14);
    }
    for (int N : {4, 16}) {
        for (double r : {0.5, 1.5}) {
            lrr_data d = build_L_R1_R2(N, r);
            mat Lq = build_L_quadrature(N, r);
            CHECK(max_abs_diff(d.L, Lq) < 1e-8);
        }
    }
    lrr_data at_zero = build_L_R1_R2(4, 0.0);
    for (double v : at_zero.R2) CHECK(v == 0.0);
    // R1 = Htilde u and R2 = (I - Htilde) v.
    for (int N : {3, 8}) {
        double r = 0.9;
        lrr_data d = build_L_R1_R2(N, r);
        mat Ht = build_Htilde(N, r);
        quv_data q = build_Q_u_v(N, r);
        for (int i = 0; i < N; ++i) {
            double hu = 0.0, hv = 0.0;
            for (int j = 0; j < N; ++j) {
                hu += Ht(i, j) * q.u[j];
                hv += Ht(i, j) * q.v[j];
            }
            CHECK(std::fabs(d.R1[i] - hu) < 1e-12);
            CHECK(std::fabs(d.R2[i] - (q.v[i] - hv)) < 1e-12);
        }
    }
}

TEST_CASE("Q matrix and the alternating vectors") {
    quv_data q = build_Q_u_v(2, 1.0);
    CHECK(q.Q(0, 0) == -2.0);
    CHECK(q.Q(0, 1) == 0.0);
    CHECK(q.Q(1, 0) == -4.0);
    CHECK(q.Q(1, 1) == -2.0);
    for (int N : {2, 5}) {
        double r = 1.3;
        quv_data d = build_Q_u_v(N, r);
        double sgn = (N % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < N; ++i) {
            double qv = 0.0;
            for (int j = 0; j < N; ++j) qv += d.Q(i, j) * d.v[j];
            CHECK(std::fabs(qv - sgn * 4.0 * r * d.u[i]) < 1e-13);
        }
    }
}

TEST_CASE("determinant evaluation") {
    mat H21 = build_H(2, 1.0);
    double want = (1.0 - std::exp(-1.0)) * (1.0 - std::exp(-1.0)) - 2.0 * std::exp(-2.0);
    CHECK(std::fabs(det_I_minus(H21) - want) < 1e-14);
    // det(I - I) = 0 must be reported as a pivot collapse, not returned.
    mat eye(3);
    for (int i = 0; i < 3; ++i) eye(i, i) = 1.0;
    CHECK_THROWS_AS(det_I_minus(eye), std::runtime_error);
}

TEST_CASE("determinant identity between the two CDF routes") {
    for (int N = 1; N <= 16; ++N) {
        for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            double d1 = det_I_minus(build_H(N, r));
            lrr_data d = build_L_R1_R2(N, r);
            mat M = d.L;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) M(i, j) += d.R1[i] * d.R2[j];
            double d2 = det_I_minus(M);
            CHECK(std::fabs(d1 * d1 - d2) <= 1e-9 * std::max(1.0, std::fabs(d2)));
        }
    }
}

TEST_CASE("bridge max-height CDF") {
    CHECK(std::fabs(maxheight_cdf(1, 1.0) - (1.0 - std::exp(-2.0))) < 1e-14);
    CHECK(maxheight_cdf(3, 0.0) == 0.0);
    CHECK(maxheight_cdf(3, -2.0) == 0.0);
    for (int N : {1, 4}) CHECK(std::fabs(maxheight_cdf(N, 10.0) - 1.0) < 1e-10);
    for (int N : {1, 2, 6}) {
        double prev = 0.0;
        for (double m = 0.1; m < 4.0; m += 0.13) {
            double v = maxheight_cdf(N, m);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("covariance-ensemble top-eigenvalue CDF") {
    CHECK(std::fabs(loe_cdf(1, 2.0) - (1.0 - std::exp(-1.0))) < 1e-12);
    CHECK(loe_cdf(2, 0.0) == 0.0);
    CHECK(loe_cdf(2, -1.0) == 0.0);
    // Same r means the same probability through either normalization.
    for (int N : {1, 2, 5, 8}) {
        for (double m : {0.5, 1.0, 1.7}) {
            CHECK(std::fabs(loe_cdf(N, 4.0 * m * m) - maxheight_cdf(N, m)) < 1e-9);
        }
    }
}

TEST_CASE("cdf_table clamps and matches the scalar calls") {
    std::vector<double> args = {-1.0, 0.4, 1.0, 2.5, 12.0};
    auto tab = cdf_table(2, cdf_kind::max_height, args);
    REQUIRE(tab.size() == args.size());
    CHECK(tab[0] == 0.0);
    for (size_t i = 1; i + 1 < args.size(); ++i)
        CHECK(std::fabs(tab[i] - maxheight_cdf(2, args[i])) < 1e-15);
    CHECK(tab.back() <= 1.0);
    auto loe_tab = cdf_table(3, cdf_kind::loe, {1.0, 5.0, 30.0});
    for (size_t i = 1; i < loe_tab.size(); ++i) CHECK(loe_tab[i] >= loe_tab[i - 1]);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(build_H(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_H(2, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_Htilde(2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_S_pair(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_S_pair_dd(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(maxheight_cdf(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(loe_cdf(1, std::nan("")), std::invalid_argument);
}

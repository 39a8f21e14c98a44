/*
 * specfun.hpp - orthonormal function families and quadrature rules.
 *
 * Provides the L2-normalized Hermite functions phi_n, the exponentially
 * weighted Laguerre functions psi_n(x) = e^{-x/2} L_n(x) together with
 * their antiderivatives, Gauss-Hermite / Gauss-Legendre rules, and the
 * Airy function Ai on the range needed by the Fredholm solver.
 */
#pragma once

#include <vector>

#include "dd.hpp"

namespace bridgeloe {

struct quadrature_rule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // all positive
};

enum class quad_kind {
    gauss_hermite,   // weight e^{-x^2} on (-inf, inf)
    gauss_legendre,  // weight 1 on (-1, 1)
};

// Nodes and classical weights for an m-point rule, 1 <= m <= 512.
// Throws std::invalid_argument outside that range.
quadrature_rule make_quadrature(quad_kind kind, int m);

// Gauss-Hermite nodes with the weight factor e^{-x^2} divided out
// (w_i e^{x_i^2}).  These stay O(1) for every m and are what integrals of
// products of phi_n actually need; the classical weights underflow near
// the edge nodes once m is large.
quadrature_rule gauss_hermite_modified(int m);

// Row [phi_0(x), ..., phi_{n_max}(x)] of Hermite functions, orthonormal on
// the real line.  The Gaussian factor is attached to the k=0 seed so the
// recurrence never touches the raw (overflowing) Hermite polynomials.
std::vector<double> hermite_phi_row(int n_max, double x);

// Row [psi_0(x), ..., psi_{n_max}(x)], psi_n = e^{-x/2} L_n, orthonormal on
// [0, inf).  Throws std::invalid_argument for x < 0.
std::vector<double> laguerre_psi_row(int n_max, double x);

// Row of antiderivatives Psi_n(s) = int_0^s psi_n(x) dx, computed by the
// two-term recurrence Psi_{n+1} = 2(psi_n - psi_{n+1}) - Psi_n seeded with
// Psi_0(s) = 2(1 - e^{-s/2}).  Throws std::invalid_argument for s < 0.
std::vector<double> laguerre_psi_integral_row(int n_max, double s);

// Airy function Ai(x) for x in [-12, 40]: a compensated Maclaurin series up
// to x = 7 and the exponentially scaled asymptotic expansion beyond.
// Throws std::domain_error outside the supported interval.
double airy_ai(double x);

// Double-double building blocks used by the high-precision verification
// paths.  These carry the *unweighted* polynomial families; exponential
// prefactors are applied separately in plain double precision.

// Normalized Hermite polynomials p_n(x) (phi_n without the Gaussian).
std::vector<dd> hermite_p_row_dd(int n_max, dd x);

// Laguerre polynomials L_n(x) (psi_n without the exponential).
std::vector<dd> laguerre_l_row_dd(int n_max, dd x);

// n! as an exact double-double (exact through n = 30).
dd factorial_dd(int n);

// Binomial coefficient C(n, k), zero when k < 0 or k > n.
dd binomial_dd(int n, int k);

} // namespace bridgeloe

/*
 * specfun.cpp - implementation of the orthonormal families, quadrature
 * rules and the Airy function declared in specfun.hpp.
 */
#include "specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bridgeloe {

namespace {

constexpr double kPi = std::numbers::pi;
// High/low splits of the constants the double-double paths depend on.
constexpr dd kPiDD{3.141592653589793, 1.2246467991473532e-16};
constexpr dd kPiQuarterInvDD{0.7511255444649425, -2.4402481796105666e-17};
// Ai(0) and -Ai'(0).
constexpr dd kAi0{0.3550280538878172, 2.05233632436212e-17};
constexpr dd kAip0{0.2588194037928068, -2.522243111610832e-17};

// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// algorithm (diagonal d, subdiagonal e; eigenvalues overwrite d, unsorted).
void tridiag_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double scale = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * scale)
                    break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("tridiagonal QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void check_rule_size(int m) {
    if (m < 1 || m > 512)
        throw std::invalid_argument("quadrature size must be between 1 and 512");
}

// Gauss-Hermite nodes (roots of the degree-m Hermite polynomial) with the
// Christoffel weights 1/sum_k phi_k(x)^2, i.e. the classical weights times
// e^{x^2}.  Nodes come from the Jacobi matrix, then one round of Newton
// polishing through the stable phi recurrence.
quadrature_rule hermite_nodes_modified(int m) {
    quadrature_rule rule;
    std::vector<double> diag(m, 0.0), off;
    off.reserve(m > 1 ? m - 1 : 0);
    for (int k = 1; k < m; ++k) off.push_back(std::sqrt(k / 2.0));
    tridiag_eigenvalues(diag, off);
    std::sort(diag.begin(), diag.end());

    // Newton polish: x <- x - phi_m(x)/phi_m'(x), phi_m' = sqrt(2m) phi_{m-1} - x phi_m.
    for (int i = 0; i < m; ++i) {
        double x = diag[i];
        for (int it = 0; it < 3; ++it) {
            std::vector<double> row = hermite_phi_row(m, x);
            double deriv = std::sqrt(2.0 * m) * row[m - 1] - x * row[m];
            if (deriv == 0.0) break;
            double step = row[m] / deriv;
            x -= step;
            if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
        }
        diag[i] = x;
    }
    // The rule is symmetric about zero; enforce that exactly.
    for (int i = 0; i < m / 2; ++i) {
        double v = 0.5 * (diag[m - 1 - i] - diag[i]);
        diag[m - 1 - i] = v;
        diag[i] = -v;
    }
    if (m % 2 == 1) diag[m / 2] = 0.0;

    rule.nodes = diag;
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        std::vector<double> row = hermite_phi_row(m - 1, rule.nodes[i]);
        double sumsq = 0.0;
        for (double v : row) sumsq += v * v;
        rule.weights[i] = 1.0 / sumsq;
    }
    return rule;
}

// Gauss-Legendre rule on (-1, 1) by Newton iteration from the Chebyshev
// initial guesses (the classical gauleg construction).
quadrature_rule legendre_rule(int m) {
    quadrature_rule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p0 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[m - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[m - 1 - i] = rule.weights[i];
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    return rule;
}

} // namespace

quadrature_rule make_quadrature(quad_kind kind, int m) {
    check_rule_size(m);
    if (kind == quad_kind::gauss_legendre) return legendre_rule(m);
    quadrature_rule rule = hermite_nodes_modified(m);
    for (int i = 0; i < m; ++i) {
        // The classical weight underflows near the edge nodes for large m;
        // clamp so the "weights positive" contract survives.
        double w = rule.weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
        rule.weights[i] = (w > 0.0) ? w : DBL_TRUE_MIN;
    }
    return rule;
}

quadrature_rule gauss_hermite_modified(int m) {
    check_rule_size(m);
    return hermite_nodes_modified(m);
}

std::vector<double> hermite_phi_row(int n_max, double x) {
    if (n_max < 0) throw std::invalid_argument("hermite_phi_row: n_max must be >= 0");
    if (!std::isfinite(x)) throw std::invalid_argument("hermite_phi_row: x must be finite");
    std::vector<double> row(n_max + 1);
    row[0] = kPiQuarterInvDD.hi * std::exp(-0.5 * x * x);
    if (n_max == 0) return row;
    row[1] = std::sqrt(2.0) * x * row[0];
    for (int k = 1; k < n_max; ++k)
        row[k + 1] = x * std::sqrt(2.0 / (k + 1)) * row[k]
                     - std::sqrt(static_cast<double>(k) / (k + 1)) * row[k - 1];
    return row;
}

std::vector<double> laguerre_psi_row(int n_max, double x) {
    if (n_max < 0) throw std::invalid_argument("laguerre_psi_row: n_max must be >= 0");
    if (!(x >= 0.0)) throw std::invalid_argument("laguerre_psi_row: x must be >= 0");
    std::vector<double> row(n_max + 1);
    row[0] = std::exp(-0.5 * x);
    if (n_max == 0) return row;
    row[1] = (1.0 - x) * row[0];
    for (int n = 1; n < n_max; ++n)
        row[n + 1] = ((2.0 * n + 1.0 - x) * row[n] - n * row[n - 1]) / (n + 1.0);
    return row;
}

std::vector<double> laguerre_psi_integral_row(int n_max, double s) {
    if (n_max < 0) throw std::invalid_argument("laguerre_psi_integral_row: n_max must be >= 0");
    if (!(s >= 0.0)) throw std::invalid_argument("laguerre_psi_integral_row: s must be >= 0");
    std::vector<double> psi = laguerre_psi_row(n_max + 1, s);
    std::vector<double> out(n_max + 1);
    out[0] = 2.0 * (1.0 - std::exp(-0.5 * s));
    for (int n = 0; n < n_max; ++n)
        out[n + 1] = 2.0 * (psi[n] - psi[n + 1]) - out[n];
    return out;
}

namespace {

// Maclaurin series of Ai in double-double.  The two classical entire
// solutions f and g satisfy term ratios x^3/((3k+2)(3k+3)) and
// x^3/((3k+3)(3k+4)); Ai = Ai(0) f - (-Ai'(0)) g.  Individual terms peak
// near 5e11 at x = -12 while the sum stays O(1), which is exactly the
// cancellation double-double absorbs.
double airy_series(double x) {
    dd x3 = dd(x) * dd(x) * dd(x);
    dd f_term(1.0), g_term(x);
    dd f_sum = f_term, g_sum = g_term;
    for (int k = 0; k < 140; ++k) {
        f_term = f_term * x3 / dd_from_int64(static_cast<std::int64_t>(3 * k + 2) * (3 * k + 3));
        g_term = g_term * x3 / dd_from_int64(static_cast<std::int64_t>(3 * k + 3) * (3 * k + 4));
        f_sum += f_term;
        g_sum += g_term;
        if (dd_abs(f_term).hi < 1e-50 && dd_abs(g_term).hi < 1e-50) break;
    }
    return to_double(kAi0 * f_sum - kAip0 * g_sum);
}

// Asymptotic expansion for large positive x, truncated at the smallest
// term.  The exponential factor is applied once at the end in plain
// double precision.
double airy_asymptotic(double x) {
    double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    double term = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 0; k < 60; ++k) {
        term *= -(6.0 * k + 5.0) * (6.0 * k + 1.0) / (72.0 * (k + 1.0) * zeta);
        if (std::fabs(term) >= prev) break;  // smallest term reached: stop before it
        sum += term;
        prev = std::fabs(term);
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(kPi) * std::pow(x, 0.25)) * sum;
}

} // namespace

double airy_ai(double x) {
    if (!(x >= -12.0 && x <= 40.0))
        throw std::domain_error("airy_ai: argument outside [-12, 40]");
    return (x <= 7.0) ? airy_series(x) : airy_asymptotic(x);
}

std::vector<dd> hermite_p_row_dd(int n_max, dd x) {
    if (n_max < 0) throw std::invalid_argument("hermite_p_row_dd: n_max must be >= 0");
    std::vector<dd> row(n_max + 1);
    row[0] = kPiQuarterInvDD;
    if (n_max == 0) return row;
    row[1] = dd_sqrt(dd(2.0)) * x * row[0];
    for (int k = 1; k < n_max; ++k) {
        dd a = dd_sqrt(dd(2.0) / dd_from_int64(k + 1));
        dd b = dd_sqrt(dd_from_int64(k) / dd_from_int64(k + 1));
        row[k + 1] = x * a * row[k] - b * row[k - 1];
    }
    return row;
}

std::vector<dd> laguerre_l_row_dd(int n_max, dd x) {
    if (n_max < 0) throw std::invalid_argument("laguerre_l_row_dd: n_max must be >= 0");
    std::vector<dd> row(n_max + 1);
    row[0] = dd(1.0);
    if (n_max == 0) return row;
    row[1] = dd(1.0) - x;
    for (int n = 1; n < n_max; ++n) {
        dd t = (dd_from_int64(2 * n + 1) - x) * row[n] - dd_from_int64(n) * row[n - 1];
        row[n + 1] = t / dd_from_int64(n + 1);
    }
    return row;
}

dd factorial_dd(int n) {
    if (n < 0) throw std::invalid_argument("factorial_dd: n must be >= 0");
    if (n > 30) throw std::invalid_argument("factorial_dd: exact only through n = 30");
    dd f(1.0);
    for (int k = 2; k <= n; ++k) f *= dd_from_int64(k);
    return f;
}

dd binomial_dd(int n, int k) {
    if (k < 0 || k > n) return dd(0.0);
    if (k > n - k) k = n - k;
    dd num(1.0);
    for (int i = 1; i <= k; ++i) num *= dd_from_int64(n - k + i);
    return num / factorial_dd(k);
}

} // namespace bridgeloe

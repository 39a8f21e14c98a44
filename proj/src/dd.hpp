/*
 * dd.hpp - compensated double-double arithmetic (~31 significant digits).
 *
 * Used by the verification suite for the few places where plain doubles
 * lose too many digits to catastrophic cancellation: alternating binomial
 * sums, similarity transforms with huge condition numbers, and the Taylor
 * series of Ai(x) at strongly negative arguments.  Only the ring/field
 * operations plus sqrt are provided; transcendental factors are always
 * factored out and applied in ordinary double precision.
 *
 * Algorithms are the classical error-free transformations (Dekker, Knuth)
 * as popularized by the QD library of Hida, Li and Bailey.
 */
#pragma once

#include <cmath>
#include <cstdint>

namespace bridgeloe {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

// |a| >= |b| assumed.
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }

inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    // Three Newton-like correction terms give a full double-double quotient.
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline dd dd_from_int64(std::int64_t n) {
    // Split into two 32-bit halves; each converts to double exactly.
    double hi = static_cast<double>(n >> 32) * 4294967296.0;
    double lo = static_cast<double>(n & 0xffffffffLL);
    return detail::two_sum(hi, lo);
}

inline double to_double(dd a) { return a.hi + a.lo; }

inline dd dd_abs(dd a) { return a.hi < 0.0 ? -a : a; }

inline bool operator<(dd a, dd b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(dd a, dd b) { return b < a; }

inline dd dd_sqrt(dd a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {};
    // One Newton step on top of the double sqrt doubles the precision.
    double y = std::sqrt(a.hi);
    dd err = a - dd(y) * dd(y);
    return dd(y) + dd(err.hi / (2.0 * y));
}

} // namespace bridgeloe

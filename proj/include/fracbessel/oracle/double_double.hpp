#pragma once

#include <cmath>
#include <stdexcept>

// Double-double arithmetic for the reference oracles. Deliberately
// self-contained: nothing here is shared with the main evaluation path.
namespace fracbessel::oracle {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline DD quick_two_sum(double a, double b)
{
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b)
{
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace dd_detail

inline DD operator+(DD a, DD b)
{
    DD s = dd_detail::two_sum(a.hi, b.hi);
    DD t = dd_detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = dd_detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b)
{
    DD p = dd_detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b)
{
    double q1 = a.hi / b.hi;
    DD r = a - b * DD(q1);
    double q2 = r.hi / b.hi;
    r = r - b * DD(q2);
    double q3 = r.hi / b.hi;
    return DD(q1) + DD(q2) + DD(q3);
}

inline DD& operator+=(DD& a, DD b) { return a = a + b; }
inline DD& operator-=(DD& a, DD b) { return a = a - b; }
inline DD& operator*=(DD& a, DD b) { return a = a * b; }
inline DD& operator/=(DD& a, DD b) { return a = a / b; }

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }

inline DD abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline DD ldexp(DD a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline DD sqrt(DD a)
{
    if (a.hi <= 0.0)
        return DD(0.0);
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    DD diff = a - dd_detail::two_prod(ax, ax);
    return DD(ax) + DD(diff.hi * x * 0.5);
}

inline const DD kDDPi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline const DD kDDLn2{6.931471805599452862e-01, 2.319046813846299558e-17};

inline DD exp(DD a)
{
    if (a.hi > 709.0)
        throw std::overflow_error("oracle exp overflow");
    if (a.hi < -745.0)
        return DD(0.0);
    const double k = std::round(a.hi / kDDLn2.hi);
    DD r = a - kDDLn2 * DD(k);
    r = ldexp(r, -10);
    // Taylor series of exp(r) - 1 for |r| < 2^-10 ln2
    DD term = r, sum = r;
    for (int n = 2; n < 20; ++n) {
        term = term * r / DD(static_cast<double>(n));
        sum += term;
        if (std::fabs(term.hi) < 1e-36)
            break;
    }
    // (1 + s)^2 - 1 = s (2 + s), applied ten times
    for (int i = 0; i < 10; ++i)
        sum = sum * (DD(2.0) + sum);
    return ldexp(sum + DD(1.0), static_cast<int>(k));
}

inline DD log(DD a)
{
    if (!(a.hi > 0.0))
        throw std::domain_error("oracle log of a non-positive number");
    DD y(std::log(a.hi));
    for (int i = 0; i < 2; ++i)
        y = y + a * exp(-y) - DD(1.0);
    return y;
}

inline DD pow(DD base, int n)
{
    DD r(1.0), b = base;
    bool inv = n < 0;
    unsigned m = static_cast<unsigned>(inv ? -n : n);
    while (m) {
        if (m & 1u)
            r *= b;
        b *= b;
        m >>= 1u;
    }
    return inv ? DD(1.0) / r : r;
}

// base^e for base > 0.
inline DD pow(DD base, DD e) { return exp(e * log(base)); }

// sin(pi r) for |r| <= 1/2 by Taylor series.
inline DD sin_pi_reduced(DD r)
{
    DD x = kDDPi * r, x2 = x * x, term = x, sum = x;
    for (int n = 1; n < 40; ++n) {
        term = -term * x2 / DD(static_cast<double>((2 * n) * (2 * n + 1)));
        sum += term;
        if (std::fabs(term.hi) < 1e-36)
            break;
    }
    return sum;
}

inline DD sin_pi(DD x)
{
    double n = std::round(x.hi);
    DD r = x - DD(n);
    if (r.hi > 0.5) {
        r -= DD(1.0);
        n += 1.0;
    } else if (r.hi < -0.5) {
        r += DD(1.0);
        n -= 1.0;
    }
    DD s = sin_pi_reduced(r);
    return std::fmod(std::fabs(n), 2.0) == 1.0 ? -s : s;
}

// log Gamma(x) for x > 0: upward shift to x >= 30, then Stirling with
// twelve Bernoulli terms (remainder below 1e-32).
inline DD lgamma_positive(DD x)
{
    if (!(x.hi > 0.0))
        throw std::domain_error("oracle lgamma_positive needs x > 0");
    DD shift(1.0);
    DD y = x;
    while (y.hi < 30.0) {
        shift *= y;
        y += DD(1.0);
    }
    static const double num[12] = {1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611, 854513, -236364091};
    static const double den[12] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730};
    const DD half_log_2pi = log(DD(2.0) * kDDPi) * DD(0.5);
    DD s = (y - DD(0.5)) * log(y) - y + half_log_2pi;
    DD inv = DD(1.0) / y, inv2 = inv * inv, p = inv;
    for (int k = 1; k <= 12; ++k) {
        s += DD(num[k - 1]) / (DD(den[k - 1]) * DD(2.0 * k * (2 * k - 1))) * p;
        p *= inv2;
    }
    return s - log(shift);
}

// Gamma(x) with reflection for negative non-integer x.
inline DD gamma(DD x)
{
    if (x.hi > 0.0)
        return exp(lgamma_positive(x));
    if (x.lo == 0.0 && x.hi == std::floor(x.hi))
        throw std::domain_error("oracle gamma pole");
    DD one_minus = DD(1.0) - x;
    return kDDPi / (sin_pi(x) * exp(lgamma_positive(one_minus)));
}

// 1/Gamma(x), zero at the poles.
inline DD rgamma(DD x)
{
    if (x.hi <= 0.0 && x.lo == 0.0 && x.hi == std::floor(x.hi))
        return DD(0.0);
    return DD(1.0) / gamma(x);
}

} // namespace fracbessel::oracle

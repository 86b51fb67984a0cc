#pragma once

#include <cmath>

// Error-free transformations used by the hot series loops. The pair
// (hi, lo) carries roughly twice the working precision; it is deliberately
// minimal and unrelated to the oracle's double-double type.

namespace fracbessel::detail {

inline void two_sum(double a, double b, double& s, double& e)
{
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void two_prod(double a, double b, double& p, double& e)
{
    p = a * b;
    e = std::fma(a, b, -p);
}

struct Compensated {
    double hi = 0.0;
    double lo = 0.0;

    Compensated() = default;
    Compensated(double h) : hi(h), lo(0.0) {}
    Compensated(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline Compensated normalize(double h, double l)
{
    double s, e;
    two_sum(h, l, s, e);
    return {s, e};
}

inline Compensated operator+(Compensated a, Compensated b)
{
    double s, e;
    two_sum(a.hi, b.hi, s, e);
    e += a.lo + b.lo;
    return normalize(s, e);
}

inline Compensated operator-(Compensated a) { return {-a.hi, -a.lo}; }
inline Compensated operator-(Compensated a, Compensated b) { return a + (-b); }

inline Compensated operator*(Compensated a, Compensated b)
{
    double p, e;
    two_prod(a.hi, b.hi, p, e);
    e += a.hi * b.lo + a.lo * b.hi;
    return normalize(p, e);
}

inline Compensated operator/(Compensated a, Compensated b)
{
    double q = a.hi / b.hi;
    Compensated r = a - Compensated(q) * b;
    double q2 = r.hi / b.hi;
    return normalize(q, q2);
}

// Neumaier summation; also tracks the sum of magnitudes, which callers use
// to bound rounding error under cancellation.
class NeumaierSum {
public:
    void add(double x)
    {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_ += std::fabs(x);
    }

    void add(Compensated x)
    {
        add(x.hi);
        comp_ += x.lo;
    }

    double value() const { return sum_ + comp_; }
    double abs_sum() const { return abs_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

} // namespace fracbessel::detail

#pragma once

#include <cmath>
#include <string>

#include "fracbessel/core.hpp"
#include "fracbessel/detail/compensated.hpp"
#include "fracbessel/specfun/gamma.hpp"

namespace fracbessel::specfun {

struct BesselOrder {
    double nu = 0.0;

    constexpr BesselOrder() = default;
    constexpr explicit BesselOrder(double v) : nu(v) {}
};

namespace detail_bessel {

inline constexpr double kTol = 1e-15;
inline constexpr int kMaxTerms = 10000;

// (x/2)^nu sum (x^2/4)^k / (k! Gamma(k+nu+1)); nu must not be a negative
// integer (callers fold those onto |nu|).
inline EvalResult i_series(double nu, double x)
{
    double q = 0.25 * x * x;
    double t = std::pow(0.5 * x, nu) * rgamma(nu + 1.0);
    fracbessel::detail::NeumaierSum s;
    s.add(t);
    int small = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
        t *= q / ((k + 1.0) * (k + 1.0 + nu));
        s.add(t);
        if (std::fabs(t) < kTol * std::fabs(s.value()) && k + 1.0 + nu > 0.0) {
            if (++small == 3)
                return {s.value(), 10.0 * std::fabs(t) + 4.0 * kEps * s.abs_sum()};
        } else {
            small = 0;
        }
    }
    throw ConvergenceError("bessel_i: series did not converge");
}

// Abramowitz & Stegun 9.6.11, integer order n >= 0, moderate x.
inline EvalResult k_integer_series(int n, double x)
{
    double h = 0.5 * x, q = h * h;
    fracbessel::detail::NeumaierSum s;

    if (n > 0) {
        // 0.5 (x/2)^{-n} sum_{k<n} (n-k-1)!/k! (-q)^k
        double t = 0.5 * std::pow(h, -n) * std::tgamma(static_cast<double>(n));
        s.add(t);
        for (int k = 0; k + 1 < n; ++k) {
            t *= -q / ((k + 1.0) * (n - k - 1.0));
            s.add(t);
        }
    }

    EvalResult in = i_series(n, x);
    double lg = std::log(h);
    s.add((n % 2 == 0 ? -1.0 : 1.0) * lg * in.value);

    double psi1 = -kEulerGamma, psi2 = -kEulerGamma;
    for (int j = 1; j <= n; ++j)
        psi2 += 1.0 / j;
    double d = 0.5 * std::pow(h, n) / std::tgamma(n + 1.0);
    if (n % 2 == 1)
        d = -d;
    double last = 0.0;
    int small = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
        double term = d * (psi1 + psi2);
        s.add(term);
        last = term;
        if (std::fabs(term) < kTol * std::fabs(s.value())) {
            if (++small == 3)
                break;
        } else {
            small = 0;
        }
        d *= q / ((k + 1.0) * (n + k + 1.0));
        psi1 += 1.0 / (k + 1.0);
        psi2 += 1.0 / (n + k + 1.0);
    }
    double err = 10.0 * std::fabs(last) + std::fabs(lg) * in.abs_error + 4.0 * kEps * s.abs_sum();
    return {s.value(), err};
}

// K_nu(x) e^x = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt by the
// trapezoidal rule, which converges geometrically for this integrand.
inline EvalResult k_scaled_trapezoid(double nu, double x)
{
    auto g = [nu, x](double t) {
        double sh = std::sinh(0.5 * t);
        double base = -2.0 * x * sh * sh;
        return 0.5 * (std::exp(base + nu * t) + std::exp(base - nu * t));
    };
    double peak = std::asinh(nu / x);
    auto tail_sum = [&](double h, double offset) {
        // sum of g(offset + j h), j >= 0, until past the peak and negligible
        double s = 0.0;
        for (int j = 0;; ++j) {
            double t = offset + j * h;
            double v = g(t);
            s += v;
            if (t > peak && v < 1e-18 * s)
                break;
            if (j > 200000)
                throw ConvergenceError("bessel_k: trapezoid did not terminate");
        }
        return s;
    };
    double h = 0.5;
    double sum = 0.5 * g(0.0) + tail_sum(h, h);
    double prev = h * sum;
    for (int level = 0; level < 12; ++level) {
        sum += tail_sum(h, 0.5 * h);
        h *= 0.5;
        double cur = h * sum;
        double diff = std::fabs(cur - prev);
        if (level >= 1 && diff <= 1e-15 * cur)
            return {cur, diff + 4.0 * kEps * cur};
        prev = cur;
    }
    throw ConvergenceError("bessel_k: trapezoid refinement stalled");
}

} // namespace detail_bessel

inline EvalResult bessel_i(BesselOrder order, double x)
{
    if (x < 0.0)
        throw DomainError("bessel_i: x < 0");
    double nu = order.nu;
    if (nu < 0.0 && nu == std::floor(nu))
        nu = -nu;
    if (x == 0.0) {
        if (nu == 0.0)
            return {1.0, 0.0};
        if (nu > 0.0)
            return {0.0, 0.0};
        throw DomainError("bessel_i: unbounded at x = 0 for negative order");
    }
    return detail_bessel::i_series(nu, x);
}

inline EvalResult bessel_k(BesselOrder order, double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_k: x must be positive, got " + std::to_string(x));
    double nu = std::fabs(order.nu);
    double frac = std::fabs(nu - std::round(nu));
    if (x <= 2.0 && frac <= 1e-13)
        return detail_bessel::k_integer_series(static_cast<int>(std::round(nu)), x);
    if (x <= 2.0 && frac >= 0.05) {
        EvalResult ineg = detail_bessel::i_series(-nu, x);
        EvalResult ipos = detail_bessel::i_series(nu, x);
        double f = 0.5 * kPi / std::sin(nu * kPi);
        double v = f * (ineg.value - ipos.value);
        double err = std::fabs(f) * (ineg.abs_error + ipos.abs_error) + 4.0 * kEps * std::fabs(v);
        return {v, err};
    }
    EvalResult s = detail_bessel::k_scaled_trapezoid(nu, x);
    double e = std::exp(-x);
    return {s.value * e, s.abs_error * e};
}

// k_nu(x) = x^{-nu} K_nu(x) / (2^nu Gamma(nu+1)), so that k_{-1/2} = e^{-x}
// and x^{2nu} k_nu(x) -> 1/(2nu) at the origin.
inline EvalResult normalized_k(BesselOrder order, double x)
{
    double nu = order.nu;
    if (is_nonpositive_integer(nu + 1.0))
        throw DomainError("normalized_k: nu + 1 = " + std::to_string(nu + 1.0) + " is a pole of Gamma");
    EvalResult k = bessel_k(order, x);
    double f = std::pow(x, -nu) * std::pow(2.0, -nu) * rgamma(nu + 1.0);
    double v = k.value * f;
    if (!std::isfinite(v) || (v == 0.0 && k.value != 0.0)) {
        SignedLog lg = log_gamma(nu + 1.0);
        double l = std::log(k.value) - nu * std::log(2.0 * x) - lg.log_abs;
        v = lg.sign * std::exp(l);
        f = v / k.value;
    }
    return {v, std::fabs(f) * k.abs_error + 2.0 * kEps * std::fabs(v)};
}

// d/dx k_nu(x) = -x^{-nu} K_{nu+1}(x) / (2^nu Gamma(nu+1)).
inline EvalResult normalized_k_derivative(BesselOrder order, double x)
{
    double nu = order.nu;
    if (is_nonpositive_integer(nu + 1.0))
        throw DomainError("normalized_k_derivative: nu + 1 is a pole of Gamma");
    EvalResult k = bessel_k(BesselOrder(nu + 1.0), x);
    double f = -std::pow(x, -nu) * std::pow(2.0, -nu) * rgamma(nu + 1.0);
    return {k.value * f, std::fabs(f) * k.abs_error};
}

// j_nu(x) = Gamma(nu+1) (2/x)^nu J_nu(x), even in x, j_nu(0) = 1.
inline EvalResult normalized_j(BesselOrder order, double x)
{
    double nu = order.nu;
    if (!(nu > -1.0))
        throw DomainError("normalized_j: order must exceed -1");
    x = std::fabs(x);
    if (x <= 25.0) {
        using fracbessel::detail::Compensated;
        Compensated q;
        {
            double p, e;
            fracbessel::detail::two_prod(x, x, p, e);
            q = Compensated(-0.25 * p, -0.25 * e);
        }
        Compensated t(1.0);
        fracbessel::detail::NeumaierSum s;
        s.add(t);
        int small = 0;
        for (int m = 0; m < detail_bessel::kMaxTerms; ++m) {
            double hi, lo;
            fracbessel::detail::two_sum(m + 1.0, nu, hi, lo);
            Compensated den = Compensated(m + 1.0) * Compensated(hi, lo);
            t = t * q / den;
            s.add(t);
            if (t.hi == 0.0)
                break;
            if (std::fabs(t.hi) < 1e-17 * std::max(std::fabs(s.value()), 1e-3)) {
                if (++small == 3)
                    break;
            } else {
                small = 0;
            }
        }
        double v = s.value();
        return {v, 2.0 * kEps * std::fabs(v) + 1e-30 * s.abs_sum()};
    }
    double jv;
    if (nu >= 0.0) {
        jv = std::cyl_bessel_j(nu, x);
    } else {
        double mu = -nu;
        jv = std::cos(mu * kPi) * std::cyl_bessel_j(mu, x) - std::sin(mu * kPi) * std::cyl_neumann(mu, x);
    }
    double f = gamma(nu + 1.0).value * std::pow(2.0 / x, nu);
    double v = f * jv;
    return {v, 1e-15 * std::fabs(f) + 4.0 * kEps * std::fabs(v)};
}

} // namespace fracbessel::specfun

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fracbessel/core.hpp"
#include "fracbessel/quadrature.hpp"
#include "fracbessel/series_function.hpp"
#include "fracbessel/specfun.hpp"
#include "fracbessel/transforms.hpp"

namespace fracbessel {

struct FracOperatorSpec {
    double gamma_param = 0.0;
    double alpha = 0.0;
    int n_derivatives = 0;

    // n = [alpha] + 1 for non-integer alpha, n = alpha for integer alpha.
    static FracOperatorSpec make(double gamma_param, double alpha)
    {
        if (!(gamma_param >= 0.0))
            throw DomainError("FracOperatorSpec: gamma must be >= 0");
        if (!(alpha > 0.0))
            throw DomainError("FracOperatorSpec: alpha must be positive");
        FracOperatorSpec s{gamma_param, alpha, 0};
        s.n_derivatives = is_integer_order(alpha) ? static_cast<int>(std::round(alpha))
                                                  : static_cast<int>(std::floor(alpha)) + 1;
        return s;
    }

    static bool is_integer_order(double a) { return near_integer(a, 1e-12); }
};

namespace ops {

// Lowest origin exponent p for which int_0 t^{min(g,1)} t^p dt still converges,
// i.e. the admissible growth of an argument of the fractional Bessel integral.
inline double admissible_exponent_bound(double g) { return -1.0 - std::min(g, 1.0); }

// B_g^n applied term-wise: x^e -> e (e - 1 + g) x^{e-2}. The kernel of B_g
// (constants and x^{1-g}) is dropped exactly.
inline SeriesFunction bessel_apply(const SeriesFunction& f, double g, int n)
{
    if (!(g >= 0.0))
        throw DomainError("bessel_apply: gamma must be >= 0");
    if (n < 1)
        throw DomainError("bessel_apply: n must be >= 1");
    std::vector<PowerTerm> cur = f.terms();
    for (int step = 0; step < n; ++step) {
        std::vector<PowerTerm> next;
        for (const auto& t : cur) {
            const double e = t.exponent, s = e - 1.0 + g;
            const double scale = std::max(1.0, std::fabs(e));
            if (std::fabs(e) <= 1e-12 * scale || std::fabs(s) <= 1e-12 * scale)
                continue;
            const double e2 = e - 2.0;
            if (!(e2 > admissible_exponent_bound(g)))
                throw DomainError("bessel_apply: x^" + std::to_string(e) + " maps to the non-integrable power x^"
                                  + std::to_string(e2));
            next.push_back({t.coefficient * e * s, e2});
        }
        cur = std::move(next);
    }
    return SeriesFunction(std::move(cur), 0.0, f.tail_radius());
}

// B^{-alpha}[x^s] = multiplier * x^{s + 2 alpha}.
inline double frac_integral_multiplier(double g, double alpha, double s)
{
    return std::pow(2.0, -2.0 * alpha) * specfun::gamma_ratio(0.5 * s + 1.0, 0.5 * s + alpha + 1.0)
           * specfun::gamma_ratio(0.5 * (s + g + 1.0), 0.5 * (s + g + 1.0) + alpha);
}

// Left-sided fractional Bessel integral. With t = y/x it reads
//   x^{2a} / (2^{2a-1} Gamma(2a)) int_0^1 t^g (1-t^2)^{2a-1} F(1-t^2) f(xt) dt,
// F = 2F1(a + (g-1)/2, a; 2a; .). On [1/2, 1] the substitution t = cos(phi)
// absorbs the (1-t^2)^{2a-1} endpoint and keeps F's argument below 3/4; on
// (0, 1/2] F is evaluated through its complementary argument t^2.
inline EvalResult frac_bessel_integral(const WeightedFunction& f, double g, double alpha, double x,
                                       const QuadratureConfig& cfg)
{
    if (!(g >= 0.0))
        throw DomainError("frac_bessel_integral: gamma must be >= 0");
    if (!(alpha > 0.0))
        throw DomainError("frac_bessel_integral: alpha must be positive");
    if (!(x > 0.0))
        throw DomainError("frac_bessel_integral: x must be positive");
    const double p_origin = std::min(g, 1.0) + f.origin_exponent();
    if (!(p_origin > -1.0))
        throw DomainError("frac_bessel_integral: integrand is not integrable at the origin");

    const specfun::Gauss2F1 F(alpha + 0.5 * (g - 1.0), alpha, 2.0 * alpha);
    auto right = [&](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        return std::pow(s, 4.0 * alpha - 1.0) * std::pow(c, g) * F(s * s).value * f(x * c);
    };
    auto left = [&](double t) {
        return std::pow(t, g) * std::pow(1.0 - t * t, 2.0 * alpha - 1.0) * F.complement(t * t).value * f(x * t);
    };
    EvalResult a = quadrature::integrate_from_origin(right, kPi / 3.0, 4.0 * alpha - 1.0, cfg);
    EvalResult b = quadrature::integrate_from_origin(left, 0.5, p_origin, cfg);
    const double pref = std::pow(x, 2.0 * alpha) * std::pow(2.0, 1.0 - 2.0 * alpha) * specfun::rgamma(2.0 * alpha);
    return {pref * (a.value + b.value), std::fabs(pref) * (a.abs_error + b.abs_error)};
}

namespace detail {

inline EvalResult i2_positive(double eta, double alpha, const WeightedFunction& f, double x, const QuadratureConfig& cfg)
{
    // (2/Gamma(a)) int_0^1 (1-t^2)^{a-1} t^{2 eta + 1} f(xt) dt
    const double p_origin = 2.0 * eta + 1.0 + f.origin_exponent();
    if (!(p_origin > -1.0))
        throw DomainError("i2_operator: integrand is not integrable at the origin");
    auto right = [&](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        return std::pow(s, 2.0 * alpha - 1.0) * std::pow(c, 2.0 * eta + 1.0) * f(x * c);
    };
    auto left = [&](double t) { return std::pow(1.0 - t * t, alpha - 1.0) * std::pow(t, 2.0 * eta + 1.0) * f(x * t); };
    EvalResult a = quadrature::integrate_from_origin(right, kPi / 3.0, 2.0 * alpha - 1.0, cfg);
    EvalResult b = quadrature::integrate_from_origin(left, 0.5, p_origin, cfg);
    const double pref = 2.0 * specfun::rgamma(alpha);
    return {pref * (a.value + b.value), std::fabs(pref) * (a.abs_error + b.abs_error)};
}

} // namespace detail

// I_2^{eta,a} f(x) = (2/Gamma(a)) x^{-2 eta - 2a} int_0^x (x^2-u^2)^{a-1} u^{2 eta + 1} f(u) du.
// For a in (-1, 0] one continuation step is taken,
//   I^{eta,a} f = (eta + a + 1) I^{eta,a+1} f + 1/2 I^{eta,a+1} [x f'],
// which needs f.derivative.
inline EvalResult i2_operator(double eta, double alpha, const WeightedFunction& f, double x, const QuadratureConfig& cfg)
{
    if (!(x > 0.0))
        throw DomainError("i2_operator: x must be positive");
    if (alpha > 0.0)
        return detail::i2_positive(eta, alpha, f, x, cfg);
    if (!(alpha > -1.0))
        throw DomainError("i2_operator: continuation is implemented for alpha > -1 only");
    if (!f.derivative)
        throw DomainError("i2_operator: continuation to alpha <= 0 needs the derivative of f");
    const auto& df = f.derivative;
    WeightedFunction xdf = WeightedFunction::power_singular([df](double u) { return u * df(u); }, f.origin_exponent());
    EvalResult a = detail::i2_positive(eta, alpha + 1.0, f, x, cfg);
    EvalResult b = detail::i2_positive(eta, alpha + 1.0, xdf, x, cfg);
    const double ca = eta + alpha + 1.0;
    return {ca * a.value + 0.5 * b.value, std::fabs(ca) * a.abs_error + 0.5 * b.abs_error};
}

// (x/2)^{2a} I_2^{(g-1)/2, a} I_2^{0, a} f: nested quadrature route.
inline EvalResult frac_bessel_integral_factorized(const WeightedFunction& f, double g, double alpha, double x,
                                                  const QuadratureConfig& cfg)
{
    if (!(g >= 0.0))
        throw DomainError("frac_bessel_integral_factorized: gamma must be >= 0");
    if (!(alpha > 0.0))
        throw DomainError("frac_bessel_integral_factorized: alpha must be positive");
    if (!(x > 0.0))
        throw DomainError("frac_bessel_integral_factorized: x must be positive");
    const QuadratureConfig inner_cfg = cfg.tightened(0.1);
    WeightedFunction inner = WeightedFunction::power_singular(
        [&](double u) { return detail::i2_positive(0.0, alpha, f, u, inner_cfg).value; }, f.origin_exponent());
    EvalResult r = detail::i2_positive(0.5 * (g - 1.0), alpha, inner, x, cfg);
    const double pref = std::pow(0.5 * x, 2.0 * alpha);
    return {pref * r.value, pref * r.abs_error};
}

// Gerasimov-Caputo-type fractional Bessel derivative IB^{n-a} B^n f. The
// integer powers act exactly on the series; the fractional integral of
// order n - a runs by quadrature. Integer orders reduce to B^n f.
inline EvalResult frac_bessel_derivative_gc(const SeriesFunction& f, double g, double alpha, double x,
                                            const QuadratureConfig& cfg)
{
    const FracOperatorSpec spec = FracOperatorSpec::make(g, alpha);
    if (!(x > 0.0))
        throw DomainError("frac_bessel_derivative_gc: x must be positive");
    SeriesFunction bn = bessel_apply(f, g, spec.n_derivatives);
    if (FracOperatorSpec::is_integer_order(alpha))
        return bn.evaluate(x);
    if (bn.empty())
        return {0.0, 0.0};
    const double order = spec.n_derivatives - alpha;
    WeightedFunction w = WeightedFunction::power_singular([&bn](double y) { return bn(y); }, std::min(0.0, bn.min_exponent()));
    return frac_bessel_integral(w, g, order, x, cfg);
}

// Classical Gerasimov-Caputo derivative
// (1/Gamma(n-a)) int_0^x f^{(n)}(t) (x-t)^{n-a-1} dt, n = [a] + 1.
inline EvalResult gerasimov_caputo(const SeriesFunction& f, double order, double x, const QuadratureConfig& cfg)
{
    if (!(order > 0.0) || FracOperatorSpec::is_integer_order(order))
        throw DomainError("gerasimov_caputo: order must be positive and non-integer");
    if (!(x > 0.0))
        throw DomainError("gerasimov_caputo: x must be positive");
    const int n = static_cast<int>(std::floor(order)) + 1;
    SeriesFunction d = f;
    for (int i = 0; i < n; ++i)
        d = d.derivative();
    if (d.empty())
        return {0.0, 0.0};
    const double p = std::min(0.0, d.min_exponent());
    if (!(p > -1.0))
        throw DomainError("gerasimov_caputo: f^{(n)} is not integrable at the origin");
    const double q = n - order - 1.0;
    auto near_origin = [&](double t) { return d(t) * std::pow(x - t, q); };
    auto near_x = [&](double s) { return d(x - s) * std::pow(s, q); };
    EvalResult a = quadrature::integrate_from_origin(near_origin, 0.5 * x, p, cfg);
    EvalResult b = quadrature::integrate_from_origin(near_x, 0.5 * x, q, cfg);
    const double pref = specfun::rgamma(n - order);
    return {pref * (a.value + b.value), std::fabs(pref) * (a.abs_error + b.abs_error)};
}

} // namespace ops
} // namespace fracbessel

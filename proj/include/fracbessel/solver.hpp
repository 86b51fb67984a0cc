#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracbessel/bessel_operators.hpp"
#include "fracbessel/core.hpp"
#include "fracbessel/quadrature.hpp"
#include "fracbessel/series_function.hpp"
#include "fracbessel/specfun.hpp"
#include "fracbessel/transforms.hpp"

namespace fracbessel {
namespace solver {

enum class ConditionKind {
    value_at_origin,     // B^k f(0+) = datum, index 2k
    weighted_derivative, // lim x^w d/dx B^k f = datum, index 2k+1; w = gamma below 1, w = 1 above
};

struct Condition {
    int index = 0;
    ConditionKind kind = ConditionKind::value_at_origin;
    double datum = 0.0;
};

// Number of conditions m for (m-1)/2 < alpha <= m/2. The tie alpha = m/2
// keeps the smaller m.
inline int condition_count(double alpha)
{
    if (!(alpha > 0.0))
        throw DomainError("condition_count: alpha must be positive");
    return static_cast<int>(std::ceil(2.0 * alpha - 1e-12));
}

inline ConditionKind kind_for_index(int index)
{
    return index % 2 == 0 ? ConditionKind::value_at_origin : ConditionKind::weighted_derivative;
}

struct ProblemSpec {
    double gamma_param = 0.0;
    double alpha = 0.5;
    double lambda = 1.0;
    std::vector<Condition> conditions;

    int m() const { return condition_count(alpha); }

    // Data listed by index 0..m-1, kinds following the parity rule.
    static ProblemSpec from_data(double g, double a, double lam, const std::vector<double>& data)
    {
        ProblemSpec s{g, a, lam, {}};
        for (std::size_t i = 0; i < data.size(); ++i)
            s.conditions.push_back({static_cast<int>(i), kind_for_index(static_cast<int>(i)), data[i]});
        return s;
    }

    // Datum at an index, zero when the condition is absent.
    double datum(int index) const
    {
        for (const auto& c : conditions)
            if (c.index == index)
                return c.datum;
        return 0.0;
    }

    void validate() const
    {
        if (!(gamma_param >= 0.0) || !std::isfinite(gamma_param))
            throw ConfigError("ProblemSpec: gamma must be finite and >= 0");
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw ConfigError("ProblemSpec: alpha must be finite and positive");
        if (!std::isfinite(lambda))
            throw ConfigError("ProblemSpec: lambda must be finite");
        const int mm = m();
        if (static_cast<int>(conditions.size()) != mm)
            throw ConfigError("ProblemSpec: alpha = " + std::to_string(alpha) + " needs exactly " + std::to_string(mm)
                              + " conditions, got " + std::to_string(conditions.size()));
        std::vector<bool> seen(mm, false);
        for (const auto& c : conditions) {
            if (c.index < 0 || c.index >= mm)
                throw ConfigError("ProblemSpec: condition index " + std::to_string(c.index) + " outside 0.."
                                  + std::to_string(mm - 1));
            if (seen[c.index])
                throw ConfigError("ProblemSpec: duplicate condition index " + std::to_string(c.index));
            seen[c.index] = true;
            if (c.kind != kind_for_index(c.index))
                throw ConfigError("ProblemSpec: condition " + std::to_string(c.index)
                                  + (c.index % 2 == 0 ? " must be a value at the origin"
                                                      : " must be a weighted derivative"));
            if (!std::isfinite(c.datum))
                throw ConfigError("ProblemSpec: non-finite datum");
        }
    }
};

struct SolutionExpansion {
    double gamma_param = 0.0;
    double alpha = 0.0;
    double lambda = 0.0;
    std::vector<transforms::FoxWrightTerm> terms;

    bool operator==(const SolutionExpansion& o) const { return terms == o.terms; }
};

// Closed-form solution of B^alpha f = lambda f. Each nonzero datum
// contributes one Fox-Wright term; zero data contribute nothing, so the
// zero-odd-data formulas coincide with the general ones term for term.
inline SolutionExpansion solve(const ProblemSpec& spec)
{
    spec.validate();
    const double g = spec.gamma_param, a = spec.alpha, lam = spec.lambda;
    SolutionExpansion sol{g, a, lam, {}};
    std::vector<Condition> conds = spec.conditions;
    std::sort(conds.begin(), conds.end(), [](const Condition& x, const Condition& y) { return x.index < y.index; });
    for (const auto& c : conds) {
        if (c.datum == 0.0)
            continue;
        const int k = c.index / 2;
        // Parameter blocks are written out directly so that integer shifts
        // and exponents stay exact.
        auto value_image = [&] {
            transforms::FoxWrightTerm t = transforms::inverse_meijer_term(2.0 * k + 1.0 + g, a, lam, g);
            t.x_exponent = 2.0 * k;
            t.fw = specfun::FoxWrightParams({{k + 1.0 + 0.5 * g, a}, {1.0, 1.0}}, {{k + 1.0, a}, {2.0 * k + g + 1.0, 2.0 * a}});
            return t;
        };
        transforms::FoxWrightTerm t;
        if (c.kind == ConditionKind::value_at_origin) {
            t = value_image();
            t.prefactor *= c.datum;
        } else if (g < 1.0) {
            t = transforms::inverse_meijer_term(2.0 * k + 2.0, a, lam, g);
            t.x_exponent = 2.0 * k + 1.0 - g;
            t.fw = specfun::FoxWrightParams({{k + 1.5, a}, {1.0, 1.0}}, {{k + 0.5 * (3.0 - g), a}, {2.0 * k + 2.0, 2.0 * a}});
            t.prefactor *= c.datum * specfun::gamma(0.5 * (1.0 - g)).value
                           / (std::pow(2.0, g) * specfun::gamma(0.5 * (g + 1.0)).value);
        } else if (g > 1.0) {
            // Weighted-derivative data enter through the same image as the
            // values, scaled by 1/(g-1).
            t = value_image();
            t.prefactor *= c.datum / (g - 1.0);
        } else {
            throw DomainError("solve: gamma = 1 admits only zero logarithmic derivative data");
        }
        sol.terms.push_back(t);
    }
    return sol;
}

inline EvalResult evaluate(const SolutionExpansion& sol, double x)
{
    if (!(x >= 0.0))
        throw DomainError("evaluate: x must be >= 0");
    fracbessel::detail::NeumaierSum s;
    double err = 0.0;
    for (const auto& t : sol.terms) {
        EvalResult r = t.evaluate(x);
        s.add(r.value);
        err += r.abs_error;
    }
    return {s.value(), err + 2.0 * kEps * s.abs_sum()};
}

struct Diagnostics {
    EvalResult result;
    double cancellation = 1.0; // sum of |series terms| over |value|
    bool warning = false;
};

inline constexpr double kCancellationWarning = 1e6;

// All series coefficients of a solution term are positive, so the sum of
// absolute values is the same expansion evaluated at |lambda|.
inline Diagnostics evaluate_with_diagnostics(const SolutionExpansion& sol, double x)
{
    Diagnostics d;
    d.result = evaluate(sol, x);
    double mag = 0.0;
    try {
        for (auto t : sol.terms) {
            t.prefactor = std::fabs(t.prefactor);
            t.arg_scale = std::fabs(t.arg_scale);
            mag += t.evaluate(x).value;
        }
    } catch (const Error&) {
        mag = std::numeric_limits<double>::infinity();
    }
    double v = std::fabs(d.result.value);
    d.cancellation = v > 0.0 ? mag / v : (mag > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    d.warning = d.cancellation > kCancellationWarning;
    return d;
}

inline constexpr int kSeriesTermCap = 20000;

// Power-series form sum c x^e of the solution with a tail bound valid on
// [0, x_max]. Each Fox-Wright sum is cut once its terms at x_max have been
// below 1e-13 of the running magnitude for three steps and are decreasing;
// the tail is bounded by ten times the last kept term.
inline SeriesFunction to_series(const SolutionExpansion& sol, double x_max)
{
    if (!(x_max > 0.0))
        throw DomainError("to_series: x_max must be positive");
    std::vector<PowerTerm> out;
    double tail = 0.0;
    for (const auto& t : sol.terms) {
        double running = 0.0, prev = std::numeric_limits<double>::infinity(), last = 0.0;
        int small = 0;
        int k = 0;
        for (;; ++k) {
            if (k >= kSeriesTermCap)
                throw ConvergenceError("to_series: Fox-Wright expansion needs more than "
                                       + std::to_string(kSeriesTermCap) + " terms at x = " + std::to_string(x_max));
            const double e = t.x_exponent + t.arg_exponent * k;
            const double c = t.prefactor * specfun::fox_wright_coefficient(t.fw, k) * std::pow(t.arg_scale, k);
            if (!std::isfinite(c))
                throw ConvergenceError("to_series: coefficient overflow");
            out.push_back({c, e});
            const double mag = std::fabs(c) * std::pow(x_max, e);
            running += mag;
            last = mag;
            if (mag <= 1e-13 * running && mag <= prev) {
                if (++small == 3)
                    break;
            } else {
                small = 0;
            }
            prev = mag;
            if (t.arg_scale == 0.0)
                break;
        }
        tail += 10.0 * last;
    }
    return SeriesFunction(std::move(out), tail, x_max);
}

// Residual (B^alpha f)(x) - lambda f(x) through the operator module on the
// truncated series.
inline EvalResult residual(const SolutionExpansion& sol, const ProblemSpec& spec, double x, const QuadratureConfig& cfg)
{
    if (!(x > 0.0))
        throw DomainError("residual: x must be positive");
    SeriesFunction s = to_series(sol, x);
    EvalResult d = ops::frac_bessel_derivative_gc(s, spec.gamma_param, spec.alpha, x, cfg);
    EvalResult f = evaluate(sol, x);
    return {d.value - spec.lambda * f.value,
            d.abs_error + std::fabs(spec.lambda) * f.abs_error + (1.0 + std::fabs(spec.lambda)) * s.tail_bound()};
}

// Same residual with the classical Caputo derivative of order 2 alpha;
// meaningful for gamma = 0 only.
inline EvalResult residual_caputo(const SolutionExpansion& sol, const ProblemSpec& spec, double x,
                                  const QuadratureConfig& cfg)
{
    if (spec.gamma_param != 0.0)
        throw DomainError("residual_caputo: the Caputo path needs gamma = 0");
    if (!(x > 0.0))
        throw DomainError("residual_caputo: x must be positive");
    SeriesFunction s = to_series(sol, x);
    EvalResult d = ops::gerasimov_caputo(s, 2.0 * spec.alpha, x, cfg);
    EvalResult f = evaluate(sol, x);
    return {d.value - spec.lambda * f.value,
            d.abs_error + std::fabs(spec.lambda) * f.abs_error + (1.0 + std::fabs(spec.lambda)) * s.tail_bound()};
}

// Leading powers of the solution with exponent at most e_max.
inline std::vector<PowerTerm> leading_terms(const SolutionExpansion& sol, double e_max)
{
    std::vector<PowerTerm> out;
    for (const auto& t : sol.terms) {
        for (int k = 0;; ++k) {
            const double e = t.x_exponent + t.arg_exponent * k;
            if (e > e_max + 1e-12)
                break;
            out.push_back({t.prefactor * specfun::fox_wright_coefficient(t.fw, k) * std::pow(t.arg_scale, k), e});
            if (t.arg_scale == 0.0 || t.arg_exponent <= 0.0)
                break;
        }
    }
    return out;
}

// Limit at the origin encoded by the condition with the given index,
// read off the power expansion: B^k f(0+) for index 2k and
// lim x^w d/dx B^k f for index 2k+1. Returns +-inf or NaN when the limit
// does not exist.
inline double origin_condition(const SolutionExpansion& sol, int index)
{
    if (index < 0)
        throw DomainError("origin_condition: negative index");
    const double g = sol.gamma_param;
    const int k = index / 2;
    std::vector<PowerTerm> terms = leading_terms(sol, 2.0 * k + 2.0);
    for (int step = 0; step < k; ++step)
        for (auto& t : terms) {
            t.coefficient *= t.exponent * (t.exponent - 1.0 + g);
            t.exponent -= 2.0;
        }
    const double w = index % 2 == 0 ? 0.0 : (g < 1.0 ? g : 1.0);
    double limit = 0.0;
    for (const auto& t : terms) {
        double c = t.coefficient, e = t.exponent;
        if (index % 2 == 1) {
            c *= e;
            e += w - 1.0;
        }
        const double scale = std::max(1.0, std::fabs(t.exponent));
        if (std::fabs(c) <= 1e-13 * scale * std::max(1.0, std::fabs(t.coefficient)))
            continue;
        if (std::fabs(e) <= 1e-12)
            limit += c;
        else if (e < 0.0)
            return c > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return limit;
}

// f(0+) from two evaluations near the origin, eliminating the leading
// non-constant power x^p: f(x) = f0 + c x^p + o(x^p).
inline EvalResult extrapolate_origin_value(const SolutionExpansion& sol, double x1, double x2)
{
    if (!(x1 > 0.0) || !(x2 > 0.0) || x1 == x2)
        throw DomainError("extrapolate_origin_value: need two distinct positive points");
    double p = std::numeric_limits<double>::infinity();
    for (const auto& t : sol.terms)
        for (int k = 0; k < 2; ++k) {
            double e = t.x_exponent + t.arg_exponent * k;
            if (e > 1e-12)
                p = std::min(p, e);
        }
    EvalResult f1 = evaluate(sol, x1), f2 = evaluate(sol, x2);
    if (!std::isfinite(p))
        return {0.5 * (f1.value + f2.value), std::fabs(f1.value - f2.value) + f1.abs_error + f2.abs_error};
    const double w1 = std::pow(x1, p), w2 = std::pow(x2, p);
    const double den = w1 - w2;
    const double v = (f2.value * w1 - f1.value * w2) / den;
    return {v, (f1.abs_error * std::fabs(w2) + f2.abs_error * std::fabs(w1)) / std::fabs(den)};
}

// lim x^w f'(x) (w = gamma below one, else 1) from two points near the
// origin, eliminating the leading power of x^w f' as above.
inline EvalResult extrapolate_weighted_derivative(const SolutionExpansion& sol, double x1, double x2)
{
    if (!(x1 > 0.0) || !(x2 > 0.0) || x1 == x2)
        throw DomainError("extrapolate_weighted_derivative: need two distinct positive points");
    const double w = std::min(sol.gamma_param, 1.0);
    double p = std::numeric_limits<double>::infinity();
    for (const auto& t : sol.terms)
        for (int k = 0; k < 3; ++k) {
            const double e = t.x_exponent + t.arg_exponent * k;
            if (e > 1e-12 && e - 1.0 + w > 1e-12)
                p = std::min(p, e - 1.0 + w);
        }
    const SeriesFunction d = to_series(sol, std::max(x1, x2)).derivative();
    const EvalResult d1 = d.evaluate(x1), d2 = d.evaluate(x2);
    const double s1 = std::pow(x1, w), s2 = std::pow(x2, w);
    const double v1 = s1 * d1.value, v2 = s2 * d2.value;
    const double e1 = s1 * d1.abs_error, e2 = s2 * d2.abs_error;
    if (!std::isfinite(p))
        return {0.5 * (v1 + v2), std::fabs(v1 - v2) + e1 + e2};
    const double w1 = std::pow(x1, p), w2 = std::pow(x2, p);
    const double den = w1 - w2;
    return {(v2 * w1 - v1 * w2) / den, (e1 * std::fabs(w2) + e2 * std::fabs(w1)) / std::fabs(den)};
}

} // namespace solver
} // namespace fracbessel

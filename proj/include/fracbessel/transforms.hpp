#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fracbessel/core.hpp"
#include "fracbessel/quadrature.hpp"
#include "fracbessel/series_function.hpp"
#include "fracbessel/specfun.hpp"

namespace fracbessel {

struct Smoothness {
    enum class Kind { smooth, power_singular_at_origin, unknown };
    Kind kind = Kind::smooth;
    double exponent = 0.0;
};

// A black-box function on (0, inf) with a hint about its behaviour at the
// origin. The optional derivative feeds the one-step continuation of I_2.
struct WeightedFunction {
    std::function<double(double)> eval;
    Smoothness hint;
    std::function<double(double)> derivative;

    double operator()(double x) const { return eval(x); }

    // f(x) ~ x^p as x -> 0+; zero for smooth and unknown functions.
    double origin_exponent() const { return hint.kind == Smoothness::Kind::power_singular_at_origin ? hint.exponent : 0.0; }

    static WeightedFunction smooth(std::function<double(double)> f, std::function<double(double)> df = {})
    {
        return {std::move(f), {Smoothness::Kind::smooth, 0.0}, std::move(df)};
    }
    static WeightedFunction power_singular(std::function<double(double)> f, double p, std::function<double(double)> df = {})
    {
        return {std::move(f), {Smoothness::Kind::power_singular_at_origin, p}, std::move(df)};
    }
    static WeightedFunction unknown(std::function<double(double)> f)
    {
        return {std::move(f), {Smoothness::Kind::unknown, 0.0}, {}};
    }
};

inline WeightedFunction to_weighted(const SeriesFunction& s)
{
    SeriesFunction d = s.derivative();
    return WeightedFunction::power_singular([s](double x) { return s(x); }, std::min(0.0, s.min_exponent()),
                                            [d](double x) { return d(x); });
}

namespace transforms {

struct TransformConstants {
    double gamma_param = 0.0;
    double c_gamma = 0.0; // Gamma((g+1)/2) / (sqrt(pi) Gamma(g/2)), Poisson normalisation
    double a_gamma = 0.0; // pi / (2^g Gamma^2((g+1)/2)), Laplace-Poisson factor

    static TransformConstants make(double g)
    {
        if (!(g >= 0.0))
            throw DomainError("TransformConstants: gamma must be >= 0");
        TransformConstants t;
        t.gamma_param = g;
        double gh = specfun::gamma(0.5 * (g + 1.0)).value;
        t.c_gamma = gh * specfun::rgamma(0.5 * g) / std::sqrt(kPi);
        t.a_gamma = kPi / (std::pow(2.0, g) * gh * gh);
        return t;
    }
};

// Multiplier of the Poisson operator on monomials: P[t^e] = M(e) x^e.
inline double poisson_multiplier(double g, double e)
{
    if (!(e > -1.0))
        throw DomainError("poisson_multiplier: exponent must exceed -1");
    return specfun::gamma(0.5 * (g + 1.0)).value * specfun::gamma_ratio(0.5 * (e + 1.0), 0.5 * (e + g + 1.0))
           / std::sqrt(kPi);
}

inline EvalResult laplace_numeric(const WeightedFunction& f, double s, const QuadratureConfig& cfg)
{
    if (!(s > 0.0))
        throw DomainError("laplace_numeric: s must be positive");
    auto g = [&](double u) { return f(u / s) * std::exp(-u); };
    EvalResult r = quadrature::integrate_halfline(g, f.origin_exponent(), cfg);
    return {r.value / s, r.abs_error / s};
}

// K_g[f](xi) = int_0^inf k_{(g-1)/2}(x xi) f(x) x^g dx, computed as
// xi^{-g-1} int_0^inf k(u) u^g f(u/xi) du.
inline EvalResult meijer_transform(const WeightedFunction& f, double g, double xi, const QuadratureConfig& cfg)
{
    if (!(g >= 0.0))
        throw DomainError("meijer_transform: gamma must be >= 0");
    if (!(xi > 0.0))
        throw DomainError("meijer_transform: xi must be positive");
    const specfun::BesselOrder nu(0.5 * (g - 1.0));
    const bool laplace = g == 0.0;
    auto integrand = [&](double u) {
        double k = laplace ? std::exp(-u) : specfun::normalized_k(nu, u).value;
        if (k == 0.0)
            return 0.0;
        return k * std::pow(u, g) * f(u / xi);
    };
    double p = std::min(g, 1.0) + f.origin_exponent();
    EvalResult r = quadrature::integrate_halfline(integrand, p, cfg);
    double scale = std::pow(xi, -g - 1.0);
    return {r.value * scale, r.abs_error * scale};
}

// P^g f(x) = 2 C(g) int_0^{pi/2} sin^{g-1}(phi) f(x cos phi) dphi, the
// t = x cos(phi) form of the defining integral, split at pi/4 so each half
// carries one endpoint behaviour.
inline EvalResult poisson(const WeightedFunction& f, double g, double x, const QuadratureConfig& cfg)
{
    if (!(g > 0.0))
        throw DomainError("poisson: gamma must be positive");
    if (!(x > 0.0))
        throw DomainError("poisson: x must be positive");
    const double c = TransformConstants::make(g).c_gamma;
    const double q = kPi / 4.0;
    auto near_top = [&](double phi) { return std::pow(std::sin(phi), g - 1.0) * f(x * std::cos(phi)); };
    auto near_origin = [&](double psi) { return std::pow(std::cos(psi), g - 1.0) * f(x * std::sin(psi)); };
    EvalResult a = quadrature::integrate_from_origin(near_top, q, g - 1.0, cfg);
    EvalResult b = quadrature::integrate_from_origin(near_origin, q, f.origin_exponent(), cfg);
    return {2.0 * c * (a.value + b.value), 2.0 * c * (a.abs_error + b.abs_error)};
}

namespace detail {

// n-th derivative by Ridders' extrapolation of central differences.
template <class G>
EvalResult ridders_derivative(G&& g, double s, int n, double h0)
{
    constexpr int kTab = 10;
    constexpr double kCon = 1.4, kCon2 = kCon * kCon, kSafe = 2.0;
    std::vector<double> binom(n + 1, 1.0);
    for (int j = 1; j <= n; ++j)
        binom[j] = binom[j - 1] * (n - j + 1) / j;
    auto diff = [&](double h) {
        double sum = 0.0;
        for (int j = 0; j <= n; ++j)
            sum += ((j % 2) ? -1.0 : 1.0) * binom[j] * g(s + (0.5 * n - j) * h);
        return sum / std::pow(h, n);
    };
    double a[kTab][kTab];
    double h = h0;
    a[0][0] = diff(h);
    double err = std::numeric_limits<double>::infinity(), ans = a[0][0];
    for (int i = 1; i < kTab; ++i) {
        h /= kCon;
        a[0][i] = diff(h);
        double fac = kCon2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= kCon2;
            double e = std::max(std::fabs(a[j][i] - a[j - 1][i]), std::fabs(a[j][i] - a[j - 1][i - 1]));
            if (e <= err) {
                err = e;
                ans = a[j][i];
            }
        }
        if (std::fabs(a[i][i] - a[i - 1][i - 1]) >= kSafe * err)
            break;
    }
    return {ans, err};
}

} // namespace detail

// Left inverse of the Poisson operator,
// 2 sqrt(pi) x / (Gamma((g+1)/2) Gamma(n-g/2)) (d/(2x dx))^n
//   int_0^x H(z) (x^2-z^2)^{n-g/2-1} z^g dz,  n = [g/2] + 1.
// With s = x^2 the operator d/(2x dx) is d/ds, and the inner integral is
// s^{n-1/2} int_0^{pi/2} H(sqrt(s) cos phi) sin^{2n-g-1}phi cos^g phi dphi.
inline EvalResult poisson_inverse(const WeightedFunction& H, double g, double x, const QuadratureConfig& cfg)
{
    if (!(g > 0.0))
        throw DomainError("poisson_inverse: gamma must be positive");
    if (!(x > 0.0))
        throw DomainError("poisson_inverse: x must be positive");
    const int n = static_cast<int>(std::floor(0.5 * g)) + 1;
    const double q = 2.0 * n - g - 1.0;
    // Differentiation amplifies integration noise by roughly h^{-n}.
    const QuadratureConfig inner = cfg.tightened(1e-3);
    const double quarter = kPi / 4.0;
    auto G = [&](double s) {
        double rs = std::sqrt(s);
        auto top = [&](double phi) {
            return H(rs * std::cos(phi)) * std::pow(std::sin(phi), q) * std::pow(std::cos(phi), g);
        };
        auto bottom = [&](double psi) {
            return H(rs * std::sin(psi)) * std::pow(std::cos(psi), q) * std::pow(std::sin(psi), g);
        };
        double v = quadrature::integrate_from_origin(top, quarter, q, inner).value
                   + quadrature::integrate_from_origin(bottom, quarter, g + H.origin_exponent(), inner).value;
        return std::pow(s, n - 0.5) * v;
    };
    const double s = x * x;
    EvalResult d = detail::ridders_derivative(G, s, n, 0.4 * s / n);
    const double pref = 2.0 * std::sqrt(kPi) * x * specfun::rgamma(0.5 * (g + 1.0)) * specfun::rgamma(n - 0.5 * g);
    EvalResult out{pref * d.value, std::fabs(pref) * d.abs_error};
    if (!(out.abs_error <= 1e-2 * std::fabs(out.value) + cfg.abs_tol))
        throw ConvergenceError("poisson_inverse: finite differences unstable at x = " + std::to_string(x));
    return out;
}

// Analytic paths for power series.
inline SeriesFunction poisson_series(const SeriesFunction& f, double g)
{
    std::vector<PowerTerm> out;
    for (const auto& t : f.terms())
        out.push_back({t.coefficient * poisson_multiplier(g, t.exponent), t.exponent});
    // P is an average with a positive kernel and P[1] = 1, so a sup bound on
    // the tail carries over unchanged.
    return SeriesFunction(std::move(out), f.tail_bound(), f.tail_radius());
}

inline SeriesFunction poisson_inverse_series(const SeriesFunction& H, double g)
{
    std::vector<PowerTerm> out;
    double worst = 1.0;
    for (const auto& t : H.terms()) {
        double m = poisson_multiplier(g, t.exponent);
        worst = std::max(worst, 1.0 / m);
        out.push_back({t.coefficient / m, t.exponent});
    }
    return SeriesFunction(std::move(out), H.tail_bound() * worst, H.tail_radius());
}

// prefactor * x^{x_exponent} * fw(arg_scale * x^{arg_exponent})
struct FoxWrightTerm {
    double prefactor = 0.0;
    double x_exponent = 0.0;
    specfun::FoxWrightParams fw;
    double arg_scale = 0.0;
    double arg_exponent = 0.0;

    EvalResult evaluate(double x) const
    {
        if (x < 0.0)
            throw DomainError("FoxWrightTerm: negative x");
        double px;
        if (x == 0.0) {
            if (x_exponent < 0.0)
                throw DomainError("FoxWrightTerm: term is unbounded at x = 0");
            px = x_exponent == 0.0 ? 1.0 : 0.0;
        } else {
            px = std::pow(x, x_exponent);
        }
        double z = x == 0.0 ? 0.0 : arg_scale * std::pow(x, arg_exponent);
        EvalResult r = specfun::fox_wright(fw, z);
        double p = prefactor * px;
        double v = p * r.value;
        return {v, std::fabs(p) * r.abs_error + 2.0 * kEps * std::fabs(v)};
    }

    bool operator==(const FoxWrightTerm&) const = default;
};

// Meijer preimage of xi^{2a-b}/(xi^{2a}-lambda). Inverting the Laplace
// part gives z^{b-1} E_{2a,b}(lambda z^{2a}); pushing that through the
// Poisson inverse termwise yields
//   2^g Gamma((g+1)/2)/sqrt(pi) x^{b-g-1}
//   2Psi2[((b+1)/2, a), (1, 1); ((b-g+1)/2, a), (b, 2a)](lambda x^{2a}).
inline FoxWrightTerm inverse_meijer_term(double beta, double alpha, double lambda, double g)
{
    if (!(alpha > 0.0))
        throw DomainError("inverse_meijer_rational: alpha must be positive");
    if (!(g >= 0.0))
        throw DomainError("inverse_meijer_rational: gamma must be >= 0");
    if (!(beta > 0.0))
        throw DomainError("inverse_meijer_rational: unsupported image, the Laplace table needs beta > 0");
    FoxWrightTerm t;
    t.prefactor = std::pow(2.0, g) * specfun::gamma(0.5 * (g + 1.0)).value / std::sqrt(kPi);
    t.x_exponent = beta - g - 1.0;
    t.fw = specfun::FoxWrightParams({{0.5 * (beta + 1.0), alpha}, {1.0, 1.0}},
                                    {{0.5 * (beta - g + 1.0), alpha}, {beta, 2.0 * alpha}});
    t.arg_scale = lambda;
    t.arg_exponent = 2.0 * alpha;
    return t;
}

inline EvalResult inverse_meijer_rational(double beta, double alpha, double lambda, double g, double x)
{
    if (!(x > 0.0))
        throw DomainError("inverse_meijer_rational: x must be positive");
    return inverse_meijer_term(beta, alpha, lambda, g).evaluate(x);
}

} // namespace transforms
} // namespace fracbessel

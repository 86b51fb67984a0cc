#pragma once

#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fracbessel/bessel_operators.hpp"
#include "fracbessel/cli.hpp"
#include "fracbessel/oracle/oracle.hpp"
#include "fracbessel/solver.hpp"
#include "fracbessel/specfun.hpp"
#include "fracbessel/transforms.hpp"

// Cross-checks of the main evaluation path against the independent oracles.
// Every check yields a (main, oracle) pair compared under a fixed tolerance.
namespace fracbessel::certification {

struct Check {
    std::string name; // "<tag>.<what>"
    std::string tag;
    double tolerance = 0.0;
    bool absolute = false;
    std::function<std::pair<double, double>()> compute;
};

struct Options {
    std::string filter;       // tag or check name; empty runs everything
    std::string perturb;      // name of the check whose main value is shifted
    double perturb_amount = 1e-6;
};

struct Result {
    std::vector<oracle::OracleReport> reports;
    std::vector<std::string> errors; // "name: message" for checks that threw
    oracle::CertifySummary summary;
};

namespace detail {

using oracle::DD;

inline QuadratureConfig tight(double rel = 1e-12)
{
    QuadratureConfig c;
    c.rel_tol = rel;
    return c;
}

// Value-datum solution term 2^g Gamma((g+1)/2)/sqrt(pi) x^{2k} 2Psi2[...](lam x^{2a})
// with every factor in double-double.
inline double dd_value_term(double g, double a, double lam, int k, double x)
{
    DD pref = oracle::exp(DD(g) * oracle::kDDLn2) * oracle::gamma(DD(0.5 * (g + 1.0))) / oracle::sqrt(oracle::kDDPi);
    const double z = lam * std::pow(x, 2.0 * a);
    DD fw = oracle::dd_fox_wright({{k + 1.0 + 0.5 * g, a}, {1.0, 1.0}}, {{k + 1.0, a}, {2.0 * k + g + 1.0, 2.0 * a}}, z, 400);
    return (pref * fw * oracle::pow(DD(x), 2 * k)).to_double();
}

// int_0^inf e^{-xi z} int_0^z t e^{-t^2} dt dz: the Laplace-Poisson form of
// the Meijer transform of e^{-x^2} at gamma = 2, by nested Gauss-Legendre.
inline double gl_meijer_gauss_gamma2(double xi)
{
    auto inner = [](double z) { return oracle::quadrature_oracle([](double t) { return t * std::exp(-t * t); }, 0.0, z, 4); };
    return oracle::quadrature_oracle([&](double z) { return std::exp(-xi * z) * inner(z); }, 0.0, 40.0 / xi, 200);
}

inline WeightedFunction solution_function(const solver::SolutionExpansion& s)
{
    return WeightedFunction::smooth([s](double x) { return solver::evaluate(s, x).value; });
}

inline std::vector<Check> specfun_checks()
{
    using namespace specfun;
    std::vector<Check> c;
    c.push_back({"specfun.gauss_2f1_near_one", "specfun", 1e-13, false, [] {
                     return std::pair{gauss_2f1(0.75, 0.5, 1.0, 0.9).value,
                                      oracle::dd_gauss_2f1(0.75, 0.5, 1.0, 0.9, 5000).to_double()};
                 }});
    c.push_back({"specfun.bessel_k_third", "specfun", 1e-12, false, [] {
                     // K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
                     const double nu = 1.0 / 3.0, x = 2.0;
                     double ref = oracle::quadrature_oracle(
                         [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); }, 0.0, 7.0, 200);
                     return std::pair{bessel_k(BesselOrder(nu), x).value, ref};
                 }});
    c.push_back({"specfun.normalized_j0", "specfun", 1e-14, false, [] {
                     return std::pair{normalized_j(BesselOrder(0.0), 1.0).value,
                                      oracle::series_oracle(oracle::SeriesKind::bessel_j, {0.0}, 1.0, 60)};
                 }});
    c.push_back({"specfun.mittag_leffler", "specfun", 1e-13, false, [] {
                     return std::pair{mittag_leffler(0.8, 1.2, 1.5).value,
                                      oracle::dd_mittag_leffler(0.8, 1.2, 1.5, 2000).to_double()};
                 }});
    c.push_back({"specfun.fox_wright", "specfun", 1e-13, false, [] {
                     FoxWrightParams p({{1.5, 0.5}, {1.0, 1.0}}, {{1.25, 0.5}, {2.0, 1.0}});
                     return std::pair{fox_wright(p, 0.7).value,
                                      oracle::dd_fox_wright({{1.5, 0.5}, {1.0, 1.0}}, {{1.25, 0.5}, {2.0, 1.0}}, 0.7, 400)
                                          .to_double()};
                 }});
    c.push_back({"specfun.fox_wright_example_one", "specfun", 1e-13, false, [] {
                     const double g = 1.0 / 3.0;
                     FoxWrightParams p({{1.0 + 0.5 * g, 0.5}, {1.0, 1.0}}, {{1.0, 0.5}, {g + 1.0, 1.0}});
                     return std::pair{fox_wright(p, 1.0).value,
                                      oracle::dd_fox_wright({{1.0 + 0.5 * g, 0.5}, {1.0, 1.0}}, {{1.0, 0.5}, {g + 1.0, 1.0}},
                                                            1.0, 400)
                                          .to_double()};
                 }});
    c.push_back({"specfun.gamma_negative", "specfun", 1e-14, false, [] {
                     return std::pair{specfun::gamma(-2.3).value, oracle::gamma(DD(-2.3)).to_double()};
                 }});
    return c;
}

inline std::vector<Check> transforms_checks()
{
    using namespace transforms;
    std::vector<Check> c;
    c.push_back({"transforms.laplace_gauss", "transforms", 1e-12, false, [] {
                     auto f = WeightedFunction::smooth([](double t) { return std::exp(-t * t); });
                     double ref = oracle::quadrature_oracle([](double t) { return std::exp(-t * t - t); }, 0.0, 12.0, 120);
                     return std::pair{laplace_numeric(f, 1.0, tight()).value, ref};
                 }});
    c.push_back({"transforms.meijer_factorization", "transforms", 1e-11, false, [] {
                     auto f = WeightedFunction::smooth([](double t) { return std::exp(-t * t); });
                     return std::pair{meijer_transform(f, 2.0, 1.0, tight()).value, gl_meijer_gauss_gamma2(1.0)};
                 }});
    c.push_back({"transforms.meijer_of_solution", "transforms", 1e-7, false, [] {
                     const double g = 1.0 / 3.0, a = 0.5, lam = 0.5, xi = 2.0;
                     auto s = solver::solve(solver::ProblemSpec::from_data(g, a, lam, {1.0}));
                     double main = meijer_transform(solution_function(s), g, xi, tight(1e-10)).value;
                     DD ref = oracle::exp(DD(2.0 * a - 1.0 - g) * oracle::log(DD(xi)))
                              / (oracle::exp(DD(2.0 * a) * oracle::log(DD(xi))) - DD(lam));
                     return std::pair{main, ref.to_double()};
                 }});
    c.push_back({"transforms.poisson_square", "transforms", 1e-12, false, [] {
                     // 2 C(3) int_0^1 (1-t^2)^{1/2} t^2 dt, C(3) = Gamma(2)/(sqrt(pi) Gamma(3/2)),
                     // int_0^1 (1-t^2)^mu t^nu dt = B((nu+1)/2, mu+1)/2
                     DD beta = oracle::gamma(DD(1.5)) * oracle::gamma(DD(1.5)) / oracle::gamma(DD(3.0));
                     DD c3 = oracle::gamma(DD(2.0)) / (oracle::sqrt(oracle::kDDPi) * oracle::gamma(DD(1.5)));
                     DD ref = DD(2.0) * c3 * beta / DD(2.0);
                     auto f = WeightedFunction::smooth([](double t) { return t * t; });
                     return std::pair{poisson(f, 3.0, 1.0, tight()).value, ref.to_double()};
                 }});
    c.push_back({"transforms.poisson_cosine", "transforms", 1e-11, false, [] {
                     const double tau = 2.0;
                     auto f = WeightedFunction::smooth([tau](double t) { return std::cos(tau * t); });
                     return std::pair{poisson(f, 2.0, 1.0, tight()).value,
                                      oracle::dd_normalized_bessel(0.5, tau, false, 60).to_double()};
                 }});
    c.push_back({"transforms.poisson_inverse_square", "transforms", 1e-6, false, [] {
                     // The preimage of z^2 is c z^2; push c t^2 forward with
                     // Gauss-Legendre in t = x sin(theta).
                     const double g = 3.0, x = 1.5;
                     auto H = WeightedFunction::smooth([](double z) { return z * z; });
                     const double c = poisson_inverse(H, g, x, QuadratureConfig{}).value / (x * x);
                     DD cg = oracle::gamma(DD(0.5 * (g + 1.0))) / (oracle::sqrt(oracle::kDDPi) * oracle::gamma(DD(0.5 * g)));
                     double integral = oracle::quadrature_oracle(
                         [&](double th) {
                             const double t = x * std::sin(th);
                             return std::pow(x * std::cos(th), g - 1.0) * c * t * t;
                         },
                         0.0, 0.5 * kPi, 16);
                     double forward = 2.0 * cg.to_double() * std::pow(x, 1.0 - g) * integral;
                     return std::pair{forward, x * x};
                 }});
    c.push_back({"transforms.inverse_meijer_constant", "transforms", 1e-9, false, [] {
                     const double g = 2.5, a = 0.7, xi = 1.5;
                     FoxWrightTerm t = inverse_meijer_term(g + 1.0, a, 0.0, g);
                     const double constant = t.evaluate(1.0).value;
                     auto f = WeightedFunction::smooth([constant](double) { return constant; });
                     return std::pair{meijer_transform(f, g, xi, tight()).value,
                                      oracle::exp(DD(-1.0 - g) * oracle::log(DD(xi))).to_double()};
                 }});
    return c;
}

inline std::vector<Check> fracbessel_checks()
{
    using namespace ops;
    std::vector<Check> c;
    c.push_back({"fracbessel.riemann_liouville_constant", "fracbessel", 1e-10, false, [] {
                     auto one = WeightedFunction::smooth([](double) { return 1.0; });
                     return std::pair{frac_bessel_integral(one, 0.0, 0.4, 1.0, tight()).value,
                                      oracle::rgamma(DD(1.8)).to_double()};
                 }});
    c.push_back({"fracbessel.factorized_square", "fracbessel", 1e-9, false, [] {
                     // (x/2)^{2a} I^{1/2,a} I^{0,a} y^2 via the I_2 monomial rule
                     const double g = 2.0, a = 0.7, x = 1.1, eta = 0.5 * (g - 1.0);
                     DD r = oracle::gamma(DD(2.0)) / oracle::gamma(DD(2.0 + a)) * oracle::gamma(DD(eta + 2.0))
                            / oracle::gamma(DD(eta + a + 2.0));
                     DD ref = oracle::pow(DD(0.5 * x), DD(2.0 * a)) * r * DD(x) * DD(x);
                     auto f = WeightedFunction::smooth([](double y) { return y * y; });
                     return std::pair{frac_bessel_integral(f, g, a, x, tight()).value, ref.to_double()};
                 }});
    c.push_back({"fracbessel.i2_beta", "fracbessel", 1e-12, false, [] {
                     // (2/Gamma(1/2)) int_0^1 (1-u^2)^{-1/2} u^5 du = B(3, 1/2)/sqrt(pi)
                     DD ref = oracle::gamma(DD(3.0)) / oracle::gamma(DD(3.5));
                     auto f = WeightedFunction::smooth([](double u) { return u * u; });
                     return std::pair{i2_operator(1.0, 0.5, f, 1.0, tight()).value, ref.to_double()};
                 }});
    c.push_back({"fracbessel.derivative_of_solution", "fracbessel", 1e-6, false, [] {
                     const double g = 1.0 / 3.0, a = 0.5, lam = 1.0, x = 0.8;
                     auto s = solver::solve(solver::ProblemSpec::from_data(g, a, lam, {1.0}));
                     double main = frac_bessel_derivative_gc(solver::to_series(s, x), g, a, x, QuadratureConfig{}).value;
                     return std::pair{main, lam * dd_value_term(g, a, lam, 0, x)};
                 }});
    c.push_back({"fracbessel.meijer_multiplier", "fracbessel", 1e-5, false, [] {
                     const double g = 2.0, a = 0.7, xi = 2.0;
                     QuadratureConfig cfg, inner = cfg.tightened(0.1);
                     auto f = WeightedFunction::smooth([](double t) { return std::exp(-t * t); });
                     auto If = WeightedFunction::smooth([&](double y) { return frac_bessel_integral(f, g, a, y, inner).value; });
                     double main = transforms::meijer_transform(If, g, xi, cfg).value;
                     return std::pair{main, std::pow(xi, -2.0 * a) * gl_meijer_gauss_gamma2(xi)};
                 }});
    c.push_back({"fracbessel.caputo_collapse", "fracbessel", 1e-9, false, [] {
                     // order 0.9 Caputo derivative of 1 + x^{1.5} - x^3/2 at x = 1.3
                     const double x = 1.3, o = 0.9;
                     auto cap = [&](double p) {
                         return oracle::gamma(DD(p + 1.0)) / oracle::gamma(DD(p + 1.0 - o))
                                * oracle::pow(DD(x), DD(p - o));
                     };
                     DD ref = cap(1.5) - DD(0.5) * cap(3.0);
                     SeriesFunction f({{1.0, 0.0}, {1.0, 1.5}, {-0.5, 3.0}});
                     return std::pair{frac_bessel_derivative_gc(f, 0.0, 0.45, x, tight()).value, ref.to_double()};
                 }});
    return c;
}

inline std::vector<Check> solver_checks()
{
    using solver::ProblemSpec;
    std::vector<Check> c;
    c.push_back({"solver.bessel_j0", "solver", 1e-14, false, [] {
                     auto s = solver::solve(ProblemSpec::from_data(1.0, 1.0, -1.0, {1.0, 0.0}));
                     return std::pair{solver::evaluate(s, 1.0).value, oracle::dd_bessel(0.0, 1.0, false, 60).to_double()};
                 }});
    c.push_back({"solver.example_one_value", "solver", 1e-13, false, [] {
                     const double g = 1.0 / 3.0;
                     auto s = solver::solve(ProblemSpec::from_data(g, 0.5, 1.0, {1.0}));
                     return std::pair{solver::evaluate(s, 1.0).value, dd_value_term(g, 0.5, 1.0, 0, 1.0)};
                 }});
    c.push_back({"solver.radial_value", "solver", 1e-13, false, [] {
                     auto s = solver::solve(ProblemSpec::from_data(1.0, 0.3, 2.0, {1.0}));
                     return std::pair{solver::evaluate(s, 0.5).value, dd_value_term(1.0, 0.3, 2.0, 0, 0.5)};
                 }});
    c.push_back({"solver.mittag_leffler_limit", "solver", 1e-12, false, [] {
                     auto s = solver::solve(ProblemSpec::from_data(0.0, 0.25, -1.0, {1.0}));
                     return std::pair{solver::evaluate(s, 2.0).value,
                                      oracle::dd_mittag_leffler(0.5, 1.0, -std::sqrt(2.0), 400).to_double()};
                 }});
    c.push_back({"solver.residual_example_one", "solver", 1e-5, true, [] {
                     ProblemSpec p = ProblemSpec::from_data(1.0 / 3.0, 0.5, 1.0, {1.0});
                     return std::pair{solver::residual(solver::solve(p), p, 1.0, QuadratureConfig{}).value, 0.0};
                 }});
    c.push_back({"solver.residual_caputo", "solver", 1e-5, true, [] {
                     ProblemSpec p = ProblemSpec::from_data(0.0, 0.7, -0.8, {1.2, 0.5});
                     return std::pair{solver::residual_caputo(solver::solve(p), p, 1.0, QuadratureConfig{}).value, 0.0};
                 }});
    return c;
}

inline std::vector<Check> oracle_checks()
{
    std::vector<Check> c;
    c.push_back({"oracle.mittag_leffler_exp", "oracle", 1e-15, false, [] {
                     return std::pair{oracle::dd_mittag_leffler(1.0, 1.0, 1.0, 100).to_double(), std::exp(1.0)};
                 }});
    c.push_back({"oracle.gauss_2f1_log", "oracle", 1e-15, false, [] {
                     return std::pair{oracle::dd_gauss_2f1(1.0, 1.0, 2.0, 0.5, 200).to_double(), 2.0 * std::log(2.0)};
                 }});
    c.push_back({"oracle.gauss_legendre_exp", "oracle", 1e-15, false, [] {
                     return std::pair{oracle::quadrature_oracle([](double t) { return std::exp(-2.0 * t); }, 0.0, 40.0, 200),
                                      0.5};
                 }});
    c.push_back({"oracle.derivative_transform", "oracle", 1e-12, false, [] {
                     // int_1^inf x^{3/2} (x^2-1)^{-1/4} K_{1/2}(x) dx = 2^{-1/4} Gamma(3/4) K_{5/4}(1)
                     auto integrand = [](double w) {
                         const double w3 = w * w * w, x = 1.0 + w3 * w;
                         return std::pow(x, 1.5) * std::pow(x + 1.0, -0.25) * std::sqrt(kPi / (2.0 * x)) * std::exp(-x) * 4.0
                                * w * w;
                     };
                     double lhs = oracle::quadrature_oracle(integrand, 0.0, std::pow(50.0, 0.25), 200);
                     double rhs = std::pow(2.0, -0.25) * oracle::gamma(DD(0.75)).to_double()
                                  * specfun::bessel_k(specfun::BesselOrder(1.25), 1.0).value;
                     return std::pair{rhs, lhs};
                 }});
    return c;
}

inline std::vector<Check> cli_checks()
{
    std::vector<Check> c;
    c.push_back({"cli.residual_grid", "cli", 1e-4, true, [] {
                     cli::ConfigBuilder b;
                     b.load_text("gamma=0.3333333333333333\nalpha=0.5\nlambda=1\na0=1\nxmin=0.1\nxmax=3\npoints=30\n");
                     return std::pair{cli::max_abs_residual(cli::residual_rows(b.build())), 0.0};
                 }});
    c.push_back({"cli.caputo_columns", "cli", 1e-5, true, [] {
                     cli::ConfigBuilder b;
                     b.load_text("gamma=0\nalpha=0.7\nlambda=-0.8\na0=1.2\na1=0.5\nxmin=0.2\nxmax=2\npoints=5\ncaputo=1\n");
                     double worst = 0.0;
                     for (const auto& r : cli::residual_rows(b.build()))
                         worst = std::max(worst, std::fabs(r.residual - r.caputo_residual));
                     return std::pair{worst, 0.0};
                 }});
    c.push_back({"cli.bessel_residual", "cli", 1e-9, true, [] {
                     cli::ConfigBuilder b;
                     b.load_text("gamma=2\nalpha=1\nlambda=-1\na0=1\na1=0\nxmin=0.1\nxmax=3\npoints=10\n");
                     return std::pair{cli::max_abs_residual(cli::residual_rows(b.build())), 0.0};
                 }});
    return c;
}

inline bool selected(const Check& c, const std::string& filter)
{
    return filter.empty() || filter == c.tag || filter == c.name;
}

} // namespace detail

inline std::vector<Check> all_checks()
{
    std::vector<Check> all;
    for (auto part : {detail::specfun_checks(), detail::transforms_checks(), detail::fracbessel_checks(),
                      detail::solver_checks(), detail::oracle_checks(), detail::cli_checks()})
        for (auto& c : part)
            all.push_back(std::move(c));
    return all;
}

// The perturbation shifts the main value by amount * max(1, |main|), which
// trips every check whose tolerance is below amount.
inline Result run(const Options& opt)
{
    std::vector<Check> checks = all_checks();
    bool known_filter = opt.filter.empty(), known_perturb = opt.perturb.empty();
    for (const auto& c : checks) {
        known_filter = known_filter || detail::selected(c, opt.filter);
        known_perturb = known_perturb || c.name == opt.perturb;
    }
    if (!known_filter)
        throw ConfigError("certify: no check or tag named '" + opt.filter + "'");
    if (!known_perturb)
        throw ConfigError("certify: no check named '" + opt.perturb + "'");

    Result res;
    for (const auto& c : checks) {
        if (!detail::selected(c, opt.filter))
            continue;
        double main = NAN, ref = NAN;
        try {
            std::tie(main, ref) = c.compute();
        } catch (const std::exception& e) {
            res.errors.push_back(c.name + ": " + e.what());
        }
        if (c.name == opt.perturb)
            main += opt.perturb_amount * std::max(1.0, std::fabs(main));
        res.reports.push_back(oracle::make_report(c.name, c.tag, main, ref, c.tolerance, c.absolute));
    }
    res.summary = oracle::certify(res.reports);
    for (const auto& e : res.errors)
        res.summary.text += "ERROR " + e + "\n";
    return res;
}

} // namespace fracbessel::certification

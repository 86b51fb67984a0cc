#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fracbessel/transforms.hpp"

using namespace fracbessel;
using namespace fracbessel::transforms;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

QuadratureConfig tight()
{
    QuadratureConfig c;
    c.rel_tol = 1e-12;
    return c;
}

} // namespace

TEST(Meijer, FrozenReferences)
{
    auto gauss = WeightedFunction::smooth([](double t) { return std::exp(-t * t); });
    auto texp = WeightedFunction::smooth([](double t) { return t * std::exp(-t); });
    auto ex = WeightedFunction::smooth([](double t) { return std::exp(-t); });
    EXPECT_LT(rel(meijer_transform(gauss, 2.0, 1.0, tight()).value, 0.22717931961747647895), 1e-11);
    EXPECT_LT(rel(meijer_transform(texp, 0.5, 2.0, tight()).value, 0.091446403241587935613), 1e-11);
    EXPECT_LT(rel(meijer_transform(ex, 3.7, 1.3, tight()).value, 0.069065816427458528768), 1e-11);
}

TEST(Meijer, MonomialMellinClosedForm)
{
    // int_0^inf u^{mu-1} K_nu(u) du = 2^{mu-2} Gamma((mu-nu)/2) Gamma((mu+nu)/2)
    for (double g : {0.3, 1.5, 2.8}) {
        for (double s : {-0.4, 0.7, 2.0}) {
            const double xi = 1.2, nu = 0.5 * (g - 1.0), mu = g + s - nu + 1.0;
            double exact = std::pow(xi, -g - 1.0 - s) * std::pow(2.0, mu - 2.0) * std::tgamma(0.5 * (mu - nu))
                           * std::tgamma(0.5 * (mu + nu)) / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
            auto f = WeightedFunction::power_singular([s](double t) { return std::pow(t, s); }, s);
            EvalResult r = meijer_transform(f, g, xi, tight());
            EXPECT_LT(rel(r.value, exact), 1e-10) << g << " " << s;
            EXPECT_LE(std::fabs(r.value - exact), 10.0 * r.abs_error + 1e-13 * std::fabs(exact));
        }
    }
}

TEST(Meijer, GammaZeroIsLaplace)
{
    auto f = WeightedFunction::smooth([](double t) { return std::cos(t) / (1.0 + t); });
    for (double xi : {0.5, 1.0, 3.0})
        EXPECT_LT(rel(meijer_transform(f, 0.0, xi, tight()).value, laplace_numeric(f, xi, tight()).value), 1e-12);
}

TEST(Meijer, FactorsThroughLaplaceAndPoisson)
{
    const double g = 2.0, xi = 1.0;
    const double a = TransformConstants::make(g).a_gamma;
    QuadratureConfig cfg = tight();
    auto f = [](double t) { return std::exp(-t * t); };
    auto inner = WeightedFunction::power_singular(
        [&](double z) {
            auto tf = WeightedFunction::smooth([&](double t) { return t * f(t); });
            return a * std::pow(z, g - 1.0) * poisson(tf, g, z, cfg).value;
        },
        g);
    double lhs = laplace_numeric(inner, xi, cfg).value;
    EXPECT_LT(rel(lhs, 0.22717931961747647895), 1e-10);
}

TEST(Laplace, Reference)
{
    auto f = WeightedFunction::smooth([](double t) { return std::exp(-t * t); });
    EXPECT_LT(rel(laplace_numeric(f, 1.0, tight()).value, 0.5456413607650470421), 1e-12);
}

TEST(Laplace, MittagLefflerImageClosedForm)
{
    // L[z^{b-1} E_{a,b}(lam z^a)](s) = s^{a-b} / (s^a - lam)
    struct Case {
        double a, b, lam, s;
    };
    for (Case c : std::vector<Case>{{0.8, 1.2, 0.5, 2.0}, {1.5, 2.0, -1.0, 1.5}, {2.0, 1.0, 0.3, 1.1}}) {
        auto f = WeightedFunction::power_singular(
            [c](double z) { return std::pow(z, c.b - 1.0) * specfun::mittag_leffler(c.a, c.b, c.lam * std::pow(z, c.a)).value; },
            c.b - 1.0);
        double exact = std::pow(c.s, c.a - c.b) / (std::pow(c.s, c.a) - c.lam);
        EXPECT_LT(rel(laplace_numeric(f, c.s, tight()).value, exact), 1e-9) << c.a << " " << c.b;
    }
}

TEST(Poisson, ClosedForms)
{
    QuadratureConfig cfg = tight();
    auto one = WeightedFunction::smooth([](double) { return 1.0; });
    for (double g : {0.4, 1.0, 2.5, 5.0})
        EXPECT_LT(rel(poisson(one, g, 1.7, cfg).value, 1.0), 1e-12) << g;

    auto sq = WeightedFunction::smooth([](double t) { return t * t; });
    EXPECT_LT(rel(poisson(sq, 3.0, 2.0, cfg).value, 0.25 * 4.0), 1e-12);
    EXPECT_LT(rel(poisson_multiplier(3.0, 2.0), 0.25), 1e-15);

    for (double tau : {0.5, 2.0, 7.0}) {
        auto c = WeightedFunction::smooth([tau](double t) { return std::cos(tau * t); });
        EXPECT_LT(rel(poisson(c, 2.0, 1.0, cfg).value, std::sin(tau) / tau), 1e-11) << tau;
    }
}

TEST(Poisson, MultiplierMatchesQuadrature)
{
    for (double g : {0.3, 1.7, 4.2})
        for (double e : {-0.5, 0.5, 3.0}) {
            auto f = WeightedFunction::power_singular([e](double t) { return std::pow(t, e); }, e);
            double x = 1.3;
            EXPECT_LT(rel(poisson(f, g, x, tight()).value, poisson_multiplier(g, e) * std::pow(x, e)), 1e-11)
                << g << " " << e;
        }
    EXPECT_THROW(poisson_multiplier(1.0, -1.0), DomainError);
}

TEST(PoissonInverse, ClosedForms)
{
    QuadratureConfig cfg;
    auto one = WeightedFunction::smooth([](double) { return 1.0; });
    for (double g : {0.5, 2.0, 3.7})
        EXPECT_LT(rel(poisson_inverse(one, g, 1.3, cfg).value, 1.0), 1e-7) << g;
    auto sq = WeightedFunction::smooth([](double z) { return z * z; });
    EXPECT_LT(rel(poisson_inverse(sq, 3.0, 1.5, cfg).value, 4.0 * 2.25), 1e-7);
}

TEST(PoissonInverse, RoundTripGrid)
{
    QuadratureConfig cfg;
    std::vector<std::function<double(double)>> fs = {
        [](double t) { return std::cos(t); },
        [](double t) { return std::exp(-t); },
        [](double t) { return 1.0 + t * t; },
    };
    for (double g : {0.5, 2.0, 3.7})
        for (const auto& fn : fs)
            for (double x : {0.5, 1.0, 2.0}) {
                QuadratureConfig inner = cfg.tightened(1e-3);
                auto Pf = WeightedFunction::smooth([&](double z) {
                    return poisson(WeightedFunction::smooth(fn), g, z, inner).value;
                });
                double back = poisson_inverse(Pf, g, x, cfg).value;
                EXPECT_LT(std::fabs(back - fn(x)), 1e-6 * std::max(1.0, std::fabs(fn(x)))) << g << " " << x;
            }
}

TEST(PoissonSeries, AnalyticPathsInvert)
{
    SeriesFunction f({{1.0, 0.0}, {-0.5, 2.0}, {0.25, 3.5}});
    for (double g : {0.5, 2.0, 3.7}) {
        SeriesFunction back = poisson_inverse_series(poisson_series(f, g), g);
        for (double x : {0.3, 1.0, 2.0})
            EXPECT_LT(std::fabs(back(x) - f(x)), 1e-14 * 4.0);
        auto wf = to_weighted(f);
        EXPECT_LT(rel(poisson_series(f, g)(1.2), poisson(wf, g, 1.2, tight()).value), 1e-12);
    }
}

TEST(Ridders, DerivativesOfSmoothFunctions)
{
    auto f = [](double s) { return std::exp(0.5 * s); };
    for (int n = 1; n <= 4; ++n) {
        EvalResult d = transforms::detail::ridders_derivative(f, 1.0, n, 0.4 / n);
        EXPECT_LT(rel(d.value, std::pow(0.5, n) * std::exp(0.5)), n < 4 ? 1e-9 : 1e-8) << n;
    }
}

TEST(InverseMeijer, RoundTripBothImageTypes)
{
    // K_g maps the term back to xi^{2a-b}/(xi^{2a}-lam).
    struct Case {
        double g, alpha, lambda, beta;
    };
    std::vector<Case> cases = {
        {0.5, 0.75, 0.4, 1.0 + 0.5},        // even data, k = 0
        {0.5, 0.75, 0.4, 3.0 + 0.5},        // even data, k = 1
        {0.5, 0.75, 0.4, 2.0},              // odd data, k = 0
        {0.2, 1.3, -0.6, 2.0},              // odd data, negative lambda
        {2.0, 1.25, 0.7, 3.0},              // even data, g > 1
        {3.7, 0.6, -0.3, 4.7},
    };
    const double xi = 2.0;
    for (const Case& c : cases) {
        FoxWrightTerm t = inverse_meijer_term(c.beta, c.alpha, c.lambda, c.g);
        auto f = WeightedFunction::power_singular([&](double x) { return t.evaluate(x).value; }, t.x_exponent);
        double got = meijer_transform(f, c.g, xi, tight()).value;
        double want = std::pow(xi, 2.0 * c.alpha - c.beta) / (std::pow(xi, 2.0 * c.alpha) - c.lambda);
        EXPECT_LT(rel(got, want), 1e-9) << c.g << " " << c.alpha << " " << c.beta;
    }
}

TEST(InverseMeijer, Validation)
{
    EXPECT_THROW(inverse_meijer_term(0.0, 0.5, 1.0, 1.0), DomainError);
    EXPECT_THROW(inverse_meijer_term(1.0, 0.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(inverse_meijer_rational(1.0, 0.5, 1.0, 1.0, 0.0), DomainError);
    EXPECT_EQ(inverse_meijer_term(2.0, 0.5, 1.0, 1.0), inverse_meijer_term(2.0, 0.5, 1.0, 1.0));
}

TEST(TransformConstants, Values)
{
    auto t = TransformConstants::make(1.0);
    EXPECT_LT(rel(t.c_gamma, 1.0 / kPi), 1e-15);
    EXPECT_LT(rel(t.a_gamma, kPi / 2.0), 1e-15);
    EXPECT_THROW(TransformConstants::make(-0.1), DomainError);
}

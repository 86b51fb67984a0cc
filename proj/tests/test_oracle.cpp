#include <gtest/gtest.h>

#include <cmath>

#include "fracbessel/oracle/oracle.hpp"

using namespace fracbessel;
using namespace fracbessel::oracle;

namespace {

double dd_rel(DD a, DD b) { return std::fabs((a - b).to_double()) / std::fabs(b.to_double()); }

const DD kE{2.718281828459045091e+00, 1.445646891729250158e-16};

} // namespace

TEST(DoubleDouble, ElementaryFunctions)
{
    EXPECT_LT(dd_rel(exp(DD(1.0)), kE), 1e-30);
    EXPECT_LT(dd_rel(log(kE), DD(1.0)), 1e-30);
    EXPECT_LT(dd_rel(sqrt(DD(2.0)) * sqrt(DD(2.0)), DD(2.0)), 1e-30);
    EXPECT_LT(dd_rel(log(DD(2.0)), kDDLn2), 1e-30);
    DD third = DD(1.0) / DD(3.0);
    EXPECT_LT(dd_rel(third * DD(3.0), DD(1.0)), 1e-31);
    EXPECT_LT(std::fabs(sin_pi(DD(1.0) / DD(6.0)).to_double() - 0.5), 1e-16);
    EXPECT_LT(dd_rel(sin_pi(DD(1.0) / DD(6.0)), DD(0.5)), 1e-30);
    EXPECT_LT(dd_rel(pow(DD(1.5), 7), DD(17.0859375)), 1e-31);
}

TEST(DoubleDouble, GammaFunction)
{
    EXPECT_LT(dd_rel(gamma(DD(0.5)) * gamma(DD(0.5)), kDDPi), 1e-29);
    EXPECT_LT(dd_rel(gamma(DD(-0.5)), DD(-2.0) * sqrt(kDDPi)), 1e-29);
    EXPECT_LT(dd_rel(gamma(DD(10.0)), DD(362880.0)), 1e-29);
    EXPECT_LT(dd_rel(gamma(DD(1.0)), DD(1.0)), 1e-29);
    EXPECT_EQ(rgamma(DD(-3.0)).to_double(), 0.0);
    EXPECT_THROW(gamma(DD(-2.0)), std::domain_error);
}

TEST(SeriesOracle, Examples)
{
    EXPECT_LT(dd_rel(dd_mittag_leffler(1.0, 1.0, 1.0, 100), kE), 1e-25);
    EXPECT_LT(dd_rel(dd_gauss_2f1(1.0, 1.0, 2.0, 0.5, 200), DD(2.0) * kDDLn2), 1e-25);
    double sol7 = series_oracle(SeriesKind::fox_wright, {2, 2, 1.0 + 1.0 / 6.0, 0.5, 1.0, 1.0, 1.0, 0.5, 4.0 / 3.0, 1.0}, 1.0, 200);
    EXPECT_LT(std::fabs(sol7 - 2.4421692676367050435) / 2.4421692676367050435, 1e-15);
    EXPECT_LT(std::fabs(series_oracle(SeriesKind::bessel_j, {0.0}, 1.0, 40) - 0.76519768655796655145), 1e-16);
    EXPECT_LT(std::fabs(series_oracle(SeriesKind::mittag_leffler, {0.8, 1.2}, 1.5, 2000) - 5.7169488357247792496) / 5.72,
              1e-15);
    EXPECT_LT(std::fabs(series_oracle(SeriesKind::gauss_2f1, {0.75, 0.5, 1.0}, 0.9, 5000) - 2.2336393286130298) / 2.23,
              1e-15);
    // I_{1/2}(x) = sqrt(2/(pi x)) sinh x
    EXPECT_LT(std::fabs(series_oracle(SeriesKind::bessel_i, {0.5}, 2.0, 60) - std::sqrt(1.0 / kPi) * std::sinh(2.0)),
              1e-15);
}

TEST(SeriesOracle, RejectsUnconvergedSums)
{
    EXPECT_THROW(dd_gauss_2f1(0.5, 0.5, 1.0, 0.99, 20), ConvergenceError);
    EXPECT_THROW(dd_mittag_leffler(0.5, 1.0, 3.0, 10), ConvergenceError);
    EXPECT_THROW(series_oracle(SeriesKind::fox_wright, {2, 2, 1.0}, 1.0, 10), ConfigError);
}

TEST(QuadratureOracle, Examples)
{
    EXPECT_LT(std::fabs(quadrature_oracle([](double x) { return x * x; }, 0.0, 1.0, 64) - 1.0 / 3.0), 1e-16);
    EXPECT_LT(std::fabs(quadrature_oracle([](double t) { return std::exp(-2.0 * t); }, 0.0, 40.0, 200) - 0.5), 1e-16);
    EXPECT_THROW(quadrature_oracle([](double) { return 1.0; }, 0.0, 1.0, 0), ConfigError);
}

TEST(QuadratureOracle, IntegralOfModifiedBesselAgainstClosedForm)
{
    // int_1^inf x^{3/2} (x^2-1)^{-1/4} K_{1/2}(x) dx = 2^{-1/4} Gamma(3/4) K_{5/4}(1),
    // with K_{1/2} in closed form and K_{5/4}(1) from its integral representation.
    auto k_half = [](double x) { return std::sqrt(kPi / (2.0 * x)) * std::exp(-x); };
    // x = 1 + w^4 makes the integrand analytic in w.
    auto lhs_integrand = [&](double w) {
        double w3 = w * w * w, x = 1.0 + w3 * w;
        return std::pow(x, 1.5) * std::pow(x + 1.0, -0.25) * k_half(x) * 4.0 * w * w;
    };
    double lhs = quadrature_oracle(lhs_integrand, 0.0, std::pow(50.0, 0.25), 200);
    double k54 = quadrature_oracle([](double t) { return std::exp(-std::cosh(t)) * std::cosh(1.25 * t); }, 0.0, 6.0, 200);
    double rhs = std::pow(2.0, -0.25) * std::tgamma(0.75) * k54;
    EXPECT_LT(std::fabs(lhs - rhs) / rhs, 1e-12);
}

TEST(Reports, RelativeAndAbsoluteModes)
{
    OracleReport r = make_report("x", "specfun", 1.0 + 1e-13, 1.0, 1e-12);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.rel_diff, 1e-13, 1e-16);
    OracleReport z = make_report("res", "solver", 3e-7, 0.0, 1e-5, true);
    EXPECT_TRUE(z.pass);
    EXPECT_GT(z.rel_diff, 1e200);
    OracleReport bad = make_report("y", "specfun", 1.0 + 1e-6, 1.0, 1e-12);
    EXPECT_FALSE(bad.pass);
    OracleReport nan = make_report("n", "specfun", NAN, 1.0, 1e-12);
    EXPECT_FALSE(nan.pass);

    CertifySummary s = certify({r, z, bad});
    EXPECT_EQ(s.total, 3);
    EXPECT_EQ(s.failed, 1);
    EXPECT_FALSE(s.all_pass());
    EXPECT_NE(s.text.find("FAIL [specfun] y"), std::string::npos);
    EXPECT_NE(s.key_value.find("check=res tag=solver pass=1"), std::string::npos);
    EXPECT_NE(s.key_value.find("summary total=3 failed=1 pass=0"), std::string::npos);
}

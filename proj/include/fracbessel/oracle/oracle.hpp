#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "fracbessel/core.hpp"
#include "fracbessel/oracle/double_double.hpp"

namespace fracbessel::oracle {

// ---------------------------------------------------------------------------
// Definitional series in double-double. Exactly `terms` terms are summed;
// the sum is rejected unless the final terms are decreasing and below
// 1e-30 of the running total.

namespace detail {

inline constexpr double kTailRatio = 1e-30;

// log|Gamma(x)| and its sign, reflection below zero.
inline DD log_abs_gamma(DD x, int& sign)
{
    if (x.hi > 0.0) {
        sign = 1;
        return lgamma_positive(x);
    }
    DD s = sin_pi(x);
    sign = s.hi < 0.0 ? -1 : 1;
    return log(kDDPi) - log(abs(s)) - lgamma_positive(DD(1.0) - x);
}

inline bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

class TailCheck {
public:
    void push(DD term, DD sum)
    {
        double at = std::fabs(term.hi), as = std::fabs(sum.hi);
        last_small_ = at <= kTailRatio * as || at == 0.0;
        decreasing_ = at <= prev_ || at == 0.0;
        prev_ = at;
    }
    void require(const char* what, int terms) const
    {
        if (!(last_small_ && decreasing_))
            throw ConvergenceError(std::string("oracle: ") + what + " tail not negligible after "
                                   + std::to_string(terms) + " terms");
    }

private:
    double prev_ = INFINITY;
    bool last_small_ = false;
    bool decreasing_ = false;
};

} // namespace detail

inline DD dd_gauss_2f1(double a, double b, double c, double z, int terms)
{
    DD t(1.0), s(1.0);
    detail::TailCheck tail;
    for (int k = 0; k + 1 < terms; ++k) {
        t = t * (DD(a) + DD(k)) * (DD(b) + DD(k)) / ((DD(c) + DD(k)) * DD(k + 1.0)) * DD(z);
        s += t;
        tail.push(t, s);
    }
    tail.require("2F1", terms);
    return s;
}

inline DD dd_mittag_leffler(double alpha, double beta, double z, int terms)
{
    DD s(0.0);
    detail::TailCheck tail;
    const DD lz = z != 0.0 ? log(DD(std::fabs(z))) : DD(0.0);
    for (int k = 0; k < terms; ++k) {
        DD arg = DD(alpha) * DD(k) + DD(beta);
        DD t(0.0);
        if (!detail::is_pole(arg.to_double()) && (k == 0 || z != 0.0)) {
            int sg = 1;
            DD lg = detail::log_abs_gamma(arg, sg);
            t = exp(DD(k) * lz - lg);
            if (sg < 0)
                t = -t;
            if (z < 0.0 && k % 2 == 1)
                t = -t;
        }
        s += t;
        tail.push(t, s);
    }
    tail.require("Mittag-Leffler", terms);
    return s;
}

struct Pair {
    double shift;
    double scale;
};

inline DD dd_fox_wright(const std::vector<Pair>& upper, const std::vector<Pair>& lower, double z, int terms)
{
    DD s(0.0);
    detail::TailCheck tail;
    const DD lz = z != 0.0 ? log(DD(std::fabs(z))) : DD(0.0);
    for (int k = 0; k < terms; ++k) {
        DD t(0.0);
        bool zero = k > 0 && z == 0.0;
        for (const auto& p : lower)
            zero = zero || detail::is_pole(p.shift + p.scale * k);
        if (!zero) {
            int sign = (z < 0.0 && k % 2 == 1) ? -1 : 1;
            DD l = DD(k) * lz - lgamma_positive(DD(k + 1.0));
            for (const auto& p : upper) {
                int sg = 1;
                l += detail::log_abs_gamma(DD(p.shift) + DD(p.scale) * DD(k), sg);
                sign *= sg;
            }
            for (const auto& p : lower) {
                int sg = 1;
                l -= detail::log_abs_gamma(DD(p.shift) + DD(p.scale) * DD(k), sg);
                sign *= sg;
            }
            t = exp(l);
            if (sign < 0)
                t = -t;
        }
        s += t;
        tail.push(t, s);
    }
    tail.require("Fox-Wright", terms);
    return s;
}

// sum_k (+-1)^k (x/2)^{2k} / (k! (nu+1)_k), the normalised Bessel series.
inline DD dd_normalized_bessel(double nu, double x, bool modified, int terms)
{
    const DD q = DD(x) * DD(x) / DD(4.0);
    DD t(1.0), s(1.0);
    detail::TailCheck tail;
    for (int k = 0; k + 1 < terms; ++k) {
        t = t * q / (DD(k + 1.0) * (DD(nu) + DD(k + 1.0)));
        if (!modified)
            t = -t;
        s += t;
        tail.push(t, s);
    }
    tail.require("Bessel", terms);
    return s;
}

// J_nu or I_nu = (x/2)^nu / Gamma(nu+1) times the normalised series.
inline DD dd_bessel(double nu, double x, bool modified, int terms)
{
    int sg = 1;
    DD lead = exp(DD(nu) * log(DD(x) / DD(2.0)) - detail::log_abs_gamma(DD(nu) + DD(1.0), sg));
    if (sg < 0)
        lead = -lead;
    return lead * dd_normalized_bessel(nu, x, modified, terms);
}

enum class SeriesKind { gauss_2f1, mittag_leffler, fox_wright, bessel_j, bessel_i };

// Uniform entry point. params: 2F1 (a, b, c); Mittag-Leffler (alpha, beta);
// Bessel (nu); Fox-Wright (p, q, then p upper and q lower (shift, scale)).
inline double series_oracle(SeriesKind kind, const std::vector<double>& params, double z, int terms)
{
    auto need = [&](std::size_t n) {
        if (params.size() < n)
            throw ConfigError("series_oracle: too few parameters");
    };
    switch (kind) {
    case SeriesKind::gauss_2f1:
        need(3);
        return dd_gauss_2f1(params[0], params[1], params[2], z, terms).to_double();
    case SeriesKind::mittag_leffler:
        need(2);
        return dd_mittag_leffler(params[0], params[1], z, terms).to_double();
    case SeriesKind::bessel_j:
        need(1);
        return dd_bessel(params[0], z, false, terms).to_double();
    case SeriesKind::bessel_i:
        need(1);
        return dd_bessel(params[0], z, true, terms).to_double();
    case SeriesKind::fox_wright: {
        need(2);
        const auto p = static_cast<std::size_t>(params[0]), q = static_cast<std::size_t>(params[1]);
        need(2 + 2 * (p + q));
        std::vector<Pair> up, lo;
        for (std::size_t i = 0; i < p; ++i)
            up.push_back({params[2 + 2 * i], params[3 + 2 * i]});
        for (std::size_t i = 0; i < q; ++i)
            lo.push_back({params[2 + 2 * (p + i)], params[3 + 2 * (p + i)]});
        return dd_fox_wright(up, lo, z, terms).to_double();
    }
    }
    throw ConfigError("series_oracle: unknown kind");
}

// ---------------------------------------------------------------------------
// Composite Gauss-Legendre on equal panels, no adaptivity. Callers remove
// endpoint singularities by substitution beforehand.

namespace detail {

struct GaussLegendreRule {
    std::vector<double> nodes, weights;

    explicit GaussLegendreRule(int n)
    {
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < n; ++i) {
            long double x = std::cos(3.14159265358979323846L * (i + 0.75L) / (n + 0.5L));
            long double dp = 0.0L;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1.0L, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0L);
                long double dx = p1 / dp;
                x -= dx;
                if (std::fabs(static_cast<double>(dx)) < 1e-19)
                    break;
            }
            // Recompute the derivative at the converged node.
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            nodes[i] = static_cast<double>(x);
            weights[i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
        }
    }
};

inline const GaussLegendreRule& gl_rule(int n)
{
    static const GaussLegendreRule r20(20);
    if (n == 20)
        return r20;
    throw ConfigError("quadrature_oracle: only the 20-point rule is provided");
}

} // namespace detail

template <class F>
double quadrature_oracle(F&& f, double a, double b, int panels)
{
    if (panels < 1)
        throw ConfigError("quadrature_oracle: panels must be >= 1");
    const auto& rule = detail::gl_rule(20);
    const double h = (b - a) / panels;
    DD total(0.0);
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h, mid = lo + 0.5 * h;
        DD part(0.0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            part += DD(rule.weights[i]) * DD(f(mid + 0.5 * h * rule.nodes[i]));
        total += part * DD(0.5 * h);
    }
    return total.to_double();
}

// ---------------------------------------------------------------------------
// Reports.

struct OracleReport {
    std::string quantity;
    std::string tag; // module the check certifies
    double main_value = 0.0;
    double oracle_value = 0.0;
    double rel_diff = 0.0;
    double tolerance = 0.0;
    bool absolute = false; // compare |main - oracle| instead of the relative difference
    bool pass = false;

    double discrepancy() const { return absolute ? std::fabs(main_value - oracle_value) : rel_diff; }
};

inline constexpr double kRelFloor = 1e-300;

inline OracleReport make_report(std::string quantity, std::string tag, double main_value, double oracle_value,
                                double tolerance, bool absolute = false)
{
    OracleReport r;
    r.quantity = std::move(quantity);
    r.tag = std::move(tag);
    r.main_value = main_value;
    r.oracle_value = oracle_value;
    r.rel_diff = std::fabs(main_value - oracle_value) / std::max(std::fabs(oracle_value), kRelFloor);
    r.tolerance = tolerance;
    r.absolute = absolute;
    r.pass = std::isfinite(r.discrepancy()) && r.discrepancy() <= tolerance;
    return r;
}

struct CertifySummary {
    int total = 0;
    int failed = 0;
    std::string text;      // one human-readable line per check plus a total
    std::string key_value; // line-delimited key=value records

    bool all_pass() const { return failed == 0; }
};

inline CertifySummary certify(const std::vector<OracleReport>& reports)
{
    CertifySummary s;
    char buf[512];
    for (const auto& r : reports) {
        ++s.total;
        if (!r.pass)
            ++s.failed;
        std::snprintf(buf, sizeof buf, "%s [%s] %s main=%.17g oracle=%.17g %s=%.3g tol=%.3g\n", r.pass ? "PASS" : "FAIL",
                      r.tag.c_str(), r.quantity.c_str(), r.main_value, r.oracle_value, r.absolute ? "abs_diff" : "rel_diff",
                      r.discrepancy(), r.tolerance);
        s.text += buf;
        std::snprintf(buf, sizeof buf,
                      "check=%s tag=%s pass=%d main=%.17g oracle=%.17g rel_diff=%.17g tolerance=%.17g mode=%s\n",
                      r.quantity.c_str(), r.tag.c_str(), r.pass ? 1 : 0, r.main_value, r.oracle_value, r.rel_diff,
                      r.tolerance, r.absolute ? "absolute" : "relative");
        s.key_value += buf;
    }
    std::snprintf(buf, sizeof buf, "%d checks, %d failed\n", s.total, s.failed);
    s.text += buf;
    std::snprintf(buf, sizeof buf, "summary total=%d failed=%d pass=%d\n", s.total, s.failed, s.failed == 0 ? 1 : 0);
    s.key_value += buf;
    return s;
}

} // namespace fracbessel::oracle

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fracbessel/core.hpp"
#include "fracbessel/detail/compensated.hpp"

namespace fracbessel {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-15;
    int max_subdivisions = 4000;
    // Length of the first panel of a half-line integral, in units of the
    // kernel's decay scale; later panels double.
    double halfline_truncation_margin = 1.0;

    void validate() const
    {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw ConfigError("QuadratureConfig: tolerances must be positive");
        if (max_subdivisions < 1)
            throw ConfigError("QuadratureConfig: max_subdivisions must be >= 1");
        if (!(halfline_truncation_margin > 0.0))
            throw ConfigError("QuadratureConfig: halfline_truncation_margin must be positive");
    }

    QuadratureConfig tightened(double factor) const
    {
        QuadratureConfig c = *this;
        c.rel_tol = std::max(rel_tol * factor, 1e-15);
        c.abs_tol = std::max(abs_tol * factor, 1e-300);
        return c;
    }
};

namespace quadrature {

namespace detail {

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980029196, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    double roundoff; // error floor of the rule on this segment
};

template <class F>
Segment gk21(F& f, double a, double b)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::fabs(resk);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        double dx = h * kXgk[j];
        double v1 = f(c - dx), v2 = f(c + dx);
        f1[j] = v1;
        f2[j] = v2;
        resk += kWgk[j] * (v1 + v2);
        resabs += kWgk[j] * (std::fabs(v1) + std::fabs(v2));
        if (j % 2 == 1)
            resg += kWg[j / 2] * (v1 + v2);
    }
    double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::fabs(fc - mean);
    for (int j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
    double value = resk * h;
    double err = std::fabs((resk - resg) * h);
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double floor = 50.0 * kEps * resabs;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(floor, err);
    if (!std::isfinite(value))
        throw DomainError("quadrature: integrand is not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    return {a, b, value, err, floor};
}

inline bool heap_less(const Segment& x, const Segment& y) { return x.error < y.error; }

} // namespace detail

// Globally adaptive Gauss-Kronrod on a finite interval.
template <class F>
EvalResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (a == b)
        return {0.0, 0.0};
    std::vector<detail::Segment> heap;
    std::vector<detail::Segment> frozen;
    heap.push_back(detail::gk21(f, a, b));
    double total = heap[0].value, err = heap[0].error;
    auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)); };
    int splits = 0;
    while (err > target()) {
        if (heap.empty())
            break;
        std::pop_heap(heap.begin(), heap.end(), detail::heap_less);
        detail::Segment s = heap.back();
        heap.pop_back();
        double mid = 0.5 * (s.a + s.b);
        // Segments already at the roundoff floor gain nothing from splitting.
        if (s.error <= s.roundoff || !(mid > std::min(s.a, s.b) && mid < std::max(s.a, s.b))) {
            frozen.push_back(s);
            continue;
        }
        if (splits >= cfg.max_subdivisions) {
            heap.push_back(s);
            break;
        }
        ++splits;
        detail::Segment l = detail::gk21(f, s.a, mid), r = detail::gk21(f, mid, s.b);
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end(), detail::heap_less);
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end(), detail::heap_less);
        if (splits % 64 == 0) {
            fracbessel::detail::NeumaierSum tv;
            double te = 0.0;
            for (const auto& x : heap) {
                tv.add(x.value);
                te += x.error;
            }
            for (const auto& x : frozen) {
                tv.add(x.value);
                te += x.error;
            }
            total = tv.value();
            err = te;
        }
    }
    fracbessel::detail::NeumaierSum tv;
    double te = 0.0;
    for (const auto& x : heap) {
        tv.add(x.value);
        te += x.error;
    }
    for (const auto& x : frozen) {
        tv.add(x.value);
        te += x.error;
    }
    total = tv.value();
    err = te;
    double floor_sum = 0.0;
    for (const auto& x : frozen)
        floor_sum += x.roundoff;
    if (err > target() && (!heap.empty() || err > floor_sum * (1.0 + 1e-12)))
    {
        char msg[160];
        std::snprintf(msg, sizeof msg, "quadrature: error %.3g above target %.3g on [%.6g, %.6g]", err, target(), a, b);
        throw ConvergenceError(msg);
    }
    return {total, err};
}

// Substitution exponent that cancels an algebraic endpoint behaviour
// g(t) ~ t^p: with t = L w^r, r = 1/(1+p), the transformed integrand tends to
// a constant. Non-negative exponents are left alone.
inline double grading_power(double p)
{
    if (!(p > -1.0))
        throw DomainError("quadrature: endpoint exponent " + std::to_string(p) + " is not integrable");
    return p < 0.0 ? 1.0 / (1.0 + p) : 1.0;
}

// int_0^L g(t) dt where g(t) ~ t^p as t -> 0+.
template <class F>
EvalResult integrate_from_origin(F&& g, double length, double p, const QuadratureConfig& cfg)
{
    double r = grading_power(p);
    if (r == 1.0)
        return integrate(g, 0.0, length, cfg);
    auto h = [&](double w) {
        double wr1 = std::pow(w, r - 1.0);
        double t = length * wr1 * w;
        if (t == 0.0)
            return 0.0;
        return g(t) * length * r * wr1;
    };
    return integrate(h, 0.0, 1.0, cfg);
}

// int_0^inf g(u) du for integrands decaying on a unit scale (exponential
// kernels after rescaling). Panels [0, m], [m, 2m], [2m, 4m], ... until two
// consecutive panels are negligible; the last panel is added to the error
// as a tail bound.
template <class F>
EvalResult integrate_halfline(F&& g, double p_origin, const QuadratureConfig& cfg)
{
    cfg.validate();
    const double m = cfg.halfline_truncation_margin;
    EvalResult first = integrate_from_origin(g, m, p_origin, cfg);
    fracbessel::detail::NeumaierSum total;
    total.add(first.value);
    double err = first.abs_error;
    double lo = m, hi = 2.0 * m;
    int quiet = 0;
    for (int panel = 0; panel < 64; ++panel) {
        QuadratureConfig c = cfg;
        c.abs_tol = std::max(cfg.abs_tol, 0.1 * cfg.rel_tol * std::fabs(total.value()));
        EvalResult r = integrate(g, lo, hi, c);
        total.add(r.value);
        err += r.abs_error;
        double target = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total.value()));
        if (std::fabs(r.value) + r.abs_error <= 0.01 * target) {
            if (++quiet == 2)
                return {total.value(), err + std::fabs(r.value)};
        } else {
            quiet = 0;
        }
        lo = hi;
        hi *= 2.0;
    }
    throw ConvergenceError("quadrature: half-line integral does not decay");
}

} // namespace quadrature
} // namespace fracbessel

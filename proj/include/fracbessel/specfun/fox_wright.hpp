#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fracbessel/core.hpp"
#include "fracbessel/detail/compensated.hpp"
#include "fracbessel/specfun/gamma.hpp"

namespace fracbessel::specfun {

// One Gamma(shift + scale k) factor of a Fox-Wright coefficient.
struct GammaPair {
    double shift = 0.0;
    double scale = 0.0;

    bool operator==(const GammaPair&) const = default;
};

// Parameters of pPsi_q[(a_l, alpha_l); (b_j, beta_j)](z) =
// sum_k prod Gamma(a_l + alpha_l k) / prod Gamma(b_j + beta_j k) z^k / k!.
class FoxWrightParams {
public:
    FoxWrightParams() = default;
    FoxWrightParams(std::vector<GammaPair> upper, std::vector<GammaPair> lower)
        : upper_(std::move(upper)), lower_(std::move(lower))
    {
        for (const auto& p : upper_)
            if (!(p.scale >= 0.0))
                throw DomainError("FoxWrightParams: negative scale");
        for (const auto& p : lower_)
            if (!(p.scale >= 0.0))
                throw DomainError("FoxWrightParams: negative scale");
        double sa = 0.0, sb = 0.0, shift_a = 0.0, shift_b = 0.0;
        delta_radius_ = 1.0;
        for (const auto& p : upper_) {
            sa += p.scale;
            shift_a += p.shift;
            if (p.scale > 0.0)
                delta_radius_ *= std::pow(p.scale, -p.scale);
        }
        for (const auto& p : lower_) {
            sb += p.scale;
            shift_b += p.shift;
            if (p.scale > 0.0)
                delta_radius_ *= std::pow(p.scale, p.scale);
        }
        delta_ = sb - sa;
        mu_ = shift_b - shift_a + 0.5 * (static_cast<double>(upper_.size()) - static_cast<double>(lower_.size()));
    }

    const std::vector<GammaPair>& upper() const { return upper_; }
    const std::vector<GammaPair>& lower() const { return lower_; }
    // Delta = sum beta_j - sum alpha_l; the series is entire for Delta > -1.
    double delta() const { return delta_; }
    // Radius of convergence when Delta = -1.
    double radius() const { return delta_radius_; }
    double mu() const { return mu_; }

    bool operator==(const FoxWrightParams& o) const { return upper_ == o.upper_ && lower_ == o.lower_; }

private:
    std::vector<GammaPair> upper_;
    std::vector<GammaPair> lower_;
    double delta_ = 0.0;
    double delta_radius_ = 1.0;
    double mu_ = 0.0;
};

namespace detail_fw {

inline constexpr double kTol = 1e-15;
inline constexpr int kMaxTerms = 200000;

inline bool all_integer_scales(const FoxWrightParams& p)
{
    auto ok = [](const GammaPair& g) { return g.scale == std::floor(g.scale) && g.scale <= 64.0; };
    return std::all_of(p.upper().begin(), p.upper().end(), ok) && std::all_of(p.lower().begin(), p.lower().end(), ok);
}

// Smallest k from which no lower Gamma argument is <= 0.
inline int past_lower_poles(const FoxWrightParams& p)
{
    int k0 = 0;
    for (const auto& g : p.lower()) {
        if (g.shift > 0.0)
            continue;
        if (g.scale == 0.0)
            continue;
        k0 = std::max(k0, static_cast<int>(std::floor(-g.shift / g.scale)) + 1);
    }
    return k0;
}

struct SignedTerm {
    double value = 0.0;
    double rel_error = 0.0;
};

// Coefficient prod Gamma(a+alpha k)/prod Gamma(b+beta k)/k! times z^k. Uses
// tgamma products while they stay representable, log-Gamma with sign
// tracking otherwise.
inline SignedTerm term(const FoxWrightParams& p, int k, double z)
{
    for (const auto& g : p.lower())
        if (is_nonpositive_integer(g.shift + g.scale * k))
            return {0.0, 0.0};
    for (const auto& g : p.upper())
        if (is_nonpositive_integer(g.shift + g.scale * k))
            throw DomainError("fox_wright: numerator Gamma pole at k = " + std::to_string(k));
    if (k > 0 && z == 0.0)
        return {0.0, 0.0};

    bool direct = k < 170;
    for (const auto& g : p.upper())
        direct = direct && std::fabs(g.shift + g.scale * k) < 170.0;
    for (const auto& g : p.lower())
        direct = direct && std::fabs(g.shift + g.scale * k) < 170.0;
    if (direct) {
        double v = std::pow(z, k) / std::tgamma(k + 1.0);
        std::size_t n = std::max(p.upper().size(), p.lower().size());
        for (std::size_t i = 0; i < n; ++i) {
            if (i < p.upper().size())
                v *= std::tgamma(p.upper()[i].shift + p.upper()[i].scale * k);
            if (i < p.lower().size())
                v /= std::tgamma(p.lower()[i].shift + p.lower()[i].scale * k);
        }
        if (std::isfinite(v) && (v != 0.0 || z == 0.0))
            return {v, (6.0 + 4.0 * static_cast<double>(n)) * kEps};
    }

    double l = 0.0, mag = 0.0;
    int sign = 1;
    for (const auto& g : p.upper()) {
        SignedLog s = log_gamma(g.shift + g.scale * k);
        l += s.log_abs;
        mag += std::fabs(s.log_abs);
        sign *= s.sign;
    }
    for (const auto& g : p.lower()) {
        SignedLog s = log_gamma(g.shift + g.scale * k);
        l -= s.log_abs;
        mag += std::fabs(s.log_abs);
        sign *= s.sign;
    }
    double lk = std::lgamma(k + 1.0);
    l -= lk;
    mag += lk;
    if (k > 0) {
        double lz = k * std::log(std::fabs(z));
        l += lz;
        mag += std::fabs(lz);
        if (z < 0.0 && k % 2 == 1)
            sign = -sign;
    }
    if (l > 709.0)
        throw DomainError("fox_wright: term overflows at k = " + std::to_string(k));
    return {sign * std::exp(l), (8.0 + mag) * kEps};
}

inline void check_convergence(const FoxWrightParams& p, double z)
{
    if (z == 0.0)
        return;
    double d = p.delta();
    if (d > -1.0 + 1e-12)
        return;
    if (std::fabs(d + 1.0) <= 1e-12) {
        double r = p.radius();
        double az = std::fabs(z);
        if (az < r * (1.0 - 1e-12))
            return;
        if (std::fabs(az - r) <= 1e-12 * r && p.mu() > 0.5)
            return;
        throw ConvergenceError("fox_wright: Delta = -1 and |z| outside the convergence disk");
    }
    throw ConvergenceError("fox_wright: Delta = " + std::to_string(d) + " < -1, series diverges");
}

// Integer scales: the term ratio is a rational function of k, so the terms
// are generated by an exact-ratio recurrence in compensated arithmetic.
// Returns false when the recurrence cannot be used.
inline bool sum_recurrence(const FoxWrightParams& p, double z, EvalResult& out)
{
    using fracbessel::detail::Compensated;
    for (const auto& g : p.lower())
        if (is_nonpositive_integer(g.shift) || (g.shift <= 0.0 && g.scale > 0.0))
            return false;
    for (const auto& g : p.upper())
        if (g.shift <= 0.0)
            return false;
    SignedTerm t0 = term(p, 0, z);
    if (!std::isfinite(t0.value) || t0.value == 0.0)
        return false;

    Compensated t(t0.value);
    Compensated zc(z);
    fracbessel::detail::NeumaierSum s;
    s.add(t);
    int small = 0;
    double prev = std::fabs(t0.value);
    for (int k = 0; k < kMaxTerms; ++k) {
        Compensated num(1.0), den(k + 1.0);
        for (const auto& g : p.upper()) {
            int n = static_cast<int>(g.scale);
            for (int i = 0; i < n; ++i) {
                double hi, lo;
                fracbessel::detail::two_sum(g.shift, g.scale * k + i, hi, lo);
                num = num * Compensated(hi, lo);
            }
        }
        for (const auto& g : p.lower()) {
            int n = static_cast<int>(g.scale);
            for (int i = 0; i < n; ++i) {
                double hi, lo;
                fracbessel::detail::two_sum(g.shift, g.scale * k + i, hi, lo);
                den = den * Compensated(hi, lo);
            }
        }
        t = t * num * zc / den;
        if (!std::isfinite(t.hi))
            return false;
        s.add(t);
        double at = std::fabs(t.hi);
        if (at == 0.0) {
            out = {s.value(), 4.0 * kEps * std::fabs(s.value())};
            return true;
        }
        if (at < kTol * std::fabs(s.value()) && at <= prev) {
            if (++small == 3) {
                out = {s.value(), 10.0 * at + 4.0 * kEps * std::fabs(s.value()) + 1e-30 * s.abs_sum()};
                return true;
            }
        } else {
            small = 0;
        }
        prev = at;
    }
    throw ConvergenceError("fox_wright: term cap reached");
}

inline EvalResult sum_general(const FoxWrightParams& p, double z)
{
    fracbessel::detail::NeumaierSum s;
    double rounding = 0.0;
    int k_min = past_lower_poles(p);
    int small = 0;
    double prev = 0.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        SignedTerm t = term(p, k, z);
        s.add(t.value);
        double at = std::fabs(t.value);
        rounding += at * t.rel_error;
        if (k == 0 && z == 0.0)
            return {s.value(), rounding};
        if (k >= k_min && k > 0 && at <= prev && at <= kTol * std::fabs(s.value())) {
            if (++small == 3)
                return {s.value(), 10.0 * at + rounding + 2.0 * kEps * s.abs_sum()};
        } else {
            small = 0;
        }
        prev = at;
    }
    throw ConvergenceError("fox_wright: term cap reached");
}

} // namespace detail_fw

inline EvalResult fox_wright(const FoxWrightParams& params, double z)
{
    detail_fw::check_convergence(params, z);
    if (z != 0.0 && detail_fw::all_integer_scales(params)) {
        EvalResult r;
        if (detail_fw::sum_recurrence(params, z, r))
            return r;
    }
    return detail_fw::sum_general(params, z);
}

// k-th series coefficient without the z^k factor.
inline double fox_wright_coefficient(const FoxWrightParams& params, int k)
{
    return detail_fw::term(params, k, 1.0).value;
}

// E_{alpha,beta}(z) = sum z^n / Gamma(alpha n + beta).
inline EvalResult mittag_leffler(double alpha, double beta, double z)
{
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw DomainError("mittag_leffler: alpha and beta must be positive");
    if (z == 0.0)
        return {rgamma(beta), 2.0 * kEps * rgamma(beta)};
    constexpr int kMax = 200000;
    fracbessel::detail::NeumaierSum s;
    int small = 0;
    double prev = 0.0;
    double rounding = 0.0;

    bool recurrence = alpha == std::floor(alpha) && alpha <= 64.0;
    using fracbessel::detail::Compensated;
    Compensated t(rgamma(beta));
    for (int n = 0; n < kMax; ++n) {
        double tv;
        if (recurrence) {
            if (n > 0) {
                Compensated den(1.0);
                for (int i = 0; i < static_cast<int>(alpha); ++i) {
                    double hi, lo;
                    fracbessel::detail::two_sum(beta, alpha * (n - 1) + i, hi, lo);
                    den = den * Compensated(hi, lo);
                }
                t = t * Compensated(z) / den;
            }
            s.add(t);
            tv = t.hi;
        } else {
            double arg = alpha * n + beta;
            double v = 0.0;
            if (arg < 170.0) {
                v = std::pow(z, n) * rgamma(arg);
                rounding += std::fabs(v) * 6.0 * kEps;
            }
            if (arg >= 170.0 || !std::isfinite(v) || (v == 0.0 && !is_nonpositive_integer(arg))) {
                SignedLog lg = log_gamma(arg);
                double l = n * std::log(std::fabs(z)) - lg.log_abs;
                v = lg.sign * ((z < 0.0 && n % 2 == 1) ? -1.0 : 1.0) * std::exp(l);
                rounding += std::fabs(v) * (8.0 + std::fabs(l) + lg.log_abs) * kEps;
            }
            s.add(v);
            tv = v;
        }
        double at = std::fabs(tv);
        if (n > 0 && at <= prev && at <= detail_fw::kTol * std::max(std::fabs(s.value()), kEps * s.abs_sum())) {
            if (++small == 3)
                return {s.value(), 10.0 * at + rounding + 2.0 * kEps * std::fabs(s.value())};
        } else {
            small = 0;
        }
        prev = at;
    }
    throw ConvergenceError("mittag_leffler: term cap reached");
}

} // namespace fracbessel::specfun

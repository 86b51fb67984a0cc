#pragma once

#include <cmath>
#include <string>

#include "fracbessel/core.hpp"
#include "fracbessel/detail/compensated.hpp"
#include "fracbessel/specfun/gamma.hpp"

namespace fracbessel::specfun {

namespace detail_2f1 {

inline constexpr double kTol = 1e-15;
inline constexpr int kMaxTerms = 100000;
// c - a - b closer than this to an integer is treated as that integer.
inline constexpr double kIntegerSnap = 1e-9;

// Plain Gauss series; the caller guarantees |z| < 1 or a terminating series.
inline EvalResult series(double a, double b, double c, double z)
{
    fracbessel::detail::NeumaierSum s;
    double t = 1.0;
    s.add(t);
    int small = 0;
    for (int n = 0; n < kMaxTerms; ++n) {
        double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        t *= ratio;
        s.add(t);
        if (t == 0.0)
            return {s.value(), 2.0 * kEps * s.abs_sum()};
        if (std::fabs(t) < kTol * std::fabs(s.value()) && std::fabs(ratio) < 1.0) {
            if (++small == 3)
                return {s.value(), 10.0 * std::fabs(t) + 2.0 * kEps * s.abs_sum()};
        } else {
            small = 0;
        }
    }
    throw ConvergenceError("gauss_2f1: series did not converge");
}

inline double gamma_or_throw(double x)
{
    return gamma(x).value;
}

} // namespace detail_2f1

// Gauss hypergeometric 2F1(a, b; c; z) for fixed parameters. The constructor
// precomputes the connection coefficients so integrands that evaluate the
// same kernel many times pay for the Gamma functions once.
class Gauss2F1 {
public:
    Gauss2F1(double a, double b, double c) : a_(a), b_(b), c_(c)
    {
        if (is_nonpositive_integer(c))
            throw DomainError("gauss_2f1: c = " + std::to_string(c) + " is a pole");
        polynomial_ = is_nonpositive_integer(a) || is_nonpositive_integer(b);
        if (polynomial_)
            return;

        double s = c - a - b;
        if (near_integer(s, detail_2f1::kIntegerSnap)) {
            int m = static_cast<int>(std::round(s));
            if (m < 0) {
                // Euler: F(a,b;c;z) = (1-z)^{c-a-b} F(c-a,c-b;c;z), which
                // turns c = a+b-m into c = a'+b'+m.
                euler_ = true;
                ea_ = c - a;
                eb_ = c - b;
                m = -m;
            } else {
                ea_ = a;
                eb_ = b;
            }
            log_case_ = true;
            m_ = m;
            gc_ = detail_2f1::gamma_or_throw(c);
            coef_log_ = gc_ * rgamma(ea_) * rgamma(eb_);
            if (m_ >= 1)
                coef_finite_ = gc_ * std::tgamma(static_cast<double>(m_)) * rgamma(ea_ + m_) * rgamma(eb_ + m_);
            if (coef_log_ != 0.0) {
                psi_a0_ = digamma(ea_ + m_);
                psi_b0_ = digamma(eb_ + m_);
            }
        } else {
            s_ = s;
            double gc = detail_2f1::gamma_or_throw(c);
            coef1_ = gc * gamma(s).value * rgamma(c - a) * rgamma(c - b);
            coef2_ = gc * gamma(-s).value * rgamma(a) * rgamma(b);
        }
    }

    EvalResult operator()(double z) const
    {
        if (!(z >= 0.0 && z < 1.0))
            throw ConvergenceError("gauss_2f1: z = " + std::to_string(z) + " outside [0, 1)");
        if (polynomial_ || z <= 0.5)
            return detail_2f1::series(a_, b_, c_, z);
        return complement(1.0 - z);
    }

    // Evaluates at z = 1 - w, taking w directly so that z close to 1 keeps
    // its relative accuracy.
    EvalResult complement(double w) const
    {
        if (!(w > 0.0 && w <= 1.0))
            throw ConvergenceError("gauss_2f1: 1 - z = " + std::to_string(w) + " outside (0, 1]");
        if (polynomial_ || w >= 0.5)
            return detail_2f1::series(a_, b_, c_, 1.0 - w);
        if (!log_case_)
            return connection(w);
        EvalResult r = log_connection(w);
        if (euler_) {
            double f = std::pow(w, -static_cast<double>(m_));
            r.value *= f;
            r.abs_error *= f;
        }
        return r;
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

private:
    EvalResult connection(double w) const
    {
        EvalResult f1 = detail_2f1::series(a_, b_, 1.0 - s_, w);
        EvalResult f2 = detail_2f1::series(c_ - a_, c_ - b_, 1.0 + s_, w);
        double ws = std::pow(w, s_);
        double t1 = coef1_ * f1.value, t2 = coef2_ * ws * f2.value;
        double err = std::fabs(coef1_) * f1.abs_error + std::fabs(coef2_ * ws) * f2.abs_error
                     + 4.0 * kEps * (std::fabs(t1) + std::fabs(t2));
        return {t1 + t2, err};
    }

    // Abramowitz & Stegun 15.3.10 / 15.3.11 with c = a + b + m, m >= 0.
    EvalResult log_connection(double w) const
    {
        const double a = ea_, b = eb_;
        const int m = m_;
        fracbessel::detail::NeumaierSum total;
        double err = 0.0;

        if (m >= 1 && coef_finite_ != 0.0) {
            double t = 1.0, s = 1.0;
            for (int n = 0; n + 1 < m; ++n) {
                t *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0 - m)) * w;
                s += t;
            }
            total.add(coef_finite_ * s);
        }

        if (coef_log_ != 0.0) {
            double lw = std::log(w);
            double psi1 = -kEulerGamma; // psi(n+1)
            double psi2 = -kEulerGamma; // psi(n+m+1)
            for (int j = 1; j <= m; ++j)
                psi2 += 1.0 / j;
            double psia = psi_a0_, psib = psi_b0_;
            double d = 1.0;
            for (int j = 1; j <= m; ++j)
                d /= j;
            fracbessel::detail::NeumaierSum s;
            int small = 0;
            double last = 0.0;
            bool done = false;
            for (int n = 0; n < detail_2f1::kMaxTerms; ++n) {
                double bracket = m == 0 ? (2.0 * psi1 - psia - psib - lw)
                                        : (lw - psi1 - psi2 + psia + psib);
                double term = d * bracket;
                s.add(term);
                last = term;
                if (std::fabs(term) < detail_2f1::kTol * std::fabs(s.value()) && n > 2) {
                    if (++small == 3) {
                        done = true;
                        break;
                    }
                } else {
                    small = 0;
                }
                d *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * w;
                psi1 += 1.0 / (n + 1.0);
                psi2 += 1.0 / (n + m + 1.0);
                psia += 1.0 / (a + m + n);
                psib += 1.0 / (b + m + n);
                if (d == 0.0) {
                    done = true;
                    break;
                }
            }
            if (!done)
                throw ConvergenceError("gauss_2f1: logarithmic series did not converge");
            double pref = m == 0 ? coef_log_ : -coef_log_ * std::pow(-w, m);
            total.add(pref * s.value());
            err += std::fabs(pref) * (10.0 * std::fabs(last) + 4.0 * kEps * s.abs_sum());
        }
        err += 4.0 * kEps * total.abs_sum();
        return {total.value(), err};
    }

    double a_, b_, c_;
    bool polynomial_ = false;
    bool log_case_ = false;
    bool euler_ = false;
    double s_ = 0.0;
    double coef1_ = 0.0, coef2_ = 0.0;
    int m_ = 0;
    double ea_ = 0.0, eb_ = 0.0;
    double gc_ = 0.0, coef_log_ = 0.0, coef_finite_ = 0.0;
    double psi_a0_ = 0.0, psi_b0_ = 0.0;
};

inline EvalResult gauss_2f1(double a, double b, double c, double z)
{
    return Gauss2F1(a, b, c)(z);
}

inline EvalResult gauss_2f1_complement(double a, double b, double c, double one_minus_z)
{
    return Gauss2F1(a, b, c).complement(one_minus_z);
}

// Pfaff form (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)), summed directly. Only valid
// for z < 1/2, where the transformed argument stays inside the unit disk.
inline EvalResult gauss_2f1_pfaff(double a, double b, double c, double z)
{
    if (is_nonpositive_integer(c))
        throw DomainError("gauss_2f1_pfaff: c is a pole");
    if (!(z >= 0.0 && z < 0.5))
        throw ConvergenceError("gauss_2f1_pfaff: z/(z-1) leaves the unit disk for z >= 1/2");
    EvalResult r = detail_2f1::series(a, c - b, c, z / (z - 1.0));
    double f = std::pow(1.0 - z, -a);
    return {r.value * f, r.abs_error * f + 2.0 * kEps * std::fabs(r.value * f)};
}

} // namespace fracbessel::specfun

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracbessel/core.hpp"
#include "fracbessel/detail/compensated.hpp"

namespace fracbessel {

struct PowerTerm {
    double coefficient = 0.0;
    double exponent = 0.0;

    bool operator==(const PowerTerm&) const = default;
};

// f(x) = sum c_i x^{e_i} with strictly increasing exponents, plus an
// absolute bound on the omitted tail that holds for 0 <= x <= tail_radius.
// Exponents may be negative (images of B_gamma), as long as they are
// integrable against the Bessel weight.
class SeriesFunction {
public:
    SeriesFunction() = default;
    explicit SeriesFunction(std::vector<PowerTerm> terms, double tail_bound = 0.0,
                            double tail_radius = std::numeric_limits<double>::infinity())
        : terms_(std::move(terms)), tail_bound_(tail_bound), tail_radius_(tail_radius)
    {
        normalize();
    }

    static SeriesFunction monomial(double c, double e) { return SeriesFunction({{c, e}}); }
    static SeriesFunction constant(double c) { return monomial(c, 0.0); }

    const std::vector<PowerTerm>& terms() const { return terms_; }
    double tail_bound() const { return tail_bound_; }
    double tail_radius() const { return tail_radius_; }
    bool empty() const { return terms_.empty(); }

    double min_exponent() const { return terms_.empty() ? 0.0 : terms_.front().exponent; }

    EvalResult evaluate(double x) const
    {
        if (x < 0.0)
            throw DomainError("SeriesFunction: negative argument");
        if (x > tail_radius_ * (1.0 + 1e-12))
            throw DomainError("SeriesFunction: x = " + std::to_string(x) + " beyond the certified radius "
                              + std::to_string(tail_radius_));
        fracbessel::detail::NeumaierSum s;
        for (const auto& t : terms_) {
            if (x == 0.0) {
                if (t.exponent < 0.0)
                    throw DomainError("SeriesFunction: negative exponent at x = 0");
                if (t.exponent == 0.0)
                    s.add(t.coefficient);
                continue;
            }
            s.add(t.coefficient * std::pow(x, t.exponent));
        }
        return {s.value(), tail_bound_ + 4.0 * kEps * s.abs_sum()};
    }

    double operator()(double x) const { return evaluate(x).value; }

    // Term-wise derivative; constants drop out.
    SeriesFunction derivative() const
    {
        std::vector<PowerTerm> out;
        for (const auto& t : terms_)
            if (t.exponent != 0.0)
                out.push_back({t.coefficient * t.exponent, t.exponent - 1.0});
        // The tail bound does not transfer to derivatives; callers that need
        // one rebuild the series with derivative-aware truncation.
        return SeriesFunction(std::move(out), 0.0, tail_radius_);
    }

    SeriesFunction scaled(double c) const
    {
        std::vector<PowerTerm> out = terms_;
        for (auto& t : out)
            t.coefficient *= c;
        return SeriesFunction(std::move(out), std::fabs(c) * tail_bound_, tail_radius_);
    }

    friend SeriesFunction operator+(const SeriesFunction& a, const SeriesFunction& b)
    {
        std::vector<PowerTerm> out = a.terms_;
        out.insert(out.end(), b.terms_.begin(), b.terms_.end());
        return SeriesFunction(std::move(out), a.tail_bound_ + b.tail_bound_, std::min(a.tail_radius_, b.tail_radius_));
    }

    bool operator==(const SeriesFunction& o) const { return terms_ == o.terms_; }

private:
    void normalize()
    {
        for (const auto& t : terms_)
            if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent))
                throw DomainError("SeriesFunction: non-finite term");
        std::stable_sort(terms_.begin(), terms_.end(),
                         [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
        std::vector<PowerTerm> merged;
        for (const auto& t : terms_) {
            if (!merged.empty()
                && std::fabs(merged.back().exponent - t.exponent) <= 1e-12 * std::max(1.0, std::fabs(t.exponent)))
                merged.back().coefficient += t.coefficient;
            else
                merged.push_back(t);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(), [](const PowerTerm& t) { return t.coefficient == 0.0; }),
                     merged.end());
        terms_ = std::move(merged);
    }

    std::vector<PowerTerm> terms_;
    double tail_bound_ = 0.0;
    double tail_radius_ = std::numeric_limits<double>::infinity();
};

} // namespace fracbessel

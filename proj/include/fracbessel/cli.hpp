#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fracbessel/core.hpp"
#include "fracbessel/quadrature.hpp"
#include "fracbessel/solver.hpp"

namespace fracbessel::cli {

enum class Spacing { linear, log };

struct GridSpec {
    double x_min = 0.0;
    double x_max = 3.0;
    int points = 301;
    Spacing spacing = Spacing::linear;

    void validate() const
    {
        if (!(x_min >= 0.0) || !std::isfinite(x_min))
            throw ConfigError("grid: xmin must be finite and >= 0");
        if (!(x_max > x_min) || !std::isfinite(x_max))
            throw ConfigError("grid: xmax must be finite and greater than xmin");
        if (points < 2)
            throw ConfigError("grid: points must be >= 2");
        if (spacing == Spacing::log && !(x_min > 0.0))
            throw ConfigError("grid: log spacing needs xmin > 0");
    }

    std::vector<double> nodes() const
    {
        validate();
        std::vector<double> xs(points);
        for (int i = 0; i < points; ++i) {
            double u = static_cast<double>(i) / (points - 1);
            xs[i] = spacing == Spacing::linear ? x_min + u * (x_max - x_min)
                                               : x_min * std::pow(x_max / x_min, u);
        }
        xs.front() = x_min;
        xs.back() = x_max;
        return xs;
    }
};

struct RunConfig {
    solver::ProblemSpec problem;
    GridSpec grid;
    QuadratureConfig quadrature;
    std::string output_path; // empty: standard output
    bool caputo_column = false;
};

namespace detail {

inline std::string trim(const std::string& s)
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v)
{
    std::string t = trim(v);
    char* end = nullptr;
    errno = 0;
    double d = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(d))
        throw ConfigError("config: '" + key + "' expects a finite number, got '" + v + "'");
    return d;
}

inline int parse_int(const std::string& key, const std::string& v)
{
    double d = parse_double(key, v);
    if (d != std::floor(d) || std::fabs(d) > 1e9)
        throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
    return static_cast<int>(d);
}

inline bool parse_bool(const std::string& key, const std::string& v)
{
    std::string t = trim(v);
    if (t == "1" || t == "true" || t == "yes" || t == "on")
        return true;
    if (t == "0" || t == "false" || t == "no" || t == "off")
        return false;
    throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

} // namespace detail

// Accumulates key=value settings from config files and flags, then
// assembles a validated RunConfig. Later settings override earlier ones.
class ConfigBuilder {
public:
    ConfigBuilder()
    {
        if (const char* tol = std::getenv("FRACBESSEL_TOL"))
            cfg_.quadrature.rel_tol = detail::parse_double("FRACBESSEL_TOL", tol);
    }

    void set(const std::string& raw_key, const std::string& value)
    {
        const std::string key = detail::trim(raw_key);
        if (key == "gamma")
            cfg_.problem.gamma_param = detail::parse_double(key, value);
        else if (key == "alpha")
            cfg_.problem.alpha = detail::parse_double(key, value);
        else if (key == "lambda")
            cfg_.problem.lambda = detail::parse_double(key, value);
        else if (key.size() >= 2 && (key[0] == 'a' || key[0] == 'b') && is_digits(key.substr(1)))
            set_datum(detail::parse_int(key, key.substr(1)), solver::kind_for_index(std::stoi(key.substr(1))),
                      detail::parse_double(key, value));
        else if (key == "cond")
            set_condition(value);
        else if (key == "xmin")
            cfg_.grid.x_min = detail::parse_double(key, value);
        else if (key == "xmax")
            cfg_.grid.x_max = detail::parse_double(key, value);
        else if (key == "points")
            cfg_.grid.points = detail::parse_int(key, value);
        else if (key == "spacing")
            cfg_.grid.spacing = parse_spacing(value);
        else if (key == "out")
            cfg_.output_path = detail::trim(value);
        else if (key == "rel_tol")
            cfg_.quadrature.rel_tol = detail::parse_double(key, value);
        else if (key == "abs_tol")
            cfg_.quadrature.abs_tol = detail::parse_double(key, value);
        else if (key == "max_subdivisions")
            cfg_.quadrature.max_subdivisions = detail::parse_int(key, value);
        else if (key == "caputo")
            cfg_.caputo_column = detail::parse_bool(key, value);
        else
            throw ConfigError("config: unknown key '" + key + "'");
    }

    void load_text(const std::string& text, const std::string& origin = "config")
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
            set(line.substr(0, eq), line.substr(eq + 1));
        }
    }

    void load_file(const std::string& path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw ConfigError("config: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        load_text(ss.str(), path);
    }

    RunConfig build() const
    {
        RunConfig out = cfg_;
        out.problem.conditions.clear();
        for (const auto& [index, c] : conditions_)
            out.problem.conditions.push_back(c);
        out.problem.validate();
        out.grid.validate();
        out.quadrature.validate();
        return out;
    }

private:
    static bool is_digits(const std::string& s)
    {
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    }

    static Spacing parse_spacing(const std::string& v)
    {
        std::string t = detail::trim(v);
        if (t == "linear")
            return Spacing::linear;
        if (t == "log")
            return Spacing::log;
        throw ConfigError("config: spacing must be 'linear' or 'log', got '" + v + "'");
    }

    void set_datum(int index, solver::ConditionKind kind, double value)
    {
        if (index < 0)
            throw ConfigError("config: negative condition index");
        conditions_[index] = {index, kind, value};
    }

    // k:kind:value, kind one of value | weighted
    void set_condition(const std::string& spec)
    {
        std::string t = detail::trim(spec);
        auto c1 = t.find(':');
        auto c2 = c1 == std::string::npos ? std::string::npos : t.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw ConfigError("config: cond expects k:kind:value, got '" + spec + "'");
        int index = detail::parse_int("cond", t.substr(0, c1));
        std::string kind = detail::trim(t.substr(c1 + 1, c2 - c1 - 1));
        double value = detail::parse_double("cond", t.substr(c2 + 1));
        solver::ConditionKind k;
        if (kind == "value" || kind == "value_at_origin")
            k = solver::ConditionKind::value_at_origin;
        else if (kind == "weighted" || kind == "weighted_derivative" || kind == "weighted_derivative_at_origin")
            k = solver::ConditionKind::weighted_derivative;
        else
            throw ConfigError("config: unknown condition kind '" + kind + "'");
        set_datum(index, k, value);
    }

    RunConfig cfg_;
    std::map<int, solver::Condition> conditions_;
};

struct SolveRow {
    double x, f, abs_error;
    bool cancellation_warning = false;
};

struct ResidualRow {
    double x, residual, estimate;
    double caputo_residual = 0.0, caputo_estimate = 0.0;
};

inline std::vector<SolveRow> solve_rows(const RunConfig& cfg)
{
    solver::SolutionExpansion sol = solver::solve(cfg.problem);
    std::vector<SolveRow> rows;
    for (double x : cfg.grid.nodes()) {
        solver::Diagnostics d = solver::evaluate_with_diagnostics(sol, x);
        rows.push_back({x, d.result.value, d.result.abs_error, d.warning});
    }
    return rows;
}

inline std::vector<ResidualRow> residual_rows(const RunConfig& cfg)
{
    if (!(cfg.grid.x_min > 0.0))
        throw DomainError("residual: the grid must start at xmin > 0");
    solver::SolutionExpansion sol = solver::solve(cfg.problem);
    std::vector<ResidualRow> rows;
    for (double x : cfg.grid.nodes()) {
        EvalResult r = solver::residual(sol, cfg.problem, x, cfg.quadrature);
        ResidualRow row{x, r.value, r.abs_error};
        if (cfg.caputo_column) {
            EvalResult c = solver::residual_caputo(sol, cfg.problem, x, cfg.quadrature);
            row.caputo_residual = c.value;
            row.caputo_estimate = c.abs_error;
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string solve_csv(const std::vector<SolveRow>& rows)
{
    std::string out = "x,f,abs_error_estimate\n";
    for (const auto& r : rows)
        out += format_g17(r.x) + "," + format_g17(r.f) + "," + format_g17(r.abs_error) + "\n";
    return out;
}

inline std::string residual_csv(const std::vector<ResidualRow>& rows, bool caputo)
{
    std::string out = caputo ? "x,residual,estimate,caputo_residual,caputo_estimate\n" : "x,residual,estimate\n";
    for (const auto& r : rows) {
        out += format_g17(r.x) + "," + format_g17(r.residual) + "," + format_g17(r.estimate);
        if (caputo)
            out += "," + format_g17(r.caputo_residual) + "," + format_g17(r.caputo_estimate);
        out += "\n";
    }
    return out;
}

inline double max_abs_residual(const std::vector<ResidualRow>& rows)
{
    double m = 0.0;
    for (const auto& r : rows)
        m = std::max(m, std::fabs(r.residual));
    return m;
}

// Writes bytes unchanged (binary mode keeps LF line endings everywhere).
inline void write_output(const std::string& path, const std::string& content)
{
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw ConfigError("cannot open output file '" + path + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f)
        throw ConfigError("failed writing '" + path + "'");
}

} // namespace fracbessel::cli

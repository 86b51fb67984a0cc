#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracbessel/certification.hpp"
#include "fracbessel/cli.hpp"

using namespace fracbessel;

namespace {

// Problem and grid flags shared by solve and residual. Values stay strings
// so that the config builder parses flags and files identically.
struct RunFlags {
    std::string config;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::vector<std::string> conds;

    void add(CLI::App* app)
    {
        app->add_option("--config", config, "key=value configuration file")->check(CLI::ExistingFile);
        const std::vector<std::pair<std::string, std::string>> keys = {
            {"--gamma", "gamma"},         {"--alpha", "alpha"},     {"--lambda", "lambda"},   {"--a0,--b0", "a0"},
            {"--a1,--b1", "a1"},          {"--xmin", "xmin"},       {"--xmax", "xmax"},       {"--points", "points"},
            {"--spacing", "spacing"},     {"--out", "out"},         {"--rel-tol", "rel_tol"}, {"--abs-tol", "abs_tol"},
            {"--max-subdivisions", "max_subdivisions"},
        };
        slots_.reserve(keys.size());
        for (const auto& [flag, key] : keys) {
            slots_.push_back({key, {}});
            app->add_option(flag, slots_.back().second, "overrides '" + key + "'");
        }
        app->add_option("--cond", conds, "condition k:kind:value, kind = value | weighted");
    }

    cli::RunConfig build(bool caputo) const
    {
        cli::ConfigBuilder b;
        if (!config.empty())
            b.load_file(config);
        for (const auto& [key, value] : slots_)
            if (!value.empty())
                b.set(key, value);
        for (const auto& c : conds)
            b.set("cond", c);
        if (caputo)
            b.set("caputo", "1");
        return b.build();
    }

private:
    std::vector<std::pair<std::string, std::string>> slots_;
};

int run_solve(const RunFlags& flags)
{
    cli::RunConfig cfg = flags.build(false);
    std::vector<cli::SolveRow> rows = cli::solve_rows(cfg);
    int warned = 0;
    for (const auto& r : rows)
        warned += r.cancellation_warning ? 1 : 0;
    if (warned > 0)
        std::fprintf(stderr, "warning: cancellation above %.0g at %d grid points\n", solver::kCancellationWarning, warned);
    cli::write_output(cfg.output_path, cli::solve_csv(rows));
    return 0;
}

int run_residual(const RunFlags& flags, bool caputo)
{
    cli::RunConfig cfg = flags.build(caputo);
    std::vector<cli::ResidualRow> rows = cli::residual_rows(cfg);
    cli::write_output(cfg.output_path, cli::residual_csv(rows, cfg.caputo_column));
    std::fprintf(stderr, "max_abs_residual=%.17g\n", cli::max_abs_residual(rows));
    return 0;
}

int run_certify(const std::string& filter, const std::string& perturb, const std::string& report_path)
{
    certification::Options opt;
    opt.filter = filter;
    if (!perturb.empty()) {
        auto colon = perturb.find(':');
        opt.perturb = perturb.substr(0, colon);
        if (colon != std::string::npos)
            opt.perturb_amount = cli::detail::parse_double("perturb", perturb.substr(colon + 1));
    }
    certification::Result res = certification::run(opt);
    std::fputs(res.summary.text.c_str(), stdout);
    if (!report_path.empty())
        cli::write_output(report_path, res.summary.key_value);
    return res.summary.all_pass() && res.errors.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fractional Bessel eigenvalue problems: solve, residual and certification"};
    app.require_subcommand(1);

    RunFlags solve_flags, residual_flags;
    CLI::App* solve = app.add_subcommand("solve", "evaluate the closed-form solution on a grid (CSV)");
    solve_flags.add(solve);

    CLI::App* residual = app.add_subcommand("residual", "eigen-equation residual on a grid (CSV)");
    residual_flags.add(residual);
    bool caputo = false;
    residual->add_flag("--caputo", caputo, "add the classical Caputo residual columns (gamma = 0)");

    CLI::App* certify = app.add_subcommand("certify", "run the oracle cross-checks");
    std::string filter, perturb, report;
    certify->add_option("--filter", filter, "tag or check name to run");
    certify->add_option("--perturb", perturb, "test hook: NAME[:AMOUNT] shifts that check's main value");
    certify->add_option("--report", report, "write key=value records to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*solve)
            return run_solve(solve_flags);
        if (*residual)
            return run_residual(residual_flags, caputo);
        return run_certify(filter, perturb, report);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

// Command-line front end: runs experiments described by JSON config files and
// writes CSV or JSON tables.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "cli/report.hpp"

namespace {

struct Args {
    std::string config;
    std::string out;
    std::string format = "csv";
    bool no_timing = false;
};

void add_common(CLI::App* sub, Args& a) {
    sub->add_option("--config", a.config, "experiment config (JSON)")->required();
    sub->add_option("--out", a.out, "output file (default: stdout)");
    sub->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void write(const Args& a, const std::string& text) {
    if (a.out.empty() || a.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot write '" + a.out + "'");
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spline-collocation solvers for weakly singular Volterra equations"};
    app.require_subcommand(1);
    Args a;
    const char* names[] = {"solve1d", "solve2d", "convergence", "widths", "lebesgue", "oracle-check"};
    const char* help[] = {"solve a 1D problem and print nodal values",
                          "solve a 2D problem and print nodal values",
                          "convergence table over the configured N list",
                          "spline error versus functional count, covering counts and bump suprema",
                          "Lebesgue constants of a node family",
                          "compare the solver with the product-integration oracle"};
    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], help[i]);
        add_common(sub, a);
        if (std::string(names[i]) == "convergence")
            sub->add_flag("--no-timing", a.no_timing, "write wall_time_ms as 0");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    vie::cli::ExperimentConfig cfg;
    try {
        cfg = vie::cli::load_config(a.config);
        if (a.no_timing) cfg.timing = false;
        if (cmd == "solve1d" && cfg.l != 1)
            throw vie::cli::ConfigError("problem", 0, "solve1d needs a one-dimensional problem");
        if (cmd == "solve2d" && cfg.l != 2)
            throw vie::cli::ConfigError("problem", 0, "solve2d needs a two-dimensional problem");
        vie::cli::make_problem(cfg);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }
    const auto fmt = vie::cli::format_from_string(a.format);
    try {
        if (cmd == "convergence") {
            const auto rep = vie::cli::run_convergence(cfg);
            write(a, vie::cli::emit_report(rep, fmt));
            for (const auto& row : rep.rows)
                if (!row.error.empty()) std::cerr << "N=" << row.N << ": " << row.error << '\n';
            return rep.failed() ? 2 : 0;
        }
        vie::cli::Table t;
        if (cmd == "solve1d" || cmd == "solve2d") t = vie::cli::run_solve(cfg);
        else if (cmd == "widths") t = vie::cli::run_widths(cfg);
        else if (cmd == "lebesgue") t = vie::cli::run_lebesgue(cfg);
        else t = vie::cli::run_oracle_check(cfg);
        write(a, vie::cli::emit_table(t, fmt));
        return t.failed ? 2 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

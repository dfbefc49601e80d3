// SPDX-License-Identifier: Apache-2.0
//
// isac-sic-lab <command> --config <file> [--seed N] [--trials N] [--out DIR] [--workers N]
// isac-sic-lab render --csv <file> --x <column> --y <column>... --out <file.svg>
//
// Exit status: 0 success, 2 invalid config or missing chart column, 3 filesystem failure.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>

#include "isac/errors.hpp"
#include "isac/lab/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFilesystem = 3;

struct RunOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<unsigned> workers;
    std::string out;
};

struct RenderOptions {
    std::string csv;
    std::string out;
    isac::lab::ChartSpec chart;
    std::string group;
};

int run_command(isac::lab::Command command, const RunOptions& opt) {
    using namespace isac::lab;
    ExperimentSpec spec = load_experiment(command, opt.config);
    if (opt.seed) spec.seed = *opt.seed;
    if (opt.trials) {
        if (*opt.trials == 0) throw isac::ConfigError("trials >= 1 violated: trials=0");
        spec.trials = *opt.trials;
    }
    if (opt.workers) spec.workers = *opt.workers;
    if (!opt.out.empty()) spec.out_dir = opt.out;

    const Experiment result = compute(spec);
    const auto written = write_outputs(spec, result);
    std::cout << result.summary;
    for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';
    return 0;
}

int render_command(RenderOptions opt) {
    if (!opt.group.empty()) opt.chart.group_column = opt.group;
    isac::lab::render_chart(opt.csv, opt.chart, opt.out);
    std::cout << "wrote " << opt.out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uplink NOMA-ISAC experiment runner"};
    app.set_version_flag("--version", isac::lab::kToolVersion);
    app.require_subcommand(1);

    const isac::lab::Command commands[] = {isac::lab::Command::op_curve, isac::lab::Command::ecr_curve,
                                           isac::lab::Command::sr_curve,  isac::lab::Command::region,
                                           isac::lab::Command::asymptotics, isac::lab::Command::table1};
    RunOptions run_opt;
    std::optional<isac::lab::Command> chosen;
    for (auto c : commands) {
        auto* sub = app.add_subcommand(isac::lab::to_string(c), "Run the " + isac::lab::to_string(c) + " experiment");
        sub->add_option("--config", run_opt.config, "Experiment config file")->required();
        sub->add_option("--seed", run_opt.seed, "Master seed");
        sub->add_option("--trials", run_opt.trials, "Monte Carlo trials");
        sub->add_option("--workers", run_opt.workers, "Worker threads (0: all cores)");
        sub->add_option("--out", run_opt.out, "Output directory");
        sub->callback([&chosen, c] { chosen = c; });
    }

    RenderOptions render_opt;
    bool render = false;
    auto* r = app.add_subcommand("render", "Draw an SVG chart from a CSV file");
    r->add_option("--csv", render_opt.csv, "Input CSV")->required();
    r->add_option("--out", render_opt.out, "Output SVG")->required();
    r->add_option("--x", render_opt.chart.x_column, "x column")->required();
    r->add_option("--y", render_opt.chart.y_columns, "y columns")->required();
    r->add_option("--title", render_opt.chart.title, "Chart title");
    r->add_option("--x-label", render_opt.chart.x_label, "x axis label");
    r->add_option("--y-label", render_opt.chart.y_label, "y axis label");
    r->add_option("--group", render_opt.group, "Split rows into closed regions by this column");
    r->add_flag("--log-y", render_opt.chart.log_y, "Logarithmic y axis");
    r->callback([&render] { render = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (render) return render_command(render_opt);
        return run_command(*chosen, run_opt);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFilesystem;
    } catch (const isac::StructuralError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

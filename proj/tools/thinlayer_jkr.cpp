// thinlayer-jkr: batch driver for the thin-layer adhesive contact solvers.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thinlayer/cli/config.hpp"
#include "thinlayer/cli/runner.hpp"
#include "thinlayer/error.hpp"

namespace {

using thinlayer::Error;
using thinlayer::ErrorClass;
using thinlayer::ErrorKind;

int exit_code(ErrorKind kind) {
    switch (thinlayer::classify(kind)) {
        case ErrorClass::Validation: return 2;
        case ErrorClass::Solver: return 3;
        case ErrorClass::Tolerance: return 4;
    }
    return 3;
}

int report(int code, std::string_view name, const std::string& detail) {
    std::string line = detail;
    for (char& c : line) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    std::cerr << "ERROR " << code << " " << name << ": " << line << std::endl;
    return code;
}

struct Common {
    std::string config;
    std::string out = "-";
    std::string format = "json";
    bool no_diagnostics = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "job configuration (JSON); '-' reads stdin")->required();
    cmd->add_option("--out", c.out, "output file; '-' writes stdout")->capture_default_str();
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_flag("--no-diagnostics", c.no_diagnostics, "omit residual and oracle diagnostics");
}

struct RangeOverride {
    double from = 0.0, to = 0.0;
    int steps = 0;
    std::string scale = "linear";
};

void add_range(CLI::App* cmd, RangeOverride& r) {
    cmd->add_option("--from", r.from, "range start")->required();
    cmd->add_option("--to", r.to, "range end")->required();
    cmd->add_option("--steps", r.steps, "number of samples")->required();
    cmd->add_option("--scale", r.scale, "sample spacing")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adhesive contact of thin bonded elastic layers"};
    app.set_version_flag("--version", std::string("thinlayer-jkr ") + thinlayer::cli::kToolVersion);
    app.require_subcommand(1);

    Common common;
    auto* run = app.add_subcommand("run", "run the task block of a configuration");
    add_common(run, common);

    auto* pulloff = app.add_subcommand("pulloff", "pull-off force (overrides the task block)");
    add_common(pulloff, common);

    RangeOverride sweep_range;
    std::string variable = "delta0";
    auto* sweep = app.add_subcommand("sweep", "tabulate a load curve (overrides the task block)");
    add_common(sweep, common);
    sweep->add_option("--variable", variable, "swept quantity")
        ->check(CLI::IsMember({"delta0", "F", "a"}))
        ->capture_default_str();
    add_range(sweep, sweep_range);

    RangeOverride bl_range;
    double C1 = 1.0;
    auto* blprofile = app.add_subcommand("blprofile", "sample the edge-zone pressure profile");
    add_common(blprofile, common);
    add_range(blprofile, bl_range);
    blprofile->add_option("--C1", C1, "regular-part amplitude (incompressible)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(2, "UsageError", e.what());
    }

    try {
        thinlayer::cli::JobConfig cfg = thinlayer::cli::load_config(common.config);

        nlohmann::json override_task;
        if (pulloff->parsed()) {
            override_task = {{"type", "pulloff"}};
        } else if (sweep->parsed()) {
            override_task = {{"type", "sweep"},       {"variable", variable},
                             {"from", sweep_range.from}, {"to", sweep_range.to},
                             {"steps", sweep_range.steps}, {"scale", sweep_range.scale}};
        } else if (blprofile->parsed()) {
            override_task = {{"type", "blprofile"}, {"from", bl_range.from}, {"to", bl_range.to},
                             {"steps", bl_range.steps}, {"scale", bl_range.scale}, {"C1", C1}};
        }
        if (!override_task.is_null()) {
            override_task["tolerance"] = cfg.task.tolerance;
            cfg.task = thinlayer::cli::parse_task(override_task);
            cfg.task_echo = thinlayer::cli::task_to_json(cfg.task);
        }

        thinlayer::cli::RunOptions opts;
        opts.format = common.format == "csv" ? thinlayer::cli::Format::Csv : thinlayer::cli::Format::Json;
        opts.diagnostics = !common.no_diagnostics;
        const auto rec = thinlayer::cli::execute(cfg, opts);
        const std::string payload = opts.format == thinlayer::cli::Format::Json
                                        ? thinlayer::cli::to_json(cfg, rec, opts.diagnostics)
                                        : thinlayer::cli::to_csv(rec, opts.diagnostics);
        if (common.out == "-") {
            std::cout << payload << std::flush;
        } else {
            std::ofstream out(common.out, std::ios::binary);
            if (!out) return report(2, "ConfigError", "cannot open output file '" + common.out + "'");
            out << payload;
            if (!out.flush()) return report(2, "ConfigError", "failed writing '" + common.out + "'");
        }
        if (!(rec.worst_check <= cfg.task.tolerance)) {
            return report(4, "ToleranceNotMet",
                          rec.worst_check_name + " = " + thinlayer::cli::format_number(rec.worst_check) +
                              " exceeds tolerance " + thinlayer::cli::format_number(cfg.task.tolerance));
        }
        return 0;
    } catch (const Error& e) {
        return report(exit_code(e.kind()), thinlayer::to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
        return report(3, "InternalError", e.what());
    }
}

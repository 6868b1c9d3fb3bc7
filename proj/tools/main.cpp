#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "config.hpp"

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("dlmg");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%H:%M:%S] %^%l%$ %v");
    const char* env = std::getenv("DLMG_LOG");
    auto level = spdlog::level::info;
    if (env && *env) {
        level = spdlog::level::from_str(env);
        // from_str maps anything unknown to off; say so instead of going quiet
        if (level == spdlog::level::off && std::string(env) != "off") {
            level = spdlog::level::info;
            spdlog::warn("DLMG_LOG={} not understood, using info", env);
        }
    }
    spdlog::set_level(level);
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    using namespace dlmg::cli;

    CLI::App app{"Dissipative LMG model: steady states, dynamics, probe spectra and Q-functions"};
    app.set_version_flag("--version", DLMG_VERSION);
    app.require_subcommand(1, 1);

    std::string config_path, preset_name, out_dir = "dlmg_out";
    unsigned hw = std::thread::hardware_concurrency();
    int jobs = hw ? int(hw) : 1;
    bool list = false, gnuplot = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"steady", "steady-state sweeps: moments, entanglement, linearized eigenvalues"},
        {"dynamics", "C_R(t) and moments from a Dicke initial state"},
        {"spectrum", "probe transmission of the cavity in the linearized regime"},
        {"qfunc", "spin Q-function on the Bloch sphere"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "flat key = value file")->check(CLI::ExistingFile);
        sub->add_option("--preset", preset_name, "built-in parameter block, e.g. fig3");
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--gnuplot", gnuplot, "also write gnuplot scripts next to the CSV files");
        sub->add_flag("--list-presets", list, "print the presets of this command and exit");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    if (list) {
        for (const auto& p : preset_names(command)) {
            std::cout << p << '\n';
            for (const auto& [k, v] : preset(command, p)) std::cout << "  " << k << " = " << v << '\n';
        }
        return 0;
    }

    RunContext ctx;
    RunConfig cfg;
    try {
        if (config_path.empty() && preset_name.empty()) throw ConfigError("give --config, --preset or both");
        KeyValues pre = preset_name.empty() ? KeyValues{} : preset(command, preset_name);
        KeyValues file = config_path.empty() ? KeyValues{} : read_config_file(config_path);
        if (gnuplot) file["gnuplot"] = "true";
        cfg = resolve(command, pre, file);
        ctx.out_dir = out_dir;
        std::filesystem::create_directories(ctx.out_dir);
    } catch (const ConfigError& e) {
        spdlog::error("config: {}", e.what());
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        spdlog::error("cannot create {}: {}", out_dir, e.what());
        return 1;
    }
    ctx.jobs = jobs;
    ctx.preset = preset_name;

    auto t0 = std::chrono::steady_clock::now();
    spdlog::info("{}: {} parameter points x {} N values, {} jobs, output in {}", command,
                 cfg.parameter_points().size(), cfg.n_atoms.size(), jobs, out_dir);
    try {
        run_command(cfg, ctx);
    } catch (const std::exception& e) {
        // anything reaching here is an I/O problem; the points themselves never throw
        spdlog::error("{}", e.what());
        return 1;
    }

    nlohmann::json manifest;
    manifest["tool"] = "dlmg";
    manifest["version"] = DLMG_VERSION;
    manifest["command"] = command;
    manifest["preset"] = preset_name;
    manifest["config_file"] = config_path;
    manifest["config"] = cfg.snapshot;
    manifest["jobs"] = jobs;
    manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest["files"] = ctx.files;
    manifest["failures"] = ctx.failures;
    manifest["points"] = ctx.points;
    std::ofstream(ctx.out_dir / "manifest.json") << manifest.dump(2) << '\n';

    if (ctx.failures) {
        spdlog::warn("{} of {} points failed; see manifest.json", ctx.failures, ctx.points.size());
        return 2;
    }
    return 0;
}

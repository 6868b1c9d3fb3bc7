#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace dlmg::cli {

struct RunContext {
    std::filesystem::path out_dir;
    int jobs = 1;
    std::string preset;
    std::vector<std::string> files;  // relative to out_dir, in write order
    nlohmann::json points = nlohmann::json::array();
    int failures = 0;

    void write(const std::string& name, const std::string& body);
};

// Runs one subcommand, writing its CSV files through ctx. Per-point
// failures are counted in ctx.failures; only configuration problems throw.
void run_command(const RunConfig& c, RunContext& ctx);

}  // namespace dlmg::cli

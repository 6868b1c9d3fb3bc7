#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlmg/dlmg.hpp"

namespace dlmg::cli {

// Anything wrong with the configuration itself; maps to exit status 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

// Flat "key = value" text. '#' starts a comment, blank lines are skipped,
// a repeated key is an error.
KeyValues parse_config_text(const std::string& text, const std::string& origin);
KeyValues read_config_file(const std::string& path);

// Built-in parameter blocks for one command, e.g. ("steady", "fig3").
KeyValues preset(const std::string& command, const std::string& name);
std::vector<std::string> preset_names(const std::string& command);

struct RunConfig {
    std::string command;
    KeyValues snapshot;  // every key after defaults, preset and file are merged

    LMGParams base;  // n_atoms unset here; see n_atoms
    std::vector<int> n_atoms;
    bool from_micro = false;

    std::string sweep;  // "", "lambda" or "h"
    std::vector<double> sweep_values;

    std::set<std::string> outputs;
    double tol = 1e-10;
    std::uint64_t seed = 20240611;
    double singular_offset = 1e-6;
    int phi_points = 0;

    double t_end = 40.0;
    int t_points = 401;
    int initial_index = 0;  // Dicke index k, m = j - k
    std::string engine = "finite";

    double nu_min = -3.0, nu_max = 3.0;
    int nu_points = 2001;
    double kappa_a = 0.3, delta_a = 15.0, lambda_b = 0.87, kappa_b = 15.0, delta_b = 0.0;
    bool approx = false;

    int theta_points = 91, qphi_points = 181;
    std::string state = "steady";
    double snapshot_time = 0.0;

    bool gnuplot = false;

    // One entry per sweep value, or the single base value without a sweep.
    std::vector<LMGParams> parameter_points() const;
};

// Merge defaults <- preset <- file and validate. Unknown keys are rejected.
RunConfig resolve(const std::string& command, const KeyValues& preset_kv, const KeyValues& file_kv);

}  // namespace dlmg::cli

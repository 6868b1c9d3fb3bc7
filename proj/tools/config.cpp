#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace dlmg::cli {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto a = s.find_first_not_of(ws);
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || !std::isfinite(x)) throw ConfigError(key + ": not a finite number: '" + v + "'");
    return x;
}

long to_long(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long x = 0;
    try {
        x = std::stol(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
    return x;
}

int to_positive_int(const std::string& key, const std::string& v, int min = 1) {
    long x = to_long(key, v);
    if (x < min || x > 100000000) throw ConfigError(key + ": must be an integer >= " + std::to_string(min));
    return int(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

// "1.5" or "(re,im)"
cplx to_complex(const std::string& key, const std::string& v) {
    if (v.size() > 2 && v.front() == '(' && v.back() == ')') {
        auto parts = split_list(v.substr(1, v.size() - 2));
        if (parts.size() != 2) throw ConfigError(key + ": complex values are written (re,im)");
        return {to_double(key, parts[0]), to_double(key, parts[1])};
    }
    return {to_double(key, v), 0.0};
}

const std::set<std::string> kKnownKeys = {
    "model", "n_atoms", "h", "lambda", "gamma_a", "gamma_b",
    "sweep", "sweep.start", "sweep.stop", "sweep.points", "sweep.values",
    "outputs", "tol", "seed", "singular_offset", "phi_points",
    "t_end", "t_points", "initial_state", "engine",
    "nu_min", "nu_max", "nu_points", "approx",
    "cavity.kappa_a", "cavity.delta_a", "cavity.lambda_b", "cavity.kappa_b", "cavity.delta_b",
    "theta_points", "qphi_points", "state", "snapshot_time",
    "gnuplot",
};

const std::set<std::string> kMicroKeys = {
    "micro.rabi_r0", "micro.rabi_s0", "micro.rabi_r1", "micro.rabi_s1",
    "micro.g_r0", "micro.g_s1", "micro.g_r1", "micro.g_s0",
    "micro.delta_r", "micro.delta_s", "micro.omega_1", "micro.omega_1_prime",
    "micro.kappa_a", "micro.kappa_b", "micro.delta_a", "micro.delta_b",
};

const std::set<std::string> kOutputs = {"moments", "entanglement", "eigenvalues", "spectrum_peak"};

KeyValues defaults(const std::string& command) {
    KeyValues kv = {
        {"model", "gamma0"}, {"n_atoms", "100"}, {"h", "1"}, {"lambda", "0.5"},
        {"gamma_a", "0.01"}, {"gamma_b", "0.2"},
        {"tol", "1e-10"}, {"seed", "20240611"}, {"singular_offset", "1e-6"},
        {"gnuplot", "false"},
    };
    if (command == "steady") {
        kv["outputs"] = "moments,entanglement";
        kv["phi_points"] = "0";
    } else if (command == "dynamics") {
        kv["t_end"] = "40";
        kv["t_points"] = "401";
        kv["initial_state"] = "all_up";
        kv["engine"] = "finite";
        kv["tol"] = "1e-9";
    } else if (command == "spectrum") {
        kv["nu_min"] = "-3";
        kv["nu_max"] = "3";
        kv["nu_points"] = "2001";
        kv["approx"] = "false";
        kv["cavity.kappa_a"] = "0.3";
        kv["cavity.delta_a"] = "15";
        kv["cavity.lambda_b"] = "0.87";
        kv["cavity.kappa_b"] = "15";
        kv["cavity.delta_b"] = "0";
    } else if (command == "qfunc") {
        kv["n_atoms"] = "50";
        kv["theta_points"] = "91";
        kv["qphi_points"] = "181";
        kv["state"] = "steady";
        kv["snapshot_time"] = "0";
        kv["initial_state"] = "all_up";
    }
    return kv;
}

// Keys each command reads; anything else known but unused is refused so a
// typo like t_end on a steady run does not pass silently.
bool used_by(const std::string& command, const std::string& key) {
    static const std::set<std::string> common = {"model", "n_atoms", "h", "lambda", "gamma_a", "gamma_b", "sweep",
                                                 "sweep.start", "sweep.stop", "sweep.points", "sweep.values",
                                                 "tol", "seed", "singular_offset", "gnuplot"};
    if (common.count(key) || kMicroKeys.count(key)) return true;
    if (command == "steady")
        return key == "outputs" || key == "phi_points" || key.rfind("cavity.", 0) == 0 || key == "nu_min" ||
               key == "nu_max" || key == "nu_points";
    if (command == "dynamics")
        return key == "t_end" || key == "t_points" || key == "initial_state" || key == "engine";
    if (command == "spectrum")
        return key == "nu_min" || key == "nu_max" || key == "nu_points" || key == "approx" ||
               key.rfind("cavity.", 0) == 0;
    if (command == "qfunc")
        return key == "theta_points" || key == "qphi_points" || key == "state" || key == "snapshot_time" ||
               key == "initial_state";
    return false;
}

int parse_model(const std::string& v) {
    if (v == "gamma0" || v == "0") return 0;
    if (v == "isotropic" || v == "+1" || v == "1") return 1;
    if (v == "conventional" || v == "-1") return -1;
    throw ConfigError("model: expected gamma0, isotropic or conventional, got '" + v + "'");
}

int parse_initial(const std::string& v) {
    if (v == "all_up") return 0;
    if (v == "all_down") return -1;
    if (v.rfind("dicke:", 0) == 0) {
        long k = to_long("initial_state", v.substr(6));
        if (k < 0) throw ConfigError("initial_state: Dicke index must be >= 0");
        return int(k);
    }
    throw ConfigError("initial_state: expected all_up, all_down or dicke:K, got '" + v + "'");
}

}  // namespace

KeyValues parse_config_text(const std::string& text, const std::string& origin) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(where + ": empty value for " + key);
        if (!kv.emplace(key, value).second) throw ConfigError(where + ": duplicate key " + key);
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::vector<LMGParams> RunConfig::parameter_points() const {
    std::vector<LMGParams> out;
    if (sweep.empty()) return {base};
    for (double v : sweep_values) {
        LMGParams p = base;
        (sweep == "lambda" ? p.lambda : p.h) = v;
        out.push_back(p);
    }
    return out;
}

RunConfig resolve(const std::string& command, const KeyValues& preset_kv, const KeyValues& file_kv) {
    if (command != "steady" && command != "dynamics" && command != "spectrum" && command != "qfunc")
        throw ConfigError("unknown command " + command);
    KeyValues kv = defaults(command);
    bool micro = false;
    for (const auto* layer : {&preset_kv, &file_kv})
        for (const auto& [k, v] : *layer) {
            if (!kKnownKeys.count(k) && !kMicroKeys.count(k)) throw ConfigError("unknown key " + k);
            if (!used_by(command, k)) throw ConfigError("key " + k + " does not apply to " + command);
            micro |= kMicroKeys.count(k) > 0;
            kv[k] = v;
        }

    RunConfig c;
    c.command = command;
    c.base.gamma_anisotropy = parse_model(kv.at("model"));
    for (const auto& s : split_list(kv.at("n_atoms"))) c.n_atoms.push_back(to_positive_int("n_atoms", s));
    if (c.n_atoms.empty()) throw ConfigError("n_atoms: empty list");

    c.base.h = to_double("h", kv.at("h"));
    c.base.lambda = to_double("lambda", kv.at("lambda"));
    c.base.gamma_a = to_double("gamma_a", kv.at("gamma_a"));
    c.base.gamma_b = to_double("gamma_b", kv.at("gamma_b"));

    if (micro) {
        for (const char* k : {"h", "lambda", "gamma_a", "gamma_b"})
            if (file_kv.count(k) || preset_kv.count(k))
                throw ConfigError(std::string(k) + " is derived from the micro.* block; do not set both");
        if (c.n_atoms.size() != 1) throw ConfigError("micro.* needs a single n_atoms");
        MicroscopicParams m;
        auto get = [&](const char* k, auto& field) {
            auto it = kv.find(k);
            if (it == kv.end()) return;
            if constexpr (std::is_same_v<std::decay_t<decltype(field)>, cplx>)
                field = to_complex(k, it->second);
            else
                field = to_double(k, it->second);
        };
        get("micro.rabi_r0", m.rabi_r0);
        get("micro.rabi_s0", m.rabi_s0);
        get("micro.rabi_r1", m.rabi_r1);
        get("micro.rabi_s1", m.rabi_s1);
        get("micro.g_r0", m.g_r0);
        get("micro.g_s1", m.g_s1);
        get("micro.g_r1", m.g_r1);
        get("micro.g_s0", m.g_s0);
        get("micro.delta_r", m.delta_r);
        get("micro.delta_s", m.delta_s);
        get("micro.omega_1", m.omega_1);
        get("micro.omega_1_prime", m.omega_1_prime);
        get("micro.kappa_a", m.kappa_a);
        get("micro.kappa_b", m.kappa_b);
        get("micro.delta_a", m.delta_a_raw);
        get("micro.delta_b", m.delta_b_raw);
        m.n_atoms = c.n_atoms.front();
        EffectiveParams e;
        try {
            e = effective_params(m);
        } catch (const DomainError& err) {
            throw ConfigError(std::string("micro.*: ") + err.what());
        }
        c.base.h = e.h;
        c.base.lambda = 2.0 * e.Lambda_a;
        c.base.gamma_a = e.Gamma_a;
        c.base.gamma_b = e.Gamma_b;
        c.from_micro = true;
        kv["h"] = format_number(c.base.h);
        kv["lambda"] = format_number(c.base.lambda);
        kv["gamma_a"] = format_number(c.base.gamma_a);
        kv["gamma_b"] = format_number(c.base.gamma_b);
    }
    try {
        c.base.validate();
    } catch (const DomainError& err) {
        throw ConfigError(err.what());
    }

    if (kv.count("sweep")) {
        c.sweep = kv.at("sweep");
        if (c.sweep != "lambda" && c.sweep != "h") throw ConfigError("sweep: expected lambda or h");
        bool range = kv.count("sweep.start") || kv.count("sweep.stop") || kv.count("sweep.points");
        if (kv.count("sweep.values")) {
            if (range) throw ConfigError("sweep: give either sweep.values or start/stop/points");
            for (const auto& s : split_list(kv.at("sweep.values"))) c.sweep_values.push_back(to_double("sweep.values", s));
            if (c.sweep_values.empty()) throw ConfigError("sweep.values: empty list");
        } else {
            if (!kv.count("sweep.start") || !kv.count("sweep.stop") || !kv.count("sweep.points"))
                throw ConfigError("sweep: needs sweep.start, sweep.stop and sweep.points");
            double a = to_double("sweep.start", kv.at("sweep.start"));
            double b = to_double("sweep.stop", kv.at("sweep.stop"));
            int n = to_positive_int("sweep.points", kv.at("sweep.points"), 2);
            if (!(a < b)) throw ConfigError("sweep: start must be below stop");
            c.sweep_values = uniform_grid(a, b, n);
        }
    } else {
        for (const char* k : {"sweep.start", "sweep.stop", "sweep.points", "sweep.values"})
            if (kv.count(k)) throw ConfigError(std::string(k) + " given without sweep");
    }

    c.tol = to_double("tol", kv.at("tol"));
    if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
    long seed = to_long("seed", kv.at("seed"));
    if (seed < 0) throw ConfigError("seed must be >= 0");
    c.seed = std::uint64_t(seed);
    c.singular_offset = to_double("singular_offset", kv.at("singular_offset"));
    if (!(c.singular_offset > 0.0)) throw ConfigError("singular_offset must be positive");
    c.gnuplot = to_bool("gnuplot", kv.at("gnuplot"));

    if (command == "steady") {
        for (const auto& o : split_list(kv.at("outputs"))) {
            if (!kOutputs.count(o)) throw ConfigError("outputs: unknown output " + o);
            c.outputs.insert(o);
        }
        if (c.outputs.empty()) throw ConfigError("outputs: nothing requested");
        c.phi_points = to_positive_int("phi_points", kv.at("phi_points"), 0);
        if (c.phi_points > 0 && !c.outputs.count("entanglement"))
            throw ConfigError("phi_points needs the entanglement output");
    }
    if (command == "dynamics") {
        c.t_end = to_double("t_end", kv.at("t_end"));
        if (!(c.t_end > 0.0)) throw ConfigError("t_end must be positive");
        c.t_points = to_positive_int("t_points", kv.at("t_points"), 2);
        c.engine = kv.at("engine");
        if (c.engine != "finite" && c.engine != "hp" && c.engine != "both")
            throw ConfigError("engine: expected finite, hp or both");
    }
    if (command == "dynamics" || command == "qfunc") {
        c.initial_index = parse_initial(kv.at("initial_state"));
        for (int n : c.n_atoms)
            if (c.initial_index > n) throw ConfigError("initial_state: Dicke index above N");
        if (command == "dynamics" && c.engine != "finite" && c.initial_index != 0)
            throw ConfigError("initial_state: the HP engine starts from the vacuum, i.e. all_up");
    }
    if (command == "spectrum" || (command == "steady" && c.outputs.count("spectrum_peak"))) {
        auto num = [&](const char* k, double dflt) { return kv.count(k) ? to_double(k, kv.at(k)) : dflt; };
        c.nu_min = num("nu_min", -3.0);
        c.nu_max = num("nu_max", 3.0);
        c.nu_points = kv.count("nu_points") ? to_positive_int("nu_points", kv.at("nu_points"), 2) : 2001;
        if (!(c.nu_min < c.nu_max)) throw ConfigError("nu_min must be below nu_max");
        c.kappa_a = num("cavity.kappa_a", 0.3);
        c.delta_a = num("cavity.delta_a", 15.0);
        c.lambda_b = num("cavity.lambda_b", 0.87);
        c.kappa_b = num("cavity.kappa_b", 15.0);
        c.delta_b = num("cavity.delta_b", 0.0);
        if (command == "spectrum") {
            c.approx = to_bool("approx", kv.at("approx"));
            // the spins see the Gb of the eliminated probe mode
            if (file_kv.count("gamma_b") || preset_kv.count("gamma_b"))
                throw ConfigError("gamma_b is set by the cavity.* keys for spectra");
            if (file_kv.count("n_atoms") || preset_kv.count("n_atoms"))
                throw ConfigError("n_atoms does not apply to spectra (thermodynamic limit)");
            kv.erase("n_atoms");
            kv["gamma_b"] = format_number(c.lambda_b * c.lambda_b * c.kappa_b /
                                          (c.kappa_b * c.kappa_b + c.delta_b * c.delta_b));
        }
    } else if (command == "steady") {
        for (const auto& [k, v] : kv)
            if (k.rfind("cavity.", 0) == 0 || k.rfind("nu_", 0) == 0)
                throw ConfigError(k + " only applies with the spectrum_peak output");
    }
    if (command == "qfunc") {
        c.theta_points = to_positive_int("theta_points", kv.at("theta_points"), 2);
        c.qphi_points = to_positive_int("qphi_points", kv.at("qphi_points"), 1);
        c.state = kv.at("state");
        if (c.state != "steady" && c.state != "snapshot") throw ConfigError("state: expected steady or snapshot");
        c.snapshot_time = to_double("snapshot_time", kv.at("snapshot_time"));
        if (c.state == "snapshot" && !(c.snapshot_time > 0.0))
            throw ConfigError("snapshot_time must be positive for state = snapshot");
    }
    // the swept value replaces the fixed one; keep only the sweep keys
    if (!c.sweep.empty() && !file_kv.count(c.sweep) && !preset_kv.count(c.sweep)) kv.erase(c.sweep);
    c.snapshot = kv;
    return c;
}

// Parameter blocks from the figure captions: second-order study at h = 1,
// first-order study at lambda = 1, Ga = 0.01, Gb = 0.2. The spectrum figures
// take Gb from the cavity (lambda_b^2 kappa_b/(kappa_b^2 + delta_b^2)).
KeyValues preset(const std::string& command, const std::string& name) {
    const KeyValues second = {{"model", "gamma0"}, {"h", "1"}, {"gamma_a", "0.01"}, {"gamma_b", "0.2"}};
    const KeyValues first = {{"model", "gamma0"}, {"lambda", "1"}, {"gamma_a", "0.01"}, {"gamma_b", "0.2"}};
    auto with = [](KeyValues base, const KeyValues& extra) {
        for (const auto& [k, v] : extra) base[k] = v;
        return base;
    };
    const KeyValues lambda_sweep = {{"sweep", "lambda"}, {"sweep.start", "0"}, {"sweep.stop", "2"}};
    const KeyValues h_sweep = {{"sweep", "h"}, {"sweep.start", "-0.5"}, {"sweep.stop", "0.5"}};

    if (command == "steady") {
        if (name == "fig3")
            return with(with(second, lambda_sweep),
                        {{"n_atoms", "25,50,100"}, {"sweep.points", "81"}, {"outputs", "moments,eigenvalues"}});
        if (name == "fig5")
            return with(with(second, lambda_sweep),
                        {{"n_atoms", "100"}, {"sweep.points", "41"}, {"outputs", "entanglement"}, {"phi_points", "181"}});
        if (name == "fig7")
            return with(with(second, lambda_sweep),
                        {{"n_atoms", "100"}, {"sweep.points", "81"}, {"outputs", "entanglement"}});
        if (name == "fig12")
            return with(with(first, h_sweep),
                        {{"n_atoms", "25,50,100"}, {"sweep.points", "81"}, {"outputs", "moments,eigenvalues"}});
        if (name == "fig15")
            return with(with(first, h_sweep),
                        {{"n_atoms", "100"}, {"sweep.points", "41"}, {"outputs", "entanglement"}, {"phi_points", "181"}});
        if (name == "fig16")
            return with(with(first, h_sweep),
                        {{"n_atoms", "100"}, {"sweep.points", "81"}, {"outputs", "entanglement"}});
    } else if (command == "dynamics") {
        if (name == "fig10")
            return with(with(second, lambda_sweep),
                        {{"n_atoms", "100"}, {"sweep.points", "21"}, {"t_end", "40"}, {"t_points", "401"}});
        if (name == "fig11")
            return with(with(second, lambda_sweep), {{"n_atoms", "100"},
                                                     {"sweep.points", "81"},
                                                     {"t_end", "40"},
                                                     {"t_points", "401"},
                                                     {"engine", "hp"}});
        if (name == "fig16")
            return with(with(first, h_sweep),
                        {{"n_atoms", "100"}, {"sweep.points", "21"}, {"t_end", "40"}, {"t_points", "401"}});
    } else if (command == "spectrum") {
        const KeyValues cavity = {{"gamma_a", "0.01"},
                                  {"cavity.kappa_a", "0.3"},
                                  {"cavity.delta_a", "15"},
                                  {"cavity.lambda_b", "0.87"},
                                  {"cavity.kappa_b", "15"},
                                  {"cavity.delta_b", "0"}};
        if (name == "fig4")
            return with(cavity, {{"model", "gamma0"},
                                 {"h", "1"},
                                 {"sweep", "lambda"},
                                 {"sweep.values", "0.3,0.93,0.992,1.000625,1.005,1.05,1.5"},
                                 {"approx", "true"}});
        if (name == "fig14")
            return with(cavity, {{"model", "gamma0"},
                                 {"lambda", "1"},
                                 {"sweep", "h"},
                                 {"sweep.values", "-0.6,-0.1,-0.01,6.25e-4,0.05,0.3"}});
    } else if (command == "qfunc") {
        if (name == "fig6")
            return with(second, {{"n_atoms", "50"}, {"sweep", "lambda"}, {"sweep.values", "0.5,1.01,1.1,2"}});
        if (name == "fig13")
            return with(first, {{"n_atoms", "50"},
                                {"sweep", "h"},
                                {"sweep.values", "-0.5,-0.01,2.5e-3,5e-3,0.015,0.15"}});
    }
    throw ConfigError("no preset " + name + " for " + command);
}

std::vector<std::string> preset_names(const std::string& command) {
    if (command == "steady") return {"fig3", "fig5", "fig7", "fig12", "fig15", "fig16"};
    if (command == "dynamics") return {"fig10", "fig11", "fig16"};
    if (command == "spectrum") return {"fig4", "fig14"};
    if (command == "qfunc") return {"fig6", "fig13"};
    return {};
}

}  // namespace dlmg::cli

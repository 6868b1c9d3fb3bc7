#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "pool.hpp"

#ifndef DLMG_VERSION
#define DLMG_VERSION "0.0.0"
#endif

namespace dlmg::cli {

using nlohmann::json;

void RunContext::write(const std::string& name, const std::string& body) {
    std::ofstream out(out_dir / name, std::ios::binary);
    out << body;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + (out_dir / name).string());
    files.push_back(name);
}

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

using Row = std::vector<std::string>;

struct Outcome {
    json info;
    std::vector<Row> rows;
    std::vector<std::pair<std::string, std::string>> files;
    bool failed = false;
};

std::string num(double v) { return format_number(v); }

std::string preamble(const RunConfig& c, const std::string& preset) {
    std::ostringstream os;
    CsvWriter w(os);
    w.comment(std::string("dlmg ") + DLMG_VERSION + " " + c.command);
    if (!preset.empty()) w.comment("preset = " + preset);
    std::vector<std::pair<std::string, std::string>> kv(c.snapshot.begin(), c.snapshot.end());
    w.comments(kv);
    return os.str();
}

std::string tag(const RunConfig& c, const LMGParams& p) {
    if (c.sweep.empty()) return "point";
    return fmt::format("{}{:.8g}", c.sweep, c.sweep == "lambda" ? p.lambda : p.h);
}

std::string gnuplot_script(const std::string& csv, const std::string& x, const std::vector<std::string>& ys,
                           const std::string& group = "") {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel '" << x << "'\n";
    if (!group.empty()) os << "# rows are grouped by " << group << "; filter with awk for one curve per value\n";
    os << "plot ";
    for (std::size_t k = 0; k < ys.size(); ++k)
        os << (k ? ", \\\n     " : "") << "'" << csv << "' using (column('" << x << "')):(column('" << ys[k]
           << "')) with lines title '" << ys[k] << "'";
    os << "\npause -1\n";
    return os.str();
}

// The HP and spectrum formulas diverge at lambda_c (h_c). Points closer than
// the offset are moved to the normal side.
LMGParams off_critical(LMGParams p, const RunConfig& c, json& info) {
    if (p.gamma_anisotropy != 0) return p;
    CriticalPoints cp;
    try {
        cp = critical_points(p);
    } catch (const DomainError&) {
        return p;
    }
    if (cp.has_lambda_c && std::abs(p.lambda - cp.lambda_c) < c.singular_offset) {
        p.lambda = cp.lambda_c - c.singular_offset;
        info["hp_lambda"] = p.lambda;
    } else if (cp.has_h_c && p.h > 0.0 && std::abs(p.h - cp.h_c) < c.singular_offset) {
        p.h = cp.h_c - c.singular_offset;
        info["hp_h"] = p.h;
    }
    return p;
}

void record_error(Outcome& o, const std::exception& e) {
    o.failed = true;
    o.info["status"] = "failed";
    o.info["error"] = e.what();
    if (auto* ce = dynamic_cast<const ConvergenceError*>(&e)) o.info["residual"] = ce->residual();
    if (auto* ne = dynamic_cast<const NonUniqueSteadyState*>(&e)) o.info["uniqueness_gap"] = ne->gap();
}

void note(json& info, const std::string& what) {
    if (!info.contains("notes")) info["notes"] = json::array();
    info["notes"].push_back(what);
}

json point_info(const LMGParams& p, int n) {
    json j;
    if (n > 0) j["n_atoms"] = n;
    j["lambda"] = p.lambda;
    j["h"] = p.h;
    j["status"] = "ok";
    return j;
}

DensityMatrix solve_steady(const RunConfig& c, const LindbladSpec& spec, json& info) {
    SteadyStateOptions so;
    so.tol = c.tol;
    so.seed = c.seed;
    SteadyStateReport rep;
    DensityMatrix rho = steady_state(spec, so, &rep);
    info["method"] = rep.method;
    info["residual"] = rep.residual;
    info["iterations"] = rep.iterations;
    info["uniqueness_gap"] = rep.uniqueness_gap;
    info["uniqueness_sector"] = rep.uniqueness_sector;
    return rho;
}

int initial_index(const RunConfig& c, int n) { return c.initial_index < 0 ? n : c.initial_index; }

std::vector<double> phi_grid(int points) {
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = -M_PI / 2 + M_PI * k / points;
    return g;
}

SpectrumResult probe_spectrum(const RunConfig& c, LMGParams p, const std::vector<double>& grid, LMGParams* used,
                              CavityParams* cav_out = nullptr) {
    CavityParams cav = probe_cavity(p.lambda, c.kappa_a, c.delta_a, c.lambda_b, c.kappa_b, c.delta_b);
    p.gamma_b = cav.gamma_b();
    FixedPoint fp = physical_fixed_point(p);
    if (used) *used = p;
    if (cav_out) *cav_out = cav;
    return transmission(linear_system(p, cav, rotation_angles(fp)), hp_coefficients(p, fp), grid);
}

// ---- steady ----------------------------------------------------------------

Row steady_columns(const RunConfig& c) {
    Row cols{"n_atoms", "lambda", "h", "status"};
    if (c.outputs.count("moments")) cols.insert(cols.end(), {"jx2", "jy2", "jz2", "branch", "X2", "Y2", "Z2"});
    if (c.outputs.count("entanglement")) cols.insert(cols.end(), {"c_r", "phi_star", "c_r_hp"});
    if (c.outputs.count("eigenvalues")) cols.insert(cols.end(), {"phase", "re_mu_p", "im_mu_p", "re_mu_m", "im_mu_m"});
    if (c.outputs.count("spectrum_peak")) cols.insert(cols.end(), {"peaks", "nu_peak", "t_peak"});
    cols.push_back("residual");
    return cols;
}

Outcome steady_point(const RunConfig& c, const std::string& pre, LMGParams p, int n) {
    p.n_atoms = n;
    Outcome o;
    o.info = point_info(p, n);
    const bool g0 = p.gamma_anisotropy == 0;
    Row row{std::to_string(n), num(p.lambda), num(p.h), "ok"};
    try {
        DickeAlgebra alg = build_algebra(n);
        DensityMatrix rho = solve_steady(c, build_model(p, alg), o.info);
        LMGParams php = off_critical(p, c, o.info);
        if (c.outputs.count("moments")) {
            SpinMoments s = spin_moments(rho, alg);
            double j2 = 0.25 * n * n;
            row.insert(row.end(), {num(s.jx2 / j2), num(s.jy2 / j2), num(s.jz2 / j2)});
            if (g0) {
                FixedPoint fp = physical_fixed_point(p);
                row.insert(row.end(), {to_string(fp.branch), num(fp.state.x * fp.state.x),
                                       num(fp.state.y * fp.state.y), num(fp.state.z * fp.state.z)});
            } else {
                row.insert(row.end(), {"none", num(kNaN), num(kNaN), num(kNaN)});
            }
        }
        if (c.outputs.count("entanglement")) {
            EntanglementResult e = entanglement(rho, alg, c.phi_points > 0 ? phi_grid(c.phi_points) : std::vector<double>{});
            if (e.exceeds_bound) note(o.info, "C_R above 1");
            double hp = kNaN;
            std::optional<MomentState> ms;
            if (g0) {
                try {
                    ms = moment_steady_state(hp_coefficients(php, physical_fixed_point(php)));
                    hp = hp_rescaled_concurrence(*ms);
                } catch (const DomainError& err) {
                    note(o.info, std::string("hp: ") + err.what());
                }
            }
            row.insert(row.end(), {num(e.c_r), num(e.phi_star), num(hp)});
            if (c.phi_points > 0) {
                std::ostringstream f;
                f << pre;
                CsvWriter w(f);
                w.header({"phi", "c_phi"});
                for (std::size_t k = 0; k < e.phi_grid.size(); ++k) w.row(std::vector<double>{e.phi_grid[k], e.c_phi[k]});
                o.files.emplace_back(fmt::format("cphi_N{}_{}.csv", n, tag(c, p)), f.str());
                if (ms) {
                    HPEntanglement he = hp_entanglement(*ms, e.phi_grid);
                    std::ostringstream g;
                    g << pre;
                    CsvWriter wg(g);
                    wg.header({"phi", "c_phi"});
                    for (std::size_t k = 0; k < he.phi_grid.size(); ++k)
                        wg.row(std::vector<double>{he.phi_grid[k], he.c_phi[k]});
                    o.files.emplace_back(fmt::format("cphi_hp_N{}_{}.csv", n, tag(c, p)), g.str());
                }
            }
        }
        if (c.outputs.count("eigenvalues")) {
            if (g0) {
                Phase ph = physical_fixed_point(php).branch == Branch::normal ? Phase::normal : Phase::broken;
                EigenPair ev = eigenvalues(php, ph);
                if (!ev.validated) note(o.info, "eigenvalues outside the validated regime");
                row.insert(row.end(), {to_string(ph), num(ev.mu_plus.real()), num(ev.mu_plus.imag()),
                                       num(ev.mu_minus.real()), num(ev.mu_minus.imag())});
            } else {
                row.insert(row.end(), {"none", num(kNaN), num(kNaN), num(kNaN), num(kNaN)});
            }
        }
        if (c.outputs.count("spectrum_peak")) {
            double npk = kNaN, nu = kNaN, tp = kNaN;
            if (g0) {
                try {
                    SpectrumResult s = probe_spectrum(c, php, uniform_grid(c.nu_min, c.nu_max, c.nu_points), nullptr);
                    auto peaks = find_peaks(s);
                    npk = double(peaks.size());
                    for (const auto& pk : peaks)
                        if (std::isnan(tp) || pk.height > tp) {
                            tp = pk.height;
                            nu = pk.nu;
                        }
                } catch (const DomainError& err) {
                    note(o.info, std::string("spectrum: ") + err.what());
                }
            }
            row.insert(row.end(), {num(npk), num(nu), num(tp)});
        }
        row.push_back(num(o.info["residual"].get<double>()));
    } catch (const std::exception& e) {
        record_error(o, e);
        row = {std::to_string(n), num(p.lambda), num(p.h), "failed"};
        while (row.size() < steady_columns(c).size()) row.push_back(num(kNaN));
        if (o.info.contains("residual")) row.back() = num(o.info["residual"].get<double>());
    }
    o.rows.push_back(std::move(row));
    return o;
}

// ---- dynamics --------------------------------------------------------------

Outcome dynamics_finite(const RunConfig& c, const std::string& pre, LMGParams p, int n) {
    p.n_atoms = n;
    Outcome o;
    o.info = point_info(p, n);
    o.info["engine"] = "finite";
    try {
        DickeAlgebra alg = build_algebra(n);
        LindbladSpec spec = build_model(p, alg);
        const double j2 = 0.25 * n * n;
        EvolveOptions opt;
        opt.tol = c.tol;
        opt.keep_states = false;
        opt.columns = {"c_r", "jx2", "jy2", "jz2"};
        opt.observer = [&](double, const DensityMatrix& r) {
            SpinMoments s = spin_moments(r, alg);
            return std::vector<double>{rescaled_concurrence(s), s.jx2 / j2, s.jy2 / j2, s.jz2 / j2};
        };
        TrajectoryResult tr = evolve(spec, DensityMatrix::basis_state(n + 1, initial_index(c, n)),
                                     uniform_grid(0.0, c.t_end, c.t_points), opt);
        o.info["steps"] = tr.stats.accepted;
        o.info["rejected_steps"] = tr.stats.rejected;
        std::ostringstream f;
        f << pre;
        write_trajectory_csv(f, tr);
        o.files.emplace_back(fmt::format("trajectory_N{}_{}.csv", n, tag(c, p)), f.str());
        for (std::size_t k = 0; k < tr.times.size(); ++k)
            o.rows.push_back({std::to_string(n), num(p.lambda), num(p.h), num(tr.times[k]), num(tr.values[k][0]),
                              num(tr.values[k][3])});
    } catch (const std::exception& e) {
        record_error(o, e);
    }
    return o;
}

Outcome dynamics_hp(const RunConfig& c, LMGParams p) {
    Outcome o;
    o.info = point_info(p, 0);
    o.info["engine"] = "hp";
    try {
        if (p.gamma_anisotropy != 0) throw DomainError("the linearized theory covers the gamma = 0 model only");
        LMGParams php = off_critical(p, c, o.info);
        HPCoefficients k = hp_coefficients(php, physical_fixed_point(php));
        o.info["phase"] = to_string(k.phase);
        auto times = uniform_grid(0.0, c.t_end, c.t_points);
        auto states = evolve_moments(k, MomentState{}, times);
        for (std::size_t i = 0; i < times.size(); ++i)
            o.rows.push_back({num(p.lambda), num(p.h), num(times[i]), num(hp_rescaled_concurrence(states[i])),
                              num(states[i].n)});
    } catch (const std::exception& e) {
        record_error(o, e);
    }
    return o;
}

// ---- spectrum --------------------------------------------------------------

Outcome spectrum_point(const RunConfig& c, const std::string& pre, LMGParams p) {
    Outcome o;
    o.info = point_info(p, 0);
    try {
        if (p.gamma_anisotropy != 0) throw DomainError("spectra are defined for the gamma = 0 model only");
        // gamma_b comes from the b cavity alone; set it before locating lambda_c
        CavityParams b;
        b.kappa_b = c.kappa_b;
        b.delta_b = c.delta_b;
        b.lambda_b = c.lambda_b;
        p.gamma_b = b.gamma_b();
        LMGParams php = off_critical(p, c, o.info), used;
        CavityParams cav;
        auto grid = uniform_grid(c.nu_min, c.nu_max, c.nu_points);
        SpectrumResult s = probe_spectrum(c, php, grid, &used, &cav);
        o.info["gamma_b"] = used.gamma_b;
        o.info["lambda_a"] = cav.lambda_a;
        std::size_t diverged = 0;
        std::ostringstream f;
        f << pre;
        CsvWriter w(f);
        w.header({"nu", "t_p", "diverged"});
        for (std::size_t i = 0; i < s.size(); ++i) {
            diverged += s.diverged[i];
            w.row(Row{num(s.nu[i]), num(s.t_p[i]), s.diverged[i] ? "1" : "0"});
        }
        o.files.emplace_back(fmt::format("spectrum_{}.csv", tag(c, p)), f.str());
        if (diverged) note(o.info, fmt::format("{} grid points flagged divergent", diverged));

        if (c.approx) {
            try {
                SpectrumResult a = transmission_approx(used, grid);
                std::ostringstream g;
                g << pre;
                CsvWriter wa(g);
                wa.header({"nu", "t_p", "diverged"});
                for (std::size_t i = 0; i < a.size(); ++i) wa.row(Row{num(a.nu[i]), num(a.t_p[i]), "0"});
                o.files.emplace_back(fmt::format("spectrum_approx_{}.csv", tag(c, p)), g.str());
            } catch (const DomainError& err) {
                note(o.info, std::string("approx: ") + err.what());
            }
        }
        auto peaks = find_peaks(s);
        std::string where;
        for (const auto& pk : peaks) where += (where.empty() ? "" : ";") + num(pk.nu);
        o.rows.push_back({num(p.lambda), num(p.h), num(used.gamma_b), std::to_string(peaks.size()), where,
                          std::to_string(diverged)});
    } catch (const std::exception& e) {
        record_error(o, e);
        o.rows.push_back({num(p.lambda), num(p.h), num(kNaN), "0", "", "0"});
    }
    return o;
}

// ---- qfunc -----------------------------------------------------------------

Outcome qfunc_point(const RunConfig& c, const std::string& pre, LMGParams p, int n) {
    p.n_atoms = n;
    Outcome o;
    o.info = point_info(p, n);
    try {
        DickeAlgebra alg = build_algebra(n);
        LindbladSpec spec = build_model(p, alg);
        DensityMatrix rho = DensityMatrix::basis_state(n + 1, 0);
        if (c.state == "steady") {
            rho = solve_steady(c, spec, o.info);
        } else {
            EvolveOptions opt;
            opt.tol = std::max(c.tol, 1e-9);
            TrajectoryResult tr =
                evolve(spec, DensityMatrix::basis_state(n + 1, initial_index(c, n)), {0.0, c.snapshot_time}, opt);
            rho = tr.states.back();
            o.info["snapshot_time"] = c.snapshot_time;
        }
        auto thetas = uniform_grid(0.0, M_PI, c.theta_points);
        std::vector<double> phis(c.qphi_points);
        for (int k = 0; k < c.qphi_points; ++k) phis[k] = 2 * M_PI * k / c.qphi_points;
        QFunctionGrid q = spin_qfunction(rho, alg, thetas, phis);
        std::ostringstream f;
        f << pre;
        CsvWriter w(f);
        w.header({"theta", "phi", "q"});
        Eigen::Index bi = 0, bk = 0;
        double best = q.values.maxCoeff(&bi, &bk);
        for (std::size_t i = 0; i < thetas.size(); ++i)
            for (std::size_t k = 0; k < phis.size(); ++k) w.row(std::vector<double>{thetas[i], phis[k], q.values(i, k)});
        o.files.emplace_back(fmt::format("qfunc_N{}_{}.csv", n, tag(c, p)), f.str());
        o.rows.push_back({std::to_string(n), num(p.lambda), num(p.h), "ok", num(thetas[bi]), num(phis[bk]), num(best)});
    } catch (const std::exception& e) {
        record_error(o, e);
        o.rows.push_back({std::to_string(n), num(p.lambda), num(p.h), "failed", num(kNaN), num(kNaN), num(kNaN)});
    }
    return o;
}

// ---- side tables -----------------------------------------------------------

std::string semiclassical_table(const RunConfig& c, const std::string& pre) {
    std::ostringstream os;
    os << pre;
    CsvWriter w(os);
    w.header({"lambda", "h", "branch", "X", "Y", "Z", "stable"});
    for (const LMGParams& p : c.parameter_points())
        for (const FixedPoint& fp : fixed_points(p))
            w.row(Row{num(p.lambda), num(p.h), to_string(fp.branch), num(fp.state.x), num(fp.state.y), num(fp.state.z),
                      fp.stable ? "1" : "0"});
    return os.str();
}

std::string hp_table(const RunConfig& c, const std::string& pre) {
    std::ostringstream os;
    os << pre;
    CsvWriter w(os);
    w.header({"lambda", "h", "phase", "re_mu_p", "im_mu_p", "re_mu_m", "im_mu_m", "n_ss", "re_m_ss", "im_m_ss"});
    for (const LMGParams& p0 : c.parameter_points()) {
        json scratch;
        LMGParams p = off_critical(p0, c, scratch);
        Phase ph = physical_fixed_point(p).branch == Branch::normal ? Phase::normal : Phase::broken;
        EigenPair ev = eigenvalues(p, ph);
        MomentState s{kNaN, {kNaN, kNaN}};
        try {
            s = moment_steady_state(hp_coefficients(p, physical_fixed_point(p)));
        } catch (const DomainError&) {
        }
        w.row(Row{num(p0.lambda), num(p0.h), to_string(ph), num(ev.mu_plus.real()), num(ev.mu_plus.imag()),
                  num(ev.mu_minus.real()), num(ev.mu_minus.imag()), num(s.n), num(s.m.real()), num(s.m.imag())});
    }
    return os.str();
}

std::string table(const std::string& pre, const Row& cols, const std::vector<Outcome>& outs) {
    std::ostringstream os;
    os << pre;
    CsvWriter w(os);
    w.header(cols);
    for (const auto& o : outs)
        for (const auto& r : o.rows) w.row(r);
    return os.str();
}

struct Job {
    LMGParams p;
    int n = 0;  // 0: no finite-N part
};

template <class F>
std::vector<Outcome> run_jobs(const std::vector<Job>& jobs, RunContext& ctx, const std::string& what, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::size_t> finished{0};
    auto outs = run_pool<Outcome>(
        jobs.size(), ctx.jobs,
        [&](std::size_t i) {
            auto s = std::chrono::steady_clock::now();
            Outcome o = f(jobs[i]);
            o.info["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count();
            return o;
        },
        [&](std::size_t i) {
            std::size_t k = ++finished;
            spdlog::debug("{} point {} finished ({}/{})", what, i, k, jobs.size());
        });
    for (auto& o : outs) {
        if (o.failed) {
            ++ctx.failures;
            spdlog::warn("{}: point {} failed: {}", what, o.info.dump(), o.info.value("error", ""));
        }
        for (auto& [name, body] : o.files) ctx.write(name, body);
        ctx.points.push_back(o.info);
    }
    spdlog::info("{}: {} points in {:.1f} s, {} failed", what, jobs.size(),
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), ctx.failures);
    return outs;
}

std::vector<Job> finite_jobs(const RunConfig& c) {
    std::vector<Job> jobs;
    for (int n : c.n_atoms)
        for (const LMGParams& p : c.parameter_points()) jobs.push_back({p, n});
    return jobs;
}

}  // namespace

void run_command(const RunConfig& c, RunContext& ctx) {
    const std::string pre = preamble(c, ctx.preset);
    const std::string x = c.sweep.empty() ? "lambda" : c.sweep;
    const bool g0 = c.base.gamma_anisotropy == 0;

    if (c.command == "steady") {
        auto outs = run_jobs(finite_jobs(c), ctx, "steady",
                             [&](const Job& j) { return steady_point(c, pre, j.p, j.n); });
        ctx.write("steady.csv", table(pre, steady_columns(c), outs));
        if (g0 && c.outputs.count("moments")) ctx.write("semiclassical.csv", semiclassical_table(c, pre));
        if (g0 && c.outputs.count("eigenvalues")) ctx.write("hp.csv", hp_table(c, pre));
        if (c.gnuplot) {
            std::vector<std::string> ys;
            if (c.outputs.count("moments")) ys = {"jz2", "Z2"};
            if (c.outputs.count("entanglement")) ys.insert(ys.end(), {"c_r", "c_r_hp"});
            if (ys.empty()) ys = {"re_mu_m", "im_mu_m"};
            ctx.write("steady.gp", gnuplot_script("steady.csv", x, ys, "n_atoms"));
        }
    } else if (c.command == "dynamics") {
        if (c.engine != "hp") {
            auto outs = run_jobs(finite_jobs(c), ctx, "dynamics",
                                 [&](const Job& j) { return dynamics_finite(c, pre, j.p, j.n); });
            ctx.write("dynamics.csv", table(pre, {"n_atoms", "lambda", "h", "t", "c_r", "jz2"}, outs));
            if (c.gnuplot) ctx.write("dynamics.gp", gnuplot_script("dynamics.csv", "t", {"c_r"}, x));
        }
        if (c.engine != "finite") {
            std::vector<Job> jobs;
            for (const LMGParams& p : c.parameter_points()) jobs.push_back({p, 0});
            auto outs = run_jobs(jobs, ctx, "dynamics-hp", [&](const Job& j) { return dynamics_hp(c, j.p); });
            ctx.write("dynamics_hp.csv", table(pre, {"lambda", "h", "t", "c_r_hp", "n"}, outs));
            if (c.gnuplot) ctx.write("dynamics_hp.gp", gnuplot_script("dynamics_hp.csv", "t", {"c_r_hp"}, x));
        }
    } else if (c.command == "spectrum") {
        std::vector<Job> jobs;
        for (const LMGParams& p : c.parameter_points()) jobs.push_back({p, 0});
        auto outs = run_jobs(jobs, ctx, "spectrum", [&](const Job& j) { return spectrum_point(c, pre, j.p); });
        ctx.write("spectrum_peaks.csv",
                  table(pre, {"lambda", "h", "gamma_b", "peaks", "nu_peaks", "diverged_points"}, outs));
        if (c.gnuplot)
            for (const LMGParams& p : c.parameter_points()) {
                std::string name = fmt::format("spectrum_{}.csv", tag(c, p));
                if (std::filesystem::exists(ctx.out_dir / name))
                    ctx.write(fmt::format("spectrum_{}.gp", tag(c, p)), gnuplot_script(name, "nu", {"t_p"}));
            }
    } else if (c.command == "qfunc") {
        auto outs = run_jobs(finite_jobs(c), ctx, "qfunc", [&](const Job& j) { return qfunc_point(c, pre, j.p, j.n); });
        ctx.write("qfunc.csv", table(pre, {"n_atoms", "lambda", "h", "status", "theta_max", "phi_max", "q_max"}, outs));
        if (c.gnuplot)
            for (const auto& o : outs)
                for (const auto& [name, body] : o.files) {
                    std::ostringstream gp;
                    gp << "set datafile separator ','\nset view map\nset xlabel 'phi'\nset ylabel 'theta'\n"
                       << "splot '" << name << "' using 2:1:3 with points palette pointtype 5 notitle\npause -1\n";
                    ctx.write(name.substr(0, name.size() - 4) + ".gp", gp.str());
                }
    }
}

}  // namespace dlmg::cli

#include "muhs/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "muhs/characteristics.hpp"
#include "muhs/mu_operator.hpp"

namespace muhs::io {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::kernel_check: return "kernel-check";
        case Command::characteristics: return "characteristics";
        case Command::converge: return "converge";
        case Command::energy_balance: return "energy-balance";
        case Command::invariants: return "invariants";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string fnv1a_hex(const std::string& bytes) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

double require_number(const json& j, const std::string& path) {
    const json* cur = &j;
    std::istringstream ss(path);
    std::string key;
    while (std::getline(ss, key, '.')) {
        if (!cur->contains(key)) throw ConfigError("missing key: " + path);
        cur = &(*cur)[key];
    }
    if (!cur->is_number()) throw ConfigError("not a number: " + path);
    return cur->get<double>();
}

class OutputDir {
  public:
    OutputDir(std::string dir, Command cmd, std::string config_hash)
        : dir_(std::move(dir)), started_(iso_now()) {
        manifest_["command"] = to_string(cmd);
        manifest_["config_hash"] = std::move(config_hash);
        manifest_["output_dir"] = dir_;
        fs::create_directories(dir_);
    }

    std::ofstream open(const std::string& name) {
        files_.push_back(name);
        std::ofstream out(fs::path(dir_) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + name);
        return out;
    }

    void write_json(const std::string& name, const json& j) {
        auto out = open(name);
        out << j.dump(2) << "\n";
    }

    void finish(const std::string& status) {
        manifest_["started_at"] = started_;
        manifest_["finished_at"] = iso_now();
        manifest_["status"] = status;
        manifest_["files"] = files_;
        std::ofstream out(fs::path(dir_) / "manifest.json", std::ios::binary);
        out << manifest_.dump(2) << "\n";
    }

    const std::string& dir() const { return dir_; }

  private:
    std::string dir_;
    std::string started_;
    std::vector<std::string> files_;
    json manifest_;
};

void write_snapshots(OutputDir& out, const Trajectory& traj) {
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        auto f = out.open("u_" + std::to_string(traj.snapshot_steps[i]) + ".csv");
        for (double v : traj.snapshots[i].values) f << format_double(v) << "\n";
    }
    json tj;
    tj["times"] = json::array();
    for (double t : traj.times) tj["times"].push_back(t);
    tj["steps"] = traj.snapshot_steps;
    tj["status"] = traj.status == RunStatus::completed ? "completed"
                                                       : "blowup_guard_triggered";
    if (traj.status != RunStatus::completed) tj["guard_time"] = traj.guard_time;
    out.write_json("trajectory.json", tj);
}

void write_diagnostics_csv(std::ofstream out, const std::vector<DiagnosticsRecord>& recs,
                           double mu0, double mu1, double lambda) {
    out << "t,mean_u,mean_expected,grad_l2_sq,grad_l2_sq_expected,sup_u,sup_ux,"
           "l1_u,l1_y,l1_expected,tv_ux,tv_bound,min_y,max_y\n";
    const double tv_bound = 2.0 * std::abs(mu0) + std::sqrt(3.0) / 6.0 * mu1;
    for (const auto& r : recs) {
        const double decay = std::exp(-lambda * r.t);
        const double cells[] = {r.t,          r.mean_u, mu0 * decay,
                                r.grad_l2_sq, decay * decay * mu1 * mu1,
                                r.sup_u,      r.sup_ux, r.l1_u,
                                r.l1_y,       std::abs(mu0) * decay,
                                r.tv_ux,      tv_bound, r.min_y,
                                r.max_y};
        for (std::size_t i = 0; i < std::size(cells); ++i) {
            out << (i ? "," : "") << format_double(cells[i]);
        }
        out << "\n";
    }
}

json report_to_json(const DecayReport& rep) {
    json laws = json::array();
    for (const auto& l : rep.laws) {
        laws.push_back({{"name", l.name},
                        {"checked", l.checked},
                        {"pass", l.pass},
                        {"max_defect", l.max_defect},
                        {"tol", l.tol}});
    }
    return json{{"all_pass", rep.all_pass}, {"laws", laws}};
}

int do_simulate(const ParsedConfig& cfg, OutputDir& out, bool gate_on_verify) {
    const InitialCondition ic = cfg.make_initial();
    const Trajectory traj = simulate(cfg.solver, ic);
    write_snapshots(out, traj);
    const auto recs = record_all(traj);
    write_diagnostics_csv(out.open("diagnostics.csv"), recs, traj.mu0, traj.mu1,
                          cfg.solver.lambda);
    const DecayReport rep = verify_decay(recs, traj.mu0, traj.mu1, cfg.solver.lambda,
                                         traj.sign_class, 1e-6);
    out.write_json("verify.json", report_to_json(rep));
    if (traj.status != RunStatus::completed) {
        out.finish("blowup_guard_triggered");
        return kExitGuard;
    }
    if (gate_on_verify && !rep.all_pass) {
        out.finish("verification_failed");
        return kExitVerify;
    }
    out.finish("completed");
    return kExitOk;
}

int do_kernel_check(int n, OutputDir* out) {
    GridPtr grid = make_grid(n);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    double d_se = 0.0, d_sc = 0.0, d_ec = 0.0, id22 = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Field w = make_field(grid);
        for (int k = 0; k <= 20; ++k) {
            const double a = amp(rng), b = amp(rng);
            for (int j = 0; j < n; ++j) {
                const double ph = 2.0 * std::numbers::pi * k * grid->nodes[j];
                w.values[j] += a * std::cos(ph) + b * std::sin(ph);
            }
        }
        const Field vs = invert_A_spectral(w);
        const Field ve = invert_A_explicit(w);
        const Field vc = convolve_green(w);
        for (int j = 0; j < n; ++j) {
            d_se = std::max(d_se, std::abs(vs.values[j] - ve.values[j]));
            d_sc = std::max(d_sc, std::abs(vs.values[j] - vc.values[j]));
            d_ec = std::max(d_ec, std::abs(ve.values[j] - vc.values[j]));
        }
        id22 = std::max(id22, check_inversion_identity(w));
    }
    json j{{"n_points", n},
           {"sup_diff_spectral_explicit", d_se},
           {"sup_diff_spectral_convolution", d_sc},
           {"sup_diff_explicit_convolution", d_ec},
           {"inversion_identity_residual", id22}};
    std::cout << j.dump(2) << "\n";
    if (out) out->write_json("kernel_check.json", j);
    return kExitOk;
}

int do_characteristics(const ParsedConfig& cfg, OutputDir& out, int seed_count) {
    const InitialCondition ic = cfg.make_initial();
    const auto track = advect(cfg.solver, ic, equispaced_seeds(seed_count));
    const auto residual = conserved_density_residual(track, track.trajectory);
    auto f = out.open("characteristics.csv");
    f << "t,seed,q,qx,y_along,residual\n";
    for (std::size_t r = 0; r < track.times.size(); ++r) {
        for (std::size_t i = 0; i < track.seeds.size(); ++i) {
            f << format_double(track.times[r]) << "," << format_double(track.seeds[i])
              << "," << format_double(track.q[r][i]) << ","
              << format_double(track.qx[r][i]) << ","
              << format_double(track.y_along[r][i]) << ","
              << format_double(residual[r][i]) << "\n";
        }
    }
    if (track.trajectory.status != RunStatus::completed) {
        out.finish("blowup_guard_triggered");
        return kExitGuard;
    }
    out.finish("completed");
    return kExitOk;
}

int do_converge(const ParsedConfig& cfg, OutputDir& out, const std::vector<int>& ns,
                int jobs) {
    const InitialCondition ic = cfg.make_initial();
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    const ConvergenceReport rep = family_run(cfg.solver, ic, ns, std::max(1, jobs));
    for (const auto& m : rep.per_n) {
        write_diagnostics_csv(out.open("diagnostics_n" + std::to_string(m.n) + ".csv"),
                              m.records, m.mu0n, rep.mu1, cfg.solver.lambda);
    }
    const HellyVerdict hv = helly_report(rep);
    json j;
    j["ns"] = rep.ns;
    j["mu0"] = rep.mu0;
    j["mu1"] = rep.mu1;
    j["sup_distances"] = rep.sup_distances;
    j["mixed_norm_sqrtT_ok"] = rep.mixed_norm_ok;
    j["mixed_norm_literal_ok"] = rep.mixed_norm_literal_ok;
    j["helly"] = {{"pass", hv.pass},     {"bound", hv.bound},
                  {"slack", hv.slack},   {"max_tv", hv.max_tv},
                  {"max_sup", hv.max_sup}};
    if (!hv.pass) {
        j["helly"]["offending_n"] = hv.offending_n;
        j["helly"]["offending_t"] = hv.offending_t;
        j["helly"]["offending_kind"] = hv.offending_kind;
    }
    bool all_ok = hv.pass;
    j["members"] = json::array();
    for (const auto& m : rep.per_n) {
        all_ok = all_ok && m.bounds_ok;
        j["members"].push_back({{"n", m.n},
                                {"mu0n", m.mu0n},
                                {"bounds_ok", m.bounds_ok},
                                {"violations", m.violations},
                                {"K_spacetime", m.k_spacetime},
                                {"margin_grad", m.margin_grad},
                                {"margin_sup_u", m.margin_sup_u},
                                {"margin_sup_ux", m.margin_sup_ux},
                                {"defect_grad_decay", m.defect_grad_decay},
                                {"defect_l1_y", m.defect_l1_y}});
    }
    out.write_json("convergence.json", j);
    out.finish(all_ok ? "completed" : "verification_failed");
    return all_ok ? kExitOk : kExitVerify;
}

int do_energy_balance(const ParsedConfig& cfg, OutputDir& out, int n) {
    const InitialCondition ic = cfg.make_initial();
    const Trajectory traj = simulate(cfg.solver, ic);
    const EnergyBalanceRecord rec = energy_balance(traj, n);
    auto f = out.open("energy_balance.csv");
    f << "t,f_n,g_n,residual\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        f << format_double(rec.times[i]) << "," << format_double(rec.f_n[i]) << ","
          << format_double(rec.g_n[i]) << "," << format_double(rec.residual[i])
          << "\n";
    }
    if (traj.status != RunStatus::completed) {
        out.finish("blowup_guard_triggered");
        return kExitGuard;
    }
    out.finish("completed");
    return kExitOk;
}

}  // namespace

InitialCondition ParsedConfig::make_initial() const {
    GridPtr grid = make_grid(solver.n_points);
    if (initial_kind == "cosine") return cosine_data(a, b, grid);
    if (initial_kind == "peakon") return peakon_data(p, x0, grid);
    // "file": one node value per line, N lines
    std::ifstream in(file_path);
    if (!in) throw ConfigError("initial.params.path: cannot open " + file_path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(std::stod(line));
    }
    if (static_cast<int>(values.size()) != solver.n_points) {
        throw ConfigError("initial.params.path: expected " +
                          std::to_string(solver.n_points) + " values, got " +
                          std::to_string(values.size()));
    }
    return field_data(std::move(values), grid);
}

ParsedConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();

    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }

    ParsedConfig cfg;
    cfg.config_hash = fnv1a_hex(bytes);

    const double n_points = require_number(j, "grid.n_points");
    if (n_points != std::floor(n_points) || static_cast<int>(n_points) % 2 != 0 ||
        n_points < 8) {
        throw ConfigError("grid.n_points: must be an even integer >= 8");
    }
    cfg.solver.n_points = static_cast<int>(n_points);

    cfg.solver.lambda = require_number(j, "equation.lambda");
    if (cfg.solver.lambda < 0) throw ConfigError("equation.lambda: must be >= 0");

    cfg.solver.t_end = require_number(j, "time.t_end");
    if (cfg.solver.t_end <= 0) throw ConfigError("time.t_end: must be > 0");
    const json& time = j.at("time");
    if (time.contains("dt") && !time["dt"].is_null()) {
        cfg.solver.dt = time["dt"].get<double>();
        if (*cfg.solver.dt <= 0) throw ConfigError("time.dt: must be > 0");
    }
    if (time.contains("cfl_safety") && !time["cfl_safety"].is_null()) {
        cfg.solver.cfl_safety = time["cfl_safety"].get<double>();
        if (*cfg.solver.cfl_safety <= 0 || *cfg.solver.cfl_safety > 1) {
            throw ConfigError("time.cfl_safety: must be in (0,1]");
        }
    }
    if (cfg.solver.dt.has_value() == cfg.solver.cfl_safety.has_value()) {
        throw ConfigError("time: exactly one of dt / cfl_safety must be set");
    }
    if (time.contains("snapshot_stride") && !time["snapshot_stride"].is_null()) {
        cfg.solver.snapshot_stride = time["snapshot_stride"].get<int>();
        if (cfg.solver.snapshot_stride < 1) {
            throw ConfigError("time.snapshot_stride: must be >= 1");
        }
    }

    if (j.contains("solver")) {
        const json& s = j["solver"];
        if (s.contains("dealias")) {
            if (!s["dealias"].is_boolean()) throw ConfigError("solver.dealias: must be a bool");
            cfg.solver.dealias = s["dealias"].get<bool>();
        }
        if (s.contains("blowup_guard") && !s["blowup_guard"].is_null()) {
            cfg.solver.blowup_guard = s["blowup_guard"].get<double>();
            if (cfg.solver.blowup_guard <= 0) {
                throw ConfigError("solver.blowup_guard: must be > 0");
            }
        }
    }

    if (!j.contains("initial")) throw ConfigError("missing key: initial");
    const json& init = j["initial"];
    if (!init.contains("kind") || !init["kind"].is_string()) {
        throw ConfigError("initial.kind: must be a string");
    }
    cfg.initial_kind = init["kind"].get<std::string>();
    const json params = init.contains("params") ? init["params"] : json::object();
    if (cfg.initial_kind == "cosine") {
        cfg.a = params.value("a", 0.0);
        cfg.b = params.value("b", 0.0);
    } else if (cfg.initial_kind == "peakon") {
        if (!params.contains("p")) throw ConfigError("missing key: initial.params.p");
        cfg.p = params["p"].get<double>();
        if (cfg.p == 0.0) throw ConfigError("initial.params.p: must be nonzero");
        cfg.x0 = params.value("x0", 0.0);
        if (cfg.x0 < 0 || cfg.x0 >= 1) {
            throw ConfigError("initial.params.x0: must be in [0,1)");
        }
    } else if (cfg.initial_kind == "file") {
        if (!params.contains("path")) {
            throw ConfigError("missing key: initial.params.path");
        }
        cfg.file_path = params["path"].get<std::string>();
    } else {
        throw ConfigError("initial.kind: unknown kind '" + cfg.initial_kind + "'");
    }
    if (init.contains("mollify_n") && !init["mollify_n"].is_null()) {
        cfg.solver.mollify_n = init["mollify_n"].get<int>();
        if (*cfg.solver.mollify_n < 3) {
            throw ConfigError("initial.mollify_n: must be >= 3");
        }
    }
    if (cfg.initial_kind == "peakon" && !cfg.solver.mollify_n) {
        throw ConfigError("initial.mollify_n: required for measure-type (peakon) data");
    }

    if (j.contains("output") && j["output"].contains("dir")) {
        cfg.out_dir = j["output"]["dir"].get<std::string>();
    }
    return cfg;
}

int run(Command cmd, const RunOptions& opts) {
    try {
        if (cmd == Command::kernel_check) {
            if (!opts.out_dir.empty()) {
                OutputDir out(opts.out_dir, cmd, "");
                const int rc = do_kernel_check(opts.kernel_n, &out);
                out.finish("completed");
                return rc;
            }
            return do_kernel_check(opts.kernel_n, nullptr);
        }

        const ParsedConfig cfg = parse_config(opts.config_path);
        std::string dir = !opts.out_dir.empty() ? opts.out_dir : cfg.out_dir;
        if (dir.empty()) dir = "out";
        OutputDir out(dir, cmd, cfg.config_hash);

        switch (cmd) {
            case Command::simulate:
                return do_simulate(cfg, out, /*gate_on_verify=*/false);
            case Command::invariants:
                return do_simulate(cfg, out, /*gate_on_verify=*/true);
            case Command::characteristics:
                return do_characteristics(cfg, out, opts.seeds);
            case Command::converge:
                return do_converge(cfg, out, opts.ns, opts.jobs);
            case Command::energy_balance:
                return do_energy_balance(cfg, out, opts.mollify_n);
            default:
                return kExitConfig;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }
}

}  // namespace muhs::io

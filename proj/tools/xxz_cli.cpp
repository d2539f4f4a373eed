// Command-line front end. Talks to the engine only through xxz_engine.h.
// Data goes to stdout (or --out files), diagnostics to stderr.

#include "xxz_engine.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code(xxz_status s) {
    switch (s) {
        case XXZ_OK: return kExitOk;
        case XXZ_ERR_INVALID_ARGUMENT:
        case XXZ_ERR_DEGENERATE_SUBSTANCE:
        case XXZ_ERR_CONFIG: return kExitConfig;
        default: return kExitNumerical;
    }
}

// Returns the exit code, printing the engine message on failure.
int report(xxz_status s) {
    if (s != XXZ_OK) std::cerr << "error [" << xxz_status_name(s) << "]: " << xxz_last_error() << '\n';
    return exit_code(s);
}

std::string num(double v) {
    char buf[40];
    xxz_format_number(v, buf, sizeof buf);
    return buf;
}

struct SystemArgs {
    double B = 0.0;
    double J = 1.0;
    double delta = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--B", B, "magnetic field")->required();
        cmd->add_option("--J", J, "interqubit coupling (sets the energy unit)")->capture_default_str();
        cmd->add_option("--delta", delta, "anisotropy")->required();
    }
    xxz_system_params params() const { return {B, J, delta}; }
};

struct BathArgs {
    double kappa = 0.05;
    double epsilon = 1.0;
    double T_L = 0.0;
    double T_R = 0.0;
    bool any_epsilon = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--kappa", kappa, "ohmic coupling constant")->capture_default_str();
        cmd->add_option("--epsilon", epsilon, "coupling asymmetry (0 symmetric, 1 asymmetric)")
            ->capture_default_str();
        cmd->add_option("--TL", T_L, "left reservoir temperature")->required();
        cmd->add_option("--TR", T_R, "right reservoir temperature")->required();
        cmd->add_flag("--allow-any-epsilon", any_epsilon, "accept epsilon anywhere in [0, 1]");
    }

    // 0 when the arguments are acceptable, otherwise an exit code.
    int check() const {
        if (!any_epsilon && epsilon != 0.0 && epsilon != 1.0) {
            std::cerr << "error: --epsilon must be 0 or 1 (pass --allow-any-epsilon to explore other values)\n";
            return kExitConfig;
        }
        if (kappa > 0.2) std::cerr << "warning: kappa = " << kappa << " is outside the weak-coupling regime\n";
        return 0;
    }
    xxz_bath_params params() const { return {T_L, T_R, kappa, epsilon}; }
};

struct CycleArgs {
    std::string kind = "gqoc-asym";
    xxz_cycle_spec spec{};

    CycleArgs() { xxz_cycle_spec_defaults(&spec); }

    void attach(CLI::App* cmd) {
        cmd->add_option("--kind", kind, "qoc | gqoc-sym | gqoc-asym")
            ->check(CLI::IsMember({"qoc", "gqoc-sym", "gqoc-asym"}))
            ->capture_default_str();
        cmd->add_option("--B", spec.B, "magnetic field")->required();
        cmd->add_option("--J", spec.J, "interqubit coupling")->capture_default_str();
        cmd->add_option("--delta-c", spec.delta_c, "anisotropy during stage 1-2")->capture_default_str();
        cmd->add_option("--delta-h", spec.delta_h, "anisotropy during stage 3-4")->capture_default_str();
        cmd->add_option("--kappa", spec.kappa, "ohmic coupling constant")->capture_default_str();
        cmd->add_option("--tm", spec.T_M, "mean reservoir temperature")->required();
        cmd->add_option("--dt", spec.dT, "reservoir temperature gradient")->required();
        cmd->add_option("--t-floor", spec.T_floor, "minimum reservoir temperature")->capture_default_str();
    }

    xxz_cycle_spec resolved() const {
        xxz_cycle_spec s = spec;
        s.kind = kind == "qoc" ? XXZ_CYCLE_QOC : kind == "gqoc-sym" ? XXZ_CYCLE_GQOC_SYM : XXZ_CYCLE_GQOC_ASYM;
        return s;
    }
};

void print_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
}

int cmd_eigensystem(const SystemArgs& a) {
    const xxz_system_params sys = a.params();
    double e[4];
    xxz_transition t[4];
    if (int rc = report(xxz_eigenenergies(&sys, e))) return rc;
    if (int rc = report(xxz_transition_table(&sys, 1.0, t))) return rc;
    print_row(std::cout, {"E1", "E2", "E3", "E4", "omega13", "omega14", "omega23", "omega24"});
    print_row(std::cout, {num(e[0]), num(e[1]), num(e[2]), num(e[3]), num(t[0].omega), num(t[1].omega),
                          num(t[2].omega), num(t[3].omega)});
    return kExitOk;
}

int cmd_rates(const SystemArgs& s, const BathArgs& b) {
    if (int rc = b.check()) return rc;
    const xxz_system_params sys = s.params();
    const xxz_bath_params bath = b.params();
    xxz_pair_rates r[4];
    if (int rc = report(xxz_rates(&sys, &bath, r))) return rc;
    static const char* names[4] = {"13", "14", "23", "24"};
    print_row(std::cout, {"pair", "upper", "lower", "omega", "degenerate", "left_weight", "right_weight",
                          "gamma_L_e", "gamma_L_a", "gamma_R_e", "gamma_R_a", "A", "E"});
    for (int i = 0; i < 4; ++i) {
        const auto& p = r[i];
        print_row(std::cout, {names[i], std::to_string(p.transition.upper), std::to_string(p.transition.lower),
                              num(p.transition.omega), std::to_string(p.transition.degenerate),
                              num(p.transition.left_weight), num(p.transition.right_weight), num(p.left_emission),
                              num(p.left_absorption), num(p.right_emission), num(p.right_absorption),
                              num(p.absorption_sum), num(p.emission_sum)});
    }
    return kExitOk;
}

int cmd_steady(const SystemArgs& s, const BathArgs& b, const std::string& method) {
    if (int rc = b.check()) return rc;
    const xxz_system_params sys = s.params();
    const xxz_bath_params bath = b.params();
    struct Out {
        std::string name;
        double p[4];
        double residual;
    };
    std::vector<Out> outs;
    auto run = [&](const char* name, xxz_steady_method m) {
        Out o{name, {}, 0.0};
        const xxz_status st = xxz_steady_state(&sys, &bath, m, o.p, &o.residual);
        if (st == XXZ_OK) outs.push_back(o);
        return st;
    };
    xxz_status st = XXZ_OK;
    if (method == "solve" || method == "both") st = run("solve", XXZ_STEADY_SOLVE);
    if (st == XXZ_OK && (method == "closed" || method == "both")) st = run("closed", XXZ_STEADY_CLOSED);
    if (st == XXZ_OK && method == "tree") st = run("tree", XXZ_STEADY_TREE);
    if (st != XXZ_OK) return report(st);

    std::string dev;
    if (outs.size() == 2) {
        double m = 0.0;
        for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(outs[0].p[i] - outs[1].p[i]));
        dev = num(m);
    }
    print_row(std::cout, {"method", "P1", "P2", "P3", "P4", "residual", "max_deviation"});
    for (const Out& o : outs)
        print_row(std::cout, {o.name, num(o.p[0]), num(o.p[1]), num(o.p[2]), num(o.p[3]), num(o.residual), dev});
    return kExitOk;
}

int cmd_cycle(const CycleArgs& a) {
    const xxz_cycle_spec spec = a.resolved();
    xxz_cycle_result r{};
    if (int rc = report(xxz_cycle_evaluate(&spec, &r))) return rc;
    auto opt = [](int defined, double v) { return defined ? num(v) : std::string{}; };
    print_row(std::cout, {"cycle", "B", "q12", "q34", "w", "eta", "xi12", "xi34", "positive_work", "unity",
                          "pi_12", "pi_34", "pi_total", "p_c1", "p_c2", "p_c3", "p_c4", "p_h1", "p_h2",
                          "p_h3", "p_h4", "relax_12", "relax_34"});
    print_row(std::cout, {a.kind, num(spec.B), num(r.q12), num(r.q34), num(r.w), opt(r.eta_defined, r.eta),
                          num(r.xi12), num(r.xi34), std::to_string(r.positive_work), std::to_string(r.unity),
                          opt(r.pi_defined, r.pi_12), opt(r.pi_defined, r.pi_34),
                          opt(r.pi_defined, r.pi_12 + r.pi_34), num(r.p_c[0]), num(r.p_c[1]), num(r.p_c[2]),
                          num(r.p_c[3]), num(r.p_h[0]), num(r.p_h[1]), num(r.p_h[2]), num(r.p_h[3]),
                          opt(r.relax_time_12 > 0, r.relax_time_12), opt(r.relax_time_34 > 0, r.relax_time_34)});
    return kExitOk;
}

int cmd_entropy(const CycleArgs& a) {
    xxz_cycle_spec spec = a.resolved();
    if (spec.kind == XXZ_CYCLE_QOC) {
        std::cerr << "error: entropy production is defined for the generalized cycles only\n";
        return kExitConfig;
    }
    xxz_bath_params b12{}, b34{};
    if (int rc = report(xxz_cycle_stage_baths(&spec, &b12, &b34))) return rc;
    const xxz_system_params cold{spec.B, spec.J, spec.delta_c};
    const xxz_system_params hot{spec.B, spec.J, spec.delta_h};
    xxz_flows f12{}, f34{};
    if (int rc = report(xxz_steady_flows(&cold, &b12, &f12))) return rc;
    if (int rc = report(xxz_steady_flows(&hot, &b34, &f34))) return rc;
    print_row(std::cout, {"stage", "T_L", "T_R", "qdot_L", "qdot_R", "phi", "pi"});
    print_row(std::cout, {"1-2", num(b12.T_L), num(b12.T_R), num(f12.qdot_L), num(f12.qdot_R), num(f12.phi),
                          num(f12.pi)});
    print_row(std::cout, {"3-4", num(b34.T_L), num(b34.T_R), num(f34.qdot_L), num(f34.qdot_R), num(f34.phi),
                          num(f34.pi)});
    print_row(std::cout, {"total", "", "", "", "", num(f12.phi + f34.phi), num(f12.pi + f34.pi)});
    return kExitOk;
}

int cmd_relax(const SystemArgs& s, const BathArgs& b, double t_end, double dt, const std::vector<double>& p0,
              std::size_t stride) {
    if (int rc = b.check()) return rc;
    if (!p0.empty() && p0.size() != 4) {
        std::cerr << "error: --p0 takes four populations\n";
        return kExitConfig;
    }
    const xxz_system_params sys = s.params();
    const xxz_bath_params bath = b.params();
    xxz_trajectory* traj = nullptr;
    if (int rc = report(xxz_relax(&sys, &bath, p0.empty() ? nullptr : p0.data(), t_end, dt, &traj))) return rc;
    const char* csv = nullptr;
    const int rc = report(xxz_trajectory_csv(traj, stride, &csv));
    if (rc == kExitOk) std::cout << csv;
    xxz_trajectory_free(traj);
    return rc;
}

unsigned engine_threads(int& rc) {
    unsigned threads = 0;
    rc = report(xxz_threads_from_environment(&threads));
    return threads;
}

// Runs one config and writes its table; returns an exit code.
int run_and_write(const xxz_sweep_config* cfg, unsigned threads, const std::string& path) {
    xxz_table* table = nullptr;
    if (int rc = report(xxz_sweep_run(cfg, threads, &table))) return rc;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        xxz_table_free(table);
        return kExitConfig;
    }
    out << xxz_table_csv(table);
    const std::size_t bad = xxz_table_error_rows(table);
    xxz_table_free(table);
    if (bad) {
        std::cerr << path << ": " << bad << " grid point(s) failed (#ERR rows)\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read '" << config_path << "'\n";
        return kExitConfig;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    int rc = 0;
    const unsigned threads = engine_threads(rc);
    if (rc) return rc;
    xxz_sweep_config* cfg = nullptr;
    if ((rc = report(xxz_sweep_config_parse(buf.str().c_str(), &cfg)))) return rc;
    rc = run_and_write(cfg, threads, out_path);
    xxz_sweep_config_free(cfg);
    return rc;
}

int cmd_figure(const std::string& name, const std::string& out_dir) {
    const std::size_t panels = xxz_figure_panel_count(name.c_str());
    if (panels == 0) {
        std::cerr << "error: unknown figure preset '" << name << "'\n";
        return kExitConfig;
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create '" << out_dir << "': " << ec.message() << '\n';
        return kExitConfig;
    }
    int rc = 0;
    const unsigned threads = engine_threads(rc);
    if (rc) return rc;
    int worst = kExitOk;
    for (std::size_t i = 0; i < panels; ++i) {
        xxz_sweep_config* cfg = nullptr;
        if ((rc = report(xxz_figure_panel(name.c_str(), i, &cfg)))) return rc;
        const auto path = std::filesystem::path(out_dir) / (name + "_" + xxz_sweep_config_label(cfg) + ".csv");
        rc = run_and_write(cfg, threads, path.string());
        xxz_sweep_config_free(cfg);
        if (rc == kExitConfig) return rc;
        worst = std::max(worst, rc);
        std::cerr << "wrote " << path.string() << '\n';
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XXZ two-qubit quantum thermal machines: spectra, rates, steady states, cycles, sweeps"};
    app.require_subcommand(1);

    SystemArgs eig_sys;
    auto* eig = app.add_subcommand("eigensystem", "energies E1..E4 and the coupled-pair gaps");
    eig_sys.attach(eig);

    SystemArgs rates_sys;
    BathArgs rates_bath;
    auto* rates = app.add_subcommand("rates", "emission/absorption rates of all coupled pairs");
    rates_sys.attach(rates);
    rates_bath.attach(rates);

    SystemArgs steady_sys;
    BathArgs steady_bath;
    std::string method = "solve";
    auto* steady = app.add_subcommand("steady", "stationary populations");
    steady_sys.attach(steady);
    steady_bath.attach(steady);
    steady->add_option("--method", method, "solve | closed | both | tree")
        ->check(CLI::IsMember({"solve", "closed", "both", "tree"}))
        ->capture_default_str();

    CycleArgs cycle_args;
    auto* cycle = app.add_subcommand("cycle", "one cycle evaluation");
    cycle_args.attach(cycle);

    CycleArgs entropy_args;
    auto* entropy = app.add_subcommand("entropy", "steady-state entropy production of both stages");
    entropy_args.attach(entropy);

    SystemArgs relax_sys;
    BathArgs relax_bath;
    double t_end = 0.0, step = 0.0;
    std::vector<double> p0;
    std::size_t stride = 1;
    auto* relax = app.add_subcommand("relax", "population trajectory towards the steady state");
    relax_sys.attach(relax);
    relax_bath.attach(relax);
    relax->add_option("--t-end", t_end, "final time")->required();
    relax->add_option("--dt", step, "integration step")->required();
    relax->add_option("--p0", p0, "initial populations P1 P2 P3 P4 (default: maximally mixed)")->delimiter(',');
    relax->add_option("--stride", stride, "emit every n-th step")->capture_default_str();

    std::string config_path, out_path;
    auto* sweep = app.add_subcommand("sweep", "grid sweep from a JSON config");
    sweep->add_option("--config", config_path, "sweep config (JSON)")->required();
    sweep->add_option("--out", out_path, "output CSV")->required();

    std::string figure_name, figure_dir;
    auto* figure = app.add_subcommand("figure", "figure presets: fig2 fig3 fig4 fig5 figEP");
    figure->add_option("name", figure_name, "preset name")->required();
    figure->add_option("--out", figure_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (*eig) return cmd_eigensystem(eig_sys);
    if (*rates) return cmd_rates(rates_sys, rates_bath);
    if (*steady) return cmd_steady(steady_sys, steady_bath, method);
    if (*cycle) return cmd_cycle(cycle_args);
    if (*entropy) return cmd_entropy(entropy_args);
    if (*relax) return cmd_relax(relax_sys, relax_bath, t_end, step, p0, stride);
    if (*sweep) return cmd_sweep(config_path, out_path);
    if (*figure) return cmd_figure(figure_name, figure_dir);
    return kExitConfig;
}

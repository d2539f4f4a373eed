#include "xxz_engine.h"

#include "xxz/baths.hpp"
#include "xxz/cycles.hpp"
#include "xxz/dynamics.hpp"
#include "xxz/error.hpp"
#include "xxz/format.hpp"
#include "xxz/model.hpp"
#include "xxz/steady.hpp"
#include "xxz/sweep.hpp"

#include <algorithm>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

struct xxz_trajectory {
    xxz::Trajectory traj;
    xxz::RateSet rates;
    xxz::EigenSystem energies;
    xxz::BathParams bath;
    std::string csv;
};

struct xxz_sweep_config {
    xxz::SweepConfig cfg;
};

struct xxz_table {
    xxz::SweepTable table;
    std::optional<std::string> csv;
};

namespace {

thread_local std::string g_last_error;

xxz_status to_status(xxz::ErrorCode code) {
    switch (code) {
        case xxz::ErrorCode::invalid_argument: return XXZ_ERR_INVALID_ARGUMENT;
        case xxz::ErrorCode::degenerate_substance: return XXZ_ERR_DEGENERATE_SUBSTANCE;
        case xxz::ErrorCode::non_unique_steady_state: return XXZ_ERR_NON_UNIQUE_STEADY_STATE;
        case xxz::ErrorCode::closed_form_inapplicable: return XXZ_ERR_CLOSED_FORM_INAPPLICABLE;
        case xxz::ErrorCode::stability_guard: return XXZ_ERR_STABILITY_GUARD;
        case xxz::ErrorCode::config_error: return XXZ_ERR_CONFIG;
    }
    return XXZ_ERR_INTERNAL;
}

template <class F>
xxz_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return XXZ_OK;
    } catch (const xxz::Error& ex) {
        g_last_error = ex.what();
        return to_status(ex.code());
    } catch (const std::exception& ex) {
        g_last_error = ex.what();
        return XXZ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return XXZ_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw xxz::Error(xxz::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

xxz::SystemParams to_cpp(const xxz_system_params& s) { return {s.B, s.J, s.delta}; }
xxz::BathParams to_cpp(const xxz_bath_params& b) { return {b.T_L, b.T_R, b.kappa, b.epsilon}; }

xxz_transition to_c(const xxz::Transition& t) {
    return {xxz::label(t.upper), xxz::label(t.lower), t.omega, t.left_weight, t.right_weight,
            t.degenerate ? 1 : 0};
}

xxz::RateSet build_rates(const xxz_system_params* sys, const xxz_bath_params* bath) {
    require(sys, "system parameters");
    require(bath, "bath parameters");
    const xxz::BathParams b = to_cpp(*bath);
    b.validate();
    return xxz::transition_rates(xxz::transition_table(xxz::eigenenergies(to_cpp(*sys)), b.epsilon), b);
}

void copy_populations(const xxz::PopulationVector& p, double out[4]) {
    for (std::size_t i = 0; i < 4; ++i) out[i] = p[i];
}

}  // namespace

extern "C" {

const char* xxz_last_error(void) { return g_last_error.c_str(); }

const char* xxz_status_name(xxz_status status) {
    switch (status) {
        case XXZ_OK: return "ok";
        case XXZ_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case XXZ_ERR_DEGENERATE_SUBSTANCE: return "degenerate_substance";
        case XXZ_ERR_NON_UNIQUE_STEADY_STATE: return "non_unique_steady_state";
        case XXZ_ERR_CLOSED_FORM_INAPPLICABLE: return "closed_form_inapplicable";
        case XXZ_ERR_STABILITY_GUARD: return "stability_guard";
        case XXZ_ERR_CONFIG: return "config_error";
        case XXZ_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void xxz_cycle_spec_defaults(xxz_cycle_spec* spec) {
    if (!spec) return;
    const xxz::CycleSpec d;
    *spec = {XXZ_CYCLE_GQOC_ASYM, d.B, d.J, d.delta_c, d.delta_h, d.kappa, d.T_M, d.dT, d.T_floor};
}

xxz_status xxz_eigenenergies(const xxz_system_params* sys, double energies[4]) {
    return guarded([&] {
        require(sys, "system parameters");
        require(energies, "output");
        const auto e = xxz::eigenenergies(to_cpp(*sys));
        for (std::size_t i = 0; i < 4; ++i) energies[i] = e.energies[i];
    });
}

xxz_status xxz_ground_state(const xxz_system_params* sys, int* label) {
    return guarded([&] {
        require(sys, "system parameters");
        require(label, "output");
        *label = xxz::label(xxz::ground_state(xxz::eigenenergies(to_cpp(*sys))));
    });
}

xxz_status xxz_hamiltonian_matrix(const xxz_system_params* sys, double row_major[16]) {
    return guarded([&] {
        require(sys, "system parameters");
        require(row_major, "output");
        const Eigen::Matrix4d h = xxz::hamiltonian_matrix(to_cpp(*sys));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) row_major[4 * r + c] = h(r, c);
    });
}

xxz_status xxz_transition_table(const xxz_system_params* sys, double epsilon, xxz_transition table[4]) {
    return guarded([&] {
        require(sys, "system parameters");
        require(table, "output");
        const auto t = xxz::transition_table(xxz::eigenenergies(to_cpp(*sys)), epsilon);
        for (std::size_t i = 0; i < 4; ++i) table[i] = to_c(t.entries[i]);
    });
}

xxz_status xxz_bose_occupation(double omega, double T, double* n) {
    return guarded([&] {
        require(n, "output");
        *n = xxz::bose_occupation(omega, T);
    });
}

xxz_status xxz_rates(const xxz_system_params* sys, const xxz_bath_params* bath, xxz_pair_rates rates[4]) {
    return guarded([&] {
        require(rates, "output");
        const xxz::RateSet r = build_rates(sys, bath);
        for (std::size_t i = 0; i < 4; ++i) {
            const xxz::PairRates& pr = r.pairs[i];
            rates[i] = {to_c(pr.transition), pr.left.emission, pr.left.absorption, pr.right.emission,
                        pr.right.absorption, pr.absorption_sum, pr.emission_sum};
        }
    });
}

xxz_status xxz_high_gradient_deviation(const xxz_system_params* sys, const xxz_bath_params* bath,
                                       double* max_deviation) {
    return guarded([&] {
        require(sys, "system parameters");
        require(bath, "bath parameters");
        require(max_deviation, "output");
        const xxz::BathParams b = to_cpp(*bath);
        const auto table = xxz::transition_table(xxz::eigenenergies(to_cpp(*sys)), b.epsilon);
        *max_deviation = xxz::high_gradient_aggregates(table, b).max_deviation();
    });
}

xxz_status xxz_steady_state(const xxz_system_params* sys, const xxz_bath_params* bath,
                            xxz_steady_method method, double populations[4], double* residual) {
    return guarded([&] {
        require(populations, "output");
        const xxz::RateSet r = build_rates(sys, bath);
        xxz::PopulationVector p;
        switch (method) {
            case XXZ_STEADY_SOLVE: p = xxz::steady_state_solve(r); break;
            case XXZ_STEADY_CLOSED: p = xxz::steady_state_closed_form(r); break;
            case XXZ_STEADY_TREE: p = xxz::steady_state_tree(r); break;
            default: throw xxz::Error(xxz::ErrorCode::invalid_argument, "unknown steady-state method");
        }
        copy_populations(p, populations);
        if (residual) *residual = xxz::stationarity_residual(xxz::generator_matrix(r), p);
    });
}

xxz_status xxz_gibbs_state(const xxz_system_params* sys, double T, double populations[4]) {
    return guarded([&] {
        require(sys, "system parameters");
        require(populations, "output");
        copy_populations(xxz::gibbs_state(xxz::eigenenergies(to_cpp(*sys)), T), populations);
    });
}

xxz_status xxz_steady_flows(const xxz_system_params* sys, const xxz_bath_params* bath, xxz_flows* flows) {
    return guarded([&] {
        require(flows, "output");
        const xxz::RateSet r = build_rates(sys, bath);
        const auto f = xxz::steady_flows(r, xxz::eigenenergies(to_cpp(*sys)), bath->T_L, bath->T_R);
        *flows = {f.qdot_L, f.qdot_R, f.phi, f.pi};
    });
}

xxz_status xxz_spectral_gap(const xxz_system_params* sys, const xxz_bath_params* bath, double* gap) {
    return guarded([&] {
        require(gap, "output");
        *gap = xxz::spectral_gap(xxz::generator_matrix(build_rates(sys, bath)));
    });
}

}  // extern "C"

namespace {

xxz::CycleSpec to_cpp(const xxz_cycle_spec& spec) {
    xxz::CycleSpec s;
    switch (spec.kind) {
        case XXZ_CYCLE_QOC: s.kind = xxz::CycleKind::qoc; break;
        case XXZ_CYCLE_GQOC_SYM: s.kind = xxz::CycleKind::gqoc_sym; break;
        case XXZ_CYCLE_GQOC_ASYM: s.kind = xxz::CycleKind::gqoc_asym; break;
        default: throw xxz::Error(xxz::ErrorCode::invalid_argument, "unknown cycle kind");
    }
    s.B = spec.B;
    s.J = spec.J;
    s.delta_c = spec.delta_c;
    s.delta_h = spec.delta_h;
    s.kappa = spec.kappa;
    s.T_M = spec.T_M;
    s.dT = spec.dT;
    s.T_floor = spec.T_floor;
    return s;
}

xxz_bath_params to_c(const xxz::BathParams& b) { return {b.T_L, b.T_R, b.kappa, b.epsilon}; }

}  // namespace

extern "C" {

xxz_status xxz_cycle_stage_baths(const xxz_cycle_spec* spec, xxz_bath_params* stage12,
                                 xxz_bath_params* stage34) {
    return guarded([&] {
        require(spec, "cycle spec");
        const xxz::CycleSpec s = to_cpp(*spec);
        s.validate();
        if (stage12) *stage12 = to_c(xxz::stage12_baths(s));
        if (stage34) *stage34 = to_c(xxz::stage34_baths(s));
    });
}

xxz_status xxz_cycle_evaluate(const xxz_cycle_spec* spec, xxz_cycle_result* result) {
    return guarded([&] {
        require(spec, "cycle spec");
        require(result, "output");
        const xxz::CycleResult r = xxz::evaluate_cycle(to_cpp(*spec));
        xxz_cycle_result out{};
        copy_populations(r.p_c, out.p_c);
        copy_populations(r.p_h, out.p_h);
        out.q12 = r.q12;
        out.q34 = r.q34;
        out.w = r.w;
        out.eta_defined = r.eta.has_value();
        out.eta = r.eta.value_or(0.0);
        out.xi12 = r.xi12;
        out.xi34 = r.xi34;
        out.positive_work = r.positive_work;
        out.unity = r.unity;
        out.pi_defined = r.pi_12.has_value() && r.pi_34.has_value();
        out.pi_12 = r.pi_12.value_or(0.0);
        out.pi_34 = r.pi_34.value_or(0.0);
        out.relax_time_12 = r.relax_time_12.value_or(0.0);
        out.relax_time_34 = r.relax_time_34.value_or(0.0);
        *result = out;
    });
}

xxz_status xxz_w_max(double delta_c, double delta_h, double* w) {
    return guarded([&] {
        require(w, "output");
        *w = xxz::w_max(delta_c, delta_h);
    });
}

xxz_status xxz_relax(const xxz_system_params* sys, const xxz_bath_params* bath, const double initial[4],
                     double t_end, double dt, xxz_trajectory** out) {
    return guarded([&] {
        require(out, "output");
        *out = nullptr;
        auto handle = std::make_unique<xxz_trajectory>();
        handle->rates = build_rates(sys, bath);
        handle->energies = xxz::eigenenergies(to_cpp(*sys));
        handle->bath = to_cpp(*bath);
        const xxz::PopulationVector p0 =
            initial ? xxz::PopulationVector({initial[0], initial[1], initial[2], initial[3]})
                    : xxz::PopulationVector();
        handle->traj = xxz::evolve_populations(handle->rates, p0, t_end, dt);
        *out = handle.release();
    });
}

size_t xxz_trajectory_size(const xxz_trajectory* traj) {
    return traj ? traj->traj.times.size() : 0;
}

xxz_status xxz_trajectory_point(const xxz_trajectory* traj, size_t i, double* t, double populations[4]) {
    return guarded([&] {
        require(traj, "trajectory");
        if (i >= traj->traj.times.size()) {
            throw xxz::Error(xxz::ErrorCode::invalid_argument, "trajectory index out of range");
        }
        if (t) *t = traj->traj.times[i];
        if (populations) copy_populations(traj->traj.populations[i], populations);
    });
}

xxz_status xxz_trajectory_csv(xxz_trajectory* traj, size_t stride, const char** csv) {
    return guarded([&] {
        require(traj, "trajectory");
        require(csv, "output");
        if (stride == 0) throw xxz::Error(xxz::ErrorCode::invalid_argument, "stride must be >= 1");
        const auto balance = xxz::entropy_balance_along(traj->traj, traj->rates, traj->energies,
                                                        traj->bath.T_L, traj->bath.T_R);
        std::ostringstream os;
        os << "t,P1,P2,P3,P4,S,dS_dt,phi,pi\n";
        const std::size_t n = traj->traj.times.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (i % stride != 0 && i + 1 != n) continue;
            const auto& p = traj->traj.populations[i];
            os << xxz::format_number(traj->traj.times[i]);
            for (std::size_t k = 0; k < 4; ++k) os << ',' << xxz::format_number(p[k]);
            os << ',' << xxz::format_number(xxz::shannon_entropy(p)) << ','
               << xxz::format_number(balance[i].dS_dt) << ',' << xxz::format_number(balance[i].phi) << ','
               << xxz::format_number(balance[i].pi) << '\n';
        }
        traj->csv = os.str();
        *csv = traj->csv.c_str();
    });
}

void xxz_trajectory_free(xxz_trajectory* traj) { delete traj; }

xxz_status xxz_sweep_config_parse(const char* json, xxz_sweep_config** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "output");
        *out = nullptr;
        auto handle = std::make_unique<xxz_sweep_config>();
        handle->cfg = xxz::parse_sweep_config(json);
        *out = handle.release();
    });
}

size_t xxz_figure_panel_count(const char* preset) {
    if (!preset) return 0;
    try {
        return xxz::figure_preset(preset).size();
    } catch (...) {
        return 0;
    }
}

xxz_status xxz_figure_panel(const char* preset, size_t panel, xxz_sweep_config** out) {
    return guarded([&] {
        require(preset, "preset name");
        require(out, "output");
        *out = nullptr;
        auto panels = xxz::figure_preset(preset);
        if (panel >= panels.size()) throw xxz::Error(xxz::ErrorCode::config_error, "panel index out of range");
        auto handle = std::make_unique<xxz_sweep_config>();
        handle->cfg = std::move(panels[panel]);
        *out = handle.release();
    });
}

const char* xxz_sweep_config_label(const xxz_sweep_config* cfg) {
    return cfg ? cfg->cfg.label.c_str() : "";
}

size_t xxz_sweep_config_grid_size(const xxz_sweep_config* cfg) {
    return cfg ? cfg->cfg.grid_size() : 0;
}

void xxz_sweep_config_free(xxz_sweep_config* cfg) { delete cfg; }

xxz_status xxz_sweep_run(const xxz_sweep_config* cfg, unsigned threads, xxz_table** out) {
    return guarded([&] {
        require(cfg, "sweep config");
        require(out, "output");
        *out = nullptr;
        auto handle = std::make_unique<xxz_table>();
        handle->table = xxz::run_sweep(cfg->cfg, threads);
        *out = handle.release();
    });
}

xxz_status xxz_threads_from_environment(unsigned* threads) {
    return guarded([&] {
        require(threads, "output");
        *threads = xxz::threads_from_environment();
    });
}

size_t xxz_table_rows(const xxz_table* table) { return table ? table->table.rows.size() : 0; }

size_t xxz_table_error_rows(const xxz_table* table) { return table ? table->table.error_rows() : 0; }

const char* xxz_table_csv(xxz_table* table) {
    if (!table) return "";
    if (!table->csv) table->csv = table->table.to_csv();
    return table->csv->c_str();
}

void xxz_table_free(xxz_table* table) { delete table; }

void xxz_format_number(double v, char* buf, size_t cap) {
    if (!buf || cap == 0) return;
    const std::string s = xxz::format_number(v);
    const std::size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
}

}  // extern "C"

#include "xxz/cycles.hpp"

#include "xxz/dynamics.hpp"
#include "xxz/error.hpp"

#include <algorithm>
#include <cmath>

namespace xxz {

std::string_view cycle_kind_name(CycleKind kind) noexcept {
    switch (kind) {
        case CycleKind::qoc: return "qoc";
        case CycleKind::gqoc_sym: return "gqoc-sym";
        case CycleKind::gqoc_asym: return "gqoc-asym";
    }
    return "unknown";
}

std::optional<CycleKind> parse_cycle_kind(std::string_view name) noexcept {
    for (CycleKind k : {CycleKind::qoc, CycleKind::gqoc_sym, CycleKind::gqoc_asym})
        if (cycle_kind_name(k) == name) return k;
    return std::nullopt;
}

void CycleSpec::validate() const {
    for (double v : {B, J, delta_c, delta_h, kappa, T_M, dT, T_floor}) {
        if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "cycle parameters must be finite");
    }
    if (!(delta_h > delta_c)) {
        throw Error(ErrorCode::invalid_argument, "cycle requires delta_h > delta_c");
    }
    if (!(T_M > 0.0) || dT < 0.0 || T_floor < 0.0) {
        throw Error(ErrorCode::invalid_argument, "need T_M > 0, dT >= 0, T_floor >= 0");
    }
    if (!(T_M + dT / 2.0 > T_floor)) {
        throw Error(ErrorCode::invalid_argument, "hot temperature must exceed the floor");
    }
    if (!(kappa > 0.0)) throw Error(ErrorCode::invalid_argument, "kappa must be > 0");
    cold_params().validate();
}

StageTemperatures stage_temperatures(const CycleSpec& spec) {
    return {spec.T_M + spec.dT / 2.0, std::max(spec.T_M - spec.dT / 2.0, spec.T_floor)};
}

namespace {

double coupling_asymmetry(CycleKind kind) {
    return kind == CycleKind::gqoc_asym ? 1.0 : 0.0;
}

}  // namespace

BathParams stage12_baths(const CycleSpec& spec) {
    const auto T = stage_temperatures(spec);
    return {T.hot, T.cold, spec.kappa, coupling_asymmetry(spec.kind)};
}

BathParams stage34_baths(const CycleSpec& spec) {
    const auto T = stage_temperatures(spec);
    return {T.cold, T.hot, spec.kappa, coupling_asymmetry(spec.kind)};
}

StagePopulations stage_populations(const CycleSpec& spec) {
    spec.validate();
    const EigenSystem e_c = eigenenergies(spec.cold_params());
    const EigenSystem e_h = eigenenergies(spec.hot_params());
    if (spec.kind == CycleKind::qoc) {
        const auto T = stage_temperatures(spec);
        return {gibbs_state(e_c, T.cold), gibbs_state(e_h, T.hot)};
    }
    const BathParams b12 = stage12_baths(spec);
    const BathParams b34 = stage34_baths(spec);
    return {steady_state_solve(transition_rates(transition_table(e_c, b12.epsilon), b12)),
            steady_state_solve(transition_rates(transition_table(e_h, b34.epsilon), b34))};
}

StageHeats cycle_thermo(const PopulationVector& p_c, const PopulationVector& p_h,
                        const EigenSystem& e_c, const EigenSystem& e_h) {
    StageHeats h;
    for (std::size_t i = 0; i < 4; ++i) {
        h.q12 += e_c.energies[i] * (p_c[i] - p_h[i]);
        h.q34 += e_h.energies[i] * (p_h[i] - p_c[i]);
    }
    h.w = h.q12 + h.q34;
    return h;
}

std::optional<double> efficiency(double q12, double q34, double w) {
    if (!(w > 0.0)) return std::nullopt;
    const double q_in = (q12 > 0.0 ? q12 : 0.0) + (q34 > 0.0 ? q34 : 0.0);
    if (!(q_in > 0.0)) return std::nullopt;
    return w / q_in;
}

WorkCondition positive_work_condition(const PopulationVector& p_c, const PopulationVector& p_h) {
    WorkCondition c;
    c.xi12 = (p_c[Level::phi1] - p_h[Level::phi1]) + (p_c[Level::phi2] - p_h[Level::phi2]);
    c.xi34 = (p_c[Level::phi3] - p_h[Level::phi3]) + (p_c[Level::phi4] - p_h[Level::phi4]);
    c.satisfied = c.xi34 > c.xi12;
    return c;
}

double w_max(double delta_c, double delta_h) {
    if (!(delta_h > delta_c)) {
        throw Error(ErrorCode::invalid_argument, "W_max requires delta_h > delta_c");
    }
    return (delta_h - delta_c) / 2.0;
}

bool unity_efficiency_condition(const CycleResult& r, double wmax) {
    const double ratio = r.q12 / wmax;
    return (r.xi34 - r.xi12) > ratio && ratio > 0.0;
}

CycleResult evaluate_cycle(const CycleSpec& spec) {
    spec.validate();
    CycleResult r;
    r.kind = spec.kind;
    r.e_c = eigenenergies(spec.cold_params());
    r.e_h = eigenenergies(spec.hot_params());

    if (spec.kind == CycleKind::qoc) {
        const auto T = stage_temperatures(spec);
        r.p_c = gibbs_state(r.e_c, T.cold);
        r.p_h = gibbs_state(r.e_h, T.hot);
    } else {
        const BathParams b12 = stage12_baths(spec);
        const BathParams b34 = stage34_baths(spec);
        const RateSet rates12 = transition_rates(transition_table(r.e_c, b12.epsilon), b12);
        const RateSet rates34 = transition_rates(transition_table(r.e_h, b34.epsilon), b34);
        r.p_c = steady_state_solve(rates12);
        r.p_h = steady_state_solve(rates34);
        r.pi_12 = entropy_production_steady(rates12, r.e_c, b12.T_L, b12.T_R);
        r.pi_34 = entropy_production_steady(rates34, r.e_h, b34.T_L, b34.T_R);
        const double g12 = spectral_gap(generator_matrix(rates12));
        const double g34 = spectral_gap(generator_matrix(rates34));
        if (g12 > 0.0) r.relax_time_12 = 1.0 / g12;
        if (g34 > 0.0) r.relax_time_34 = 1.0 / g34;
    }

    const StageHeats h = cycle_thermo(r.p_c, r.p_h, r.e_c, r.e_h);
    r.q12 = h.q12;
    r.q34 = h.q34;
    r.w = h.w;
    r.eta = efficiency(h.q12, h.q34, h.w);
    const WorkCondition c = positive_work_condition(r.p_c, r.p_h);
    r.xi12 = c.xi12;
    r.xi34 = c.xi34;
    r.positive_work = c.satisfied;
    r.unity = unity_efficiency_condition(r, w_max(spec.delta_c, spec.delta_h));
    return r;
}

}  // namespace xxz

#pragma once

#include "xxz/steady.hpp"

#include <optional>
#include <string_view>

namespace xxz {

enum class CycleKind { qoc, gqoc_sym, gqoc_asym };

std::string_view cycle_kind_name(CycleKind kind) noexcept;
std::optional<CycleKind> parse_cycle_kind(std::string_view name) noexcept;

inline constexpr double kDefaultTemperatureFloor = 0.005;

struct CycleSpec {
    CycleKind kind = CycleKind::gqoc_asym;
    double B = 0.0;
    double J = 1.0;
    double delta_c = 0.10;
    double delta_h = 0.99;
    double kappa = 0.05;
    double T_M = 1.2;
    double dT = 2.4;
    double T_floor = kDefaultTemperatureFloor;

    void validate() const;

    SystemParams cold_params() const noexcept { return {B, J, delta_c}; }
    SystemParams hot_params() const noexcept { return {B, J, delta_h}; }
};

struct StageTemperatures {
    double hot = 0.0;
    double cold = 0.0;
};

StageTemperatures stage_temperatures(const CycleSpec& spec);

/// Bath configuration of stage 1-2 (left hot, right cold) and of stage 3-4
/// (temperatures swapped). Only meaningful for the generalized cycles.
BathParams stage12_baths(const CycleSpec& spec);
BathParams stage34_baths(const CycleSpec& spec);

struct StagePopulations {
    PopulationVector p_c;  // end of stage 1-2
    PopulationVector p_h;  // end of stage 3-4
};

StagePopulations stage_populations(const CycleSpec& spec);

struct StageHeats {
    double q12 = 0.0;
    double q34 = 0.0;
    double w = 0.0;
};

StageHeats cycle_thermo(const PopulationVector& p_c, const PopulationVector& p_h,
                        const EigenSystem& e_c, const EigenSystem& e_h);

/// W over the sum of positive stage heats; empty when the machine does not
/// produce work or absorbs no heat.
std::optional<double> efficiency(double q12, double q34, double w);

struct WorkCondition {
    double xi12 = 0.0;
    double xi34 = 0.0;
    bool satisfied = false;
};

WorkCondition positive_work_condition(const PopulationVector& p_c, const PopulationVector& p_h);

double w_max(double delta_c, double delta_h);

struct CycleResult {
    CycleKind kind = CycleKind::gqoc_asym;
    PopulationVector p_c;
    PopulationVector p_h;
    EigenSystem e_c;
    EigenSystem e_h;
    double q12 = 0.0;
    double q34 = 0.0;
    double w = 0.0;
    std::optional<double> eta;
    double xi12 = 0.0;
    double xi34 = 0.0;
    bool positive_work = false;
    bool unity = false;
    // Steady-state entropy production of each non-equilibrium stage; empty
    // for the conventional cycle.
    std::optional<double> pi_12;
    std::optional<double> pi_34;
    // Inverse spectral gap of each stage generator; empty for the
    // conventional cycle.
    std::optional<double> relax_time_12;
    std::optional<double> relax_time_34;
};

/// Both inequalities of  Xi34 - Xi12 > Q12 / W_max > 0.
bool unity_efficiency_condition(const CycleResult& result, double wmax);

CycleResult evaluate_cycle(const CycleSpec& spec);

}  // namespace xxz

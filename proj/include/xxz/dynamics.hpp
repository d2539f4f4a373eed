#pragma once

#include "xxz/baths.hpp"
#include "xxz/steady.hpp"

#include <vector>

namespace xxz {

struct HeatCurrents {
    double left = 0.0;   // from the left reservoir into the system
    double right = 0.0;
};

struct ThermoFlows {
    double qdot_L = 0.0;
    double qdot_R = 0.0;
    double phi = 0.0;
    double pi = 0.0;
};

HeatCurrents heat_currents(const RateSet& rates, const PopulationVector& p, const EigenSystem& e);

double entropy_flux(const HeatCurrents& q, double T_L, double T_R);

/// Heat currents, entropy flux and entropy production at the steady state.
ThermoFlows steady_flows(const RateSet& rates, const EigenSystem& e, double T_L, double T_R);

double entropy_production_steady(const RateSet& rates, const EigenSystem& e, double T_L, double T_R);

/// Instantaneous entropy production of the population dynamics, written as
/// a sum of non-negative per-transition, per-bath terms.
double entropy_production_rate(const RateSet& rates, const PopulationVector& p);

struct Trajectory {
    std::vector<double> times;
    std::vector<PopulationVector> populations;
};

inline constexpr double kStabilityBound = 0.1;

/// Fixed-step RK4 on dP/dt = M P from t = 0 to t_end. Stores every step.
/// Throws Error(stability_guard) when dt * max|M_ii| > kStabilityBound.
Trajectory evolve_populations(const RateSet& rates, const PopulationVector& p0, double t_end, double dt);

struct EntropyBalance {
    double dS_dt = 0.0;
    double phi = 0.0;
    double pi = 0.0;
};

double shannon_entropy(const PopulationVector& p) noexcept;

/// dS/dt by finite differences of the Shannon entropy (centered inside,
/// second-order one-sided at the ends); pi = dS/dt + phi.
std::vector<EntropyBalance> entropy_balance_along(const Trajectory& traj, const RateSet& rates,
                                                  const EigenSystem& e, double T_L, double T_R);

}  // namespace xxz

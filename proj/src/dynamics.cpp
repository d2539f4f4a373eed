#include "xxz/dynamics.hpp"

#include "xxz/error.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>

namespace xxz {

HeatCurrents heat_currents(const RateSet& rates, const PopulationVector& p, const EigenSystem& e) {
    HeatCurrents q;
    for (const PairRates& pr : rates.pairs) {
        const Transition& t = pr.transition;
        const double pu = p[t.upper];
        const double pl = p[t.lower];
        const double drop = e[t.lower] - e[t.upper];
        q.left += drop * (pr.left.emission * pu - pr.left.absorption * pl);
        q.right += drop * (pr.right.emission * pu - pr.right.absorption * pl);
    }
    return q;
}

double entropy_flux(const HeatCurrents& q, double T_L, double T_R) {
    if (!(T_L > 0.0) || !(T_R > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "entropy flux needs T_L, T_R > 0");
    }
    return -q.left / T_L - q.right / T_R;
}

namespace {

// (a - b) ln(a / b) >= 0 for the emission/absorption fluxes a = e*pu,
// b = k*pl of one channel. When b underflows the log is assembled from
// ln(e/k) = omega/T and the populations instead.
double channel_production(const SideRates& s, double pu, double pl) {
    const double a = s.emission * pu;
    const double b = s.absorption * pl;
    const double d = a - b;
    if (d == 0.0) return 0.0;
    if (a > 0.0 && b > 0.0) {
        const double x = d / b;
        if (std::isfinite(x)) return d * std::log1p(x);
    }
    if (!(pu > 0.0) || !(pl > 0.0)) return std::numeric_limits<double>::infinity();
    return d * (s.log_ratio + std::log(pu) - std::log(pl));
}

}  // namespace

double entropy_production_rate(const RateSet& rates, const PopulationVector& p) {
    double pi = 0.0;
    for (const PairRates& pr : rates.pairs) {
        const double pu = p[pr.transition.upper];
        const double pl = p[pr.transition.lower];
        for (const SideRates* s : {&pr.left, &pr.right}) {
            pi += channel_production(*s, pu, pl);
        }
    }
    return pi;
}

ThermoFlows steady_flows(const RateSet& rates, const EigenSystem& e, double T_L, double T_R) {
    const PopulationVector p = steady_state_tree(rates);
    const HeatCurrents q = heat_currents(rates, p, e);
    ThermoFlows f;
    f.qdot_L = q.left;
    f.qdot_R = q.right;
    f.phi = entropy_flux(q, T_L, T_R);
    f.pi = entropy_production_rate(rates, p);
    return f;
}

double entropy_production_steady(const RateSet& rates, const EigenSystem& e, double T_L, double T_R) {
    return steady_flows(rates, e, T_L, T_R).pi;
}

Trajectory evolve_populations(const RateSet& rates, const PopulationVector& p0, double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t_end) || t_end < dt) {
        throw Error(ErrorCode::invalid_argument, "need dt > 0 and t_end >= dt");
    }
    const Eigen::Matrix4d M = generator_matrix(rates).M;
    const double stiffness = M.diagonal().cwiseAbs().maxCoeff();
    if (dt * stiffness > kStabilityBound) {
        throw Error(ErrorCode::stability_guard,
                    "dt * max|M_ii| = " + std::to_string(dt * stiffness) + " exceeds " +
                        std::to_string(kStabilityBound));
    }

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / static_cast<double>(steps);

    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.populations.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.populations.push_back(p0);

    Eigen::Vector4d p = p0.vector();
    for (std::size_t n = 1; n <= steps; ++n) {
        const Eigen::Vector4d k1 = M * p;
        const Eigen::Vector4d k2 = M * (p + 0.5 * h * k1);
        const Eigen::Vector4d k3 = M * (p + 0.5 * h * k2);
        const Eigen::Vector4d k4 = M * (p + h * k3);
        p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        for (int i = 0; i < 4; ++i)
            if (p(i) < 0.0 && p(i) > -1e-14) p(i) = 0.0;
        traj.times.push_back(h * static_cast<double>(n));
        traj.populations.push_back(PopulationVector::unchecked({p(0), p(1), p(2), p(3)}));
    }
    traj.times.back() = t_end;
    return traj;
}

double shannon_entropy(const PopulationVector& p) noexcept {
    double s = 0.0;
    for (double v : p.values())
        if (v > 0.0) s -= v * std::log(v);
    return s;
}

std::vector<EntropyBalance> entropy_balance_along(const Trajectory& traj, const RateSet& rates,
                                                  const EigenSystem& e, double T_L, double T_R) {
    const std::size_t n = traj.times.size();
    std::vector<double> S(n);
    for (std::size_t k = 0; k < n; ++k) S[k] = shannon_entropy(traj.populations[k]);

    const auto& t = traj.times;
    auto derivative = [&](std::size_t k) -> double {
        if (n < 2) return 0.0;
        if (n == 2) return (S[1] - S[0]) / (t[1] - t[0]);
        // Three-point Lagrange derivative on (possibly uneven) nodes.
        std::size_t a = k == 0 ? 0 : (k == n - 1 ? n - 3 : k - 1);
        const double x0 = t[a], x1 = t[a + 1], x2 = t[a + 2], x = t[k];
        const double l0 = (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
        const double l1 = (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
        const double l2 = (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
        return l0 * S[a] + l1 * S[a + 1] + l2 * S[a + 2];
    };

    std::vector<EntropyBalance> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        EntropyBalance& b = out[k];
        b.dS_dt = derivative(k);
        b.phi = entropy_flux(heat_currents(rates, traj.populations[k], e), T_L, T_R);
        b.pi = b.dS_dt + b.phi;
    }
    return out;
}

}  // namespace xxz

#include "xxz/baths.hpp"

#include "xxz/error.hpp"

#include <algorithm>
#include <cmath>

namespace xxz {

void BathParams::validate() const {
    if (!std::isfinite(T_L) || !std::isfinite(T_R) || T_L < 0.0 || T_R < 0.0) {
        throw Error(ErrorCode::invalid_argument, "bath temperatures must be finite and >= 0");
    }
    if (!std::isfinite(kappa) || kappa <= 0.0) {
        throw Error(ErrorCode::invalid_argument, "kappa must be > 0");
    }
    if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon > 1.0) {
        throw Error(ErrorCode::invalid_argument, "epsilon must lie in [0, 1]");
    }
}

double bose_occupation(double omega, double T) {
    if (!(omega > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "bose_occupation needs omega > 0");
    }
    if (T < 0.0 || std::isnan(T)) {
        throw Error(ErrorCode::invalid_argument, "temperature must be >= 0");
    }
    if (T == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / T);
}

double RateSet::rate(Level from, Level to) const noexcept {
    for (const PairRates& pr : pairs) {
        const Transition& t = pr.transition;
        if (t.upper == from && t.lower == to) return pr.emission_sum;
        if (t.lower == from && t.upper == to) return pr.absorption_sum;
    }
    return 0.0;
}

namespace {

SideRates side_rates(const Transition& t, double weight, double kappa, double T) {
    if (t.degenerate) {
        // kappa*omega*n(omega) and kappa*omega*(1+n(omega)) both tend to kappa*T.
        const double r = weight * kappa * T;
        return {r, r, 0.0};
    }
    const double n = bose_occupation(t.omega, T);
    const double base = weight * kappa * t.omega;
    const double log_ratio = T > 0.0 ? t.omega / T : std::numeric_limits<double>::infinity();
    return {base * (1.0 + n), base * n, log_ratio};
}

}  // namespace

RateSet transition_rates(const TransitionTable& table, const BathParams& bath) {
    bath.validate();
    RateSet rates;
    for (std::size_t k = 0; k < 4; ++k) {
        const Transition& t = table.entries[k];
        PairRates& pr = rates.pairs[k];
        pr.transition = t;
        pr.left = side_rates(t, t.left_weight, bath.kappa, bath.T_L);
        pr.right = side_rates(t, t.right_weight, bath.kappa, bath.T_R);
        pr.absorption_sum = pr.left.absorption + pr.right.absorption;
        pr.emission_sum = pr.left.emission + pr.right.emission;
    }
    return rates;
}

double HighGradientReport::max_deviation() const noexcept {
    double m = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        m = std::max({m, absorption_deviation[k], emission_deviation[k]});
    }
    return m;
}

HighGradientReport high_gradient_aggregates(const TransitionTable& table, const BathParams& bath) {
    if (bath.epsilon != 1.0) {
        throw Error(ErrorCode::invalid_argument,
                    "high-gradient aggregate limits are derived for epsilon = 1 only");
    }
    const RateSet rates = transition_rates(table, bath);
    HighGradientReport report;
    for (std::size_t k = 0; k < 4; ++k) {
        const PairRates& pr = rates.pairs[k];
        const Transition& t = pr.transition;
        // Left emission at T_L = 0: w_L * kappa * omega (zero on the singlet pairs).
        const double cold_left_emission = t.degenerate ? 0.0 : t.left_weight * bath.kappa * t.omega;
        report.absorption_deviation[k] = std::abs(pr.absorption_sum - pr.right.absorption);
        report.emission_deviation[k] =
            std::abs(pr.emission_sum - (pr.right.emission + cold_left_emission));
        const bool triplet_pair = t.pair == Pair::p14 || t.pair == Pair::p24;
        report.printed_constant_offset[k] =
            triplet_pair ? std::abs(cold_left_emission - bath.kappa * t.omega / 2.0) : 0.0;
    }
    return report;
}

}  // namespace xxz

#pragma once

#include "xxz/model.hpp"

#include <array>
#include <limits>

namespace xxz {

inline constexpr double kWeakCouplingLimit = 0.2;

struct BathParams {
    double T_L = 0.0;
    double T_R = 0.0;
    double kappa = 0.05;
    double epsilon = 1.0;

    void validate() const;

    /// The Markov treatment only holds for kappa << 1; callers may warn.
    bool exceeds_weak_coupling() const noexcept { return kappa > kWeakCouplingLimit; }
};

/// Bose-Einstein occupation 1/(exp(omega/T) - 1); 0 at T = 0.
double bose_occupation(double omega, double T);

struct SideRates {
    double emission = 0.0;    // upper -> lower
    double absorption = 0.0;  // lower -> upper
    // ln(emission / absorption) = omega / T, kept exactly for when absorption
    // underflows (cold bath, wide gap). +inf means no absorption at all.
    double log_ratio = std::numeric_limits<double>::infinity();
};

struct PairRates {
    Transition transition;
    SideRates left;
    SideRates right;
    double absorption_sum = 0.0;  // A_ij
    double emission_sum = 0.0;    // E_ij
};

struct RateSet {
    std::array<PairRates, 4> pairs{};

    const PairRates& operator[](Pair p) const noexcept {
        return pairs[static_cast<std::size_t>(p)];
    }

    /// Total rate for the jump from -> to (0 for uncoupled level pairs).
    double rate(Level from, Level to) const noexcept;
};

RateSet transition_rates(const TransitionTable& table, const BathParams& bath);

// Deviation of A_ij, E_ij from the large-gradient forms in which only the hot
// right bath carries temperature dependence.
struct HighGradientReport {
    std::array<double, 4> absorption_deviation{};
    std::array<double, 4> emission_deviation{};
    // E_i4 offset relative to the printed constant kappa*omega/2 instead of
    // the coupling-consistent w_L*kappa*omega; zero for pairs (1,3), (2,3).
    std::array<double, 4> printed_constant_offset{};

    double max_deviation() const noexcept;
};

/// Requires epsilon == 1.
HighGradientReport high_gradient_aggregates(const TransitionTable& table, const BathParams& bath);

}  // namespace xxz

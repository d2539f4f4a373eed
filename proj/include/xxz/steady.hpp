#pragma once

#include "xxz/baths.hpp"
#include "xxz/model.hpp"

#include <Eigen/Core>

#include <array>

namespace xxz {

inline constexpr double kPopulationSlack = 1e-12;

// Diagonal occupation probabilities in the energy eigenbasis.
class PopulationVector {
public:
    PopulationVector() = default;

    /// Checks P_i in [0,1] and sum = 1, each within kPopulationSlack.
    explicit PopulationVector(const std::array<double, 4>& p);

    /// Accepts the values as given; used on hot paths where the producer
    /// already guarantees the invariants.
    static PopulationVector unchecked(const std::array<double, 4>& p) noexcept;

    double operator[](Level l) const noexcept { return p_[index(l)]; }
    double operator[](std::size_t i) const noexcept { return p_[i]; }
    const std::array<double, 4>& values() const noexcept { return p_; }
    Eigen::Vector4d vector() const noexcept { return {p_[0], p_[1], p_[2], p_[3]}; }

    double sum() const noexcept;

private:
    std::array<double, 4> p_{0.25, 0.25, 0.25, 0.25};
};

// dP/dt = M P; M(to, from) holds the jump rate from -> to.
struct RateGenerator {
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
};

RateGenerator generator_matrix(const RateSet& rates);

/// Row-replacement solve of M P = 0, sum P = 1. Throws
/// Error(non_unique_steady_state) when the constrained system is singular.
PopulationVector steady_state_solve(const RateSet& rates);

/// Closed-form populations in terms of the aggregates A_ij, E_ij and the
/// auxiliary ratios r1, r2. Throws Error(closed_form_inapplicable) when a
/// denominator vanishes.
PopulationVector steady_state_closed_form(const RateSet& rates);

/// Markov-chain tree theorem: P_i proportional to the total weight of the
/// spanning arborescences rooted at i. Subtraction-free, so exponentially
/// small populations keep full relative accuracy.
PopulationVector steady_state_tree(const RateSet& rates);

PopulationVector gibbs_state(const EigenSystem& e, double T);

/// ||M P||_inf.
double stationarity_residual(const RateGenerator& gen, const PopulationVector& p);

/// Smallest |Re lambda| over the non-zero eigenvalues of M; 0 if there are
/// none (M == 0).
double spectral_gap(const RateGenerator& gen);

}  // namespace xxz

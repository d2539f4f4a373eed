#pragma once

// Two-qubit Heisenberg XXZ working substance: parameters, analytic spectrum,
// product-basis Hamiltonian and the four bath-coupled level pairs.

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <cstdint>

namespace xxz {

// Energy eigenstates |Phi_1>..|Phi_4>:
//   phi1 = |00>, phi2 = |11>, phi3 = singlet, phi4 = triplet-zero.
enum class Level : std::uint8_t { phi1 = 0, phi2 = 1, phi3 = 2, phi4 = 3 };

constexpr std::size_t index(Level l) noexcept { return static_cast<std::size_t>(l); }
constexpr int label(Level l) noexcept { return static_cast<int>(l) + 1; }

inline constexpr double kMinCoupling = 1e-9;
inline constexpr double kDegenerateGap = 1e-9;

struct SystemParams {
    double B = 0.0;
    double J = 1.0;
    double delta = 0.0;

    /// Throws Error(invalid_argument) for non-finite fields and
    /// Error(degenerate_substance) when |J| < kMinCoupling.
    void validate() const;
};

struct EigenSystem {
    std::array<double, 4> energies{};

    double operator[](Level l) const noexcept { return energies[index(l)]; }
};

EigenSystem eigenenergies(const SystemParams& p);

/// Hamiltonian in the product basis {|00>, |01>, |10>, |11>}. Used only as an
/// independent check on eigenenergies().
Eigen::Matrix4d hamiltonian_matrix(const SystemParams& p);

/// Index of the lowest level; ties go to the lowest label.
Level ground_state(const EigenSystem& e) noexcept;

enum class Pair : std::uint8_t { p13 = 0, p14 = 1, p23 = 2, p24 = 3 };

inline constexpr std::array<Pair, 4> kPairs{Pair::p13, Pair::p14, Pair::p23, Pair::p24};

/// The two levels of a pair in label order, e.g. p14 -> (phi1, phi4).
std::array<Level, 2> pair_levels(Pair pair) noexcept;

// One bath-coupled transition in canonical orientation (omega >= 0).
struct Transition {
    Pair pair = Pair::p13;
    Level upper = Level::phi1;
    Level lower = Level::phi3;
    double omega = 0.0;
    double left_weight = 0.0;
    double right_weight = 0.0;
    bool degenerate = false;
};

struct TransitionTable {
    std::array<Transition, 4> entries{};

    const Transition& operator[](Pair p) const noexcept {
        return entries[static_cast<std::size_t>(p)];
    }
};

/// Couplings are read off the system-bath interaction: the left bath couples
/// through sigma_x^(1) + epsilon sigma_x^(2), the right bath through
/// sigma_x^(2). Only epsilon in {0, 1} corresponds to the studied
/// configurations; intermediate values are accepted for exploration.
TransitionTable transition_table(const EigenSystem& e, double epsilon);

}  // namespace xxz

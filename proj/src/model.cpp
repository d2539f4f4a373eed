#include "xxz/model.hpp"

#include "xxz/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>

namespace xxz {

void SystemParams::validate() const {
    if (!std::isfinite(B) || !std::isfinite(J) || !std::isfinite(delta)) {
        throw Error(ErrorCode::invalid_argument, "system parameters must be finite");
    }
    if (std::abs(J) < kMinCoupling) {
        std::ostringstream os;
        os << "|J| = " << std::abs(J) << " below " << kMinCoupling
           << ": E3 and E4 become degenerate";
        throw Error(ErrorCode::degenerate_substance, os.str());
    }
}

EigenSystem eigenenergies(const SystemParams& p) {
    p.validate();
    return EigenSystem{{
        (p.delta - 2.0 * p.B) / 2.0,
        (p.delta + 2.0 * p.B) / 2.0,
        -p.delta / 2.0 - p.J,
        -p.delta / 2.0 + p.J,
    }};
}

namespace {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace

Eigen::Matrix4d hamiltonian_matrix(const SystemParams& p) {
    p.validate();
    using namespace std::complex_literals;
    // |0> is spin down so that |00> carries the -B Zeeman energy of |Phi_1>.
    Matrix2c sx, sy, sz, id;
    sx << 0, 1, 1, 0;
    sy << 0, -1i, 1i, 0;
    sz << -1, 0, 0, 1;
    id = Matrix2c::Identity();

    const Matrix4c h = 0.5 * (p.B * kron(sz, id) + p.B * kron(id, sz) + p.J * kron(sx, sx) +
                              p.J * kron(sy, sy) + p.delta * kron(sz, sz));
    return h.real();
}

Level ground_state(const EigenSystem& e) noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (e.energies[i] < e.energies[best]) best = i;
    return static_cast<Level>(best);
}

std::array<Level, 2> pair_levels(Pair pair) noexcept {
    switch (pair) {
        case Pair::p13: return {Level::phi1, Level::phi3};
        case Pair::p14: return {Level::phi1, Level::phi4};
        case Pair::p23: return {Level::phi2, Level::phi3};
        case Pair::p24: return {Level::phi2, Level::phi4};
    }
    return {Level::phi1, Level::phi3};
}

TransitionTable transition_table(const EigenSystem& e, double epsilon) {
    if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon > 1.0) {
        throw Error(ErrorCode::invalid_argument, "epsilon must lie in [0, 1]");
    }
    TransitionTable table;
    for (Pair pair : kPairs) {
        auto [i, j] = pair_levels(pair);
        const double gap = e[i] - e[j];
        Transition& t = table.entries[static_cast<std::size_t>(pair)];
        t.pair = pair;
        t.upper = gap >= 0.0 ? i : j;
        t.lower = gap >= 0.0 ? j : i;
        t.omega = std::abs(gap);
        t.degenerate = t.omega < kDegenerateGap;
        // <Phi_3|sigma_x^(1)|Phi_i> = -<Phi_3|sigma_x^(2)|Phi_i> for i = 1,2 while
        // the Phi_4 elements agree in sign, hence (eps -/+ 1)^2 / 2.
        const double amp = (j == Level::phi3) ? epsilon - 1.0 : epsilon + 1.0;
        t.left_weight = amp * amp / 2.0;
        t.right_weight = 0.5;
    }
    return table;
}

}  // namespace xxz

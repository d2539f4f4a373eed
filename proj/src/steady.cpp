#include "xxz/steady.hpp"

#include "xxz/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace xxz {

PopulationVector::PopulationVector(const std::array<double, 4>& p) : p_(p) {
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < -kPopulationSlack || v > 1.0 + kPopulationSlack) {
            std::ostringstream os;
            os << "population " << v << " outside [0, 1]";
            throw Error(ErrorCode::invalid_argument, os.str());
        }
        total += v;
    }
    if (std::abs(total - 1.0) > kPopulationSlack) {
        std::ostringstream os;
        os.precision(17);
        os << "populations sum to " << total;
        throw Error(ErrorCode::invalid_argument, os.str());
    }
}

PopulationVector PopulationVector::unchecked(const std::array<double, 4>& p) noexcept {
    PopulationVector out;
    out.p_ = p;
    return out;
}

double PopulationVector::sum() const noexcept {
    return p_[0] + p_[1] + p_[2] + p_[3];
}

RateGenerator generator_matrix(const RateSet& rates) {
    RateGenerator gen;
    Eigen::Matrix4d& M = gen.M;
    for (const PairRates& pr : rates.pairs) {
        const auto u = static_cast<Eigen::Index>(index(pr.transition.upper));
        const auto l = static_cast<Eigen::Index>(index(pr.transition.lower));
        const double E = pr.emission_sum;
        const double A = pr.absorption_sum;
        M(l, u) += E;
        M(u, u) -= E;
        M(u, l) += A;
        M(l, l) -= A;
    }
    return gen;
}

namespace {

constexpr double kSingularPivot = 1e-13;

}  // namespace

PopulationVector steady_state_solve(const RateSet& rates) {
    const RateGenerator gen = generator_matrix(rates);
    const double scale = gen.M.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) {
        throw Error(ErrorCode::non_unique_steady_state, "all transition rates vanish");
    }

    // Rows of M sum to the zero vector, so any one of them is redundant; the
    // last one is replaced by the normalization constraint.
    Eigen::Matrix4d a = gen.M / scale;
    a.row(3).setOnes();
    Eigen::Vector4d b(0.0, 0.0, 0.0, 1.0);

    // Gaussian elimination with partial pivoting; ties keep the lower row.
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < kSingularPivot) {
            throw Error(ErrorCode::non_unique_steady_state,
                        "level graph is not connected: the stationary state is not unique");
        }
        if (piv != col) {
            a.row(piv).swap(a.row(col));
            std::swap(b(piv), b(col));
        }
        for (int r = col + 1; r < 4; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            a.row(r).tail(4 - col) -= f * a.row(col).tail(4 - col);
            b(r) -= f * b(col);
        }
    }
    std::array<double, 4> p{};
    for (int r = 3; r >= 0; --r) {
        double s = b(r);
        for (int c = r + 1; c < 4; ++c) s -= a(r, c) * p[static_cast<std::size_t>(c)];
        p[static_cast<std::size_t>(r)] = s / a(r, r);
    }
    return PopulationVector(p);
}

namespace {

constexpr double kClosedFormDenominator = 1e-14;

void require_denominator(double d, const char* what) {
    if (!(std::abs(d) > kClosedFormDenominator) || !std::isfinite(d)) {
        throw Error(ErrorCode::closed_form_inapplicable,
                    std::string("closed-form denominator ") + what + " vanishes");
    }
}

}  // namespace

PopulationVector steady_state_closed_form(const RateSet& rates) {
    using L = Level;
    // The aggregates are read directionally: A_1j / E_1j are the jumps out of
    // / into |Phi_1>, while E_2j / A_2j are the jumps out of / into |Phi_2>.
    // This is the only assignment under which the formulas below give the
    // null vector of the generator for arbitrary rates.
    const double A13 = rates.rate(L::phi1, L::phi3);
    const double E13 = rates.rate(L::phi3, L::phi1);
    const double A14 = rates.rate(L::phi1, L::phi4);
    const double E14 = rates.rate(L::phi4, L::phi1);
    const double E23 = rates.rate(L::phi2, L::phi3);
    const double A23 = rates.rate(L::phi3, L::phi2);
    const double E24 = rates.rate(L::phi2, L::phi4);
    const double A24 = rates.rate(L::phi4, L::phi2);

    require_denominator(A23 + E13, "A23 + E13");
    require_denominator(A13 + A14, "A13 + A14");
    require_denominator(E23 + E24, "E23 + E24");

    const double d1 = (A23 + E13) * (A13 + A14);
    const double d2 = (A23 + E13) * (E23 + E24);
    const double r1 = A13 * E14 / d1 + E23 * A24 / d2;
    const double r2 = 1.0 - A13 * E13 / d1 - E23 * A23 / d2;

    require_denominator(r1 * (A13 + A14), "r1 (A13 + A14)");
    require_denominator(r1 * (E23 + E24), "r1 (E23 + E24)");

    const double x1 = (E13 * r1 + E14 * r2) / (r1 * (A13 + A14));
    const double x2 = (A23 * r1 + A24 * r2) / (r1 * (E23 + E24));
    const double x4 = r2 / r1;
    const double P3 = 1.0 / (x1 + x2 + x4 + 1.0);
    const std::array<double, 4> p{x1 * P3, x2 * P3, P3, x4 * P3};
    for (double v : p) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::closed_form_inapplicable, "closed form produced a non-finite value");
        }
    }
    return PopulationVector(p);
}

PopulationVector steady_state_tree(const RateSet& rates) {
    // k[from][to], rescaled so products of three rates stay representable.
    std::array<std::array<double, 4>, 4> k{};
    double scale = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) {
                k[i][j] = rates.rate(static_cast<Level>(i), static_cast<Level>(j));
                scale = std::max(scale, k[i][j]);
            }
    if (!(scale > 0.0)) {
        throw Error(ErrorCode::non_unique_steady_state, "all transition rates vanish");
    }
    for (auto& row : k)
        for (double& v : row) v /= scale;

    std::array<double, 4> weight{};
    for (std::size_t root = 0; root < 4; ++root) {
        std::array<std::size_t, 3> others{};
        for (std::size_t i = 0, n = 0; i < 4; ++i)
            if (i != root) others[n++] = i;

        // Each non-root node picks a parent; keep the maps where every node
        // reaches the root (3 steps suffice on 4 nodes).
        std::array<std::size_t, 4> parent{};
        double total = 0.0;
        for (std::size_t choice = 0; choice < 27; ++choice) {
            std::size_t c = choice;
            double w = 1.0;
            for (std::size_t n : others) {
                std::size_t pick = c % 3;
                c /= 3;
                std::size_t target = pick >= n ? pick + 1 : pick;  // skip self
                parent[n] = target;
                w *= k[n][target];
            }
            if (w == 0.0) continue;
            bool ok = true;
            for (std::size_t n : others) {
                std::size_t x = n;
                for (int step = 0; step < 3 && x != root; ++step) x = parent[x];
                if (x != root) {
                    ok = false;
                    break;
                }
            }
            if (ok) total += w;
        }
        weight[root] = total;
    }
    const double z = weight[0] + weight[1] + weight[2] + weight[3];
    if (!(z > 0.0)) {
        throw Error(ErrorCode::non_unique_steady_state,
                    "no spanning arborescence: the stationary state is not unique");
    }
    return PopulationVector({weight[0] / z, weight[1] / z, weight[2] / z, weight[3] / z});
}

PopulationVector gibbs_state(const EigenSystem& e, double T) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw Error(ErrorCode::invalid_argument, "Gibbs state needs a finite T > 0");
    }
    const double e0 = *std::min_element(e.energies.begin(), e.energies.end());
    std::array<double, 4> w{};
    double z = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        w[i] = std::exp(-(e.energies[i] - e0) / T);
        z += w[i];
    }
    for (double& v : w) v /= z;
    return PopulationVector(w);
}

double stationarity_residual(const RateGenerator& gen, const PopulationVector& p) {
    return (gen.M * p.vector()).cwiseAbs().maxCoeff();
}

double spectral_gap(const RateGenerator& gen) {
    const double scale = gen.M.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) return 0.0;
    Eigen::EigenSolver<Eigen::Matrix4d> solver(gen.M, /*computeEigenvectors=*/false);
    const auto& ev = solver.eigenvalues();
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double re = std::abs(ev(i).real());
        if (std::abs(ev(i)) <= 1e-12 * scale) continue;
        gap = std::min(gap, re);
    }
    return std::isfinite(gap) ? gap : 0.0;
}

}  // namespace xxz

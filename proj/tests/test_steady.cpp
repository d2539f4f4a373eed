#include "oracles.hpp"

#include "xxz/error.hpp"
#include "xxz/steady.hpp"

#include <doctest.h>

using namespace xxz;

namespace {

RateSet make_rates(double B, double delta, double kappa, double eps, double TL, double TR, double J = 1.0) {
    return transition_rates(transition_table(eigenenergies({B, J, delta}), eps), {TL, TR, kappa, eps});
}

double max_diff(const PopulationVector& a, const std::array<double, 4>& b) {
    return oracle::max_abs_diff(a.values(), b);
}

RateSet single_decay_13() {
    RateSet r;
    for (std::size_t k = 0; k < 4; ++k) {
        r.pairs[k].transition.pair = kPairs[k];
        auto [a, b] = pair_levels(kPairs[k]);
        r.pairs[k].transition.upper = a;
        r.pairs[k].transition.lower = b;
    }
    r.pairs[0].emission_sum = 1.0;
    r.pairs[0].right.emission = 1.0;
    r.pairs[0].transition.omega = 0.1;
    return r;
}

}  // namespace

TEST_CASE("PopulationVector: invariants") {
    CHECK(PopulationVector().sum() == 1.0);
    CHECK_NOTHROW(PopulationVector({0.1, 0.2, 0.3, 0.4}));
    CHECK_NOTHROW(PopulationVector({0.5, 0.5, 0.0, -1e-13}));
    CHECK_THROWS_AS(PopulationVector({0.5, 0.5, 0.1, 0.0}), Error);
    CHECK_THROWS_AS(PopulationVector({1.2, -0.2, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(PopulationVector({NAN, 0.5, 0.5, 0.0}), Error);
}

TEST_CASE("generator_matrix: conservation and sign structure") {
    oracle::Sampler s(31);
    for (int n = 0; n < 200; ++n) {
        const RateSet r = make_rates(s.uniform(-3, 3), s.uniform(0, 1), s.uniform(0.01, 0.1), s.coin() ? 1.0 : 0.0,
                                     s.uniform(0.005, 12), s.uniform(0.005, 12));
        const Eigen::Matrix4d M = generator_matrix(r).M;
        for (int c = 0; c < 4; ++c) CHECK(std::abs(M.col(c).sum()) < 1e-15);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) CHECK(M(i, j) >= 0.0);
        CHECK(M(0, 1) == 0.0);
        CHECK(M(1, 0) == 0.0);
        CHECK(M(2, 3) == 0.0);
        CHECK(M(3, 2) == 0.0);
    }
    CHECK(generator_matrix(RateSet{}).M.isZero(0.0));
}

TEST_CASE("generator_matrix: single-pair pure decay") {
    const Eigen::Matrix4d M = generator_matrix(single_decay_13()).M;
    const Eigen::Vector4d dp = M * Eigen::Vector4d(1, 0, 0, 0);
    CHECK(dp(0) == -1.0);
    CHECK(dp(2) == 1.0);
    CHECK(dp(1) == 0.0);
    CHECK(dp(3) == 0.0);
}

TEST_CASE("steady_state_solve: random points against the kernel oracle") {
    oracle::Sampler s(32);
    for (int n = 0; n < 1000; ++n) {
        const double B = s.uniform(-3, 3), J = s.uniform(0.5, 2), d = s.uniform(0.05, 1);
        const double k = s.uniform(0.01, 0.1), eps = s.coin() ? 1.0 : 0.0;
        const double TL = s.uniform(0.005, 12), TR = s.uniform(0.005, 12);
        const RateSet r = make_rates(B, d, k, eps, TL, TR, J);
        const PopulationVector p = steady_state_solve(r);
        const auto ref = oracle::kernel_state(oracle::generator(oracle::rates(B, J, d, k, eps, TL, TR)));
        CHECK(max_diff(p, ref) < 1e-9);
        CHECK(std::abs(p.sum() - 1.0) < 1e-12);
        CHECK(stationarity_residual(generator_matrix(r), p) < 1e-12);
    }
}

TEST_CASE("steady_state_solve: single temperature gives Gibbs") {
    oracle::Sampler s(33);
    for (double T : {0.1, 1.0, 10.0})
        for (double eps : {0.0, 1.0})
            for (int n = 0; n < 30; ++n) {
                const double B = s.uniform(-3, 3), d = s.uniform(0.05, 1);
                const RateSet r = make_rates(B, d, 0.05, eps, T, T);
                const auto ref = oracle::gibbs(oracle::energies(B, 1.0, d), T);
                CHECK(max_diff(steady_state_solve(r), ref) < 1e-10);
                CHECK(max_diff(steady_state_tree(r), ref) < 1e-12);
            }
}

TEST_CASE("steady_state_solve: large-gradient asymmetric population of the singlet") {
    for (double B : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const PopulationVector p = steady_state_solve(make_rates(B, 0.10, 0.05, 1.0, 2.4, 0.005));
        CHECK(p[Level::phi3] >= 0.99);
    }
    // Symmetric coupling with the same gradient leaves a mixed state.
    const PopulationVector mixed = steady_state_solve(make_rates(0.5, 0.10, 0.05, 0.0, 2.4, 0.005));
    CHECK(mixed[Level::phi3] < 0.9);
    CHECK(mixed[Level::phi3] > 0.0);
}

TEST_CASE("steady_state_solve: non-unique steady state is reported") {
    try {
        steady_state_solve(RateSet{});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::non_unique_steady_state);
    }
    // Decay only on (1,3): levels 2 and 4 are disconnected.
    CHECK_THROWS_AS(steady_state_solve(single_decay_13()), Error);
    CHECK_THROWS_AS(steady_state_tree(RateSet{}), Error);
}

TEST_CASE("steady_state_closed_form: matches the solver where applicable") {
    oracle::Sampler s(34);
    int applicable = 0;
    for (int n = 0; n < 1000; ++n) {
        const RateSet r = make_rates(s.uniform(-3, 3), s.uniform(0.05, 1), s.uniform(0.01, 0.1),
                                     s.coin() ? 1.0 : 0.0, s.uniform(0.005, 12), s.uniform(0.005, 12));
        try {
            const PopulationVector c = steady_state_closed_form(r);
            ++applicable;
            CHECK(max_diff(c, steady_state_solve(r).values()) < 1e-9);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::closed_form_inapplicable);
        }
    }
    CHECK(applicable > 900);
    CHECK_THROWS_AS(steady_state_closed_form(RateSet{}), Error);
}

TEST_CASE("steady_state_closed_form: single temperature gives Gibbs") {
    for (double T : {0.5, 2.0, 8.0}) {
        const PopulationVector c = steady_state_closed_form(make_rates(0.7, 0.3, 0.05, 0.0, T, T));
        CHECK(max_diff(c, oracle::gibbs(oracle::energies(0.7, 1.0, 0.3), T)) < 1e-9);
    }
}

TEST_CASE("steady_state_closed_form: the literal symbol reading is not a null vector") {
    // Reading A_ij as the summed absorption and E_ij as the summed emission of
    // each canonical pair, regardless of direction, the same formulas miss the
    // stationary state at generic points. The directional reading used by the
    // engine does not.
    // (For |B| > delta + J the orientations flip and both readings coincide.)
    const RateSet r = make_rates(0.4, 0.3, 0.05, 0.0, 3.0, 0.7);
    const double A13 = r[Pair::p13].absorption_sum, E13 = r[Pair::p13].emission_sum;
    const double A14 = r[Pair::p14].absorption_sum, E14 = r[Pair::p14].emission_sum;
    const double A23 = r[Pair::p23].absorption_sum, E23 = r[Pair::p23].emission_sum;
    const double A24 = r[Pair::p24].absorption_sum, E24 = r[Pair::p24].emission_sum;
    const double d1 = (A23 + E13) * (A13 + A14), d2 = (A23 + E13) * (E23 + E24);
    const double r1 = A13 * E14 / d1 + E23 * A24 / d2;
    const double r2 = 1.0 - A13 * E13 / d1 - E23 * A23 / d2;
    const double x1 = (E13 * r1 + E14 * r2) / (r1 * (A13 + A14));
    const double x2 = (A23 * r1 + A24 * r2) / (r1 * (E23 + E24));
    const double x4 = r2 / r1;
    const double P3 = 1.0 / (x1 + x2 + x4 + 1.0);
    const std::array<double, 4> literal{x1 * P3, x2 * P3, P3, x4 * P3};
    const PopulationVector solved = steady_state_solve(r);
    CHECK(max_diff(solved, literal) > 1e-3);
    CHECK(max_diff(steady_state_closed_form(r), solved.values()) < 1e-12);
}

TEST_CASE("steady_state_tree: full relative accuracy for tiny populations") {
    oracle::Sampler s(35);
    for (int n = 0; n < 300; ++n) {
        const RateSet r = make_rates(s.uniform(-3, 3), s.uniform(0.05, 1), 0.05, s.coin() ? 1.0 : 0.0,
                                     s.uniform(0.005, 12), s.uniform(0.005, 12));
        CHECK(max_diff(steady_state_tree(r), steady_state_solve(r).values()) < 1e-12);
    }
    // Equilibrium at T = 0.01: the tree result keeps the Boltzmann ratio even
    // where the population is far below double epsilon.
    const double T = 0.01;
    const RateSet cold = make_rates(0.5, 0.1, 0.05, 0.0, T, T);
    const PopulationVector p = steady_state_tree(cold);
    const auto E = oracle::energies(0.5, 1.0, 0.1);
    CHECK(p[Level::phi1] / p[Level::phi3] ==
          doctest::Approx(std::exp(-(E[0] - E[2]) / T)).epsilon(1e-10));
    CHECK(p[Level::phi1] > 0.0);
    CHECK(p[Level::phi1] < 1e-15);
}

TEST_CASE("gibbs_state: limits and ratios") {
    const EigenSystem e = eigenenergies({0.5, 1.0, 0.1});
    const PopulationVector hot = gibbs_state(e, 1e6);
    for (double v : hot.values()) CHECK(std::abs(v - 0.25) < 1e-5);
    const PopulationVector cold = gibbs_state(e, 0.005);
    CHECK(cold[Level::phi3] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cold[Level::phi1] < 1e-8);
    CHECK(cold[Level::phi2] < 1e-8);
    CHECK(cold[Level::phi4] < 1e-8);
    for (double T : {0.05, 0.7, 3.0}) {
        const PopulationVector g = gibbs_state(e, T);
        CHECK(g[Level::phi1] / g[Level::phi3] ==
              doctest::Approx(std::exp((e[Level::phi3] - e[Level::phi1]) / T)).epsilon(1e-13));
        CHECK(max_diff(g, oracle::gibbs(e.energies, T)) < 1e-15);
    }
    CHECK_THROWS_AS(gibbs_state(e, 0.0), Error);
    CHECK_THROWS_AS(gibbs_state(e, -1.0), Error);
}

TEST_CASE("spectral_gap: positive for connected generators, zero for M = 0") {
    const RateSet r = make_rates(0.5, 0.2, 0.05, 0.0, 1.0, 2.0);
    const double gap = spectral_gap(generator_matrix(r));
    CHECK(gap > 0.0);
    Eigen::EigenSolver<Eigen::Matrix4d> es(oracle::generator(oracle::rates(0.5, 1.0, 0.2, 0.05, 0.0, 1.0, 2.0)));
    double ref = INFINITY;
    for (int i = 0; i < 4; ++i)
        if (std::abs(es.eigenvalues()(i)) > 1e-12) ref = std::min(ref, std::abs(es.eigenvalues()(i).real()));
    CHECK(gap == doctest::Approx(ref).epsilon(1e-10));
    CHECK(spectral_gap(RateGenerator{}) == 0.0);
}

TEST_CASE("steady state is unique: reversed stage ordering reproduces the populations") {
    // Solving the hot-left stage after the hot-right one (or the other way
    // round) cannot change either answer: the solver has no memory.
    const RateSet a = make_rates(0.8, 0.10, 0.05, 1.0, 2.4, 0.005);
    const RateSet b = make_rates(0.8, 0.99, 0.05, 1.0, 0.005, 2.4);
    const auto pa = steady_state_solve(a), pb = steady_state_solve(b);
    const auto pb2 = steady_state_solve(b), pa2 = steady_state_solve(a);
    CHECK(pa.values() == pa2.values());
    CHECK(pb.values() == pb2.values());
}

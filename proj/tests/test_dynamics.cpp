#include "oracles.hpp"

#include "xxz/dynamics.hpp"
#include "xxz/error.hpp"

#include <doctest.h>

using namespace xxz;

namespace {

struct Setup {
    EigenSystem e;
    BathParams bath;
    RateSet rates;
};

Setup make(double B, double delta, double kappa, double eps, double TL, double TR) {
    Setup s;
    s.e = eigenenergies({B, 1.0, delta});
    s.bath = {TL, TR, kappa, eps};
    s.rates = transition_rates(transition_table(s.e, eps), s.bath);
    return s;
}

double max_rate_diag(const RateSet& r) {
    return generator_matrix(r).M.diagonal().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("heat_currents: equilibrium carries no heat") {
    for (double eps : {0.0, 1.0}) {
        const Setup s = make(0.6, 0.3, 0.05, eps, 1.3, 1.3);
        const HeatCurrents q = heat_currents(s.rates, gibbs_state(s.e, 1.3), s.e);
        CHECK(std::abs(q.left) < 1e-12);
        CHECK(std::abs(q.right) < 1e-12);
        CHECK(entropy_flux(q, 1.3, 1.3) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("heat_currents: balanced at the steady state of any stage") {
    oracle::Sampler r(41);
    for (int n = 0; n < 500; ++n) {
        const Setup s = make(r.uniform(-3, 3), r.uniform(0.05, 1), r.uniform(0.01, 0.1), r.coin() ? 1.0 : 0.0,
                             r.uniform(0.005, 12), r.uniform(0.005, 12));
        const HeatCurrents q = heat_currents(s.rates, steady_state_solve(s.rates), s.e);
        CHECK(std::abs(q.left + q.right) < 1e-10);
    }
}

TEST_CASE("heat_currents: pure decay releases omega per event") {
    RateSet r;
    for (std::size_t k = 0; k < 4; ++k) {
        auto [a, b] = pair_levels(kPairs[k]);
        r.pairs[k].transition = {kPairs[k], a, b, 0.0, 0.5, 0.5, false};
    }
    EigenSystem e;
    e.energies = {0.1, 0.5, 0.0, 0.7};
    r.pairs[0].left.emission = 0.5;
    r.pairs[0].right.emission = 0.5;
    r.pairs[0].emission_sum = 1.0;
    const HeatCurrents q = heat_currents(r, PopulationVector({1, 0, 0, 0}), e);
    CHECK(q.left + q.right == doctest::Approx(-0.1 * 1.0 * 1.0));
    CHECK(q.left == doctest::Approx(-0.05));
}

TEST_CASE("entropy_flux: definition and sign") {
    CHECK(entropy_flux({0.0, 0.0}, 1.0, 2.0) == 0.0);
    CHECK(entropy_flux({-0.3, 0.3}, 1.0, 2.0) == doctest::Approx(0.3 * (1.0 - 0.5)));
    CHECK(entropy_flux({-0.3, 0.3}, 1.0, 2.0) > 0.0);
    CHECK_THROWS_AS(entropy_flux({0.0, 0.0}, 0.0, 1.0), Error);
    CHECK_THROWS_AS(entropy_flux({0.0, 0.0}, 1.0, -1.0), Error);
}

TEST_CASE("steady_flows: production equals flux and is non-negative") {
    oracle::Sampler r(42);
    for (int n = 0; n < 500; ++n) {
        const double TL = r.uniform(0.005, 12), TR = r.uniform(0.005, 12);
        const Setup s = make(r.uniform(-3, 3), r.uniform(0.05, 1), r.uniform(0.01, 0.1), r.coin() ? 1.0 : 0.0,
                             TL, TR);
        const ThermoFlows f = steady_flows(s.rates, s.e, TL, TR);
        CHECK(f.pi >= -1e-12);
        CHECK(std::abs(f.pi - f.phi) < 1e-12 + 1e-9 * std::abs(f.pi));
        CHECK(std::abs(f.qdot_L + f.qdot_R) < 1e-10);
    }
}

TEST_CASE("entropy_production_steady: zero at equal temperatures, linear in kappa") {
    for (double eps : {0.0, 1.0}) {
        const Setup s = make(0.9, 0.4, 0.05, eps, 2.0, 2.0);
        CHECK(std::abs(entropy_production_steady(s.rates, s.e, 2.0, 2.0)) < 1e-12);
        const Setup a = make(0.9, 0.4, 0.05, eps, 3.0, 0.6);
        const Setup b = make(0.9, 0.4, 0.10, eps, 3.0, 0.6);
        const double pa = entropy_production_steady(a.rates, a.e, 3.0, 0.6);
        const double pb = entropy_production_steady(b.rates, b.e, 3.0, 0.6);
        CHECK(pa > 0.0);
        CHECK(pb / pa == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("entropy_production_steady: positive over the field range at T_M = 1.2") {
    const double Th = 2.4, Tc = 0.005;
    for (int i = 0; i <= 600; ++i) {
        const double B = (-3.0 * (600 - i) + 3.0 * i) / 600.0;
        const Setup s = make(B, 0.10, 0.05, 1.0, Th, Tc);
        CHECK(entropy_production_steady(s.rates, s.e, Th, Tc) > 0.0);
    }
}

TEST_CASE("entropy_production_steady: finite and equal to the entropy flux when absorption underflows") {
    // At T_R = 0.005 the wide gaps at |B| = 3 push k_abs below the smallest double.
    for (double eps : {0.0, 1.0}) {
        const double Th = 2.4, Tc = 0.005;
        const Setup s = make(-3.0, 0.10, 0.05, eps, Th, Tc);
        bool underflow = false;
        for (const PairRates& pr : s.rates.pairs) underflow |= pr.right.absorption == 0.0;
        REQUIRE(underflow);
        const double pi = entropy_production_steady(s.rates, s.e, Th, Tc);
        const double phi = steady_flows(s.rates, s.e, Th, Tc).phi;
        CHECK(std::isfinite(pi));
        CHECK(pi == doctest::Approx(phi).epsilon(1e-9));
    }
}

TEST_CASE("entropy_production_rate: per-channel form is non-negative off the steady state") {
    oracle::Sampler r(43);
    for (int n = 0; n < 300; ++n) {
        const Setup s = make(r.uniform(-3, 3), r.uniform(0.05, 1), 0.05, r.coin() ? 1.0 : 0.0, r.uniform(0.1, 5),
                             r.uniform(0.1, 5));
        std::array<double, 4> p{r.uniform(0.01, 1), r.uniform(0.01, 1), r.uniform(0.01, 1), r.uniform(0.01, 1)};
        const double sum = p[0] + p[1] + p[2] + p[3];
        for (double& v : p) v /= sum;
        CHECK(entropy_production_rate(s.rates, PopulationVector(p)) >= 0.0);
    }
}

TEST_CASE("evolve_populations: fixed point, zero generator, stability guard") {
    const Setup s = make(0.5, 0.2, 0.05, 1.0, 2.0, 0.5);
    const PopulationVector ss = steady_state_solve(s.rates);
    const double dt = 0.05 / max_rate_diag(s.rates);
    const Trajectory t = evolve_populations(s.rates, ss, 200 * dt, dt);
    for (const PopulationVector& p : t.populations) CHECK(oracle::max_abs_diff(p.values(), ss.values()) < 1e-10);

    const PopulationVector p0({0.1, 0.2, 0.3, 0.4});
    const Trajectory frozen = evolve_populations(RateSet{}, p0, 1.0, 0.1);
    CHECK(frozen.times.size() == 11);
    for (const PopulationVector& p : frozen.populations) CHECK(p.values() == p0.values());

    try {
        evolve_populations(s.rates, p0, 100.0, 0.2 / max_rate_diag(s.rates));
        FAIL("expected the stability guard");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::stability_guard);
    }
    CHECK_THROWS_AS(evolve_populations(s.rates, p0, 0.01, 0.0), Error);
}

TEST_CASE("evolve_populations: converges to the steady state and conserves probability") {
    const Setup s = make(-0.7, 0.3, 0.05, 0.0, 3.0, 0.4);
    const double gap = spectral_gap(generator_matrix(s.rates));
    const double dt = 0.1 / max_rate_diag(s.rates);
    const Trajectory t = evolve_populations(s.rates, PopulationVector({0.7, 0.1, 0.1, 0.1}), 50.0 / gap, dt);
    CHECK(t.times.front() == 0.0);
    for (std::size_t k = 1; k < t.times.size(); ++k) CHECK(t.times[k] > t.times[k - 1]);
    for (const PopulationVector& p : t.populations) CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    CHECK(oracle::max_abs_diff(t.populations.back().values(), steady_state_solve(s.rates).values()) < 1e-8);
}

TEST_CASE("entropy_balance_along: second law along relaxation and converged tail") {
    const double TL = 3.0, TR = 0.4;
    const Setup s = make(-0.7, 0.3, 0.05, 1.0, TL, TR);
    const double gap = spectral_gap(generator_matrix(s.rates));
    const double dt = 0.1 / max_rate_diag(s.rates);
    const Trajectory t = evolve_populations(s.rates, PopulationVector({0.1, 0.6, 0.1, 0.2}), 50.0 / gap, dt);
    const auto bal = entropy_balance_along(t, s.rates, s.e, TL, TR);
    REQUIRE(bal.size() == t.times.size());
    for (const EntropyBalance& b : bal) CHECK(b.pi >= -1e-8);
    CHECK(bal.back().pi == doctest::Approx(entropy_production_steady(s.rates, s.e, TL, TR)).epsilon(1e-6));

    const Setup eq = make(0.4, 0.3, 0.05, 0.0, 1.5, 1.5);
    const Trajectory still = evolve_populations(eq.rates, gibbs_state(eq.e, 1.5), 10.0, 0.5);
    for (const EntropyBalance& b : entropy_balance_along(still, eq.rates, eq.e, 1.5, 1.5)) {
        CHECK(std::abs(b.dS_dt) < 1e-12);
        CHECK(std::abs(b.phi) < 1e-12);
        CHECK(std::abs(b.pi) < 1e-12);
    }
}

TEST_CASE("shannon_entropy: endpoints") {
    CHECK(shannon_entropy(PopulationVector()) == doctest::Approx(std::log(4.0)));
    CHECK(shannon_entropy(PopulationVector({0, 0, 1, 0})) == 0.0);
}

#include "suite.hpp"

#include <laxscatter/conserved.hpp>
#include <laxscatter/norms.hpp>

#include <doctest.h>

#include <cmath>

using namespace laxscatter;

TEST_CASE("microlocal norm") {
    const GridSpec g = suite::grid();
    CHECK(microlocal_norm(SampledField::zeros(g), -0.25, 2.0) == 0.0);
    for (const auto& q : suite::small_potentials(g)) {
        const double l2 = std::sqrt(mass(q));
        for (double k : {1.0, 4.0}) CHECK(std::abs(microlocal_norm(q, 0.0, k) - l2) < 1e-12 * l2);
        for (double s : {-0.1, -0.25, -0.4}) {
            const double a = microlocal_norm(q, s, 1 / std::sqrt(3.0)), b = sobolev_norm(q, s);
            CHECK(std::abs(a - b) < 1e-12 * b);
            double prev = INFINITY;
            for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) {
                const double v = microlocal_norm(q, s, k);
                CHECK(v <= prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("coercivity") {
    // at xi = 0 the integrand reduces to k^{2s-1}
    CHECK(std::abs(coercivity_numerator(-0.25, 1.0, 0.0) - 2.0) < 1e-8);
    for (double s : {-0.1, -0.25, -0.4}) {
        double lo = INFINITY, hi = 0;
        for (int xi = 0; xi <= 100; ++xi) {
            const CoercivityResult c = coercivity_ratio(s, 1.0, xi);
            CHECK(std::abs(c.denominator - std::pow(xi * xi + 1.0, s)) < 1e-14);
            lo = std::min(lo, c.ratio);
            hi = std::max(hi, c.ratio);
        }
        CHECK(lo >= 0.1);
        CHECK(hi <= 10);
        // both sides scale like xi^{2s}
        const double n3 = coercivity_numerator(s, 1.0, 1e3), n4 = coercivity_numerator(s, 1.0, 1e4);
        CHECK(std::abs(std::log10(n4 / n3) - 2 * s) < 1e-3);
        const double r3 = coercivity_ratio(s, 1.0, 1e3).ratio, r4 = coercivity_ratio(s, 1.0, 1e4).ratio;
        CHECK(std::abs(r4 / r3 - 1) < 1e-3);
    }
    CHECK_THROWS_AS(coercivity_numerator(0.1, 1.0, 0.0), InputError);
    CHECK_THROWS_AS(coercivity_numerator(0.0, 1.0, 0.0), InputError);
}

TEST_CASE("energy of zero data") {
    const EnergyResult e = energy_Es(SampledField::zeros(suite::grid()), -0.25, 1.0);
    CHECK(e.Es == 0.0);
    CHECK(e.Es2 == 0.0);
}

TEST_CASE("energy: quadratic part dominates and is comparable to the norm") {
    const GridSpec g = suite::grid();
    const std::vector<SampledField> qs = {suite::mollified_gaussian(0.05, 0.7, 0.0, g),
                                          suite::mollified_gaussian(cplx(0.03, 0.03), 1.0, 0.5, g),
                                          suite::random_bumps(3, g, 0.03)};
    for (const auto& q : qs)
        for (double s : {-0.1, -0.25, -0.4}) {
            const EnergyResult e = energy_Es(q, s, 1.0);
            CHECK(e.smallness < 1);
            CHECK(e.Es2 > 0);
            CHECK(std::abs(e.Es - e.Es2) < 0.5 * e.Es2);
            const double ratio = e.Es2 / (e.norm_Hs_k0 * e.norm_Hs_k0);
            CHECK(ratio >= 0.1);
            CHECK(ratio <= 10);
            CHECK(e.imag_residual < 1e-12);
            CHECK(e.tail_exponent < -0.5);
            // doubling the k nodes
            const EnergyResult f = energy_Es(q, s, 1.0, 0, 2 * e.n_k);
            CHECK(std::abs(f.Es - e.Es) < 1e-8 * std::abs(e.Es));
        }
}

TEST_CASE("transmission and determinant energies agree") {
    const GridSpec g = suite::grid();
    const SampledField q = suite::mollified_gaussian(0.05, 0.7, 0.0, g);
    const EnergyResult a = energy_Es(q, -0.25, 1.0, 0, 24, EnergyMethod::transmission);
    const EnergyResult b = energy_Es(q, -0.25, 1.0, 0, 24, EnergyMethod::det2);
    CHECK(std::abs(a.Es - b.Es) < 1e-7 * std::abs(a.Es));
}

TEST_CASE("energy rejects data outside the smallness window") {
    const GridSpec g = suite::grid();
    CHECK_THROWS_AS(energy_Es(suite::mollified_gaussian(1.0, 0.7, 0.0, g), -0.25, 1.0), InputError);
}

TEST_CASE("a priori experiment along the flow") {
    const GridSpec g = suite::grid();
    EvolutionConfig c;
    c.dt = 1e-3;
    c.t_end = 1.0;
    c.stride = 250;
    const TrajectoryRecord tr = evolve_qdnls(suite::mollified_gaussian(cplx(0.04, 0.02), 0.7, 0.0, g), c);
    const AprioriReport r = apriori_experiment(tr, -0.25, 1.0);
    REQUIRE(r.Es.size() == tr.times.size());
    CHECK(r.max_Es_drift < 1e-4);
    CHECK(r.max_norm_ratio <= 1.5);
    CHECK(r.quadrature_error < 1e-8);
    // dispersive tails reach the window edge by t = 1
    CHECK(r.mollification_error < 1e-6);

    TrajectoryRecord zero = evolve_qdnls(SampledField::zeros(g), c);
    const AprioriReport z = apriori_experiment(zero, -0.25, 1.0);
    for (double e : z.Es) CHECK(e == 0.0);
    for (double n : z.norm) CHECK(n == 0.0);
}

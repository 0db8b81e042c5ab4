#include "suite.hpp"

#include <laxscatter/evolve.hpp>
#include <laxscatter/norms.hpp>

#include <doctest.h>

#include <cmath>

using namespace laxscatter;

namespace {

const double ps[] = {1, 2, 4, 8, kInfinity};

// q^ = indicator of [0, 1) normalized to unit L2
SampledField unit_box_indicator(const GridSpec& g) {
    SpectrumField F{g, CVec(g.n, 0.0)};
    int count = 0;
    for (int m = 0; m < g.n; ++m)
        if (g.xi(m) >= 0 && g.xi(m) < 1) ++count;
    for (int m = 0; m < g.n; ++m)
        if (g.xi(m) >= 0 && g.xi(m) < 1) F.coefficients[m] = 1 / std::sqrt(double(count));
    return inverse_transform(F);
}

}  // namespace

TEST_CASE("Sobolev norm") {
    const GridSpec g = suite::grid();
    CHECK(sobolev_norm(SampledField::zeros(g), -0.25) == 0.0);
    for (const auto& q : suite::small_potentials(g)) {
        CHECK(std::abs(sobolev_norm(q, 0) - q.l2_norm()) < 1e-14);
        CHECK(sobolev_norm(q, -0.4) < sobolev_norm(q, -0.1));
    }
    // single mode: weight evaluated at that frequency
    SpectrumField F{g, CVec(g.n, 0.0)};
    F.coefficients[g.n / 2 + 20] = 1;
    const double xi = g.xi(g.n / 2 + 20);
    CHECK(std::abs(sobolev_norm(inverse_transform(F), -0.25) - std::pow(1 + xi * xi, -0.125)) < 1e-13);
}

TEST_CASE("smooth boxes form a partition of unity") {
    for (int n : {256, 1024, 4096}) {
        const BoxDecomposition B(suite::grid(n));
        CHECK(B.partition_defect() < 1e-12);
        CHECK(B.n_min() < 0);
        CHECK(B.n_max() > 0);
    }
    CHECK(BoxDecomposition::profile(0) == 1.0);
    CHECK(BoxDecomposition::profile(1) == 0.0);
    CHECK(BoxDecomposition::profile(-1.5) == 0.0);
    for (double t : {0.1, 0.3, 0.5, 0.77}) CHECK(std::abs(BoxDecomposition::profile(t) + BoxDecomposition::profile(t - 1) - 1) < 1e-15);

    const GridSpec g = suite::grid();
    const SampledField q = suite::random_bumps(4, g);
    const BoxDecomposition B(g);
    CVec sum(g.n, 0.0);
    for (int n = B.n_min(); n <= B.n_max(); ++n) {
        const SampledField piece = B.apply(q, n);
        for (int j = 0; j < g.n; ++j) sum[j] += piece[j];
    }
    CHECK(suite::sup_diff(sum, q.values) < 1e-14);
}

TEST_CASE("modulation norms") {
    const GridSpec g = suite::grid();
    CHECK(modulation_norm(SampledField::zeros(g), 2, 4) == 0.0);
    const SampledField box = unit_box_indicator(g);
    for (double p : ps) CHECK(std::abs(modulation_norm(box, 2, p) - 1) < 1e-12);

    double lower = 0, upper = 0;
    for (const auto& q : suite::small_potentials(g)) {
        CHECK(std::abs(modulation_norm(q, 2, 2) - q.l2_norm()) < 1e-12 * q.l2_norm());
        double prev = INFINITY;
        for (double p : ps) {
            const double v = modulation_norm(q, 2, p);
            CHECK(v <= prev * (1 + 1e-14));
            prev = v;
        }
        lower = std::max(lower, sobolev_norm(q, -0.5) / modulation_norm(q, 2, 4));
        upper = std::max(upper, modulation_norm(q, 2, 4) / q.l2_norm());
        // smooth and sharp boxes are equivalent norms
        for (double p : {1.0, 4.0}) {
            const double ratio = modulation_norm_smooth(q, 2, p) / modulation_norm(q, 2, p);
            CHECK(ratio > 0.25);
            CHECK(ratio < 4);
        }
    }
    MESSAGE("H^{-1/2} <= " << lower << " M_{2,4};  M_{2,4} <= " << upper << " L2");
    // sum_n (1 + n^2)^{-1} bounds the first constant through Hoelder
    CHECK(lower < 2);
    CHECK(upper <= 1 + 1e-14);
    CHECK_THROWS_AS(modulation_norm(box, 3, 2), InputError);
    CHECK_THROWS_AS(modulation_norm(box, 2, 0.5), InputError);
}

TEST_CASE("integration bound") {
    const GridSpec g = suite::grid();
    const IntegrationBound z = integration_bound_check(SampledField::zeros(g), 2);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    double lo = INFINITY, hi = 0;
    for (double w : {0.5, 1.0, 2.0, 3.0}) {
        const IntegrationBound base = integration_bound_check(spectral_derivative(suite::bump(1.0, w, 0.0, g)), 2);
        CHECK(base.primitive_decays);
        CHECK(std::isfinite(base.lhs));
        lo = std::min(lo, base.ratio);
        hi = std::max(hi, base.ratio);
        for (double c : {0.37, 1.5, -2.25}) {
            const IntegrationBound moved = integration_bound_check(spectral_derivative(suite::bump(1.0, w, c, g)), 2);
            CHECK(std::abs(moved.ratio / base.ratio - 1) < 1e-2);
        }
    }
    CHECK(hi < 1);
    CHECK(lo > 0.05);
    CHECK_FALSE(integration_bound_check(suite::bump(1.0, 1.0, 0.0, g), 2).primitive_decays);
}

TEST_CASE("resolvent bound in k") {
    const GridSpec g = suite::grid();
    const std::vector<double> ks = {4, 8, 16, 32};
    for (double p : {1.0, 2.0, 4.0}) {
        const ResolventSweep rs = resolvent_exponent_sweep(suite::small_potentials(g), p, ks);
        REQUIRE(rs.ratio.size() == ks.size());
        for (size_t i = 1; i < ks.size(); ++i) CHECK(rs.ratio[i] < rs.ratio[i - 1]);
        // at least the k^{-1/p} decay
        CHECK(rs.slope < -1 / p + 0.05);
    }
    CHECK(std::abs(loglog_slope({1, 2, 4}, {3, 1.5, 0.75}) + 1) < 1e-14);
}

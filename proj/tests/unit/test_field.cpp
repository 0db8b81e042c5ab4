#include "suite.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

using namespace laxscatter;
using std::numbers::pi;

TEST_CASE("grid spacing") {
    const GridSpec g = make_grid(16, 1024);
    CHECK(g.dx == 0.03125);
    CHECK(g.dxi == doctest::Approx(pi / 16).epsilon(1e-15));
    CHECK(g.dx * g.n == 2 * g.L);
    CHECK(g.xi(0) == doctest::Approx(-pi / g.dx).epsilon(1e-15));
    CHECK(g.xi(17) == doctest::Approx(-pi / g.dx + 17 * g.dxi).epsilon(1e-15));
    CHECK_THROWS_AS(make_grid(16, 7), InputError);
    CHECK_THROWS_AS(make_grid(16, 1000), InputError);
    CHECK_THROWS_AS(make_grid(0, 1024), InputError);
    CHECK_THROWS_AS(make_grid(-1, 1024), InputError);
}

TEST_CASE("non-finite samples are rejected") {
    const GridSpec g = make_grid(8, 16);
    CVec v(16, 0.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(SampledField(g, v), InputError);
    CHECK_THROWS_AS(SampledField(g, CVec(15, 0.0)), InputError);
}

TEST_CASE("transform of zero and of a pure mode") {
    const GridSpec g = make_grid(16, 256);
    const SpectrumField Z = transform(SampledField::zeros(g));
    for (const auto& c : Z.coefficients) CHECK(c == cplx(0));

    const int m = 100;
    CVec v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = std::polar(1.0, g.xi(m) * g.x(j));
    const SpectrumField F = transform(SampledField(g, v));
    for (int p = 0; p < g.n; ++p) {
        if (p == m)
            CHECK(std::abs(F.coefficients[p]) == doctest::Approx(std::sqrt(2 * g.L)).epsilon(1e-12));
        else
            CHECK(std::abs(F.coefficients[p]) < 1e-11);
    }
}

TEST_CASE("transform matches direct summation") {
    const GridSpec g = make_grid(10, 128);
    std::mt19937_64 rng(5);
    CVec v(g.n);
    for (auto& z : v) z = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
    const SampledField f(g, v);
    const SpectrumField F = transform(f);
    const double scale = std::sqrt(g.dxi) * g.dx / std::sqrt(2 * pi);
    double err = 0, norm = 0;
    for (int m = 0; m < g.n; ++m) {
        cplx s = 0;
        for (int j = 0; j < g.n; ++j) s += v[j] * std::polar(1.0, -g.xi(m) * g.x(j));
        err = std::max(err, std::abs(scale * s - F.coefficients[m]));
        norm = std::max(norm, std::abs(scale * s));
        CHECK(F.hat(m) == F.coefficients[m] / std::sqrt(g.dxi));
    }
    CHECK(err < 1e-13 * norm);
    CHECK(F.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-12));
}

TEST_CASE("round trip and Parseval on test fields") {
    const GridSpec g = make_grid(16, 1024);
    std::vector<SampledField> fields = {
        standard_potential(PotentialKind::gaussian, cplx(1, 2), 1.3, 0.5, g),
        standard_potential(PotentialKind::sech, 0.7, 2.0, -1.0, g),
        standard_potential(PotentialKind::bump, cplx(0, 1), 3.0, 2.0, g),
        suite::random_bumps(3, g, 1.0),
    };
    for (const auto& f : fields) {
        const SampledField back = inverse_transform(transform(f));
        SampledField d = back;
        for (int j = 0; j < g.n; ++j) d.values[j] -= f.values[j];
        CHECK(d.l2_norm() <= 1e-12 * f.l2_norm());
        const double a = f.l2_norm(), b = transform(f).l2_norm();
        CHECK(std::abs(a * a - b * b) <= 1e-10 * a * a);
    }
}

TEST_CASE("standard potentials") {
    const GridSpec g = make_grid(16, 1024);
    const SampledField zero = standard_potential(PotentialKind::gaussian, 0.0, 1.0, 0.0, g);
    for (const auto& z : zero.values) CHECK(z == cplx(0));

    const SampledField b = standard_potential(PotentialKind::bump, 1.0, 2.0, 0.0, g);
    for (int j = 0; j < g.n; ++j)
        if (std::abs(g.x(j)) >= 2) CHECK(b[j] == cplx(0));
    CHECK(b[g.n / 2] == cplx(1.0));
    auto [lo, hi] = b.support();
    CHECK(g.x(lo) > -2);
    CHECK(g.x(hi - 1) < 2);
    CHECK(g.x(lo - 1) <= -2);

    const SampledField gauss = standard_potential(PotentialKind::gaussian, 1.0, 1.0, 0.0, g);
    CHECK(gauss.l2_norm() * gauss.l2_norm() == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-12));

    CHECK_THROWS_AS(standard_potential(PotentialKind::bump, 1.0, 0.0, 0.0, g), InputError);
    CHECK_THROWS_AS(parse_potential_kind("square"), InputError);
    CHECK(parse_potential_kind("sech") == PotentialKind::sech);
}

TEST_CASE("flat-top window") {
    CHECK(flattop(0.5, 1, 2) == 1.0);
    CHECK(flattop(-1.0, 1, 2) == 1.0);
    CHECK(flattop(2.0, 1, 2) == 0.0);
    CHECK(flattop(1.5, 1, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(flattop(3.5, 1, 2, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    double prev = 1;
    for (double x = 1; x <= 2; x += 0.01) {
        CHECK(flattop(x, 1, 2) <= prev);
        prev = flattop(x, 1, 2);
    }
}

TEST_CASE("midpoint interpolation of a smooth field") {
    const GridSpec g = make_grid(8, 256);
    const SampledField f = standard_potential(PotentialKind::gaussian, cplx(1, -1), 1.0, 0.2, g);
    const CVec mid = midpoint_values(f.values);
    double err = 0;
    for (int j = 0; j + 1 < g.n; ++j) {
        const double t = g.x(j) + g.dx / 2 - 0.2;
        err = std::max(err, std::abs(mid[j] - cplx(1, -1) * std::exp(-t * t)));
    }
    CHECK(err < 1e-9);
    const SampledField r = refine(f);
    CHECK(r.grid.n == 2 * g.n);
    CHECK(r.grid.dx == g.dx / 2);
    CHECK(r[2 * 37] == f[37]);
}

TEST_CASE("csv round trip") {
    const GridSpec g = make_grid(6, 64);
    const SampledField f = standard_potential(PotentialKind::gaussian, cplx(0.3, -0.7), 1.0, 0.0, g);
    const auto path = std::filesystem::temp_directory_path() / "laxscatter_field_roundtrip.csv";
    write_field_csv(path.string(), f);
    const SampledField back = read_field_csv(path.string());
    CHECK(back.grid == g);
    CHECK(suite::sup_diff(back.values, f.values) == 0.0);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_field_csv("/nonexistent/field.csv"), InputError);
}

#include "suite.hpp"

#include <laxscatter/evolve.hpp>
#include <laxscatter/scattering.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace laxscatter;

namespace {

cplx det3(const CMat& a, const CMat& b, const CMat& c) {
    CMat m(3, 3);
    m << a, b, c;
    return m.determinant();
}

}  // namespace

TEST_CASE("zero potential has T = 1") {
    const GridSpec g = make_grid(16, 256);
    const SampledField z = SampledField::zeros(g);
    const LaxSpec s = build_qdnls_spec(z, z, 2.0);
    const JostSet set = solve_jost_set(s);
    CHECK(transmission_wronskian(set, g.n / 3).T_inv == cplx(1));
    CHECK(transmission_limit(set.columns[0], s).T_inv == cplx(1));
    CHECK(log_inverse_transmission(s) == cplx(0));
}

TEST_CASE("Wronskian is independent of x and matches the limit") {
    const GridSpec g = make_grid(16, 1024);
    for (const auto& q : {suite::bump(0.05, 2.0, 0.0, g), suite::bump(cplx(0.03, -0.05), 1.5, -0.7, g),
                          suite::mollified_gaussian(cplx(0, 0.08), 0.6, 0.3, g)}) {
        for (double k : {2.0, 4.0, 8.0}) {
            const LaxSpec s = suite::qdnls(q, k);
            const JostSet set = solve_jost_set(s);
            const TransmissionResult W = transmission_wronskian(set, g.n / 2, 8);
            const TransmissionResult lim = transmission_limit(set.columns[0], s);
            CHECK(W.x_independence_span < 1e-9);
            CHECK(std::abs(W.T_inv - lim.T_inv) < 1e-9 * std::abs(lim.T_inv));
            CHECK(W.method == TransmissionMethod::wronskian);
            CHECK(lim.method == TransmissionMethod::limit);
        }
    }
}

TEST_CASE("Wronskian span on general specs") {
    const GridSpec g = make_grid(16, 1024);
    for (int n : {2, 4})
        for (std::uint64_t seed : {1, 2}) {
            const LaxSpec s = random_general_spec(n, g, 4.0, 0.1, seed);
            const TransmissionResult W = transmission_wronskian(solve_jost_set(s), g.n / 2, 8);
            CHECK(W.x_independence_span < 1e-8 * std::abs(W.T_inv));
        }
}

TEST_CASE("determinant derivative identity") {
    std::mt19937_64 rng(3);
    auto rnd = [&] { return cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5); };
    CMat v(3, 3);
    for (int i = 0; i < 9; ++i) v(i / 3, i % 3) = rnd();
    const CMat I = CMat::Identity(3, 3);
    const cplx d = v.determinant();
    const cplx lhs_id = det3(I * v.col(0), v.col(1), v.col(2)) + det3(v.col(0), I * v.col(1), v.col(2)) +
                        det3(v.col(0), v.col(1), I * v.col(2));
    CHECK(std::abs(lhs_id - 3.0 * d) < 1e-14);
    for (int trial = 0; trial < 20; ++trial) {
        CMat A(3, 3);
        for (int i = 0; i < 9; ++i) A(i / 3, i % 3) = rnd();
        const cplx lhs = det3(A * v.col(0), v.col(1), v.col(2)) + det3(v.col(0), A * v.col(1), v.col(2)) +
                         det3(v.col(0), v.col(1), A * v.col(2));
        CHECK(std::abs(lhs - A.trace() * d) < 1e-13);
    }

    const GridSpec g = make_grid(16, 1024);
    const LaxSpec s = suite::qdnls(suite::bump(cplx(0.04, 0.02), 2.0, 0.0, g), 3.0);
    const WronskianCheck w = wronskian_derivative_identity_check(solve_jost_set(s), s, rng);
    CHECK(w.algebraic_residual < 1e-13);
    CHECK(w.derivative_residual < 1e-8);
}

TEST_CASE("log branch tracking") {
    const cplx z = std::polar(2.0, 3.0);
    const cplx ref(std::log(2.0), 3.0 + 2 * std::numbers::pi);
    CHECK(std::abs(log_near(z, ref) - ref) < 1e-14);
    CHECK(std::abs(std::exp(log_near(z, cplx(0, -40))) - z) < 1e-13);
}

TEST_CASE("conservation probe") {
    const GridSpec g = make_grid(16, 1024);
    const std::vector<SampledField> zeros(3, SampledField::zeros(g));
    const DriftSeries flat = conservation_probe(zeros, 2.0, 10, 13);
    for (const auto& t : flat.T_inv) CHECK(t == cplx(1));
    CHECK(flat.max_relative_drift == 0.0);

    const SampledField q0 = suite::mollified_gaussian(cplx(0.05, 0.02), 1.0, 0.0, g, 3, 5);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.stride = 250;
    const TrajectoryRecord tr = evolve_qdnls(q0, cfg);
    for (double k : {2.0, 4.0}) {
        const DriftSeries d = conservation_probe(tr.snapshots, k, 10, 13);
        CHECK(d.T_inv.size() == tr.snapshots.size());
        CHECK(d.max_relative_drift < 1e-5);
        CHECK(std::abs(d.T_inv.front() - 1.0) > 1e-6);
    }
}

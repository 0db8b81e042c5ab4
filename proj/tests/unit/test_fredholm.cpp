#include "suite.hpp"

#include <laxscatter/expquad.hpp>
#include <laxscatter/norms.hpp>
#include <laxscatter/scattering.hpp>

#include <doctest.h>

#include <array>
#include <cmath>

using namespace laxscatter;

namespace {

const cplx w = omega3();

double band_integral(const SampledField& q, double k) {
    // -int k |q^|^2 / (xi^2 + 3k^2)
    const SpectrumField F = transform(q);
    double s = 0;
    for (int m = 0; m < q.grid.n; ++m) {
        const double xi = q.grid.xi(m);
        s += k * std::norm(F.coefficients[m]) / (xi * xi + 3 * k * k);
    }
    return -s;
}

}  // namespace

TEST_CASE("resolvent kernels") {
    const double k = 2;
    const ResolventKernel K1 = resolvent_kernel(k);
    CHECK(K1(0.3, 1.0) == -std::exp(k * (0.3 - 1.0)));
    CHECK(K1(1.0, 0.3) == cplx(0));
    CHECK(K1(0.5, 0.5) == cplx(0));
    CHECK(!K1.causal());
    const ResolventKernel K2 = resolvent_kernel(k * w * w);
    CHECK(K2.causal());
    CHECK(K2(0.3, 1.0) == cplx(0));
    CHECK(std::abs(K2(1.0, 0.3) - std::exp(k * w * w * 0.7)) < 1e-15);
    CHECK(K2(0.5, 0.5) == cplx(0));
    CHECK_THROWS_AS(resolvent_kernel(cplx(0, 2)), InputError);
}

namespace {

// Interior points sit 26 units from either edge, so truncation is below e^{-26}.
template <class Apply>
double plane_wave_error(cplx z, int offset, Apply apply) {
    const GridSpec g = make_grid(32, 4096);
    const double xi = g.xi(g.n / 2 + offset);
    CVec e(g.n);
    for (int j = 0; j < g.n; ++j) e[j] = std::polar(1.0, xi * g.x(j));
    const CVec out = apply(e, g);
    double err = 0;
    for (int j = 0; j < g.n; ++j)
        if (std::abs(g.x(j)) <= 6) err = std::max(err, std::abs(out[j] - e[j] / (cplx(0, xi) - z)));
    return err;
}

}  // namespace

TEST_CASE("resolvent acts on plane waves by its symbol") {
    for (cplx z : {cplx(2, 1), cplx(-1, 0.5), 3.0 * w, cplx(-1, -0.5)})
        for (int off : {8, -24, 32}) {
            const double err = plane_wave_error(z, off, [&](const CVec& e, const GridSpec& g) {
                return expquad::apply_resolvent(z, e, g.dx);
            });
            CHECK(err < 1e-9);
        }
}

TEST_CASE("Toeplitz weights reproduce the resolvent symbol") {
    for (cplx z : {cplx(2, 1), cplx(-1, -0.5)})
        for (int off : {8, -24, 32}) {
            const double err = plane_wave_error(z, off, [&](const CVec& e, const GridSpec& g) {
                const CVec wts = expquad::resolvent_weights(z, g.dx, g.n);
                CVec out(g.n, 0.0);
                for (int a = 0; a < g.n; ++a) {
                    if (std::abs(g.x(a)) > 6) continue;
                    for (int b = 0; b < g.n; ++b) out[a] += wts[b - a + g.n - 1] * e[b];
                }
                return out;
            });
            CHECK(err < 1e-7);
        }
}

TEST_CASE("zero kernel") {
    const GridSpec g = make_grid(16, 256);
    const SampledField z = SampledField::zeros(g);
    const OperatorKernel K = assemble_lambda(build_qdnls_spec(z, z, 2.0));
    CHECK(K.is_zero());
    CHECK(trace_power(K, 2) == cplx(0));
    CHECK(trace_power(K, 5) == cplx(0));
    CHECK(trace2_closed_form(z, z, 2.0) == cplx(0));
    const auto [t3, t4] = trace34_closed_form(z, z, 2.0);
    CHECK(t3 == cplx(0));
    CHECK(t4 == cplx(0));
    CHECK(logdet2_series(K).log_det2 == cplx(0));
    CHECK(det2_matrix(K).det2 == cplx(1));
    CHECK_THROWS_AS(trace_power(K, 1), InputError);
}

TEST_CASE("symmetrized and unsymmetrized traces agree") {
    const GridSpec g = make_grid(16, 1024);
    for (const auto& q : {suite::mollified_gaussian(0.1, 0.7, 0.0, g), suite::bump(cplx(0.05, 0.05), 1.5, 0.2, g)})
        for (double k : {2.0, 8.0}) {
            const LaxSpec s = suite::qdnls(q, k);
            const cplx sym = trace2_fourier(assemble_lambda(s, true));
            const cplx plain = trace_power(assemble_lambda(s), 2);
            CHECK(std::abs(sym - plain) < 1e-9);
        }
}

TEST_CASE("Hilbert-Schmidt norm against the Fourier double integral") {
    const GridSpec g = make_grid(16, 1024);
    const SampledField q = suite::mollified_gaussian(0.1, 0.7, 0.0, g);
    const SampledField r = q.conj();
    std::vector<double> ks = {2, 4, 8, 16}, vals;
    for (double k : ks) {
        double fro = 0, formula = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                const HSNormResult h = hs_norm(q, r, i, j, k);
                fro += h.frobenius * h.frobenius;
                formula += h.formula_value;
                CHECK(h.frobenius * h.frobenius / h.formula_value >= 0.5);
                CHECK(h.frobenius * h.frobenius / h.formula_value <= 2.0);
            }
        if (k == 2) CHECK(std::abs(fro / formula - 1) < 0.02);
        vals.push_back(formula);
    }
    for (size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] < vals[i - 1]);
    const double slope = loglog_slope(ks, vals);
    CHECK(slope > -1.1);
    CHECK(slope < -0.9);
    CHECK_THROWS_AS(hs_norm(q, r, 1, 1, 2.0), InputError);
    const SampledField z = SampledField::zeros(g);
    const HSNormResult h0 = hs_norm(z, z, 0, 1, 2.0);
    CHECK(h0.frobenius == 0.0);
    CHECK(h0.formula_value == 0.0);
}

TEST_CASE("low-order traces match the closed forms") {
    const GridSpec g = make_grid(16, 1024);
    for (const auto& q : suite::small_potentials(g))
        for (double k : {2.0, 4.0, 8.0}) {
            const SampledField r = q.conj();
            const OperatorKernel K = assemble_lambda(suite::qdnls(q, k));
            const cplx c2 = trace2_closed_form(q, r, k);
            const auto [c3, c4] = trace34_closed_form(q, r, k);
            CHECK(std::abs(trace_power(K, 2) - c2) <= 1e-6 * std::abs(c2));
            CHECK(std::abs(trace_power(K, 3) - c3) <= 1e-6 * (1 + std::abs(c3)));
            CHECK(std::abs(trace_power(K, 4) - c4) <= 1e-6 * (1 + std::abs(c4)));
        }
}

TEST_CASE("Nystrom traces converge to the closed forms") {
    // first order in dx from the kernel jump on the diagonal
    for (int seed : {11, 12}) {
        std::array<double, 2> e2{}, e3{};
        for (int i = 0; i < 2; ++i) {
            const GridSpec g = make_grid(16, 256 << i);
            const SampledField q = suite::random_bumps(seed, g);
            const double k = 2;
            const auto nt = nystrom_traces(assemble_lambda(suite::qdnls(q, k)).nystrom(), 3);
            const cplx c3 = trace34_closed_form(q, q.conj(), k).first;
            e2[i] = std::abs(nt[0] - trace2_closed_form(q, q.conj(), k));
            e3[i] = std::abs(nt[1] - c3);
        }
        CHECK(e2[1] < 0.7 * e2[0]);
        CHECK(e3[1] < 0.7 * e3[0]);
    }
}

TEST_CASE("quadratic trace is real, negative and coercive") {
    const GridSpec g = make_grid(16, 1024);
    for (const auto& q : suite::small_potentials(g))
        for (double k : {2.0, 4.0, 8.0}) {
            const cplx t2 = trace2_closed_form(q, q.conj(), k);
            CHECK(std::abs(t2.imag()) < 1e-12 * std::abs(t2));
            CHECK(t2.real() < 0);
            // sqrt(3) k xi <= (xi^2 + 3k^2) / 2 pins the ratio to [4, 12]
            const double ratio = t2.real() / band_integral(q, k);
            CHECK(ratio >= 4 - 1e-12);
            CHECK(ratio <= 12 + 1e-12);
        }
}

TEST_CASE("decoupled system") {
    const GridSpec g = make_grid(16, 1024);
    const SampledField q = suite::bump(cplx(0.1, 0.05), 1.5, 0.0, g);
    const SampledField z = SampledField::zeros(g);
    const double k = 3;
    const OperatorKernel K = assemble_lambda(build_qdnls_spec(q, z, k));
    const auto [c3, c4] = trace34_closed_form(q, z, k);
    const cplx chain = chain_trace({k, k * w * w, k * w}, {&q.values, &q.values, &q.values}, g.dx);
    CHECK(std::abs(c3 + 3.0 * chain) < 1e-12 * std::abs(c3));
    CHECK(std::abs(trace_power(K, 3) - c3) < 1e-6 * std::abs(c3));
    CHECK(std::abs(c4) < 1e-15);
    CHECK(std::abs(trace_power(K, 4)) < 1e-15);
    CHECK(std::abs(trace_power(K, 2)) < 1e-15);
}

TEST_CASE("Schatten-Hoelder bound") {
    const GridSpec g = make_grid(16, 1024);
    for (const auto& q : suite::small_potentials(g)) {
        const OperatorKernel K = assemble_lambda(suite::qdnls(q, 2.0));
        const double rho = K.hs_norm();
        for (int l = 2; l <= 8; ++l) CHECK(std::pow(std::abs(trace_power(K, l)), 1.0 / l) <= rho);
    }
}

TEST_CASE("HS norm decays in k") {
    const GridSpec g = make_grid(16, 1024);
    for (const auto& q : suite::small_potentials(g)) {
        double prev = INFINITY;
        for (double k : {1.0, 2.0, 4.0, 8.0, 16.0}) {
            const double rho = assemble_lambda(suite::qdnls(q, k)).hs_norm();
            CHECK(rho <= prev);
            prev = rho;
        }
    }
}

TEST_CASE("series tail bound") {
    const GridSpec g = make_grid(16, 1024);
    const OperatorKernel K = assemble_lambda(suite::qdnls(suite::bump(0.2, 1.5, 0.0, g), 2.0));
    const double tol = 1e-10;
    const TraceSeries ts = logdet2_series(K, tol);
    const int L = static_cast<int>(ts.traces.size()) + 1;
    CHECK(ts.tail_bound < tol);
    cplx more = 0;
    for (int l = L + 1; l <= L + 5; ++l) more += (l % 2 ? 1.0 : -1.0) * trace_power(K, l) / double(l);
    CHECK(std::abs(more) < tol);
    for (int l = 2; l <= L; ++l) CHECK(std::abs(ts.traces[l - 2]) <= std::pow(ts.hs_norm, l));

    const OperatorKernel big = assemble_lambda(suite::qdnls(suite::bump(3.0, 2.0, 0.0, g), 1.0));
    CHECK(big.hs_norm() >= 1);
    CHECK_THROWS_AS(logdet2_series(big), InputError);
}

TEST_CASE("matrix det2 identities") {
    CHECK(det2_matrix(CMat::Zero(4, 4)) == cplx(1));
    CVecX a(3);
    a << cplx(0.1, 0.2), -0.3, cplx(0, 0.05);
    cplx expect = 1;
    for (int i = 0; i < 3; ++i) expect *= (1.0 + a[i]) * std::exp(-a[i]);
    CHECK(std::abs(det2_matrix(CMat(a.asDiagonal())) - expect) < 1e-15);
    CVecX u(4), v(4);
    u << 0.1, cplx(0, 0.2), -0.3, 0.05;
    v << cplx(0.2, 0.1), 0.4, 0.1, -0.2;
    const cplx t = (u.transpose() * v)(0);
    CHECK(std::abs(det2_matrix(u * v.transpose()) - (1.0 + t) * std::exp(-t)) < 1e-14);
}

TEST_CASE("series and matrix determinants agree") {
    const GridSpec g = make_grid(16, 1024);
    for (const auto& q : suite::small_potentials(g))
        for (double k : {2.0, 4.0}) {
            const OperatorKernel K = assemble_lambda(suite::qdnls(q, k));
            const Det2Result d = det2_matrix(K);
            CHECK(std::abs(d.log_det2 - logdet2_series(K).log_det2) < 1e-8);
            CHECK(d.log_det_minus_log_det2 < 1e-10);
        }
}

TEST_CASE("equality of log T^-1 and log det2") {
    const GridSpec g = make_grid(16, 1024);
    const SampledField z = SampledField::zeros(g);
    const EqualityReport zero = verify_equality(build_qdnls_spec(z, z, 2.0));
    CHECK(zero.log_T_inv == cplx(0));
    CHECK(zero.log_det2_matrix == cplx(0));
    CHECK(zero.log_det2_series == cplx(0));

    const EqualityReport b = verify_equality(suite::qdnls(suite::bump(0.1, 1.5, 0.0, g), 3.0));
    CHECK(b.dev_matrix < 1e-6);
    CHECK(b.dev_series < 1e-6);
    CHECK(b.hs_norm < 0.5);

    for (int n : {2, 4}) {
        const EqualityReport r = verify_equality(random_general_spec(n, g, 3.0, 0.1, 2));
        CHECK(r.dev_matrix < 1e-6);
        CHECK(r.dev_series < 1e-6);
    }
    CHECK_THROWS_AS(verify_equality(suite::qdnls(suite::bump(2.0, 2.0, 0.0, g), 1.0)), InputError);
}

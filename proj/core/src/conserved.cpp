#include "laxscatter/conserved.hpp"

#include "laxscatter/fredholm.hpp"
#include "laxscatter/jost.hpp"
#include "laxscatter/norms.hpp"
#include "laxscatter/scattering.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace laxscatter {

double microlocal_norm(const SampledField& q, double s, double k) {
    if (!(k > 0)) throw InputError("k must be positive");
    const SpectrumField F = transform(q);
    double acc = 0;
    for (int m = 0; m < q.grid.n; ++m) {
        const double xi = q.grid.xi(m);
        acc += std::norm(F.coefficients[m]) * std::pow(xi * xi + 3 * k * k, s);
    }
    return std::sqrt(acc);
}

double coercivity_numerator(double s, double k0, double xi) {
    if (!(s < 0)) throw InputError("the k-integral diverges for s >= 0");
    if (!(k0 > 0)) throw InputError("k0 must be positive");
    const double r3 = std::sqrt(3.0);
    // beyond K expand 1 / (1 + a u + b u^2), u = xi / k, and integrate term by term
    const double K = 100 * std::max(k0, std::abs(xi));
    auto f = [&](double t) {
        const double k = std::exp(t);
        return 3 * std::pow(k, 2 + 2 * s) / (xi * xi + 3 * k * k + r3 * k * xi);
    };
    double body = 0;
    if (K > k0) {
        const double a = std::log(k0), b = std::log(K);
        const int pieces = 8;
        for (int i = 0; i < pieces; ++i)
            body += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                f, a + (b - a) * i / pieces, a + (b - a) * (i + 1) / pieces, 15, 1e-14);
    }
    const double ca = 1 / r3, cb = 1.0 / 3;
    double cm2 = 0, cm1 = 1, tail = 0;
    for (int n = 0; n < 40; ++n) {
        const double c = n == 0 ? 1.0 : -ca * cm1 - cb * cm2;
        const double term = c * std::pow(xi, n) * std::pow(K, 2 * s - n) / (n - 2 * s);
        tail += term;
        cm2 = n == 0 ? 0 : cm1;
        cm1 = c;
        if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    }
    return body + tail;
}

CoercivityResult coercivity_ratio(double s, double k0, double xi) {
    CoercivityResult r;
    r.numerator = coercivity_numerator(s, k0, xi);
    r.denominator = std::pow(xi * xi + k0 * k0, s);
    r.ratio = r.numerator / r.denominator;
    return r;
}

namespace {

cplx A_of_k(const SampledField& q, double k, EnergyMethod method) {
    const LaxSpec spec = build_qdnls_spec(q, q.conj(), k);
    if (method == EnergyMethod::det2) return det2_matrix(assemble_lambda(spec)).log_det2;
    return log_inverse_transmission(spec);
}

// Gauss-Legendre in log k on [k0, k1]: sum of weights * k^{2s+1} A(k)
struct KQuad {
    double value = 0;
    double imag = 0;
    std::vector<double> nodes, A;
};

KQuad k_quadrature(const SampledField& q, double s, double k0, double k1, int n_k, EnergyMethod method) {
    KQuad out;
    const double a = std::log(k0), b = std::log(k1);
    // Legendre nodes by Newton on P_n
    for (int i = 0; i < n_k; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n_k + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int m = 2; m <= n_k; ++m) {
                const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = n_k * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2 / ((1 - x * x) * dp * dp) * (b - a) / 2;
        const double t = (a + b) / 2 + (b - a) / 2 * x;
        const double k = std::exp(t);
        const cplx A = A_of_k(q, k, method);
        out.nodes.push_back(k);
        out.A.push_back(A.real());
        out.imag = std::max(out.imag, std::abs(A.imag()));
        out.value += w * std::pow(k, 2 * s + 1) * A.real();
    }
    return out;
}

}  // namespace

EnergyResult energy_Es(const SampledField& q, double s, double k0, double k_max, int n_k, EnergyMethod method,
                       bool higher_orders) {
    if (!(s < 0 && s > -0.5)) throw InputError("s must lie in (-1/2, 0)");
    if (!(k0 > 0)) throw InputError("k0 must be positive");
    if (n_k < 2) throw InputError("n_k must be at least 2");
    EnergyResult r;
    r.s = s;
    r.k0 = k0;
    r.k_max = k_max > 0 ? k_max : 64 * k0;
    r.n_k = n_k;
    r.norm_Hs_k0 = microlocal_norm(q, s, k0);
    r.smallness = sobolev_norm(q, s) / (kSmallnessDelta * std::pow(k0, s + 0.5));
    if (r.smallness >= 1)
        throw InputError("smallness violated at k0: |q|_{H^s} = " + std::to_string(sobolev_norm(q, s)) +
                         " >= delta k0^{s+1/2}");
    if (std::all_of(q.values.begin(), q.values.end(), [](cplx v) { return v == cplx(0); })) {
        r.orders.assign(3, 0.0);
        return r;
    }
    require_compact_support(build_qdnls_spec(q, q.conj(), k0));

    const SpectrumField F = transform(q);
    for (int m = 0; m < q.grid.n; ++m) {
        const double w = std::norm(F.coefficients[m]);
        if (w > 0) r.Es2 += w * coercivity_numerator(s, k0, -q.grid.xi(m));
    }

    const KQuad full = k_quadrature(q, s, k0, r.k_max, n_k, method);
    const KQuad half = k_quadrature(q, s, k0, r.k_max, n_k / 2, method);
    r.k_nodes = full.nodes;
    r.A_values = full.A;
    r.imag_residual = full.imag;
    const double A1 = A_of_k(q, r.k_max, method).real(), A2 = A_of_k(q, r.k_max / 2, method).real();
    r.tail_exponent = std::log(std::abs(A1 / A2)) / std::log(2.0);
    if (!(2 * s + r.tail_exponent + 1 < 0))
        throw std::runtime_error("k-integrand does not decay fast enough for the tail closure");
    // A ~ a/k + b/k^2 through the two samples, integrated exactly
    const double K = r.k_max;
    const double b = K * K * (A2 - 2 * A1) / 2;
    const double a = K * A1 - b / K;
    r.tail = a * std::pow(K, 2 * s) / (-2 * s) + b * std::pow(K, 2 * s - 1) / (1 - 2 * s);
    r.Es = full.value + r.tail;
    r.quadrature_error = std::abs(full.value - half.value);

    r.orders = {r.Es2, 0.0, 0.0};
    if (higher_orders) {
        // cubic and quartic parts on the same k nodes; they decay like k^{-2} and faster
        const double a = std::log(k0), b = std::log(r.k_max);
        boost::math::quadrature::gauss<double, 20> gl;
        for (int l = 3; l <= 4; ++l) {
            auto f = [&](double t) {
                const double k = std::exp(t);
                const OperatorKernel K = assemble_lambda(build_qdnls_spec(q, q.conj(), k));
                const cplx tl = trace_power_exact(K, l);
                return std::pow(k, 2 * s + 1) * ((l % 2 ? 1.0 : -1.0) * tl / double(l)).real();
            };
            r.orders[l - 2] = gl.integrate(f, a, b);
        }
    }
    return r;
}

AprioriReport apriori_experiment(const TrajectoryRecord& tr, double s, double k0, double plateau, double edge, int n_k) {
    AprioriReport rep;
    for (size_t i = 0; i < tr.snapshots.size(); ++i) {
        const SampledField& q = tr.snapshots[i];
        const SampledField qm = mollify(q, plateau, edge);
        double d = 0;
        for (int a = 0; a < q.grid.n; ++a) d += std::norm(q.values[a] - qm.values[a]);
        rep.mollification_error = std::max(rep.mollification_error, std::sqrt(d * q.grid.dx));
        rep.times.push_back(tr.times[i]);
        rep.norm.push_back(microlocal_norm(q, s, k0));
        if (std::all_of(q.values.begin(), q.values.end(), [](cplx v) { return v == cplx(0); })) {
            rep.Es.push_back(0);
            continue;
        }
        const EnergyResult E = energy_Es(qm, s, k0, 0, n_k, EnergyMethod::transmission, false);
        if (i == 0) rep.quadrature_error = E.Es != 0 ? E.quadrature_error / std::abs(E.Es) : 0;
        rep.Es.push_back(E.Es);
    }
    for (size_t i = 0; i < rep.Es.size(); ++i) {
        if (rep.Es[0] != 0) rep.max_Es_drift = std::max(rep.max_Es_drift, std::abs(rep.Es[i] - rep.Es[0]) / std::abs(rep.Es[0]));
        if (rep.norm[0] != 0) rep.max_norm_ratio = std::max(rep.max_norm_ratio, rep.norm[i] / rep.norm[0]);
    }
    return rep;
}

}  // namespace laxscatter

#include "laxscatter/scattering.hpp"

#include <cmath>
#include <numbers>

namespace laxscatter {

TransmissionResult transmission_wronskian(const JostSet& jost, int at_x, int samples) {
    if (jost.size() == 0) throw InputError("empty Jost set");
    const int N = static_cast<int>(jost.columns[0].phi.rows());
    for (const auto& c : jost.columns)
        if (c.phi.cwiseAbs().maxCoeff() == 0.0) throw InputError("singular column set");
    TransmissionResult r;
    r.k = jost.columns[0].k;
    r.method = TransmissionMethod::wronskian;
    r.T_inv = jost.matrix(at_x).determinant();
    double span = 0;
    std::vector<cplx> W;
    for (int s = 0; s < samples; ++s) {
        const int a = static_cast<int>((static_cast<long>(N - 1) * s) / std::max(1, samples - 1));
        W.push_back(jost.matrix(a).determinant());
    }
    for (size_t i = 0; i < W.size(); ++i)
        for (size_t j = 0; j < i; ++j) span = std::max(span, std::abs(W[i] - W[j]));
    r.x_independence_span = span;
    return r;
}

TransmissionResult transmission_limit(const JostSolution& left_jost, const LaxSpec& spec) {
    if (left_jost.side != Side::left || left_jost.j != 0)
        throw InputError("limit formula needs the first left Jost solution");
    for (int i = 1; i < spec.n(); ++i)
        if (spec.J.omegas[i].real() > spec.J.omegas[0].real())
            throw InputError("limit formula needs the first entry of J to have the largest real part");
    require_compact_support(spec);
    const int N = static_cast<int>(left_jost.phi.rows());
    TransmissionResult r;
    r.k = left_jost.k;
    r.method = TransmissionMethod::limit;
    r.T_inv = left_jost.phi(N - 1, 0);
    const int hi = spec.support().second;
    double span = 0;
    for (int a = hi; a < N; ++a) span = std::max(span, std::abs(left_jost.phi(a, 0) - r.T_inv));
    r.x_independence_span = span;
    return r;
}

cplx log_near(cplx z, cplx ref) {
    cplx l = std::log(z);
    const double two_pi = 2 * std::numbers::pi;
    const double m = std::round((ref.imag() - l.imag()) / two_pi);
    return l + cplx(0, m * two_pi);
}

cplx log_inverse_transmission(const LaxSpec& spec) {
    if (spec.support().first == spec.support().second) return 0.0;
    if (spec.qdnls) {
        const JostSolution s = solve_jost_march(spec, Side::left, 0);
        return std::log(transmission_limit(s, spec).T_inv);
    }
    const JostSet set = solve_jost_set(spec, false);
    auto [lo, hi] = spec.support();
    return std::log(transmission_wronskian(set, (lo + hi) / 2).T_inv);
}

WronskianCheck wronskian_derivative_identity_check(const JostSet& jost, const LaxSpec& spec,
                                                   std::mt19937_64& rng) {
    WronskianCheck out;
    const int n = jost.size();
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 8; ++trial) {
        CMat A(n, n), V(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                A(i, j) = cplx(nd(rng), nd(rng));
                V(i, j) = cplx(nd(rng), nd(rng));
            }
        cplx lhs = 0;
        for (int j = 0; j < n; ++j) {
            CMat Vj = V;
            Vj.col(j) = A * V.col(j);
            lhs += Vj.determinant();
        }
        const cplx rhs = A.trace() * V.determinant();
        const double scale = std::max({std::abs(rhs), A.norm() * std::abs(V.determinant()), 1e-300});
        out.algebraic_residual = std::max(out.algebraic_residual, std::abs(lhs - rhs) / scale);
    }
    const int N = static_cast<int>(jost.columns[0].phi.rows());
    const double dx = spec.grid().dx;
    std::vector<cplx> W(N);
    for (int a = 0; a < N; ++a) W[a] = jost.matrix(a).determinant();
    for (int a = 2; a + 2 < N; ++a) {
        const cplx d = (-W[a + 2] + 8.0 * W[a + 1] - 8.0 * W[a - 1] + W[a - 2]) / (12 * dx);
        out.derivative_residual = std::max(out.derivative_residual, std::abs(d) / std::abs(W[a]));
    }
    return out;
}

DriftSeries conservation_probe(const std::vector<SampledField>& snapshots, double k, double plateau,
                               double edge) {
    DriftSeries d;
    for (const auto& q : snapshots) {
        const SampledField qm = mollify(q, plateau, edge);
        const LaxSpec spec = build_qdnls_spec(qm, qm.conj(), k);
        if (spec.support().first == spec.support().second) {
            d.T_inv.push_back(1.0);
            continue;
        }
        const JostSolution s = solve_jost_march(spec, Side::left, 0);
        d.T_inv.push_back(transmission_limit(s, spec).T_inv);
    }
    for (const auto& t : d.T_inv)
        d.max_relative_drift = std::max(d.max_relative_drift, std::abs(t - d.T_inv.front()) / std::abs(d.T_inv.front()));
    return d;
}

}  // namespace laxscatter

#include "laxscatter/evolve.hpp"

#include "fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace laxscatter {

namespace {

// Angular wavenumbers in FFTW order.
std::vector<double> wavenumbers(const GridSpec& g) {
    std::vector<double> kx(g.n);
    for (int m = 0; m < g.n; ++m) kx[m] = (m < g.n / 2 ? m : m - g.n) * g.dxi;
    return kx;
}

}  // namespace

SampledField spectral_derivative(const SampledField& q) {
    const detail::Dft fft(q.grid.n);
    const auto kx = wavenumbers(q.grid);
    CVec v = q.values;
    fft.forward(v);
    for (int m = 0; m < q.grid.n; ++m) v[m] *= cplx(0, kx[m]) / double(q.grid.n);
    if (q.grid.n % 2 == 0) v[q.grid.n / 2] = 0.0;
    fft.backward(v);
    return SampledField(q.grid, std::move(v), q.label);
}

double mass(const SampledField& q) { return std::pow(q.l2_norm(), 2); }

cplx hamiltonian_complex(const SampledField& q) {
    const SampledField dq = spectral_derivative(q);
    const double c = 1.0 / (2.0 * std::sqrt(3.0));
    cplx H = 0;
    for (int a = 0; a < q.grid.n; ++a) {
        const cplx u = q.values[a], r = std::conj(u);
        const cplx du = dq.values[a], dr = std::conj(du);
        H += cplx(0, c) * (du * r - u * dr) - (r * r * r + u * u * u) / 3.0;
    }
    return H * q.grid.dx;
}

double hamiltonian(const SampledField& q) {
    const cplx H = hamiltonian_complex(q);
    if (std::abs(H.imag()) > 1e-10 * std::max(1.0, std::abs(H)))
        throw std::runtime_error("Hamiltonian has an imaginary part; is r = conj(q)?");
    return H.real();
}

TrajectoryRecord evolve_qdnls(const SampledField& q0, const EvolutionConfig& cfg) {
    if (!(cfg.dt > 0) || !(cfg.t_end >= 0)) throw InputError("dt must be positive and t_end nonnegative");
    if (cfg.stride < 1) throw InputError("snapshot stride must be at least 1");
    const double steps_d = cfg.t_end / cfg.dt;
    const long steps = std::lround(steps_d);
    if (std::abs(steps_d - steps) > 1e-9 * std::max(1.0, steps_d)) throw InputError("t_end must be a multiple of dt");
    const GridSpec& g = q0.grid;
    const int n = g.n;
    const double edge = std::max(std::abs(q0.values.front()), std::abs(q0.values.back()));
    if (edge > 1e-12) throw InputError("initial datum has not decayed at the grid edges");

    const detail::Dft fft(n);
    const auto kx = wavenumbers(g);
    std::vector<double> mask(n, 1.0);
    if (cfg.dealias) {
        const double kmax = (n / 2) * g.dxi * 2.0 / 3.0;
        for (int m = 0; m < n; ++m)
            if (std::abs(kx[m]) > kmax) mask[m] = 0.0;
    }
    // q^_t = -i xi^2 / sqrt(3) q^ + N^
    CVec E(n), E2(n);
    for (int m = 0; m < n; ++m) {
        const cplx lam(0, -kx[m] * kx[m] / std::sqrt(3.0));
        E[m] = std::exp(lam * (cfg.dt / 2));
        E2[m] = E[m] * E[m];
    }
    auto nonlin = [&](const CVec& qh) {
        CVec out(n, 0.0);
        if (!cfg.nonlinear) return out;
        CVec u = qh, du(n);
        for (int m = 0; m < n; ++m) du[m] = qh[m] * cplx(0, kx[m]);
        fft.backward(u);
        fft.backward(du);
        for (int a = 0; a < n; ++a) out[a] = -2.0 * std::conj(u[a]) * std::conj(du[a]) / double(n * n);
        fft.forward(out);
        for (int m = 0; m < n; ++m) out[m] *= mask[m];
        return out;
    };

    TrajectoryRecord rec;
    rec.cfl_ratio = cfg.dt / (g.dx * g.dx * std::sqrt(3.0) / (std::numbers::pi * std::numbers::pi));
    auto snapshot = [&](double t, const CVec& qh) {
        CVec v = qh;
        fft.backward(v);
        for (auto& z : v) z /= double(n);
        SampledField f(g, std::move(v), q0.label);
        rec.times.push_back(t);
        rec.mass.push_back(mass(f));
        rec.hamiltonian.push_back(hamiltonian_complex(f).real());
        rec.snapshots.push_back(std::move(f));
    };

    CVec qh = q0.values;
    fft.forward(qh);
    if (cfg.nonlinear)
        for (int m = 0; m < n; ++m) qh[m] *= mask[m];
    snapshot(0.0, qh);
    const double h = cfg.dt;
    CVec a(n), b(n), c(n);
    for (long s = 1; s <= steps; ++s) {
        const CVec k1 = nonlin(qh);
        for (int m = 0; m < n; ++m) a[m] = E[m] * (qh[m] + (h / 2) * k1[m]);
        const CVec k2 = nonlin(a);
        for (int m = 0; m < n; ++m) b[m] = E[m] * qh[m] + (h / 2) * k2[m];
        const CVec k3 = nonlin(b);
        for (int m = 0; m < n; ++m) c[m] = E2[m] * qh[m] + h * E[m] * k3[m];
        const CVec k4 = nonlin(c);
        double sup = 0;
        for (int m = 0; m < n; ++m) {
            qh[m] = E2[m] * qh[m] + (h / 6) * (E2[m] * k1[m] + 2.0 * E[m] * (k2[m] + k3[m]) + k4[m]);
            sup += std::abs(qh[m]);
        }
        // sum |q^_m| / n bounds sup |q|
        if (!std::isfinite(sup)) throw std::runtime_error("NaN in the evolution at step " + std::to_string(s));
        if (sup / n > 1e6) throw std::runtime_error("blow-up: |q|_inf > 1e6 at t = " + std::to_string(s * h));
        if (s % cfg.stride == 0 || s == steps) snapshot(s * h, qh);
    }
    rec.steps = steps;
    return rec;
}

}  // namespace laxscatter

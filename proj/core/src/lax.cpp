#include "laxscatter/lax.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace laxscatter {

cplx omega3() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

DiagonalGenerator make_generator(std::vector<cplx> omegas) {
    const int n = static_cast<int>(omegas.size());
    if (n < 2) throw InputError("J needs at least two entries");
    double mx = 0;
    cplx sum = 0;
    for (const auto& w : omegas) {
        mx = std::max(mx, std::abs(w));
        sum += w;
    }
    for (int i = 0; i < n; ++i) {
        if (omegas[i].real() == 0.0 || std::abs(omegas[i].real()) <= 1e-14 * mx)
            throw InputError("Re(ω_j) = 0 for j = " + std::to_string(i + 1));
        for (int j = 0; j < i; ++j)
            if (std::abs(omegas[i] - omegas[j]) <= 1e-14 * mx) throw InputError("eigenvalues not distinct");
    }
    if (std::abs(sum) > 1e-14 * mx * n) throw InputError("trace of J is not zero");
    DiagonalGenerator J;
    J.omegas = std::move(omegas);
    int l = 0;
    while (l < n && J.omegas[l].real() > 0) ++l;
    for (int i = l; i < n; ++i)
        if (J.omegas[i].real() > 0) throw InputError("ordering violated: positive real parts must come first");
    for (int i = 1; i < n; ++i)
        if (J.omegas[i].real() > J.omegas[i - 1].real() + 1e-14 * mx)
            throw InputError("ordering violated: real parts must be nonincreasing");
    J.split = l;
    return J;
}

bool Polynomial::is_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const Monomial& m) { return m.coefficient == cplx(0); });
}

bool Polynomial::has_constant_term() const {
    for (const auto& m : terms)
        if (m.coefficient != cplx(0) && std::all_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e == 0; }))
            return true;
    return false;
}

cplx Polynomial::eval(const std::vector<cplx>& u) const {
    cplx s = 0;
    for (const auto& m : terms) {
        cplx t = m.coefficient;
        for (size_t i = 0; i < m.exponents.size(); ++i)
            for (int e = 0; e < m.exponents[i]; ++e) t *= u[i];
        s += t;
    }
    return s;
}

cplx Polynomial::derivative(int i, const std::vector<cplx>& u) const {
    cplx s = 0;
    for (const auto& m : terms) {
        if (m.exponents[i] == 0) continue;
        cplx t = m.coefficient * double(m.exponents[i]);
        for (size_t c = 0; c < m.exponents.size(); ++c) {
            const int e = m.exponents[c] - (static_cast<int>(c) == i ? 1 : 0);
            for (int p = 0; p < e; ++p) t *= u[c];
        }
        s += t;
    }
    return s;
}

Polynomial linear_poly(int i, int m, cplx c) {
    Monomial mono;
    mono.exponents.assign(m, 0);
    mono.exponents[i] = 1;
    mono.coefficient = c;
    return Polynomial{{mono}};
}

std::vector<cplx> LaxSpec::u_at(int j) const {
    std::vector<cplx> u(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) u[c] = fields[c].values[j];
    return u;
}

CVec LaxSpec::entry(int a, int b) const {
    const int N = grid().n;
    CVec e(N, 0.0);
    if (U0[a][b].is_zero()) return e;
    for (int j = 0; j < N; ++j) e[j] = U0[a][b].eval(u_at(j));
    return e;
}

std::vector<std::vector<CVec>> LaxSpec::entries() const {
    std::vector<std::vector<CVec>> E(n(), std::vector<CVec>(n()));
    for (int a = 0; a < n(); ++a)
        for (int b = 0; b < n(); ++b) E[a][b] = entry(a, b);
    return E;
}

std::vector<std::vector<CVec>> LaxSpec::midpoint_entries() const {
    std::vector<SampledField> mid;
    for (const auto& f : fields) mid.emplace_back(f.grid, midpoint_values(f.values));
    return with_fields(mid).entries();
}

std::pair<int, int> LaxSpec::support() const {
    int lo = grid().n, hi = 0;
    for (const auto& f : fields) {
        auto [a, b] = f.support();
        if (a < b) {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    if (lo >= hi) return {0, 0};
    return {lo, hi};
}

LaxSpec LaxSpec::with_k(double k_new) const {
    if (!(k_new > 0)) throw InputError("k must be positive");
    LaxSpec s = *this;
    s.k = k_new;
    return s;
}

LaxSpec LaxSpec::with_fields(std::vector<SampledField> f) const {
    LaxSpec s = *this;
    s.fields = std::move(f);
    return s;
}

LaxSpec build_qdnls_spec(const SampledField& q, const SampledField& r, double k) {
    if (q.grid != r.grid) throw InputError("q and r live on different grids");
    if (!(k > 0)) throw InputError("k must be positive");
    const cplx w = omega3();
    LaxSpec s;
    s.J = make_generator({1.0, w * w, w});
    s.U0.assign(3, std::vector<Polynomial>(3));
    const Polynomial P = linear_poly(0, 2), R = linear_poly(1, 2);
    s.U0[0][1] = P; s.U0[0][2] = R;
    s.U0[1][0] = R; s.U0[1][2] = P;
    s.U0[2][0] = P; s.U0[2][1] = R;
    s.k = k;
    s.fields = {q, r};
    s.fields[0].label = "q";
    s.fields[1].label = "r";
    s.qdnls = true;
    return s;
}

LaxSpec build_general_spec(const std::vector<cplx>& omegas, const PotentialMatrix& U0,
                           const std::vector<SampledField>& u, double k) {
    if (!(k > 0)) throw InputError("k must be positive");
    if (u.empty()) throw InputError("spec needs at least one field component");
    LaxSpec s;
    s.J = make_generator(omegas);
    const int n = s.J.size(), m = static_cast<int>(u.size());
    if (static_cast<int>(U0.size()) != n) throw InputError("U0 has wrong number of rows");
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(U0[a].size()) != n) throw InputError("U0 has wrong number of columns");
        for (int b = 0; b < n; ++b) {
            for (const auto& mono : U0[a][b].terms)
                if (static_cast<int>(mono.exponents.size()) != m)
                    throw InputError("monomial exponent vector does not match the number of fields");
            if (a == b && !U0[a][b].is_zero()) throw InputError("U0 diagonal entry is not zero");
            if (U0[a][b].has_constant_term()) throw InputError("U0 has a constant term");
        }
    }
    for (const auto& f : u)
        if (f.grid != u.front().grid) throw InputError("field components live on different grids");
    s.U0 = U0;
    s.k = k;
    s.fields = u;
    return s;
}

CMat evaluate_U0(const LaxSpec& spec, const std::vector<cplx>& u) {
    const int n = spec.n();
    CMat M = CMat::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) M(a, b) = spec.U0[a][b].eval(u);
    return M;
}

CMat evaluate_U0(const LaxSpec& spec, int x_index) { return evaluate_U0(spec, spec.u_at(x_index)); }

CMat nabla_U0(const LaxSpec& spec, int component, int x_index) {
    if (component < 0 || component >= spec.components()) throw InputError("component index out of range");
    const int n = spec.n();
    const auto u = spec.u_at(x_index);
    CMat M = CMat::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) M(a, b) = spec.U0[a][b].derivative(component, u);
    return M;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

LaxSpec random_general_spec(int n, const GridSpec& grid, double k, double amplitude, std::uint64_t seed) {
    if (n < 2) throw InputError("random spec needs n >= 2");
    std::mt19937_64 rng(seed);
    auto uni = [&](double a, double b) { return a + (b - a) * uniform01(rng); };
    const int l = n / 2;
    std::vector<cplx> w;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 1000) throw std::runtime_error("could not draw a valid generator");
        w.clear();
        for (int i = 0; i < n; ++i) w.emplace_back((i < l ? 1 : -1) * uni(0.5, 1.5), uni(-1, 1));
        cplx mean = 0;
        for (auto z : w) mean += z;
        mean /= double(n);
        for (auto& z : w) z -= mean;
        std::sort(w.begin(), w.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
        bool ok = true;
        for (int i = 0; i < n; ++i) ok = ok && std::abs(w[i].real()) >= 0.4 && (w[i].real() > 0) == (i < l);
        for (int i = 0; ok && i < n; ++i)
            for (int j = 0; j < i; ++j) ok = ok && std::abs(w[i] - w[j]) > 0.1;
        if (ok) break;
    }
    // exact trace zero after rounding
    cplx sum = 0;
    for (int i = 0; i + 1 < n; ++i) sum += w[i];
    w[n - 1] = -sum;

    std::vector<SampledField> u;
    for (int c = 0; c < 2; ++c) {
        const double width = uni(1.0, 2.5), center = uni(-1.5, 1.5);
        const cplx a = std::polar(amplitude, uni(0, 2 * std::numbers::pi));
        u.push_back(standard_potential(PotentialKind::bump, a, width, center, grid));
        u.back().label = "u" + std::to_string(c + 1);
    }
    PotentialMatrix U0(n, std::vector<Polynomial>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            Polynomial p;
            for (int c = 0; c < 2; ++c) {
                auto t = linear_poly(c, 2, std::polar(uni(0.3, 1.0), uni(0, 2 * std::numbers::pi)));
                p.terms.push_back(t.terms.front());
            }
            if ((a + b) % 2 == 0) p.terms.push_back(Monomial{{1, 1}, std::polar(uni(0.3, 1.0), uni(0, 2 * std::numbers::pi))});
            U0[a][b] = p;
        }
    return build_general_spec(w, U0, u, k);
}

}  // namespace laxscatter

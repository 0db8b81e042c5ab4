#include "laxscatter/fredholm.hpp"

#include "laxscatter/expquad.hpp"
#include "laxscatter/scattering.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace laxscatter {

ResolventKernel::ResolventKernel(cplx z_) : z(z_) {
    if (z.real() == 0.0) throw InputError("resolvent pole on the imaginary axis (Re z = 0)");
}

cplx ResolventKernel::operator()(double x, double y) const {
    if (z.real() > 0) return x < y ? -std::exp(z * (x - y)) : cplx(0);
    return x > y ? std::exp(z * (x - y)) : cplx(0);
}

ResolventKernel resolvent_kernel(cplx z) { return ResolventKernel(z); }

OperatorKernel::OperatorKernel(GridSpec grid, std::vector<cplx> poles, std::vector<std::vector<CVec>> full_entries,
                               bool symmetrized, double sign, int margin)
    : grid_(grid), poles_(std::move(poles)), full_(std::move(full_entries)), symmetrized_(symmetrized), sign_(sign) {
    const int n = blocks();
    for (const auto& z : poles_)
        if (z.real() == 0.0) throw InputError("resolvent pole on the imaginary axis (Re z = 0)");
    int lo = grid_.n, hi = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CVec& f = full_[i][j];
            if (i == j && !f.empty() && std::any_of(f.begin(), f.end(), [](cplx v) { return v != cplx(0); }))
                throw InputError("diagonal block must vanish");
            for (int a = 0; a < static_cast<int>(f.size()); ++a)
                if (f[a] != cplx(0)) {
                    lo = std::min(lo, a);
                    hi = std::max(hi, a + 1);
                }
        }
    if (lo < hi) {
        lo_ = std::max(0, lo - margin);
        hi_ = std::min(grid_.n, hi + margin);
    }
    entries_.assign(n, std::vector<CVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CVec& f = full_[i][j];
            if (i == j || f.empty() || std::all_of(f.begin(), f.end(), [](cplx v) { return v == cplx(0); })) continue;
            entries_[i][j].assign(f.begin() + lo_, f.begin() + hi_);
        }
}

const CMat& OperatorKernel::nystrom() const {
    if (nystrom_) return *nystrom_;
    const int n = blocks(), W = window();
    CMat A = CMat::Zero(n * W, n * W);
    for (int i = 0; i < n; ++i) {
        bool any = false;
        for (int j = 0; j < n; ++j) any |= has_block(i, j);
        if (!any) continue;
        const CVec w = expquad::resolvent_weights(poles_[i], grid_.dx, W);
        for (int j = 0; j < n; ++j) {
            if (!has_block(i, j)) continue;
            const CVec& u = entries_[i][j];
            for (int b = 0; b < W; ++b) {
                const cplx ub = sign_ * u[b];
                if (ub == cplx(0)) continue;
                for (int a = 0; a < W; ++a) A(i * W + a, j * W + b) = w[b - a + W - 1] * ub;
            }
        }
    }
    nystrom_ = std::move(A);
    return *nystrom_;
}

double OperatorKernel::hs_norm() const {
    double s = 0;
    for (int i = 0; i < blocks(); ++i)
        for (int j = 0; j < blocks(); ++j) {
            if (!has_block(i, j)) continue;
            double m = 0;
            for (const auto& v : entries_[i][j]) m += std::norm(v);
            s += m * grid_.dx / (2.0 * std::abs(poles_[i].real()));
        }
    return std::sqrt(s);
}

OperatorKernel assemble_lambda(const LaxSpec& spec, bool symmetrized) {
    std::vector<cplx> poles(spec.n());
    for (int i = 0; i < spec.n(); ++i) poles[i] = spec.pole(i);
    return OperatorKernel(spec.grid(), poles, spec.entries(), symmetrized, -1.0);
}

cplx chain_trace(const std::vector<cplx>& poles, const std::vector<const CVec*>& fields, double h) {
    const int l = static_cast<int>(poles.size());
    std::vector<std::pair<int, int>> before;  // (a, b): x_a < x_b
    std::vector<cplx> c(l, 0.0);
    std::vector<const CVec*> f(l);
    double sign = 1;
    for (int m = 0; m < l; ++m) {
        const int nx = (m + 1) % l;
        if (poles[m].real() > 0) {
            sign = -sign;
            before.emplace_back(m, nx);
        } else {
            before.emplace_back(nx, m);
        }
        c[m] += poles[m];
        c[nx] -= poles[m];
        f[nx] = fields[m];
    }
    std::vector<int> perm(l), pos(l);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0;
    do {
        for (int p = 0; p < l; ++p) pos[perm[p]] = p;
        bool ok = true;
        for (auto [a, b] : before)
            if (pos[a] >= pos[b]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        cplx S = 0;
        CVec G;
        for (int p = 0; p < l; ++p) {
            const int v = perm[p];
            S += c[v];
            CVec g = *f[v];
            if (!G.empty())
                for (size_t a = 0; a < g.size(); ++a) g[a] *= G[a];
            G = expquad::causal(S, g, h);
        }
        total += G.back();
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sign * total;
}

cplx trace_power_exact(const OperatorKernel& kernel, int l) {
    if (l < 2) throw InputError("trace order must be at least 2");
    if (kernel.is_zero()) return 0.0;
    const int n = kernel.blocks();
    cplx total = 0;
    std::vector<int> idx(l);
    std::function<void(int)> rec = [&](int m) {
        if (m == l) {
            if (!kernel.has_block(idx[l - 1], idx[0])) return;
            std::vector<cplx> poles(l);
            std::vector<const CVec*> fields(l);
            for (int t = 0; t < l; ++t) {
                poles[t] = kernel.poles()[idx[t]];
                fields[t] = &kernel.block_field(idx[t], idx[(t + 1) % l]);
            }
            total += chain_trace(poles, fields, kernel.grid().dx);
            return;
        }
        for (int i = 0; i < n; ++i) {
            if (m > 0 && !kernel.has_block(idx[m - 1], i)) continue;
            idx[m] = i;
            rec(m + 1);
        }
    };
    rec(0);
    return std::pow(kernel.sign(), l) * total;
}

std::vector<cplx> nystrom_traces(const CMat& A, int lmax) {
    std::vector<cplx> t;
    if (lmax < 2) return t;
    auto tr = [](const CMat& X, const CMat& Y) { return X.cwiseProduct(Y.transpose()).sum(); };
    CMat Pm = A, Pm1 = A * A;
    for (int m = 1;; ++m) {
        if (2 * m > lmax) break;
        t.push_back(tr(Pm, Pm));
        if (2 * m + 1 > lmax) break;
        t.push_back(tr(Pm, Pm1));
        if (2 * m + 2 > lmax) break;
        Pm = Pm1;
        Pm1 = Pm1 * A;
    }
    return t;
}

cplx trace_power(const OperatorKernel& kernel, int l) {
    if (l < 2) throw InputError("trace order must be at least 2 (the operator is not trace class)");
    if (kernel.is_zero()) return 0.0;
    if (l <= kExactTraceOrder) return trace_power_exact(kernel, l);
    return nystrom_traces(kernel.nystrom(), l).back();
}

namespace {

// f~(d) = (1/n) sum_j f_j e^{-i d dxi x_j}, d in [-n/2, n/2), stored at d + n/2.
CVec circulant_symbol(const CVec& f, const GridSpec& g) {
    const SpectrumField F = transform(SampledField(g, f));
    CVec c(g.n);
    const double s = 1.0 / std::sqrt(2.0 * g.L);
    for (int m = 0; m < g.n; ++m) c[m] = F.coefficients[m] * s;
    return c;
}

int wrap(int d, int n) {
    d %= n;
    if (d < -n / 2) d += n;
    if (d >= n / 2) d -= n;
    return d;
}

}  // namespace

cplx trace2_fourier(const OperatorKernel& kernel) {
    if (kernel.is_zero()) return 0.0;
    const GridSpec& g = kernel.grid();
    const int n = kernel.blocks(), N = g.n;
    // The symbols are known in closed form, so the frequency lattice is extended by N points on
    // each side; only the field symbols are limited to differences below N / 2.
    const int P = N, M = N + 2 * P;
    std::vector<CVec> mult(n, CVec(M)), root(n, CVec(M));
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < M; ++a) {
            const double xi = -std::numbers::pi / g.dx + (a - P) * g.dxi;
            mult[i][a] = 1.0 / (cplx(0, xi) - kernel.poles()[i]);
            root[i][a] = std::sqrt(mult[i][a]);
        }
    const double Xi = std::numbers::pi / g.dx + P * g.dxi;
    cplx total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!kernel.has_block(i, j) || !kernel.has_block(j, i)) continue;
            const CVec f = circulant_symbol(kernel.full_field(i, j), g);
            const CVec h = circulant_symbol(kernel.full_field(j, i), g);
            // beyond the lattice both symbols ~ 1/(i xi): the missing sum is
            // -(sum_{|xi| > Xi} xi^-2) (1/N) sum_x f h, plus pairs straddling the lattice edge
            cplx fh = 0;
            for (int a = 0; a < N; ++a) fh += kernel.full_field(i, j)[a] * kernel.full_field(j, i)[a];
            total -= 2.0 / (g.dxi * Xi) * fh / double(N);
            cplx edge = 0;
            for (int d = -N / 2 + 1; d < N / 2; ++d) edge += double(std::abs(d)) * f[d + N / 2] * h[-d + N / 2];
            total -= edge / (Xi * Xi);
            for (int a = 0; a < M; ++a)
                for (int b = std::max(0, a - N / 2 + 1); b < std::min(M, a + N / 2); ++b) {
                    const int d = a - b + N / 2, e = b - a + N / 2;
                    if (kernel.symmetrized())
                        total += (root[i][a] * f[d] * root[j][b]) * (root[j][b] * h[e] * root[i][a]);
                    else
                        total += mult[i][a] * f[d] * mult[j][b] * h[e];
                }
        }
    return std::pow(kernel.sign(), 2) * total;
}

cplx trace2_closed_form(const SampledField& q, const SampledField& r, double k) {
    if (!(k > 0)) throw InputError("k must be positive");
    if (q.grid != r.grid) throw InputError("q and r live on different grids");
    const SpectrumField Q = transform(q), R = transform(r);
    const int N = q.grid.n;
    const double s3 = std::sqrt(3.0);
    cplx t = 0;
    for (int m = 0; m < N; ++m) {
        const double xi = q.grid.xi(m);
        const double P = 1.0 / (xi * xi + 3 * k * k - s3 * k * xi);
        t += P * Q.coefficients[m] * R.coefficients[(N - m) % N];
    }
    return -6.0 * k * t;
}

std::pair<cplx, cplx> trace34_closed_form(const SampledField& q, const SampledField& r, double k) {
    if (!(k > 0)) throw InputError("k must be positive");
    const cplx w = omega3();
    const LaxSpec spec = build_qdnls_spec(q, r, k);
    auto [lo, hi] = spec.support();
    if (lo == hi) return {0.0, 0.0};
    lo = std::max(0, lo - 8);
    hi = std::min(q.grid.n, hi + 8);
    const CVec qq(q.values.begin() + lo, q.values.begin() + hi), rr(r.values.begin() + lo, r.values.begin() + hi);
    const cplx R[3] = {k, k * w * w, k * w};
    const double h = q.grid.dx;
    auto tr = [&](std::initializer_list<std::pair<int, const CVec*>> seq) {
        std::vector<cplx> p;
        std::vector<const CVec*> f;
        for (auto [i, v] : seq) {
            p.push_back(R[i - 1]);
            f.push_back(v);
        }
        return chain_trace(p, f, h);
    };
    const CVec* Q = &qq;
    const CVec* Rr = &rr;
    // r closes the cycle 1 -> 3 -> 2 -> 1
    const cplx t3 = -3.0 * (tr({{1, Q}, {2, Q}, {3, Q}}) + tr({{1, Rr}, {3, Rr}, {2, Rr}}));
    // tr((A + B)^2) = tr(A^2) + 2 tr(AB) + tr(B^2) for A = R_a f R_b g, B = R_a g' R_c f'
    auto sq = [&](int a, const CVec* f1, int b, const CVec* g1, const CVec* f2, int c, const CVec* g2) {
        return tr({{a, f1}, {b, g1}, {a, f1}, {b, g1}}) + 2.0 * tr({{a, f1}, {b, g1}, {a, f2}, {c, g2}}) +
               tr({{a, f2}, {c, g2}, {a, f2}, {c, g2}});
    };
    cplx t4 = sq(1, Q, 2, Rr, Rr, 3, Q) + sq(2, Q, 3, Rr, Rr, 1, Q) + sq(3, Q, 1, Rr, Rr, 2, Q);
    t4 += 2.0 * (tr({{1, Q}, {2, Q}, {3, Rr}, {2, Rr}}) + tr({{2, Q}, {3, Q}, {1, Rr}, {3, Rr}}) +
                 tr({{3, Q}, {1, Q}, {2, Rr}, {1, Rr}}));
    return {t3, t4};
}

HSNormResult hs_norm(const SampledField& q, const SampledField& r, int i, int j, double k) {
    if (i == j) throw InputError("hs_norm needs an off-diagonal block (i != j)");
    if (i < 0 || j < 0 || i > 2 || j > 2) throw InputError("block index out of range");
    const LaxSpec spec = build_qdnls_spec(q, r, k);
    const GridSpec& g = q.grid;
    const CVec f = spec.entry(i, j);
    HSNormResult out;
    if (std::all_of(f.begin(), f.end(), [](cplx v) { return v == cplx(0); })) return out;
    const int N = g.n;
    const cplx zi = spec.pole(i), zj = spec.pole(j);
    auto absm = [](double xi, cplx z) { return 1.0 / std::abs(cplx(0, xi) - z); };
    const CVec c = circulant_symbol(f, g);
    std::vector<double> mi(N), mj(N), c2(N);
    for (int a = 0; a < N; ++a) {
        mi[a] = absm(g.xi(a), zi);
        mj[a] = absm(g.xi(a), zj);
        c2[a] = std::norm(c[a]);
    }
    double fro = 0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) fro += mi[a] * c2[wrap(a - b, N) + N / 2] * mj[b];
    out.frobenius = std::sqrt(fro);

    // |f^(zeta)|^2 (unitary transform) decays fast; integrate zeta over its numerical support.
    const SpectrumField F = transform(SampledField(g, f));
    double fmax = 0, Z = 0;
    for (int m = 0; m < N; ++m) fmax = std::max(fmax, std::norm(F.coefficients[m]));
    for (int m = 0; m < N; ++m)
        if (std::norm(F.coefficients[m]) > 1e-14 * fmax) Z = std::max(Z, std::abs(g.xi(m)));
    Z += 4 * g.dxi;
    auto fhat2 = [&](double zeta) {
        cplx s = 0;
        for (int a = 0; a < N; ++a)
            if (f[a] != cplx(0)) s += f[a] * std::polar(1.0, -zeta * g.x(a));
        return std::norm(s * g.dx / std::sqrt(2 * std::numbers::pi));
    };
    boost::math::quadrature::sinh_sinh<double> ss;
    const int pieces = 16;
    double total = 0;
    for (int p = 0; p < pieces; ++p) {
        const double a = -Z + 2 * Z * p / pieces, b = a + 2 * Z / pieces;
        total += boost::math::quadrature::gauss<double, 30>::integrate(
            [&](double zeta) {
                const double inner = ss.integrate([&](double eta) { return absm(zeta + eta, zi) * absm(eta, zj); });
                return fhat2(zeta) * inner;
            },
            a, b);
    }
    out.formula_value = total / (2 * std::numbers::pi);
    return out;
}

TraceSeries logdet2_series(const OperatorKernel& kernel, double tolerance, int l_max) {
    TraceSeries ts;
    if (kernel.is_zero()) return ts;
    const double rho = kernel.hs_norm();
    ts.hs_norm = rho;
    if (rho >= 1) throw InputError("Hilbert-Schmidt norm " + std::to_string(rho) + " >= 1: outside the smallness regime");
    auto tail = [&](int L) { return std::pow(rho, L + 1) / ((L + 1) * (1 - rho)); };
    int L = 2;
    while (L < l_max && tail(L) >= tolerance) ++L;
    L = std::max(L, std::min(l_max, kExactTraceOrder));
    for (int l = 2; l <= std::min(L, kExactTraceOrder); ++l) ts.traces.push_back(trace_power_exact(kernel, l));
    if (L > kExactTraceOrder) {
        const auto mt = nystrom_traces(kernel.nystrom(), L);
        for (int l = kExactTraceOrder + 1; l <= L; ++l) ts.traces.push_back(mt[l - 2]);
    }
    for (int l = 2; l <= L; ++l) ts.log_det2 += (l % 2 ? 1.0 : -1.0) * ts.traces[l - 2] / double(l);
    ts.tail_bound = tail(L);
    return ts;
}

cplx det2_matrix(const CMat& A) {
    if (A.size() == 0) return 1.0;
    const CMat I = CMat::Identity(A.rows(), A.cols());
    return (I + A).partialPivLu().determinant() * std::exp(-A.trace());
}

Det2Result det2_matrix(const OperatorKernel& kernel) {
    Det2Result r;
    if (kernel.is_zero()) return r;
    const CMat& A = kernel.nystrom();
    if (A.norm() > 1e3) throw InputError("kernel norm too large for the determinant");
    const CMat I = CMat::Identity(A.rows(), A.cols());
    Eigen::PartialPivLU<CMat> lu(I + A);
    // sum of pivot logs, then the permutation sign
    cplx logdet = 0;
    const auto& LU = lu.matrixLU();
    for (int a = 0; a < LU.rows(); ++a) logdet += std::log(LU(a, a));
    if (lu.permutationP().determinant() < 0) logdet += cplx(0, std::numbers::pi);
    const cplx trA = A.trace();
    r.log_det_minus_log_det2 = std::abs(trA);
    r.raw_log_det2 = log_near(std::exp(logdet - trA), 0.0);
    const auto mt = nystrom_traces(A, kExactTraceOrder);
    cplx corr = 0;
    for (int l = 2; l <= kExactTraceOrder; ++l)
        corr += (l % 2 ? 1.0 : -1.0) * (trace_power_exact(kernel, l) - mt[l - 2]) / double(l);
    r.log_det2 = log_near(std::exp(r.raw_log_det2 + corr), 0.0);
    r.det2 = std::exp(r.log_det2);
    return r;
}

EqualityReport verify_equality(const LaxSpec& spec, double tolerance) {
    require_compact_support(spec);
    EqualityReport rep;
    rep.k = spec.k;
    const OperatorKernel K = assemble_lambda(spec);
    rep.hs_norm = K.hs_norm();
    if (rep.hs_norm >= 0.5)
        throw InputError("smallness violated: ||Lambda||_2 = " + std::to_string(rep.hs_norm) + " >= 0.5");
    if (K.is_zero()) return rep;
    rep.log_T_inv = log_inverse_transmission(spec);
    rep.log_det2_matrix = det2_matrix(K).log_det2;
    const TraceSeries ts = logdet2_series(K, tolerance);
    rep.log_det2_series = ts.log_det2;
    rep.traces = ts.traces;
    rep.tail_bound = ts.tail_bound;
    rep.dev_matrix = std::abs(rep.log_det2_matrix - rep.log_T_inv);
    rep.dev_series = std::abs(rep.log_det2_series - rep.log_T_inv);
    rep.dev_methods = std::abs(rep.log_det2_series - rep.log_det2_matrix);
    return rep;
}

}  // namespace laxscatter

#include "laxscatter/greens.hpp"

#include "laxscatter/expquad.hpp"
#include "laxscatter/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace laxscatter {

GreensEvaluator::GreensEvaluator(const LaxSpec& spec, JostSet jost)
    : jost_(std::move(jost)), grid_(spec.grid()), omegas_(spec.J.omegas), k_(spec.k), split_(spec.J.split) {
    if (jost_.size() != spec.n()) throw InputError("incomplete Jost set");
    const int N = grid_.n;
    auto [lo, hi] = spec.support();
    T_inv_ = jost_.matrix(lo == hi ? N / 2 : (lo + hi) / 2).determinant();
    if (T_inv_ == cplx(0)) throw InputError("T^{-1} = 0");
    adj_.resize(N);
    for (int a = 0; a < N; ++a) {
        const CMat M = jost_.matrix(a);
        adj_[a] = M.determinant() * M.inverse();
    }
}

GreensEvaluator::GreensEvaluator(const LaxSpec& spec) : GreensEvaluator(spec, solve_jost_set(spec, false)) {}

CMat GreensEvaluator::part(int x, int y, bool upper) const {
    const int n = this->n();
    const cplx T = 1.0 / T_inv_;
    const double d = grid_.x(x) - grid_.x(y);
    CMat G = CMat::Zero(n, n);
    for (int i = upper ? split_ : 0; i < (upper ? n : split_); ++i)
        G += std::exp(k_ * omegas_[i] * d) * jost_.columns[i].at(x) * adj_[y].row(i);
    return (upper ? T : -T) * G;
}

CMat GreensEvaluator::operator()(int x, int y) const {
    if (x == y) throw InputError("G(x, y) needs x != y; use the one-sided limits or the diagonal");
    return part(x, y, x > y);
}

CMat GreensEvaluator::limit(int y, bool from_above) const { return part(y, y, from_above); }

CMat greens_from_jost(const GreensEvaluator& G, int x, int y) { return G(x, y); }

CMat qdnls_lemma_matrix(const LaxSpec& spec, const JostSet& jost, int x, int y) {
    if (!spec.qdnls || jost.size() != 3) throw InputError("explicit Green's matrices need the qdNLS system");
    if (x == y) throw InputError("G(x, y) needs x != y");
    const GridSpec& g = spec.grid();
    // P(a, b) = Phi_{a+1, b+1}, un-renormalized
    auto Phi = [&](int node) {
        CMat P = jost.matrix(node);
        for (int b = 0; b < 3; ++b) P.col(b) *= std::exp(spec.pole(b) * g.x(node));
        return P;
    };
    const CMat X = Phi(x), Y = Phi(y);
    auto P = [&](int a, int b) { return Y(a - 1, b - 1); };
    CMat M(3, 3);
    if (x < y) {
        const cplx c[3] = {P(2, 2) * P(3, 3) - P(2, 3) * P(3, 2), P(3, 2) * P(1, 3) - P(3, 3) * P(1, 2),
                           P(1, 2) * P(2, 3) - P(1, 3) * P(2, 2)};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) M(a, b) = X(a, 0) * c[b];
    } else {
        const cplx d[3] = {P(2, 1) * P(3, 3) - P(3, 1) * P(2, 3), P(3, 1) * P(1, 3) - P(1, 1) * P(3, 3),
                           P(1, 1) * P(2, 3) - P(2, 1) * P(1, 3)};
        const cplx e[3] = {P(3, 1) * P(2, 2) - P(2, 1) * P(3, 2), P(1, 1) * P(3, 2) - P(3, 1) * P(1, 2),
                           P(2, 1) * P(1, 2) - P(1, 1) * P(2, 2)};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) M(a, b) = X(a, 1) * d[b] + X(a, 2) * e[b];
    }
    return M;
}

JumpReport greens_jump_check(const GreensEvaluator& G, int y) {
    const int n = G.n(), N = G.grid().n;
    if (y < 6 || y + 6 >= N) throw InputError("jump check needs an interior node");
    JumpReport r;
    const CMat I = CMat::Identity(n, n);
    const CMat J = G.limit(y, true) - G.limit(y, false);
    r.residual = (J - I).cwiseAbs().maxCoeff();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) r.offdiag_jump = std::max(r.offdiag_jump, std::abs(J(a, b)));
    // polynomial extrapolation to y from six nodes on each side
    static constexpr double w[6] = {6, -15, 20, -15, 6, -1};
    CMat up = CMat::Zero(n, n), dn = CMat::Zero(n, n);
    for (int m = 1; m <= 6; ++m) {
        up += w[m - 1] * G(y + m, y);
        dn += w[m - 1] * G(y - m, y);
    }
    r.extrapolated_residual = (up - dn - I).cwiseAbs().maxCoeff();
    return r;
}

double greens_column_residual(const GreensEvaluator& G, const LaxSpec& spec, int y, int guard) {
    static constexpr double c[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    const int N = G.grid().n, n = G.n();
    guard = std::max(guard, 5);
    const double h = G.grid().dx;
    CMat kJ = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) kJ(i, i) = spec.k * spec.J.omegas[i];
    double res = 0, scale = 0;
    for (int x = 4; x + 4 < N; ++x) {
        if (std::abs(x - y) < guard) continue;
        scale = std::max(scale, G(x, y).cwiseAbs().maxCoeff());
        CMat d = CMat::Zero(n, n);
        for (int m = 1; m <= 4; ++m) d += c[m - 1] * (G(x + m, y) - G(x - m, y));
        d /= h;
        const CMat r = d - (kJ + evaluate_U0(spec, x)) * G(x, y);
        res = std::max(res, r.cwiseAbs().maxCoeff());
    }
    return scale > 0 ? res / scale : 0.0;
}

GreensDiagonal greens_diagonal_jost(const GreensEvaluator& G) {
    GreensDiagonal d;
    d.grid = G.grid();
    const int N = G.grid().n;
    const int split = G.jost().split;
    d.values.resize(N);
    for (int a = 0; a < N; ++a) {
        CMat g = G.limit(a, false);
        for (int i = 0; i < split; ++i) g(i, i) += 1.0;
        d.values[a] = g;
    }
    return d;
}

namespace {

// Sum the series columnwise at each node y: f_0 = R_0(., y) e_j, f_{m+1} = R_0 U_0 f_m.
// Returns the partial sums and, for the dense path, the first neglected term f_{M+1}.
struct NeumannColumns {
    CMat partial;  // n x n
    std::vector<CVec> tail;  // per column, stacked components on the window (n * W)
};

NeumannColumns neumann_columns(const OperatorKernel& K, int p, double stop, bool keep_tail, int max_terms) {
    const int n = K.blocks(), W = K.window();
    const double h = K.grid().dx;
    const double y = K.grid().x(K.lo() + p);
    NeumannColumns out;
    out.partial = CMat::Zero(n, n);
    out.tail.assign(n, CVec());
    for (int j = 0; j < n; ++j) {
        const cplx z = K.poles()[j];
        std::vector<CVec> fl(n, CVec(W, 0.0)), fr(n, CVec(W, 0.0));
        for (int a = 0; a < W; ++a) {
            const cplx e = std::exp(z * (K.grid().x(K.lo() + a) - y));
            if (z.real() > 0 && a <= p) fl[j][a] = -e;
            if (z.real() < 0 && a >= p) fr[j][a] = e;
        }
        for (int m = 1; m <= max_terms; ++m) {
            std::vector<CVec> next(n);
            double size = 0;
            for (int i = 0; i < n; ++i) {
                CVec hl(W, 0.0), hr(W, 0.0);
                bool any = false;
                for (int b = 0; b < n; ++b) {
                    if (!K.has_block(i, b)) continue;
                    any = true;
                    const CVec& u = K.block_field(i, b);
                    for (int a = 0; a < W; ++a) {
                        hl[a] += u[a] * fl[b][a];
                        hr[a] += u[a] * fr[b][a];
                    }
                }
                next[i] = any ? expquad::apply_resolvent_split(K.poles()[i], hl, hr, p, h) : CVec(W, 0.0);
                for (const auto& v : next[i]) size = std::max(size, std::abs(v));
            }
            if (size < stop) {
                if (keep_tail) {
                    CVec t(n * W);
                    for (int i = 0; i < n; ++i) std::copy(next[i].begin(), next[i].end(), t.begin() + i * W);
                    out.tail[j] = std::move(t);
                }
                break;
            }
            for (int i = 0; i < n; ++i) out.partial(i, j) += next[i][p];
            fl = next;
            fr = std::move(next);
            if (m == max_terms) throw std::runtime_error("Neumann series did not converge");
        }
    }
    return out;
}

}  // namespace

GreensDiagonal greens_diagonal_renormalized(const LaxSpec& spec, int lo, int hi, DiagonalPath path) {
    const GridSpec& g = spec.grid();
    if (lo < 0 || hi > g.n || lo >= hi) throw InputError("node range out of the grid");
    GreensDiagonal d;
    d.grid = g;
    d.lo = lo;
    const int n = spec.n();
    auto [slo, shi] = spec.support();
    if (slo == shi) {
        d.values.assign(hi - lo, CMat::Zero(n, n));
        return d;
    }
    const int margin = std::max({8, slo - lo + 8, hi - shi + 8});
    std::vector<cplx> poles(n);
    for (int i = 0; i < n; ++i) poles[i] = spec.pole(i);
    const OperatorKernel K(g, poles, spec.entries(), false, -1.0, margin);
    if (K.hs_norm() >= 1) throw InputError("smallness violated: ||Lambda||_2 >= 1");
    const int W = K.window();
    const double stop = path == DiagonalPath::neumann ? 1e-16 : 1e-8;
    std::vector<NeumannColumns> cols;
    cols.reserve(hi - lo);
    for (int y = lo; y < hi; ++y) cols.push_back(neumann_columns(K, y - K.lo(), stop, path == DiagonalPath::dense, 400));
    if (path == DiagonalPath::dense) {
        std::vector<std::pair<int, int>> which;
        for (int t = 0; t < hi - lo; ++t)
            for (int j = 0; j < n; ++j)
                if (!cols[t].tail[j].empty()) which.emplace_back(t, j);
        if (!which.empty()) {
            CMat B(n * W, which.size());
            for (size_t c = 0; c < which.size(); ++c) {
                const CVec& v = cols[which[c].first].tail[which[c].second];
                for (int r = 0; r < n * W; ++r) B(r, c) = v[r];
            }
            const CMat A = CMat::Identity(n * W, n * W) + K.nystrom();
            const CMat X = A.partialPivLu().solve(B);
            for (size_t c = 0; c < which.size(); ++c) {
                auto [t, j] = which[c];
                const int p = lo + t - K.lo();
                for (int i = 0; i < n; ++i) cols[t].partial(i, j) += X(i * W + p, c);
            }
        }
    }
    for (auto& c : cols) d.values.push_back(std::move(c.partial));
    return d;
}

SampledField derivative_from_diagonal(const LaxSpec& spec, const GreensDiagonal& g, int component) {
    if (component < 0 || component >= spec.components()) throw InputError("component index out of range");
    CVec v(spec.grid().n, 0.0);
    for (int a = g.lo; a < g.hi(); ++a) v[a] = -(nabla_U0(spec, component, a) * g.at(a)).trace();
    return SampledField(spec.grid(), std::move(v));
}

SampledField functional_derivative_T(const LaxSpec& spec, int component) {
    if (spec.support().first == spec.support().second) return SampledField::zeros(spec.grid());
    const GreensEvaluator G(spec);
    return derivative_from_diagonal(spec, greens_diagonal_jost(G), component);
}

SampledField functional_derivative_logdet(const LaxSpec& spec, int component, int lo, int hi, DiagonalPath path) {
    return derivative_from_diagonal(spec, greens_diagonal_renormalized(spec, lo, hi, path), component);
}

SampledField qdnls_dTinv_explicit(const LaxSpec& spec, const JostSet& jost, int component) {
    if (!spec.qdnls || jost.size() != 3) throw InputError("explicit products need the qdNLS system");
    if (component != 0 && component != 1) throw InputError("component must be 0 (q) or 1 (r)");
    const int N = spec.grid().n;
    CVec v(N);
    for (int a = 0; a < N; ++a) {
        // exponentials cancel in each product since the omegas sum to zero
        const CMat M = jost.matrix(a);
        auto P = [&](int r, int c) { return M(r - 1, c - 1); };
        const cplx c1 = P(1, 2) * P(2, 3) - P(1, 3) * P(2, 2);
        const cplx c2 = P(2, 2) * P(3, 3) - P(2, 3) * P(3, 2);
        const cplx c3 = P(1, 3) * P(3, 2) - P(1, 2) * P(3, 3);
        if (component == 0)
            v[a] = P(1, 1) * c1 + P(2, 1) * c2 + P(3, 1) * c3;
        else
            v[a] = P(1, 1) * c3 + P(2, 1) * c1 + P(3, 1) * c2;
    }
    return SampledField(spec.grid(), std::move(v));
}

cplx evaluate_functional(Functional F, const LaxSpec& spec) {
    if (F == Functional::log_T_inv) return log_inverse_transmission(spec);
    return det2_matrix(assemble_lambda(spec)).log_det2;
}

cplx fd_oracle(Functional F, const LaxSpec& spec, const SampledField& v, int component) {
    if (component < 0 || component >= spec.components()) throw InputError("component index out of range");
    if (v.grid != spec.grid()) throw InputError("direction lives on a different grid");
    if (std::all_of(v.values.begin(), v.values.end(), [](cplx c) { return c == cplx(0); })) return 0.0;
    const cplx F0 = evaluate_functional(F, spec);
    auto shifted = [&](double eps) {
        auto fields = spec.fields;
        for (int a = 0; a < spec.grid().n; ++a) fields[component].values[a] += eps * v.values[a];
        return log_near(std::exp(evaluate_functional(F, spec.with_fields(fields))), F0);
    };
    auto central = [&](double eps) { return (shifted(eps) - shifted(-eps)) / (2 * eps); };
    const cplx d1 = central(1e-3), d2 = central(1e-4);
    return (100.0 * d2 - d1) / 99.0;
}

cplx pair(const SampledField& density, const SampledField& v) {
    if (density.grid != v.grid) throw InputError("fields live on different grids");
    cplx s = 0;
    for (int a = 0; a < v.grid.n; ++a) s += density.values[a] * v.values[a];
    return s * v.grid.dx;
}

GradCheck gradient_check(Functional F, const LaxSpec& spec, int component, const std::vector<SampledField>& directions) {
    GradCheck out;
    int lo = spec.grid().n, hi = 0;
    for (const auto& v : directions) {
        auto [a, b] = v.support();
        if (a < b) {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    SampledField d = SampledField::zeros(spec.grid());
    if (lo < hi)
        d = F == Functional::log_T_inv ? functional_derivative_T(spec, component)
                                       : functional_derivative_logdet(spec, component, lo, hi);
    double num = 0, den = 0;
    for (const auto& v : directions) {
        out.fd.push_back(fd_oracle(F, spec, v, component));
        out.analytic.push_back(pair(d, v));
        num += std::norm(out.fd.back() - out.analytic.back());
        den += std::norm(out.fd.back());
    }
    out.relative_error = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
    return out;
}

}  // namespace laxscatter

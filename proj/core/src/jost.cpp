#include "laxscatter/jost.hpp"

#include "laxscatter/expquad.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace laxscatter {

CMat JostSet::matrix(int a) const {
    const int n = size();
    CMat M(n, n);
    for (int c = 0; c < n; ++c) M.col(c) = columns[c].at(a);
    return M;
}

void require_compact_support(const LaxSpec& spec) {
    const GridSpec& g = spec.grid();
    auto [lo, hi] = spec.support();
    if (lo == hi) return;
    if (lo == 0 || hi == g.n) throw InputError("potential is not compactly supported on the grid");
    if (g.x(lo) <= -g.L + 2.0 || g.x(hi - 1) >= g.L - 2.0) throw InputError("potential support touches the grid edge");
}

JostSolution solve_left_jost_volterra(const LaxSpec& spec, double tol, int max_iter) {
    if (!spec.qdnls) throw InputError("Volterra solver is implemented for the qdNLS operator");
    const GridSpec& g = spec.grid();
    const double nq = spec.fields[0].l2_norm(), nr = spec.fields[1].l2_norm();
    const double size = (nq + nr) / std::sqrt(spec.k);
    if (size > kSmallnessDelta) {
        const double need = std::pow((nq + nr) / kSmallnessDelta, 2);
        throw InputError("smallness violated: k^{-1/2}(|q|+|r|) = " + std::to_string(size) +
                         " > 0.1; need k >= " + std::to_string(need));
    }
    const int n = spec.n(), N = g.n;
    const auto U = spec.entries();
    // eta_i = k (omega_i - omega_1); all have Re eta_i <= 0 so every row is causal
    std::vector<cplx> s(n);
    for (int i = 0; i < n; ++i) s[i] = -spec.k * (spec.J.omegas[i] - spec.J.omegas[0]);

    JostSolution sol;
    sol.side = Side::left;
    sol.j = 0;
    sol.k = spec.k;
    CMat phi = CMat::Zero(N, n);
    phi.col(0).setOnes();
    if (spec.support().first == spec.support().second) {
        sol.phi = phi;
        sol.iterations = 1;
        return sol;
    }
    for (int it = 1; it <= max_iter; ++it) {
        CMat next(N, n);
        for (int i = 0; i < n; ++i) {
            CVec rhs(N, 0.0);
            for (int b = 0; b < n; ++b)
                if (b != i)
                    for (int a = 0; a < N; ++a) rhs[a] += U[i][b][a] * phi(a, b);
            CVec v = expquad::causal(s[i], rhs, g.dx);
            for (int a = 0; a < N; ++a) next(a, i) = v[a] + (i == 0 ? 1.0 : 0.0);
        }
        const double diff = (next - phi).cwiseAbs().maxCoeff();
        sol.increments.push_back(diff);
        phi = std::move(next);
        sol.iterations = it;
        if (diff < tol) break;
        if (it == max_iter) throw std::runtime_error("Picard iteration did not converge in " + std::to_string(max_iter) + " iterations");
    }
    const auto& d = sol.increments;
    if (d.size() >= 3 && d[0] > 0)
        sol.contraction = std::sqrt(d[2] / d[0]);
    else if (d.size() >= 2 && d[0] > 0)
        sol.contraction = d[1] / d[0];
    sol.phi = std::move(phi);
    return sol;
}

JostSolution solve_jost_march(const LaxSpec& spec, Side side, int j, MarchScheme scheme) {
    require_compact_support(spec);
    const int n = spec.n();
    if (j < 0 || j >= n) throw InputError("Jost index out of range");
    const bool left = spec.J.omegas[j].real() > 0;
    if ((side == Side::left) != left) throw InputError("Jost index does not match the requested side");
    const GridSpec& g = spec.grid();
    const int N = g.n;
    const auto U = spec.entries();
    const auto Um = spec.midpoint_entries();
    auto mat = [&](const std::vector<std::vector<CVec>>& E, int a) {
        CMat M = CMat::Zero(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (r != c) M(r, c) = E[r][c][a];
        return M;
    };
    CVecX D(n);
    for (int i = 0; i < n; ++i) D[i] = spec.k * (spec.J.omegas[i] - spec.J.omegas[j]);

    const double h = side == Side::left ? g.dx : -g.dx;
    JostSolution sol;
    sol.side = side;
    sol.j = j;
    sol.k = spec.k;
    sol.phi = CMat::Zero(N, n);
    CVecX y = CVecX::Zero(n);
    y[j] = 1.0;
    auto [lo, hi] = spec.support();
    if (lo == hi) {
        sol.phi.col(j).setOnes();
        return sol;
    }
    // Outside the support the renormalized solution stays e_j exactly.
    const int a0 = side == Side::left ? std::max(0, lo - 1) : std::min(N - 1, hi);
    const int step = side == Side::left ? 1 : -1;
    const int a_end = side == Side::left ? N - 1 : 0;
    if (side == Side::left)
        for (int a = 0; a <= a0; ++a) sol.phi.row(a) = y.transpose();
    else
        for (int a = a0; a < N; ++a) sol.phi.row(a) = y.transpose();

    if (scheme == MarchScheme::lawson_rk4) {
        CVecX E(n);
        for (int i = 0; i < n; ++i) E[i] = std::exp(D[i] * (h / 2));
        const CVecX E2 = E.cwiseProduct(E);
        for (int a = a0; a != a_end; a += step) {
            const int b = a + step;
            const CMat M0 = mat(U, a), Mh = mat(Um, std::min(a, b)), M1 = mat(U, b);
            const CVecX k1 = M0 * y;
            const CVecX k2 = Mh * E.cwiseProduct(y + (h / 2) * k1);
            const CVecX k3 = Mh * (E.cwiseProduct(y) + (h / 2) * k2);
            const CVecX k4 = M1 * (E2.cwiseProduct(y) + h * E.cwiseProduct(k3));
            y = E2.cwiseProduct(y) + (h / 6) * (E2.cwiseProduct(k1) + 2.0 * E.cwiseProduct(k2 + k3) + k4);
            sol.phi.row(b) = y.transpose();
        }
        return sol;
    }

    // phi_i(x + h) = e^{D_i h} phi_i(x) + int_0^h e^{D_i (h - t)} g_i(x + t) dt, g = U_0 phi,
    // with g interpolated on t = h, 0, -h, ..., -4h. Marched on half steps through the midpoint samples.
    constexpr int P = 6;
    const double hs = h / 2;
    CMat W(n, P);
    CVecX Eh(n);
    for (int i = 0; i < n; ++i) {
        Eh[i] = std::exp(D[i] * hs);
        for (int m = 0; m < P; ++m) {
            auto f = [&](double t) {
                const double u = t / hs;  // node m sits at u = 1 - m
                double l = 1;
                for (int c = 0; c < P; ++c)
                    if (c != m) l *= (u - (1 - c)) / double(c - m);
                return std::exp(D[i] * (hs - t)) * l;
            };
            W(i, m) = boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, hs);
        }
    }
    std::vector<CVecX> hist(P, CVecX::Zero(n));  // g at the last P - 1 nodes, newest first
    const CMat I = CMat::Identity(n, n);
    auto advance = [&](const CMat& U0, const CMat& U1) {
        hist.pop_back();
        hist.insert(hist.begin(), U0 * y);
        CVecX rhs = Eh.cwiseProduct(y);
        for (int m = 1; m < P; ++m) rhs += W.col(m).cwiseProduct(hist[m - 1]);
        y = (I - W.col(0).asDiagonal() * U1).partialPivLu().solve(rhs);
    };
    for (int a = a0; a != a_end; a += step) {
        const int b = a + step;
        const CMat Mm = mat(Um, std::min(a, b));
        advance(mat(U, a), Mm);
        advance(Mm, mat(U, b));
        sol.phi.row(b) = y.transpose();
    }
    return sol;
}

AsymptoticsReport jost_asymptotics_check(const JostSolution& sol, const LaxSpec& spec) {
    const int N = static_cast<int>(sol.phi.rows());
    const int edge = sol.side == Side::left ? 0 : N - 1;
    CVecX e = CVecX::Zero(spec.n());
    e[sol.j] = 1.0;
    AsymptoticsReport r;
    r.edge_deviation = (sol.at(edge) - e).norm();
    for (int a = 0; a < N; ++a) r.sup_norm = std::max(r.sup_norm, sol.phi.row(a).norm());
    return r;
}

JostSet solve_jost_set(const LaxSpec& spec, bool cross_validate) {
    JostSet set;
    set.split = spec.J.split;
    for (int j = 0; j < spec.n(); ++j)
        set.columns.push_back(solve_jost_march(spec, j < spec.J.split ? Side::left : Side::right, j));
    if (cross_validate && spec.qdnls) {
        const double size = (spec.fields[0].l2_norm() + spec.fields[1].l2_norm()) / std::sqrt(spec.k);
        if (size <= kSmallnessDelta) {
            const JostSolution v = solve_left_jost_volterra(spec);
            set.dual_method_deviation = (v.phi - set.columns[0].phi).cwiseAbs().maxCoeff();
        }
    }
    return set;
}

}  // namespace laxscatter

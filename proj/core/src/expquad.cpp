#include "laxscatter/expquad.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <map>

namespace laxscatter::expquad {

namespace {

constexpr int kMaxPts = 6;

using Gauss = boost::math::quadrature::gauss<double, 24>;

double lagrange(int m, int P, int o, double tau) {
    double v = 1;
    const double xm = m - o;
    for (int j = 0; j < P; ++j)
        if (j != m) {
            const double xj = j - o;
            v *= (tau - xj) / (xm - xj);
        }
    return v;
}

// Weights for one cell [0, h] with P nodes at (m - o) h, m = 0..P-1.
struct Table {
    cplx decay;  // e^{-s h}
    // [P][o][m]
    std::array<std::array<std::array<cplx, kMaxPts>, kMaxPts>, kMaxPts + 1> fwd{}, bwd{};
};

Table build(cplx s, double h) {
    Table T;
    T.decay = std::exp(-s * h);
    for (int P = 2; P <= kMaxPts; ++P)
        for (int o = 0; o <= P - 2; ++o)
            for (int m = 0; m < P; ++m) {
                T.fwd[P][o][m] = h * Gauss::integrate([&](double t) { return std::exp(s * h * (t - 1.0)) * lagrange(m, P, o, t); }, 0.0, 1.0);
                T.bwd[P][o][m] = h * Gauss::integrate([&](double t) { return std::exp(-s * h * t) * lagrange(m, P, o, t); }, 0.0, 1.0);
            }
    return T;
}

struct Key {
    double re, im, h;
    bool operator<(const Key& o) const {
        if (re != o.re) return re < o.re;
        if (im != o.im) return im < o.im;
        return h < o.h;
    }
};

const Table& table(cplx s, double h) {
    thread_local std::map<Key, Table> cache;
    Key key{s.real(), s.imag(), h};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 4096) cache.clear();
    return cache.emplace(key, build(s, h)).first->second;
}

struct Stencil {
    int P, o, start;
};

Stencil stencil(int a, int lo, int hi) {
    const int P = std::min(kMaxPts, hi - lo + 1);
    int start = a - (P / 2 - 1);
    start = std::max(lo, std::min(start, hi - P + 1));
    return {P, a - start, start};
}

CVec sweep(bool forward, cplx s, const CVec& gl, const CVec& gr, int p, double h) {
    const int N = static_cast<int>(gl.size());
    CVec out(N, 0.0);
    if (N < 2) return out;
    const Table& T = table(s, h);
    auto cell = [&](int a) -> cplx {
        const bool left = p >= 0 && a < p;
        const int lo = (p < 0 || left) ? 0 : p;
        const int hi = (p < 0 || !left) ? N - 1 : p;
        const CVec& g = left || p < 0 ? gl : gr;
        const Stencil st = stencil(a, lo, hi);
        const auto& w = forward ? T.fwd[st.P][st.o] : T.bwd[st.P][st.o];
        cplx acc = 0;
        for (int m = 0; m < st.P; ++m) acc += w[m] * g[st.start + m];
        return acc;
    };
    if (forward) {
        for (int a = 0; a + 1 < N; ++a) out[a + 1] = T.decay * out[a] + cell(a);
    } else {
        for (int a = N - 2; a >= 0; --a) out[a] = T.decay * out[a + 1] + cell(a);
    }
    return out;
}

}  // namespace

CVec causal(cplx s, const CVec& g, double h) { return sweep(true, s, g, g, -1, h); }
CVec anticausal(cplx s, const CVec& g, double h) { return sweep(false, s, g, g, -1, h); }

CVec causal_split(cplx s, const CVec& gl, const CVec& gr, int p, double h) {
    return sweep(true, s, gl, gr, p, h);
}
CVec anticausal_split(cplx s, const CVec& gl, const CVec& gr, int p, double h) {
    return sweep(false, s, gl, gr, p, h);
}

CVec apply_resolvent(cplx z, const CVec& g, double h) { return apply_resolvent_split(z, g, g, -1, h); }

CVec apply_resolvent_split(cplx z, const CVec& gl, const CVec& gr, int p, double h) {
    if (z.real() > 0) {
        CVec H = sweep(false, z, gl, gr, p, h);
        for (auto& v : H) v = -v;
        return H;
    }
    return sweep(true, -z, gl, gr, p, h);
}

CVec resolvent_weights(cplx z, double h, int N) {
    static constexpr int nodes[4] = {-1, 0, 1, 2};
    std::array<cplx, 4> mu{};
    for (int m = 0; m < 4; ++m)
        mu[m] = h * Gauss::integrate([&](double t) { return std::exp(-z * h * t) * lagrange(m, 4, 1, t); }, 0.0, 1.0);
    CVec w(2 * N - 1, 0.0);
    for (int d = -(N - 1); d <= N - 1; ++d) {
        cplx acc = 0;
        for (int m = 0; m < 4; ++m) {
            const int c = d - nodes[m];
            if (z.real() > 0 && c >= 0) acc -= std::exp(-z * h * double(c)) * mu[m];
            if (z.real() < 0 && c <= -1) acc += std::exp(-z * h * double(c)) * mu[m];
        }
        w[d + N - 1] = acc;
    }
    return w;
}

}  // namespace laxscatter::expquad

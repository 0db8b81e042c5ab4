#include "laxscatter/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace laxscatter {

namespace {

double lp_sum(const std::vector<double>& v, double p) {
    if (std::isinf(p)) return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    double s = 0;
    for (double x : v) s += std::pow(x, p);
    return std::pow(s, 1.0 / p);
}

void check_p(double p) {
    if (!(p >= 1)) throw InputError("p must lie in [1, inf]");
}

}  // namespace

double sobolev_norm(const SampledField& q, double s) {
    const SpectrumField F = transform(q);
    double acc = 0;
    for (int m = 0; m < q.grid.n; ++m) {
        const double xi = q.grid.xi(m);
        acc += std::norm(F.coefficients[m]) * std::pow(1 + xi * xi, s);
    }
    return std::sqrt(acc);
}

BoxDecomposition::BoxDecomposition(const GridSpec& grid) : grid_(grid) {
    n_min_ = static_cast<int>(std::floor(grid.xi(0))) - 1;
    n_max_ = static_cast<int>(std::ceil(grid.xi(grid.n - 1))) + 1;
}

double BoxDecomposition::profile(double t) {
    t = std::abs(t);
    if (t >= 1) return 0.0;
    const double b = t * t * t * (10 - 15 * t + 6 * t * t);
    const double c = std::cos(std::numbers::pi / 2 * b);
    return c * c;
}

SampledField BoxDecomposition::apply(const SampledField& q, int n) const {
    if (q.grid != grid_) throw InputError("grid mismatch");
    SpectrumField F = transform(q);
    for (int m = 0; m < grid_.n; ++m) F.coefficients[m] *= profile(grid_.xi(m) - n);
    return inverse_transform(F);
}

double BoxDecomposition::partition_defect() const {
    double d = 0;
    for (int m = 0; m < grid_.n; ++m) {
        double s = 0;
        for (int n = n_min_; n <= n_max_; ++n) s += profile(grid_.xi(m) - n);
        d = std::max(d, std::abs(s - 1));
    }
    return d;
}

double modulation_norm_smooth(const SampledField& q, double r, double p) {
    check_p(p);
    if (!(r == 1 || r == 2 || std::isinf(r))) throw InputError("unsupported r (use 1, 2 or inf)");
    const BoxDecomposition B(q.grid);
    const SpectrumField F = transform(q);
    std::vector<double> pieces;
    for (int n = B.n_min(); n <= B.n_max(); ++n) {
        SpectrumField G = F;
        bool any = false;
        for (int m = 0; m < q.grid.n; ++m) {
            G.coefficients[m] *= BoxDecomposition::profile(q.grid.xi(m) - n);
            any |= G.coefficients[m] != cplx(0);
        }
        if (!any) continue;
        const SampledField g = inverse_transform(G);
        double v = 0;
        if (std::isinf(r))
            for (const auto& z : g.values) v = std::max(v, std::abs(z));
        else if (r == 1) {
            for (const auto& z : g.values) v += std::abs(z);
            v *= q.grid.dx;
        } else
            v = g.l2_norm();
        pieces.push_back(v);
    }
    return lp_sum(pieces, p);
}

double modulation_norm(const SampledField& q, double r, double p) {
    check_p(p);
    if (r != 2) return modulation_norm_smooth(q, r, p);
    // |q^|^2 dxi = |F_m|^2 in the unitary convention
    const SpectrumField F = transform(q);
    std::map<long, double> box;
    for (int m = 0; m < q.grid.n; ++m) box[static_cast<long>(std::floor(q.grid.xi(m)))] += std::norm(F.coefficients[m]);
    std::vector<double> pieces;
    for (const auto& [n, e] : box) pieces.push_back(std::sqrt(e));
    return lp_sum(pieces, p);
}

IntegrationBound integration_bound_check(const SampledField& f, double p) {
    IntegrationBound out;
    const GridSpec& g = f.grid;
    double l1 = 0;
    cplx total = 0;
    for (const auto& z : f.values) {
        l1 += std::abs(z);
        total += z;
    }
    if (l1 == 0) return out;
    total *= g.dx;
    l1 *= g.dx;
    out.primitive_decays = std::abs(total) <= 1e-10 * l1;
    CVec F(g.n, 0.0);
    if (out.primitive_decays) {
        // spectral primitive, pinned to zero at the left edge
        SpectrumField S = transform(f);
        for (int m = 0; m < g.n; ++m) {
            const double xi = g.xi(m);
            S.coefficients[m] = xi == 0 ? cplx(0) : S.coefficients[m] / cplx(0, xi);
        }
        F = inverse_transform(S).values;
        const cplx c = F.front();
        for (auto& v : F) v -= c;
    } else {
        for (int a = 1; a < g.n; ++a) F[a] = F[a - 1] + 0.5 * g.dx * (f.values[a - 1] + f.values[a]);
    }
    out.lhs = modulation_norm_smooth(SampledField(g, F), kInfinity, 1);
    out.rhs = modulation_norm_smooth(f, 1, p);
    out.ratio = out.rhs > 0 ? out.lhs / out.rhs : 0.0;
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n < 2 || y.size() != x.size()) throw InputError("slope fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double a = std::log(x[i]), b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ResolventSweep resolvent_exponent_sweep(const std::vector<SampledField>& suite, double p, const std::vector<double>& ks) {
    check_p(p);
    ResolventSweep out;
    for (double k : ks) {
        if (!(k > 0)) throw InputError("k must be positive");
        double best = 0;
        for (const auto& f : suite) {
            const double den = modulation_norm(f, 2, p);
            if (den == 0) continue;
            SpectrumField F = transform(f);
            for (int m = 0; m < f.grid.n; ++m) F.coefficients[m] /= cplx(-k, f.grid.xi(m));
            best = std::max(best, modulation_norm(inverse_transform(F), 2, 1) / den);
        }
        out.k.push_back(k);
        out.ratio.push_back(best);
    }
    out.slope = loglog_slope(out.k, out.ratio);
    return out;
}

}  // namespace laxscatter

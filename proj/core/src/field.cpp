#include "laxscatter/field.hpp"

#include "fft.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

namespace laxscatter {

namespace detail {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Dft::Dft(int n) : n_(n) {
    CVec buf(n);
    auto* b = reinterpret_cast<fftw_complex*>(buf.data());
    std::lock_guard<std::mutex> lk(plan_mutex());
    fwd_ = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Dft::~Dft() {
    std::lock_guard<std::mutex> lk(plan_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
}

void Dft::forward(CVec& g) const {
    auto* b = reinterpret_cast<fftw_complex*>(g.data());
    fftw_execute_dft(fwd_, b, b);
}

void Dft::backward(CVec& g) const {
    auto* b = reinterpret_cast<fftw_complex*>(g.data());
    fftw_execute_dft(bwd_, b, b);
}

}  // namespace detail

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Plain DFT  G_m = sum_j g_j e^{-2 pi i j m / n}  (sign -1) or its inverse (sign +1).
void dft(const CVec& in, CVec& out, int sign) {
    out = in;
    const detail::Dft plan(static_cast<int>(in.size()));
    if (sign < 0)
        plan.forward(out);
    else
        plan.backward(out);
}

}  // namespace

double GridSpec::xi(int m) const { return -std::numbers::pi / dx + m * dxi; }

GridSpec make_grid(double L, int n) {
    if (!(L > 0) || !std::isfinite(L)) throw InputError("grid half-width must be positive");
    if (n < 16 || !is_pow2(n)) throw InputError("grid size must be a power of two >= 16");
    GridSpec g;
    g.L = L;
    g.n = n;
    g.dx = 2.0 * L / n;
    g.dxi = std::numbers::pi / L;
    return g;
}

SampledField::SampledField(GridSpec g, CVec v, std::string lab)
    : grid(g), values(std::move(v)), label(std::move(lab)) {
    if (static_cast<int>(values.size()) != grid.n) throw InputError("field length does not match grid");
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InputError("field '" + label + "' has non-finite values");
}

SampledField SampledField::zeros(const GridSpec& g, std::string lab) {
    return SampledField(g, CVec(g.n, 0.0), std::move(lab));
}

SampledField SampledField::conj() const {
    SampledField c = *this;
    for (auto& z : c.values) z = std::conj(z);
    return c;
}

double SampledField::l2_norm() const {
    double s = 0;
    for (const auto& z : values) s += std::norm(z);
    return std::sqrt(s * grid.dx);
}

std::pair<int, int> SampledField::support() const {
    int lo = grid.n, hi = 0;
    for (int j = 0; j < grid.n; ++j)
        if (values[j] != cplx(0)) {
            lo = std::min(lo, j);
            hi = j + 1;
        }
    if (lo >= hi) return {0, 0};
    return {lo, hi};
}

cplx SpectrumField::hat(int m) const { return coefficients[m] / std::sqrt(grid.dxi); }

double SpectrumField::l2_norm() const {
    double s = 0;
    for (const auto& z : coefficients) s += std::norm(z);
    return std::sqrt(s);
}

// With x_j = -L + j dx and xi_m = -pi/dx + m dxi the phase e^{-i xi_m x_j} splits into
// e^{-2 pi i j m/n} times factors depending on j or m alone.
SpectrumField transform(const SampledField& f) {
    const GridSpec& g = f.grid;
    const int n = g.n;
    CVec a(n), out;
    for (int j = 0; j < n; ++j) a[j] = f.values[j] * std::polar(1.0, std::numbers::pi * j);
    dft(a, out, -1);
    SpectrumField F;
    F.grid = g;
    F.coefficients.resize(n);
    const double scale = std::sqrt(2.0 * g.L) / n;
    for (int m = 0; m < n; ++m) F.coefficients[m] = scale * out[m] * std::polar(1.0, g.xi(m) * g.L);
    return F;
}

SampledField inverse_transform(const SpectrumField& F) {
    const GridSpec& g = F.grid;
    const int n = g.n;
    CVec a(n), out;
    for (int m = 0; m < n; ++m) a[m] = F.coefficients[m] * std::polar(1.0, -g.xi(m) * g.L);
    dft(a, out, +1);
    CVec v(n);
    const double scale = 1.0 / std::sqrt(2.0 * g.L);
    for (int j = 0; j < n; ++j) v[j] = scale * out[j] * std::polar(1.0, -std::numbers::pi * j);
    return SampledField(g, std::move(v));
}

PotentialKind parse_potential_kind(const std::string& s) {
    if (s == "gaussian") return PotentialKind::gaussian;
    if (s == "sech") return PotentialKind::sech;
    if (s == "bump") return PotentialKind::bump;
    throw InputError("unknown potential kind '" + s + "'");
}

SampledField standard_potential(PotentialKind kind, cplx amplitude, double width, double center,
                                const GridSpec& grid) {
    if (!(width > 0)) throw InputError("potential width must be positive");
    CVec v(grid.n, 0.0);
    for (int j = 0; j < grid.n; ++j) {
        const double t = (grid.x(j) - center) / width;
        double s = 0;
        switch (kind) {
            case PotentialKind::gaussian: s = std::exp(-t * t); break;
            case PotentialKind::sech: s = 1.0 / std::cosh(t); break;
            case PotentialKind::bump: s = std::abs(t) < 1 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0; break;
        }
        v[j] = amplitude * s;
    }
    const char* names[] = {"gaussian", "sech", "bump"};
    return SampledField(grid, std::move(v), names[static_cast<int>(kind)]);
}

double flattop(double x, double a, double b, double c) {
    auto f = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
    const double t = (std::abs(x - c) - a) / (b - a);
    if (t <= 0) return 1.0;
    if (t >= 1) return 0.0;
    return f(1 - t) / (f(1 - t) + f(t));
}

SampledField mollify(const SampledField& f, double plateau, double edge) {
    SampledField out = f;
    for (int j = 0; j < f.grid.n; ++j) out.values[j] *= flattop(f.grid.x(j), plateau, edge);
    return out;
}

void write_field_csv(const std::string& path, const SampledField& f) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot write " + path);
    os << "x,re,im\n";
    char buf[96];
    for (int j = 0; j < f.grid.n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.x(j), f.values[j].real(), f.values[j].imag());
        os << buf;
    }
}

SampledField read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot read " + path);
    std::string line;
    std::getline(is, line);
    if (line.rfind("x,re,im", 0) != 0) throw InputError(path + ": expected header x,re,im");
    std::vector<double> xs;
    CVec v;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x, re, im;
        char c1, c2;
        if (!(ls >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            throw InputError(path + ": malformed row " + std::to_string(row));
        xs.push_back(x);
        v.emplace_back(re, im);
    }
    const int n = static_cast<int>(v.size());
    if (n < 2) throw InputError(path + ": too few rows");
    const GridSpec g = make_grid(-xs[0], n);
    for (int j = 0; j < n; ++j)
        if (std::abs(xs[j] - g.x(j)) > 1e-9 * g.L)
            throw InputError(path + ": x column is not the uniform grid starting at -L");
    return SampledField(g, std::move(v), path);
}

void write_spectrum_csv(const std::string& path, const SpectrumField& F) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot write " + path);
    os << "xi,re,im\n";
    char buf[96];
    for (int m = 0; m < F.grid.n; ++m) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", F.grid.xi(m), F.coefficients[m].real(),
                      F.coefficients[m].imag());
        os << buf;
    }
}

CVec midpoint_values(const CVec& f) {
    static constexpr double c[8] = {-5, 49, -245, 1225, 1225, -245, 49, -5};
    const int n = static_cast<int>(f.size());
    CVec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        cplx s = 0;
        for (int m = 0; m < 8; ++m) {
            const int idx = i - 3 + m;
            if (idx >= 0 && idx < n) s += c[m] * f[idx];
        }
        out[i] = s / 2048.0;
    }
    return out;
}

SampledField refine(const SampledField& f) {
    GridSpec g = make_grid(f.grid.L, 2 * f.grid.n);
    CVec mid = midpoint_values(f.values);
    CVec v(g.n);
    for (int j = 0; j < f.grid.n; ++j) {
        v[2 * j] = f.values[j];
        v[2 * j + 1] = mid[j];
    }
    return SampledField(g, std::move(v), f.label);
}

}  // namespace laxscatter

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace laxscatter {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Uniform grid x_j = -L + j*dx, j = 0..n-1, with the matching frequency grid
// xi_m = -pi/dx + m*dxi.
struct GridSpec {
    double L = 0;
    int n = 0;
    double dx = 0;
    double dxi = 0;

    double x(int j) const { return -L + dx * j; }
    double xi(int m) const;
    bool operator==(const GridSpec& o) const { return L == o.L && n == o.n; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

GridSpec make_grid(double L, int n);

struct SampledField {
    GridSpec grid;
    CVec values;
    std::string label;

    SampledField() = default;
    SampledField(GridSpec g, CVec v, std::string lab = {});
    static SampledField zeros(const GridSpec& g, std::string lab = {});

    int size() const { return grid.n; }
    const cplx& operator[](int j) const { return values[j]; }
    cplx& operator[](int j) { return values[j]; }

    SampledField conj() const;
    double l2_norm() const;
    // index range [lo, hi) of nonzero samples; lo == hi when identically zero
    std::pair<int, int> support() const;
};

// Coefficients F_m at xi_m, normalized so that sum |F_m|^2 = dx sum |f_j|^2.
// The unitary continuum transform (2 pi)^{-1/2} int f e^{-i xi x} dx at xi_m
// equals F_m / sqrt(dxi).
struct SpectrumField {
    GridSpec grid;
    CVec coefficients;

    cplx hat(int m) const;
    double l2_norm() const;
};

SpectrumField transform(const SampledField& f);
SampledField inverse_transform(const SpectrumField& F);

enum class PotentialKind { gaussian, sech, bump };

PotentialKind parse_potential_kind(const std::string& s);

SampledField standard_potential(PotentialKind kind, cplx amplitude, double width, double center,
                                const GridSpec& grid);

// Smooth cutoff: 1 on |x - c| <= a, 0 on |x - c| >= b.
double flattop(double x, double a, double b, double c = 0.0);

// Multiplies f by a flat-top cutoff; returns the product.
SampledField mollify(const SampledField& f, double plateau, double edge);

void write_field_csv(const std::string& path, const SampledField& f);
// Reads x,re,im rows written by write_field_csv; the x column must be a grid of make_grid.
SampledField read_field_csv(const std::string& path);
void write_spectrum_csv(const std::string& path, const SpectrumField& F);

// Value of the degree-7 Lagrange interpolant at x_j + dx/2 (zero padding).
CVec midpoint_values(const CVec& f);
// Interleaves f with its midpoint values: the same field on the grid with dx/2.
SampledField refine(const SampledField& f);

}  // namespace laxscatter

#pragma once

#include "laxscatter/field.hpp"

#include <limits>

namespace laxscatter {

// (int |q^(xi)|^2 (1 + xi^2)^s dxi)^{1/2}
double sobolev_norm(const SampledField& q, double s);

// Smooth partition of unity on the frequency line: psi_n(xi) = psi(xi - n), supported in
// |xi - n| < 1, with psi(t) = cos^2(pi/2 * beta(|t|)) and beta the quintic smoothstep.
class BoxDecomposition {
public:
    explicit BoxDecomposition(const GridSpec& grid);

    static double profile(double t);
    // Box indices whose support meets the frequency grid.
    int n_min() const { return n_min_; }
    int n_max() const { return n_max_; }
    // Box n applied to q (Fourier multiplier).
    SampledField apply(const SampledField& q, int n) const;
    // max over grid frequencies of |sum_n psi_n(xi) - 1|
    double partition_defect() const;

private:
    GridSpec grid_;
    int n_min_ = 0, n_max_ = 0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// M_{2,p} with sharp unit intervals [n, n+1) when r = 2; M_{r,p} with smooth boxes for r = 1 or
// r = infinity. p in [1, inf].
double modulation_norm(const SampledField& q, double r, double p);
// M_{r,p} with smooth boxes for any r in {1, 2, inf}.
double modulation_norm_smooth(const SampledField& q, double r, double p);

struct IntegrationBound {
    double lhs = 0;  // |int_{-inf}^x f|_{M_{inf,1}}
    double rhs = 0;  // |f|_{M_{1,p}}
    double ratio = 0;
    bool primitive_decays = true;  // false when int f != 0
};

IntegrationBound integration_bound_check(const SampledField& f, double p);

struct ResolventSweep {
    std::vector<double> k;
    std::vector<double> ratio;  // max over the suite of |R_k f|_{M_{2,1}} / |f|_{M_{2,p}}
    double slope = 0;  // least-squares exponent in k
};

// Measures the M_{2,p} -> M_{2,1} size of (d - k)^{-1} on the given functions.
ResolventSweep resolvent_exponent_sweep(const std::vector<SampledField>& suite, double p, const std::vector<double>& ks);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace laxscatter

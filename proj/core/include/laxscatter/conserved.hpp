#pragma once

#include "laxscatter/evolve.hpp"
#include "laxscatter/field.hpp"

namespace laxscatter {

// (int |q^(xi)|^2 (xi^2 + 3 k^2)^s dxi)^{1/2}
double microlocal_norm(const SampledField& q, double s, double k);

// int_{k0}^inf 3 k^{1+2s} / (xi^2 + 3k^2 + sqrt(3) k xi) dk
double coercivity_numerator(double s, double k0, double xi);

struct CoercivityResult {
    double numerator = 0;
    double denominator = 0;  // (xi^2 + k0^2)^s
    double ratio = 0;
};

CoercivityResult coercivity_ratio(double s, double k0, double xi);

enum class EnergyMethod { transmission, det2 };

struct EnergyResult {
    double s = 0, k0 = 0, k_max = 0;
    int n_k = 0;
    double Es = 0;
    double Es2 = 0;  // quadratic part, exact in k
    std::vector<double> orders;  // E^(2), E^(3), E^(4)
    double tail = 0;  // closure beyond k_max
    double tail_exponent = 0;  // measured p in A(k) ~ k^p near k_max
    double quadrature_error = 0;  // |E(n_k) - E(n_k / 2)|
    double imag_residual = 0;  // max |Im A| over the nodes
    double norm_Hs_k0 = 0;  // |q|_{H^s_{k0}}
    double smallness = 0;  // |q|_{H^s} / (delta k0^{s + 1/2}), must stay below 1
    std::vector<double> k_nodes, A_values;
};

// E_s(k0, q) = int_{k0}^inf k^{2s} A(k, q) dk with r = conj(q), A = log T^{-1} = log det_2.
EnergyResult energy_Es(const SampledField& q, double s, double k0, double k_max = 0, int n_k = 24,
                       EnergyMethod method = EnergyMethod::transmission, bool higher_orders = true);

struct AprioriReport {
    std::vector<double> times;
    std::vector<double> norm;  // |q(t)|_{H^s_{k0}}
    std::vector<double> Es;
    double max_Es_drift = 0;  // relative
    double max_norm_ratio = 0;  // max_t |q(t)| / |q(0)|
    double quadrature_error = 0;  // relative, at t = 0
    double mollification_error = 0;  // max_t |q - mollified q|_2
};

AprioriReport apriori_experiment(const TrajectoryRecord& trajectory, double s, double k0, double plateau = 10,
                                 double edge = 13, int n_k = 24);

}  // namespace laxscatter

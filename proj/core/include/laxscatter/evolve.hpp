#pragma once

#include "laxscatter/field.hpp"

namespace laxscatter {

struct EvolutionConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    bool dealias = true;  // 2/3 rule
    int stride = 100;  // steps between snapshots
    bool nonlinear = true;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<SampledField> snapshots;
    std::vector<double> mass;
    std::vector<double> hamiltonian;
    long steps = 0;
    // dt / (dx^2 sqrt(3) / pi^2); the integrating factor keeps the scheme stable above 1
    double cfl_ratio = 0;
};

// i q_t + q_xx / sqrt(3) + 2 i conj(q) conj(q)_x = 0 on the periodic grid, integrating-factor RK4.
TrajectoryRecord evolve_qdnls(const SampledField& q0, const EvolutionConfig& config);

// int (i / (2 sqrt 3)) (q' r - q r') - (r^3 + q^3) / 3 with r = conj(q). The real part;
// hamiltonian_complex keeps the imaginary residue for diagnostics.
double hamiltonian(const SampledField& q);
cplx hamiltonian_complex(const SampledField& q);

double mass(const SampledField& q);

// Spectral derivative on the periodic grid.
SampledField spectral_derivative(const SampledField& q);

}  // namespace laxscatter

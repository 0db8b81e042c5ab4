#pragma once

#include "laxscatter/lax.hpp"

namespace laxscatter {

// Smallness constant used by the Picard solver and the energy module.
inline constexpr double kSmallnessDelta = 0.1;

enum class Side { left, right };

struct JostSolution {
    Side side = Side::left;
    int j = 0;
    double k = 0;
    CMat phi;  // row a = renormalized solution e^{-omega_j k x_a} Psi_j(x_a)
    int iterations = 0;
    double contraction = 0;  // Picard runs only
    std::vector<double> increments;  // sup-norm of successive Picard differences

    CVecX at(int a) const { return phi.row(a).transpose(); }
};

struct JostSet {
    std::vector<JostSolution> columns;
    int split = 0;
    double dual_method_deviation = -1;  // Volterra vs marching, when both ran

    int size() const { return static_cast<int>(columns.size()); }
    // Renormalized column matrix at node a.
    CMat matrix(int a) const;
};

struct AsymptoticsReport {
    double edge_deviation = 0;
    double sup_norm = 0;
};

// Picard iteration on the renormalized Volterra system of the first left solution.
JostSolution solve_left_jost_volterra(const LaxSpec& spec, double tol = 1e-12, int max_iter = 200);

enum class MarchScheme {
    // implicit exponential Adams-Moulton on six nodes: exact exponential weights against
    // the interpolant of U_0 phi, one small linear solve per step
    exponential_am,
    // integrating-factor RK4; loses accuracy once k dx is no longer small
    lawson_rk4,
};

// March from the support edge with step dx.
JostSolution solve_jost_march(const LaxSpec& spec, Side side, int j, MarchScheme scheme = MarchScheme::exponential_am);

AsymptoticsReport jost_asymptotics_check(const JostSolution& sol, const LaxSpec& spec);

JostSet solve_jost_set(const LaxSpec& spec, bool cross_validate = true);

// Throws unless every component vanishes within two length units of the grid edges.
void require_compact_support(const LaxSpec& spec);

}  // namespace laxscatter

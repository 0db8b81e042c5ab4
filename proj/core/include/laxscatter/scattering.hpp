#pragma once

#include "laxscatter/jost.hpp"

#include <random>

namespace laxscatter {

enum class TransmissionMethod { wronskian, limit };

struct TransmissionResult {
    double k = 0;
    cplx T_inv{1};
    TransmissionMethod method = TransmissionMethod::wronskian;
    double x_independence_span = 0;  // max |W(x) - W(x')| over the sampled nodes
};

TransmissionResult transmission_wronskian(const JostSet& jost, int at_x, int samples = 8);
TransmissionResult transmission_limit(const JostSolution& left_jost, const LaxSpec& spec);

// log T^{-1}, principal branch; uses the limit formula for qdNLS and the Wronskian otherwise.
cplx log_inverse_transmission(const LaxSpec& spec);

// Principal log of z shifted by a multiple of 2 pi i to lie closest to ref.
cplx log_near(cplx z, cplx ref);

struct WronskianCheck {
    double algebraic_residual = 0;  // sum_j det(..|A v_j|..) vs tr(A) det, relative
    double derivative_residual = 0;  // max |dW/dx| / |W|
};

WronskianCheck wronskian_derivative_identity_check(const JostSet& jost, const LaxSpec& spec,
                                                   std::mt19937_64& rng);

struct DriftSeries {
    std::vector<cplx> T_inv;
    double max_relative_drift = 0;
};

// T^{-1}(k, q(t)) for each snapshot, with r = conj(q) and the flat-top mollifier applied.
DriftSeries conservation_probe(const std::vector<SampledField>& snapshots, double k, double plateau,
                               double edge);

}  // namespace laxscatter

#pragma once

#include "laxscatter/field.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace laxscatter {

using CMat = Eigen::MatrixXcd;
using CVecX = Eigen::VectorXcd;

struct DiagonalGenerator {
    std::vector<cplx> omegas;
    int split = 0;  // number of omegas with positive real part (left Jost solutions)

    int size() const { return static_cast<int>(omegas.size()); }
};

// Validates (distinct, trace free, no purely imaginary entry, ordered by the sign
// of the real part) and fills in the split index.
DiagonalGenerator make_generator(std::vector<cplx> omegas);

// Returns exp(2 pi i / 3).
cplx omega3();

struct Monomial {
    std::vector<int> exponents;  // one per field component
    cplx coefficient{0};
};

struct Polynomial {
    std::vector<Monomial> terms;

    bool is_zero() const;
    bool has_constant_term() const;
    cplx eval(const std::vector<cplx>& u) const;
    cplx derivative(int i, const std::vector<cplx>& u) const;
};

using PotentialMatrix = std::vector<std::vector<Polynomial>>;

struct LaxSpec {
    DiagonalGenerator J;
    PotentialMatrix U0;
    double k = 1;
    std::vector<SampledField> fields;
    bool qdnls = false;  // fields = {q, r}, U0 rows (0 q r; r 0 q; q r 0)

    int n() const { return J.size(); }
    int components() const { return static_cast<int>(fields.size()); }
    const GridSpec& grid() const { return fields.front().grid; }
    cplx pole(int i) const { return k * J.omegas[i]; }

    std::vector<cplx> u_at(int j) const;
    // U0_ab as a sampled field
    CVec entry(int a, int b) const;
    std::vector<std::vector<CVec>> entries() const;
    // Same entries evaluated from midpoint-interpolated components.
    std::vector<std::vector<CVec>> midpoint_entries() const;
    // Nodes where some component is nonzero, [lo, hi).
    std::pair<int, int> support() const;
    LaxSpec with_k(double k_new) const;
    LaxSpec with_fields(std::vector<SampledField> f) const;
};

LaxSpec build_qdnls_spec(const SampledField& q, const SampledField& r, double k);
LaxSpec build_general_spec(const std::vector<cplx>& omegas, const PotentialMatrix& U0,
                           const std::vector<SampledField>& u, double k);

CMat evaluate_U0(const LaxSpec& spec, int x_index);
CMat evaluate_U0(const LaxSpec& spec, const std::vector<cplx>& u);
CMat nabla_U0(const LaxSpec& spec, int component, int x_index);

// Linear monomial u_i (m components).
Polynomial linear_poly(int i, int m, cplx c = 1.0);

// Uniform double in [0, 1) from the top 53 bits, identical across standard libraries.
double uniform01(std::mt19937_64& rng);

// Random n x n spec with l = n / 2 left indices: trace-free J with distinct entries whose
// real parts have modulus >= 0.4, two bump fields, and off-diagonal entries that mix linear
// terms with one u_1 u_2 product. Field amplitudes are `amplitude` times a random phase.
LaxSpec random_general_spec(int n, const GridSpec& grid, double k, double amplitude, std::uint64_t seed);

}  // namespace laxscatter

#pragma once

#include "laxscatter/lax.hpp"

#include <optional>

namespace laxscatter {

// Kernel of the resolvent (d - z)^{-1}; the diagonal x = y is assigned 0.
struct ResolventKernel {
    cplx z;
    explicit ResolventKernel(cplx z_);
    cplx operator()(double x, double y) const;
    bool causal() const { return z.real() < 0; }
};

ResolventKernel resolvent_kernel(cplx z);

// Block operator with block (i, j) = sign * R_i U_ij, R_i = (d - z_i)^{-1}, sampled on the
// window [lo, hi) of the grid. For the Lax operator sign = -1 and the operator is
// R_0 (L - L_0) = -R_0 U_0.
class OperatorKernel {
public:
    OperatorKernel() = default;
    OperatorKernel(GridSpec grid, std::vector<cplx> poles, std::vector<std::vector<CVec>> full_entries,
                   bool symmetrized, double sign = -1.0, int margin = 8);

    const GridSpec& grid() const { return grid_; }
    int blocks() const { return static_cast<int>(poles_.size()); }
    const std::vector<cplx>& poles() const { return poles_; }
    double sign() const { return sign_; }
    bool symmetrized() const { return symmetrized_; }
    bool is_zero() const { return hi_ <= lo_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int window() const { return hi_ - lo_; }
    bool has_block(int i, int j) const { return !entries_[i][j].empty(); }
    // Entry field restricted to the window.
    const CVec& block_field(int i, int j) const { return entries_[i][j]; }
    // Entry field on the full periodic grid.
    const CVec& full_field(int i, int j) const { return full_[i][j]; }

    // Nystrom matrix with product-integration weights, dimension blocks * window.
    const CMat& nystrom() const;
    // Exact Hilbert-Schmidt norm of the unsymmetrized operator,
    // sum_{i != j} ||U_ij||^2 / (2 |Re z_i|).
    double hs_norm() const;

private:
    GridSpec grid_;
    std::vector<cplx> poles_;
    std::vector<std::vector<CVec>> entries_, full_;
    bool symmetrized_ = false;
    double sign_ = -1;
    int lo_ = 0, hi_ = 0;
    mutable std::optional<CMat> nystrom_;
};

OperatorKernel assemble_lambda(const LaxSpec& spec, bool symmetrized = false);

// tr(R_{a_1} f_1 R_{a_2} f_2 ... R_{a_l} f_l) by nested exponential quadrature over each
// ordering of the integration variables compatible with the kernel supports.
cplx chain_trace(const std::vector<cplx>& poles, const std::vector<const CVec*>& fields, double h);

// Traces up to this order are evaluated by composed-kernel quadrature; higher orders by
// powers of the Nystrom matrix.
inline constexpr int kExactTraceOrder = 4;

cplx trace_power(const OperatorKernel& kernel, int l);
// Composed-kernel quadrature for any l (cost grows like l!).
cplx trace_power_exact(const OperatorKernel& kernel, int l);
// tr(A^l) of the Nystrom matrix, l = 2..lmax (index l - 2).
std::vector<cplx> nystrom_traces(const CMat& A, int lmax);

// tr(Lambda^2) from Fourier multipliers on the periodic grid; uses the square-root
// factors when the kernel is symmetrized.
cplx trace2_fourier(const OperatorKernel& kernel);

cplx trace2_closed_form(const SampledField& q, const SampledField& r, double k);
std::pair<cplx, cplx> trace34_closed_form(const SampledField& q, const SampledField& r, double k);

struct HSNormResult {
    double frobenius = 0;  // symmetrized block on the periodic grid
    double formula_value = 0;  // double integral over the Fourier variables, compares to frobenius^2
};

// qdNLS block (i, j), i != j, zero based.
HSNormResult hs_norm(const SampledField& q, const SampledField& r, int i, int j, double k);

struct TraceSeries {
    std::vector<cplx> traces;  // t_2 .. t_lmax
    double hs_norm = 0;
    double tail_bound = 0;
    cplx log_det2{0};
};

TraceSeries logdet2_series(const OperatorKernel& kernel, double tolerance = 1e-10, int l_max = 40);

// det(1 + A) e^{-tr A} for a plain matrix.
cplx det2_matrix(const CMat& A);

struct Det2Result {
    cplx det2{1};
    cplx log_det2{0};
    cplx raw_log_det2{0};  // Nystrom matrix alone, before the low-order trace correction
    double log_det_minus_log_det2 = 0;  // |log det - log det2| of the Nystrom matrix
};

// Nystrom determinant with the traces of order 2..kExactTraceOrder replaced by their
// composed-kernel values.
Det2Result det2_matrix(const OperatorKernel& kernel);

struct EqualityReport {
    double k = 0;
    cplx log_T_inv{0};
    cplx log_det2_matrix{0};
    cplx log_det2_series{0};
    double hs_norm = 0;
    double dev_matrix = 0;  // |log det2 (matrix) - log T^{-1}|
    double dev_series = 0;
    double dev_methods = 0;
    std::vector<cplx> traces;
    double tail_bound = 0;
};

EqualityReport verify_equality(const LaxSpec& spec, double tolerance = 1e-10);

}  // namespace laxscatter

#pragma once

#include "laxscatter/fredholm.hpp"
#include "laxscatter/jost.hpp"

namespace laxscatter {

// Green's function of L = d - kJ - U_0 assembled from a Jost set:
//   G(x, y) = -T sum_{left i} Phi_i(x) v_i(y)^T   for x < y,
//   G(x, y) = +T sum_{right i} Phi_i(x) v_i(y)^T  for x > y,
// where <v_i(y), w> is the Wronskian with column i replaced by w.
class GreensEvaluator {
public:
    GreensEvaluator(const LaxSpec& spec, JostSet jost);
    explicit GreensEvaluator(const LaxSpec& spec);

    const JostSet& jost() const { return jost_; }
    cplx T_inv() const { return T_inv_; }
    const GridSpec& grid() const { return grid_; }
    int n() const { return static_cast<int>(omegas_.size()); }

    // x != y (grid indices).
    CMat operator()(int x, int y) const;
    // One-sided limits G(y+, y) and G(y-, y) from the piecewise formula.
    CMat limit(int y, bool from_above) const;
    // Dual vectors v~_i(y) of the renormalized columns, stored as rows.
    const CMat& duals(int y) const { return adj_[y]; }

private:
    CMat part(int x, int y, bool upper) const;

    JostSet jost_;
    cplx T_inv_{1};
    GridSpec grid_;
    std::vector<cplx> omegas_;
    double k_ = 0;
    int split_ = 0;
    std::vector<CMat> adj_;
};

CMat greens_from_jost(const GreensEvaluator& G, int x, int y);

// The explicit 3 x 3 matrices M(x, y) with G = -T M (qdNLS only).
CMat qdnls_lemma_matrix(const LaxSpec& spec, const JostSet& jost, int x, int y);

struct JumpReport {
    double residual = 0;  // |G(y+,y) - G(y-,y) - Id|
    double offdiag_jump = 0;
    double extrapolated_residual = 0;  // same, one-sided limits extrapolated from y +- 1..6
};

JumpReport greens_jump_check(const GreensEvaluator& G, int y);

// max_x |(d_x - U) G(., y)| / max |G(., y)| over nodes at least `guard` away from y,
// with an eighth-order central difference.
double greens_column_residual(const GreensEvaluator& G, const LaxSpec& spec, int y, int guard = 6);

// Diagonal of the kernel of R - R_0 on nodes [lo, hi).
struct GreensDiagonal {
    GridSpec grid;
    int lo = 0;
    std::vector<CMat> values;

    int hi() const { return lo + static_cast<int>(values.size()); }
    const CMat& at(int a) const { return values.at(a - lo); }
};

// g~ = -T sum_{left i} phi_i v~_i^T + sum_{left i} e_i e_i^T on the full grid.
GreensDiagonal greens_diagonal_jost(const GreensEvaluator& G);

enum class DiagonalPath { dense, neumann };

// g~(y) = sum_{m >= 1} [(R_0 U_0)^m R_0](y, y) on nodes [lo, hi). The Neumann path sums the
// series term by term; the dense path sums the leading terms and solves for the remainder
// with the Nystrom matrix.
GreensDiagonal greens_diagonal_renormalized(const LaxSpec& spec, int lo, int hi,
                                            DiagonalPath path = DiagonalPath::dense);

// d/du_i log T^{-1} = -tr(grad_i U_0 g~).
SampledField derivative_from_diagonal(const LaxSpec& spec, const GreensDiagonal& g, int component);

// Functional derivative of log T^{-1} from the Jost side, full grid.
SampledField functional_derivative_T(const LaxSpec& spec, int component);
// Functional derivative of log det_2(1 + Lambda~) from the operator side on [lo, hi), zero elsewhere.
SampledField functional_derivative_logdet(const LaxSpec& spec, int component, int lo, int hi,
                                          DiagonalPath path = DiagonalPath::dense);

// qdNLS: d T^{-1}/dq (component 0) and d T^{-1}/dr (component 1) as products of Jost entries.
SampledField qdnls_dTinv_explicit(const LaxSpec& spec, const JostSet& jost, int component);

enum class Functional { log_T_inv, log_det2 };

cplx evaluate_functional(Functional F, const LaxSpec& spec);

// Central difference of F along v e_i, Richardson-combined over eps = 1e-3, 1e-4.
cplx fd_oracle(Functional F, const LaxSpec& spec, const SampledField& v, int component);

// int d(x) v(x) dx
cplx pair(const SampledField& density, const SampledField& v);

struct GradCheck {
    std::vector<cplx> fd, analytic;
    double relative_error = 0;  // |fd - analytic|_2 / |fd|_2 over the directions
};

GradCheck gradient_check(Functional F, const LaxSpec& spec, int component, const std::vector<SampledField>& directions);

}  // namespace laxscatter

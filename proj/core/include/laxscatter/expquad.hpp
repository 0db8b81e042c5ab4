#pragma once

// Product integration against exponential weights on a uniform grid.

#include "laxscatter/field.hpp"

namespace laxscatter::expquad {

// G_a = int_{-inf}^{x_a} e^{s (y - x_a)} g(y) dy, with g = 0 left of node 0.
CVec causal(cplx s, const CVec& g, double h);
// H_a = int_{x_a}^{inf} e^{s (x_a - y)} g(y) dy, with g = 0 right of the last node.
CVec anticausal(cplx s, const CVec& g, double h);

// Piecewise-smooth integrand with a break at node p: gl holds the values used on
// [x_0, x_p] (gl[p] is the left limit), gr those on [x_p, x_end].
CVec causal_split(cplx s, const CVec& gl, const CVec& gr, int p, double h);
CVec anticausal_split(cplx s, const CVec& gl, const CVec& gr, int p, double h);

// (d - z)^{-1} g with the kernel -1_{x<y} e^{z(x-y)} (Re z > 0) or
// 1_{x>y} e^{z(x-y)} (Re z < 0).
CVec apply_resolvent(cplx z, const CVec& g, double h);
CVec apply_resolvent_split(cplx z, const CVec& gl, const CVec& gr, int p, double h);

// Toeplitz weights w(d), d = b - a in [-(N-1), N-1], stored at index d + N - 1, such
// that sum_b w(b - a) g_b approximates (d - z)^{-1} g at x_a to fourth order.
CVec resolvent_weights(cplx z, double h, int N);

}  // namespace laxscatter::expquad

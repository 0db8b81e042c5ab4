#pragma once

#include <laxscatter/fredholm.hpp>
#include <laxscatter/jost.hpp>

#include <cstdint>
#include <vector>

namespace suite {

using laxscatter::cplx;
using laxscatter::CVec;
using laxscatter::GridSpec;
using laxscatter::LaxSpec;
using laxscatter::SampledField;

GridSpec grid(int n = 1024, double L = 16);

SampledField bump(cplx amplitude, double width, double center, const GridSpec& g);
// Gaussian cut to compact support by the flat-top window.
SampledField mollified_gaussian(cplx amplitude, double width, double center, const GridSpec& g,
                                double plateau = 2, double edge = 3);
// Sum of a few random bumps with random phases; compactly supported inside |x| < 4.
SampledField random_bumps(std::uint64_t seed, const GridSpec& g, double amplitude = 0.05);

// qdNLS spec with r = conj(q).
LaxSpec qdnls(const SampledField& q, double k);

// Small-data potentials used across the equality and trace checks.
std::vector<SampledField> small_potentials(const GridSpec& g);

double sup_diff(const CVec& a, const CVec& b);
double rel(cplx a, cplx b);

}  // namespace suite

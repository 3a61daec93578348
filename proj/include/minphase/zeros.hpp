#pragma once

#include <complex>
#include <vector>

#include "minphase/fir.hpp"

namespace minphase {

/// Zeros of the tap polynomial via companion-matrix eigenvalues, unordered.
/// Diagnostic only: requires 2 <= M <= 64 and a nonzero leading tap; root
/// finding beyond that order is numerically unreliable.
std::vector<std::complex<double>> zeros(const FirFilter& h);

/// Largest zero modulus; the minimum-phase acceptance bound is 1 + 1e-8
/// because designs deliberately place zeros close to the unit circle.
double max_zero_modulus(const FirFilter& h);

}  // namespace minphase

#pragma once

#include <vector>

#include "minphase/fir.hpp"
#include "minphase/orchard_wilson.hpp"

namespace minphase {

struct TransformResult {
  FirFilter minphase;             // c, same length as the input
  std::vector<double> prefilter;  // anti-causal f from the symmetry row of F
  ResidualReport residual;
  double spectral_error = 0;      // max_w | |C(w)| - |H(w)| |
};

/// Transform an arbitrary-phase FIR to minimum phase: autocorrelation ->
/// Gramian (gamma = 0) -> Cholesky -> symmetry-column seed -> refine.
/// Throws NotPositiveDefinite when H(z) has zeros on the unit circle; apply
/// a minimal lift through the design flow in that case.
TransformResult transform(const FirFilter& h, int padding = 0);

struct MmseConfig {
  int feedforward_length = 0;   // P+1; defaults to 10*M when 0
  double noise_variance = 1e-4; // sigma^2
};

/// MMSE baseline: jointly minimize E|f*y - c*s|^2 over the anti-causal
/// feedforward filter f (length P+1) and a monic target c, observing
/// y = h*s + noise with unit-variance white s. The reported c is the causal
/// truncation of f*h rescaled to ||c||^2 = r_h(0), and the residual is taken
/// against autocorrelation(h).
TransformResult mmse_transform(const FirFilter& h, const MmseConfig& cfg);

/// max over the grid of | |C(w)| - |H(w)| |.
double spectral_equality_check(const FirFilter& h, const FirFilter& c,
                               const FrequencyGrid& grid);

}  // namespace minphase

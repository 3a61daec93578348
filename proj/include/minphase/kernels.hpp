#pragma once

#include <vector>

#include "minphase/fir.hpp"

// Grid-evaluation kernels. Each has a serial reference implementation and an
// OpenMP-parallel version; the parallel one computes every grid point with the
// same scalar code path, so results are bitwise identical for any thread
// count. The public library entry points dispatch to the parallel kernels.
namespace minphase::kernels {

/// Zero-phase amplitude A(w) = g[m] + 2 sum_k g[m+k] cos(k w). May be negative.
std::vector<double> amplitude_response_serial(const LinearPhasePrototype& g,
                                              const std::vector<double>& omega);
std::vector<double> amplitude_response(const LinearPhasePrototype& g,
                                       const std::vector<double>& omega);

/// |H(w)| = |sum_n h[n] e^{-iwn}|, nonnegative.
std::vector<double> magnitude_response_serial(const FirFilter& h,
                                              const std::vector<double>& omega);
std::vector<double> magnitude_response(const FirFilter& h,
                                       const std::vector<double>& omega);

/// Valid-mode FIR filtering of a long signal: out[n] = sum_k f[k] x[n+k],
/// n = 0 .. len(x)-len(f). Used for the all-pass noise checks and benchmarks.
std::vector<double> filter_signal_serial(const std::vector<double>& taps,
                                         const std::vector<double>& signal);
std::vector<double> filter_signal(const std::vector<double>& taps,
                                  const std::vector<double>& signal);

}  // namespace minphase::kernels

namespace minphase {

std::vector<double> amplitude_response(const LinearPhasePrototype& g,
                                       const FrequencyGrid& grid);
std::vector<double> frequency_response_magnitude(const FirFilter& h,
                                                 const FrequencyGrid& grid);

/// Amplitude at a single frequency (serial scalar path shared by all kernels).
double amplitude_at(const LinearPhasePrototype& g, double omega);

struct AmplitudeExtremum {
  double omega;
  double value;
};

/// Grid scan followed by parabolic refinement iterated to |dw| < 1e-13.
AmplitudeExtremum minimum_amplitude(const LinearPhasePrototype& g,
                                    int grid_count = kDefaultGridCount);
AmplitudeExtremum maximum_amplitude(const LinearPhasePrototype& g,
                                    int grid_count = kDefaultGridCount);

}  // namespace minphase

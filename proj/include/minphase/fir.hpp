#pragma once

#include <stdexcept>
#include <vector>

namespace minphase {

/// Causal FIR filter: taps[n] multiplies the input delayed by n samples.
struct FirFilter {
  std::vector<double> taps;

  FirFilter() = default;
  explicit FirFilter(std::vector<double> t);

  int length() const { return static_cast<int>(taps.size()); }
  double operator[](int n) const { return taps[static_cast<size_t>(n)]; }
};

/// Odd-length symmetric tap vector g with center index m = (M-1)/2.
/// Construction validates symmetry to 1e-15 relative, then symmetrizes the
/// stored taps by averaging mirrored pairs so g[n] == g[M-1-n] holds exactly.
struct LinearPhasePrototype {
  std::vector<double> taps;

  LinearPhasePrototype() = default;
  explicit LinearPhasePrototype(std::vector<double> t);

  int length() const { return static_cast<int>(taps.size()); }
  int center() const { return (length() - 1) / 2; }
  double operator[](int n) const { return taps[static_cast<size_t>(n)]; }

  /// Causal half: lag(0) = center tap, lag(k) = g[m+k].
  double lag(int k) const { return taps[static_cast<size_t>(center() + k)]; }
};

/// Uniform frequency grid on [0, pi], both endpoints included.
struct FrequencyGrid {
  explicit FrequencyGrid(int count);

  int count() const { return static_cast<int>(omega.size()); }
  std::vector<double> omega;
};

constexpr int kDefaultGridCount = 4096;

FirFilter reverse(const FirFilter& h);

/// Full linear convolution, length len(a)+len(b)-1.
FirFilter convolve(const FirFilter& a, const FirFilter& b);

/// Autocorrelation of h as a symmetric prototype of length 2M-1.
/// Lag sums run over ascending n, one half computed and mirrored, so the
/// result equals convolve(h, reverse(h)) bit for bit.
LinearPhasePrototype autocorrelation(const FirFilter& h);

/// Prefix energy sums P[k] = sum_{n<=k} h[n]^2 (nondecreasing).
std::vector<double> energy_concentration(const FirFilter& h);

}  // namespace minphase

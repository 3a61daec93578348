#include "minphase/kernels.hpp"

#include <cmath>

namespace minphase {

double amplitude_at(const LinearPhasePrototype& g, double omega) {
  const int m = g.center();
  double acc = g.lag(0);
  for (int k = 1; k <= m; ++k)
    acc += 2.0 * g.lag(k) * std::cos(static_cast<double>(k) * omega);
  return acc;
}

namespace {

double magnitude_at(const FirFilter& h, double omega) {
  double re = 0, im = 0;
  for (int n = 0; n < h.length(); ++n) {
    re += h[n] * std::cos(static_cast<double>(n) * omega);
    im -= h[n] * std::sin(static_cast<double>(n) * omega);
  }
  return std::hypot(re, im);
}

}  // namespace

namespace kernels {

std::vector<double> amplitude_response_serial(const LinearPhasePrototype& g,
                                              const std::vector<double>& omega) {
  std::vector<double> out(omega.size());
  for (size_t i = 0; i < omega.size(); ++i) out[i] = amplitude_at(g, omega[i]);
  return out;
}

std::vector<double> amplitude_response(const LinearPhasePrototype& g,
                                       const std::vector<double>& omega) {
  std::vector<double> out(omega.size());
  const int n = static_cast<int>(omega.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = amplitude_at(g, omega[static_cast<size_t>(i)]);
  return out;
}

std::vector<double> magnitude_response_serial(const FirFilter& h,
                                              const std::vector<double>& omega) {
  std::vector<double> out(omega.size());
  for (size_t i = 0; i < omega.size(); ++i) out[i] = magnitude_at(h, omega[i]);
  return out;
}

std::vector<double> magnitude_response(const FirFilter& h,
                                       const std::vector<double>& omega) {
  std::vector<double> out(omega.size());
  const int n = static_cast<int>(omega.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = magnitude_at(h, omega[static_cast<size_t>(i)]);
  return out;
}

std::vector<double> filter_signal_serial(const std::vector<double>& taps,
                                         const std::vector<double>& signal) {
  if (signal.size() < taps.size()) return {};
  std::vector<double> out(signal.size() - taps.size() + 1);
  for (size_t n = 0; n < out.size(); ++n) {
    double acc = 0;
    for (size_t k = 0; k < taps.size(); ++k) acc += taps[k] * signal[n + k];
    out[n] = acc;
  }
  return out;
}

std::vector<double> filter_signal(const std::vector<double>& taps,
                                  const std::vector<double>& signal) {
  if (signal.size() < taps.size()) return {};
  std::vector<double> out(signal.size() - taps.size() + 1);
  const long long n_out = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long n = 0; n < n_out; ++n) {
    double acc = 0;
    for (size_t k = 0; k < taps.size(); ++k)
      acc += taps[k] * signal[static_cast<size_t>(n) + k];
    out[static_cast<size_t>(n)] = acc;
  }
  return out;
}

}  // namespace kernels

std::vector<double> amplitude_response(const LinearPhasePrototype& g,
                                       const FrequencyGrid& grid) {
  return kernels::amplitude_response(g, grid.omega);
}

std::vector<double> frequency_response_magnitude(const FirFilter& h,
                                                 const FrequencyGrid& grid) {
  return kernels::magnitude_response(h, grid.omega);
}

namespace {

// Parabolic refinement around a grid extremum. sign = +1 locates a minimum,
// -1 a maximum. The amplitude is a trigonometric polynomial, so evaluation a
// little outside [0, pi] is valid (and even symmetric about both endpoints).
AmplitudeExtremum refine_extremum(const LinearPhasePrototype& g, double x0,
                                  double h0, double sign) {
  double x = x0;
  double h = h0;
  for (int it = 0; it < 200; ++it) {
    const double f0 = sign * amplitude_at(g, x - h);
    const double f1 = sign * amplitude_at(g, x);
    const double f2 = sign * amplitude_at(g, x + h);
    const double denom = f0 - 2.0 * f1 + f2;
    if (denom <= 0) {  // curvature lost at this step size; shrink and retry
      h *= 0.5;
      if (h < 1e-15) break;
      continue;
    }
    const double dx = 0.5 * h * (f0 - f2) / denom;
    x += dx;
    if (std::abs(dx) < 1e-13) break;
    h = std::max(std::abs(dx), 1e-15);
  }
  return {x, amplitude_at(g, x)};
}

}  // namespace

AmplitudeExtremum minimum_amplitude(const LinearPhasePrototype& g, int grid_count) {
  FrequencyGrid grid(grid_count);
  const auto a = kernels::amplitude_response(g, grid.omega);
  size_t best = 0;
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i] < a[best]) best = i;
  return refine_extremum(g, grid.omega[best], grid.omega[1] - grid.omega[0], +1.0);
}

AmplitudeExtremum maximum_amplitude(const LinearPhasePrototype& g, int grid_count) {
  FrequencyGrid grid(grid_count);
  const auto a = kernels::amplitude_response(g, grid.omega);
  size_t best = 0;
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i] > a[best]) best = i;
  return refine_extremum(g, grid.omega[best], grid.omega[1] - grid.omega[0], -1.0);
}

}  // namespace minphase

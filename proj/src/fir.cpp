#include "minphase/fir.hpp"

#include <cmath>
#include <numbers>

namespace minphase {

namespace {

void check_finite(const std::vector<double>& taps) {
  if (taps.empty()) throw std::invalid_argument("filter must have at least one tap");
  for (double t : taps) {
    if (!std::isfinite(t)) throw std::invalid_argument("filter taps must be finite");
  }
}

}  // namespace

FirFilter::FirFilter(std::vector<double> t) : taps(std::move(t)) {
  check_finite(taps);
}

LinearPhasePrototype::LinearPhasePrototype(std::vector<double> t) : taps(std::move(t)) {
  check_finite(taps);
  if (taps.size() % 2 == 0)
    throw std::invalid_argument("linear-phase prototype needs an odd tap count");
  const size_t n = taps.size();
  double scale = 0;
  for (double v : taps) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < n / 2; ++i) {
    if (std::abs(taps[i] - taps[n - 1 - i]) > 1e-15 * scale)
      throw std::invalid_argument("prototype taps are not symmetric");
  }
  for (size_t i = 0; i < n / 2; ++i) {
    const double avg = 0.5 * (taps[i] + taps[n - 1 - i]);
    taps[i] = avg;
    taps[n - 1 - i] = avg;
  }
}

FrequencyGrid::FrequencyGrid(int count) {
  if (count < 2) throw std::invalid_argument("frequency grid needs at least 2 points");
  omega.resize(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    omega[static_cast<size_t>(i)] =
        std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1);
  omega.back() = std::numbers::pi;
}

FirFilter reverse(const FirFilter& h) {
  std::vector<double> r(h.taps.rbegin(), h.taps.rend());
  return FirFilter(std::move(r));
}

FirFilter convolve(const FirFilter& a, const FirFilter& b) {
  const int na = a.length(), nb = b.length();
  std::vector<double> out(static_cast<size_t>(na + nb - 1), 0.0);
  for (int t = 0; t < na + nb - 1; ++t) {
    double acc = 0;
    const int jlo = std::max(0, t - nb + 1);
    const int jhi = std::min(na - 1, t);
    for (int j = jlo; j <= jhi; ++j) acc += a[j] * b[t - j];
    out[static_cast<size_t>(t)] = acc;
  }
  return FirFilter(std::move(out));
}

LinearPhasePrototype autocorrelation(const FirFilter& h) {
  const int m = h.length();
  std::vector<double> g(static_cast<size_t>(2 * m - 1), 0.0);
  for (int k = 0; k < m; ++k) {
    double acc = 0;
    for (int n = 0; n + k < m; ++n) acc += h[n] * h[n + k];
    g[static_cast<size_t>(m - 1 + k)] = acc;
    g[static_cast<size_t>(m - 1 - k)] = acc;
  }
  LinearPhasePrototype out;
  out.taps = std::move(g);  // symmetric by construction
  return out;
}

std::vector<double> energy_concentration(const FirFilter& h) {
  std::vector<double> p(static_cast<size_t>(h.length()));
  double acc = 0;
  for (int n = 0; n < h.length(); ++n) {
    acc += h[n] * h[n];
    p[static_cast<size_t>(n)] = acc;
  }
  return p;
}

}  // namespace minphase

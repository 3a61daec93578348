// Compares the serial reference kernels against the OpenMP versions and
// checks that both produce identical values.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "minphase/fir.hpp"
#include "minphase/kernels.hpp"
#include "minphase/lifting.hpp"
#include "minphase/tap_io.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

bool identical(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  std::mt19937 gen(1234);
  auto uniform = [&gen]() { return 2.0 * (gen() / 4294967296.0) - 1.0; };

  // long symmetric prototype for the amplitude kernel
  std::vector<double> half(128);
  for (double& v : half) v = uniform();
  std::vector<double> proto_taps(half.rbegin(), half.rend());
  proto_taps.insert(proto_taps.end(), 1.0);
  proto_taps.insert(proto_taps.end(), half.begin(), half.end());
  minphase::LinearPhasePrototype proto(proto_taps);

  std::vector<double> omega(1 << 18);
  for (size_t i = 0; i < omega.size(); ++i)
    omega[i] = 3.141592653589793 * static_cast<double>(i) / (omega.size() - 1);

  auto a_serial = minphase::kernels::amplitude_response_serial(proto, omega);
  auto a_par = minphase::kernels::amplitude_response(proto, omega);
  const double t_as = time_best_of(3, [&] {
    a_serial = minphase::kernels::amplitude_response_serial(proto, omega);
  });
  const double t_ap = time_best_of(3, [&] {
    a_par = minphase::kernels::amplitude_response(proto, omega);
  });
  std::printf("amplitude_response  %8zu pts x %3d lags: serial %8.3f ms, omp %8.3f ms, speedup %.2fx, identical=%s\n",
              omega.size(), proto.center() + 1, 1e3 * t_as, 1e3 * t_ap,
              t_as / t_ap, identical(a_serial, a_par) ? "yes" : "NO");

  std::vector<double> fir_taps(257);
  for (double& v : fir_taps) v = uniform();
  minphase::FirFilter fir(fir_taps);
  auto m_serial = minphase::kernels::magnitude_response_serial(fir, omega);
  auto m_par = minphase::kernels::magnitude_response(fir, omega);
  const double t_ms = time_best_of(3, [&] {
    m_serial = minphase::kernels::magnitude_response_serial(fir, omega);
  });
  const double t_mp = time_best_of(3, [&] {
    m_par = minphase::kernels::magnitude_response(fir, omega);
  });
  std::printf("magnitude_response  %8zu pts x %3d taps: serial %8.3f ms, omp %8.3f ms, speedup %.2fx, identical=%s\n",
              omega.size(), fir.length(), 1e3 * t_ms, 1e3 * t_mp, t_ms / t_mp,
              identical(m_serial, m_par) ? "yes" : "NO");

  std::vector<double> signal(1 << 21);
  for (double& v : signal) v = uniform();
  std::vector<double> taps(101);
  for (double& v : taps) v = uniform();
  auto f_serial = minphase::kernels::filter_signal_serial(taps, signal);
  auto f_par = minphase::kernels::filter_signal(taps, signal);
  const double t_fs = time_best_of(3, [&] {
    f_serial = minphase::kernels::filter_signal_serial(taps, signal);
  });
  const double t_fp = time_best_of(3, [&] {
    f_par = minphase::kernels::filter_signal(taps, signal);
  });
  std::printf("filter_signal      %8zu smp x %3zu taps: serial %8.3f ms, omp %8.3f ms, speedup %.2fx, identical=%s\n",
              signal.size(), taps.size(), 1e3 * t_fs, 1e3 * t_fp, t_fs / t_fp,
              identical(f_serial, f_par) ? "yes" : "NO");

  // end-to-end sweep: per-point parallelism
  const std::string data_dir = "data";
  try {
    auto g = minphase::read_prototype(data_dir + "/table2_g.txt");
    std::vector<double> offsets;
    for (int i = 0; i < 24; ++i) offsets.push_back(1e-13 * (1 << (i % 12)));
    const auto t0 = Clock::now();
    auto curve = minphase::waterfall_sweep(g, offsets, 250);
    std::printf("waterfall_sweep     %zu points: %.3f s total\n", curve.size(),
                seconds_since(t0));
  } catch (const std::exception& e) {
    std::printf("sweep benchmark skipped (%s)\n", e.what());
  }
  return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "minphase/fir.hpp"
#include "minphase/kernels.hpp"
#include "test_util.hpp"

using namespace minphase;

// The OpenMP kernels must be bitwise equal to the serial references for any
// thread count: each grid point runs the same scalar code path.

TEST_CASE("amplitude kernel: omp output is identical to serial") {
  std::mt19937 gen(808);
  for (int m : {1, 3, 25, 121}) {
    auto h = FirFilter(testutil::random_taps(gen, (m + 1) / 2));
    auto g = autocorrelation(h);
    FrequencyGrid grid(4096);
    CHECK(kernels::amplitude_response(g, grid.omega) ==
          kernels::amplitude_response_serial(g, grid.omega));
  }
}

TEST_CASE("magnitude kernel: omp output is identical to serial") {
  std::mt19937 gen(809);
  for (int m : {1, 2, 17, 64}) {
    FirFilter h(testutil::random_taps(gen, m));
    FrequencyGrid grid(2048);
    CHECK(kernels::magnitude_response(h, grid.omega) ==
          kernels::magnitude_response_serial(h, grid.omega));
  }
}

TEST_CASE("signal filtering kernel: omp output is identical to serial") {
  std::mt19937 gen(810);
  auto taps = testutil::random_taps(gen, 33);
  auto signal = testutil::random_taps(gen, 100000);
  CHECK(kernels::filter_signal(taps, signal) ==
        kernels::filter_signal_serial(taps, signal));

  // degenerate: signal shorter than the filter
  CHECK(kernels::filter_signal(taps, {1.0, 2.0}).empty());
}

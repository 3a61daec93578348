// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each check pins its tolerance in code.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "minphase/fir.hpp"
#include "minphase/gramian.hpp"
#include "minphase/kernels.hpp"
#include "minphase/lifting.hpp"
#include "minphase/orchard_wilson.hpp"
#include "minphase/tap_io.hpp"
#include "minphase/transform.hpp"
#include "minphase/zeros.hpp"
#include "test_util.hpp"

using namespace minphase;
using testutil::data_path;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void criterion1_gamma_psd() {
  auto g5 = read_prototype(data_path("table1_g.txt"));
  auto g25 = read_prototype(data_path("table2_g.txt"));
  const double m1 = measure_gamma_psd(g5);
  const double m2 = measure_gamma_psd(g25);
  const double d1 = std::abs(m1 - testutil::kGammaPsdSmall);
  const double d2 = std::abs(m2 - testutil::kGammaPsdLarge);
  report(1, d1 < 1e-12 && d2 < 1e-12, "gamma_psd reproduction on both prototypes",
         "deviations " + fmt(d1) + " and " + fmt(d2) + ", tolerance 1e-12");
}

void criterion2_tap_reproduction() {
  auto g = read_prototype(data_path("table2_g.txt"));
  auto result = design_minphase(g, 250, {}, testutil::kEpsilonLarge);
  const double dc = testutil::max_abs_diff(result.filter.taps, testutil::kOptimalC);

  const double gamma = result.lift.gamma_psd + testutil::kEpsilonLarge;
  auto lifted = lift_and_scale(g, gamma, result.lift.scale);
  auto seed = extract_minphase(cholesky(build_gramian(lifted, 250, 0.0)), 13);
  const double da = testutil::max_abs_diff(seed.taps, testutil::kApproxC);

  report(2, dc <= 1e-8 && da <= 1e-10,
         "published tap reproduction at the documented operating point",
         "refined taps off by " + fmt(dc) + " (tolerance 1e-8), seed taps off by " +
             fmt(da) + " (tolerance 1e-10); limited by the 15-decimal prototype "
             "fixture and an unstated seed construction detail");
}

void criterion3_residual_floor() {
  auto g = read_prototype(data_path("table2_g.txt"));
  auto result = design_minphase(g, 250, {}, testutil::kEpsilonLarge);
  report(3, result.residual.e_l2 <= 1e-14, "refined residual floor",
         "E_L2 = " + fmt(result.residual.e_l2) + ", tolerance 1e-14");
}

void criterion4_waterfall() {
  auto g = read_prototype(data_path("table2_g.txt"));
  auto curve = waterfall_sweep(g, {-1e-8, testutil::kEpsilonLarge}, 250);
  const double below = curve[0].e_l2;
  const double above = curve[1].e_l2;
  report(4, below >= 1e-9 && above <= 1e-14, "waterfall drop across gamma_psd",
         "E_L2 " + fmt(below) + " at offset -1e-8 vs " + fmt(above) +
             " at +1.16e-13 (>= 5 orders)");
}

void criterion5_eigenvalue_ripple() {
  auto g = read_prototype(data_path("table1_g.txt"));
  const double gamma_psd = measure_gamma_psd(g);
  const double gap500 =
      std::abs(std::abs(min_eigenvalue(build_gramian(g, 500, 0.0))) - gamma_psd);
  const double gap50 =
      std::abs(std::abs(min_eigenvalue(build_gramian(g, 50, 0.0))) - gamma_psd);
  report(5, gap500 < 1e-6 && gap500 < gap50,
         "minimum eigenvalue converges to the ripple peak",
         "gap " + fmt(gap500) + " at Q=500 (tolerance 1e-6), " + fmt(gap50) +
             " at Q=50");
}

double isometry_error(const FirFilter& h, int padding) {
  AllPassOperator f(h, padding);
  const int d = f.rows();
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) rows.push_back(f.row(i));
  double worst = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double acc = 0;
      for (int k = 0; k < f.cols(); ++k)
        acc += rows[static_cast<size_t>(i)][static_cast<size_t>(k)] *
               rows[static_cast<size_t>(j)][static_cast<size_t>(k)];
      worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

void criterion6_allpass() {
  const double e1 = isometry_error(FirFilter({3.0, 1.0}), 100);
  const double e2 =
      isometry_error(read_fir(data_path("rand10_seed42.txt")), 100);

  // seeded white noise through the symmetry-row prefilter
  AllPassOperator f(FirFilter({3.0, 1.0}), 100);
  const auto taps = f.prefilter();
  std::mt19937 gen(12345);
  const size_t n = 1'000'000;
  std::vector<double> noise(n);
  for (size_t i = 0; i < n; i += 2) {
    const double u1 = (gen() + 1.0) / 4294967297.0;
    const double u2 = (gen() + 1.0) / 4294967297.0;
    const double r = std::sqrt(-2.0 * std::log(u1));
    noise[i] = r * std::cos(2.0 * std::numbers::pi * u2);
    if (i + 1 < n) noise[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
  }
  const auto filtered = kernels::filter_signal(taps, noise);
  double mean = 0;
  for (double v : filtered) mean += v;
  mean /= static_cast<double>(filtered.size());
  double var = 0;
  for (double v : filtered) var += (v - mean) * (v - mean);
  var /= static_cast<double>(filtered.size() - 1);

  report(6, e1 <= 1e-10 && e2 <= 1e-10 && std::abs(var - 1.0) < 5e-3,
         "all-pass operator: isometry and unit noise variance",
         "||F F^T - I||max " + fmt(e1) + " and " + fmt(e2) +
             " (tolerance 1e-10); sample variance " + fmt(var) +
             " (tolerance 5e-3)");
}

void criterion7_transform() {
  auto h = read_fir(data_path("rand10_seed42.txt"));
  auto r = transform(h);
  const double zmax = max_zero_modulus(r.minphase);
  const auto pc = energy_concentration(r.minphase);
  const auto ph = energy_concentration(h);
  bool dominated = true;
  for (size_t k = 0; k < pc.size(); ++k)
    if (pc[k] < ph[k] - 1e-12) dominated = false;
  report(7,
         r.residual.e_l2 <= 1e-14 && zmax <= 1.0 + 1e-8 &&
             r.spectral_error <= 1e-10 && dominated,
         "transform correctness on the pinned 10-tap fixture",
         "E_L2 = " + fmt(r.residual.e_l2) + ", max|z| = " + fmt(zmax) +
             ", spectral error " + fmt(r.spectral_error) +
             ", energy dominance " + (dominated ? "holds" : "fails"));
}

void criterion8_mmse_gap() {
  auto h = read_fir(data_path("rand10_seed42.txt"));
  auto fact = transform(h);
  auto mmse = mmse_transform(h, {100, 1e-4});
  const double ratio = mmse.residual.e_l2 / fact.residual.e_l2;
  report(8, ratio >= 1e6, "MMSE residual gap",
         "MMSE E_L2 = " + fmt(mmse.residual.e_l2) + " vs factorization " +
             fmt(fact.residual.e_l2) + ", ratio " + fmt(ratio) +
             " (threshold 1e6)");
}

void criterion9_oracles() {
  std::mt19937 gen(20240);
  double worst_recovery = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + static_cast<int>((gen() / 4294967296.0) * 9);  // M <= 10
    auto h = testutil::random_minphase(gen, m, 0.95);
    if (h.taps[0] < 0)
      for (double& v : h.taps) v = -v;
    auto r = transform(h);
    worst_recovery =
        std::max(worst_recovery, testutil::max_abs_diff(r.minphase.taps, h.taps));
  }

  double worst_fd = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>((gen() / 4294967296.0) * 9);
    FirFilter c(testutil::random_taps(gen, m));
    const auto j = jacobian(c);
    auto lag_at = [&](const std::vector<double>& taps, int k) {
      double acc = 0;
      for (int n = 0; n + k < m; ++n)
        acc += taps[static_cast<size_t>(n)] * taps[static_cast<size_t>(n + k)];
      return acc;
    };
    for (int k = 0; k < m; ++k)
      for (int col = 0; col < m; ++col) {
        auto up = c.taps, dn = c.taps;
        up[static_cast<size_t>(col)] += 1e-6;
        dn[static_cast<size_t>(col)] -= 1e-6;
        const double fd = (lag_at(up, k) - lag_at(dn, k)) / 2e-6;
        worst_fd = std::max(worst_fd,
                            std::abs(fd - j[static_cast<size_t>(k) * m + col]));
      }
  }
  report(9, worst_recovery <= 1e-9 && worst_fd <= 1e-7,
         "randomized oracle equivalence",
         "worst transform recovery " + fmt(worst_recovery) +
             " (tolerance 1e-9) over 100 filters; worst Jacobian-vs-FD " +
             fmt(worst_fd) + " (tolerance 1e-7) over 50");
}

}  // namespace

int main() {
  criterion1_gamma_psd();
  criterion2_tap_reproduction();
  criterion3_residual_floor();
  criterion4_waterfall();
  criterion5_eigenvalue_ripple();
  criterion6_allpass();
  criterion7_transform();
  criterion8_mmse_gap();
  criterion9_oracles();
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}

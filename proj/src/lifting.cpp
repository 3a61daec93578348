#include "minphase/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "minphase/gramian.hpp"
#include "minphase/kernels.hpp"

namespace minphase {

int default_padding(int tap_count) { return 10 * tap_count; }

LinearPhaseRipples convert_ripples(const DesignSpec& spec) {
  const double dp = spec.passband_ripple;
  const double da = spec.stopband_ripple;
  if (!(0 < da && da < dp && dp < 1))
    throw std::invalid_argument("ripples must satisfy 0 < delta_a < delta_p < 1");
  if (!(0 < spec.passband_edge && spec.passband_edge < spec.stopband_edge &&
        spec.stopband_edge < std::numbers::pi))
    throw std::invalid_argument("band edges must satisfy 0 < Wp < Ws < pi");
  const double k = 2.0 + 2.0 * dp * dp - da * da;
  return {4.0 * dp / k, da * da / k};
}

double measure_gamma_psd(const LinearPhasePrototype& g, int grid_count) {
  const auto ext = minimum_amplitude(g, grid_count);
  return ext.value < 0 ? -ext.value : 0.0;
}

double equiripple_scale(const LinearPhasePrototype& g, double gamma_psd,
                        int grid_count) {
  (void)grid_count;
  if (gamma_psd <= 0) return 1.0;
  const double a0 = amplitude_at(g, 0.0);
  const double ripple_p = 1.0 - a0;  // realized passband deviation at DC
  const double ripple_a = gamma_psd;
  if (!(ripple_p > 0 && ripple_p < 0.5) || !(ripple_a < ripple_p)) return 1.0;

  // Invert the ripple conversion: find (dp, da) with
  //   ripple_p = 4 dp / K,  ripple_a = da^2 / K,  K = 2 + 2 dp^2 - da^2.
  double dp = ripple_p / 2.0;
  double da2 = 2.0 * ripple_a;
  double k = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double k_new = 2.0 + 2.0 * dp * dp - da2;
    dp = ripple_p * k_new / 4.0;
    da2 = ripple_a * k_new;
    if (k_new == k) break;
    k = k_new;
  }
  return k / 2.0;
}

LinearPhasePrototype lift_and_scale(const LinearPhasePrototype& g, double gamma,
                                    double s) {
  std::vector<double> taps = g.taps;
  taps[static_cast<size_t>(g.center())] += gamma;
  for (double& t : taps) t *= s;
  LinearPhasePrototype out;
  out.taps = std::move(taps);  // symmetry preserved exactly
  return out;
}

namespace {

struct PointOutcome {
  double e_l2 = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool seeded = false;  // Cholesky seed succeeded
  FirFilter filter;
};

FirFilter impulse_seed(const LinearPhasePrototype& lifted) {
  // e_0-matching fallback: [sqrt(t0), 0, ..., 0]
  const int m = lifted.center() + 1;
  std::vector<double> c(static_cast<size_t>(m), 0.0);
  c[0] = std::sqrt(std::max(lifted.lag(0), 0.0));
  return FirFilter(std::move(c));
}

PointOutcome run_point(const LinearPhasePrototype& g, double gamma_psd,
                       double offset, int padding, const SolverConfig& cfg,
                       const FirFilter* fallback_seed) {
  PointOutcome out;
  const double gamma = gamma_psd + offset;
  if (g.lag(0) + gamma <= 0) return out;  // unliftable point, keep +inf sentinel
  const double s = equiripple_scale(g, gamma_psd);
  const auto lifted = lift_and_scale(g, gamma, s);
  const int taps = lifted.center() + 1;

  FirFilter seed;
  try {
    seed = extract_minphase(cholesky(build_gramian(lifted, padding, 0.0)), taps);
    out.seeded = true;
  } catch (const NotPositiveDefinite&) {
    seed = fallback_seed ? *fallback_seed : impulse_seed(lifted);
  }
  try {
    auto res = refine(seed, lifted, cfg);
    out.filter = std::move(res.filter);
    out.e_l2 = res.report.e_l2;
    out.converged = res.report.converged;
  } catch (const NonConvergence& nc) {
    out.filter = nc.result.filter;
    out.e_l2 = nc.result.report.e_l2;
    out.converged = false;
  }
  return out;
}

}  // namespace

std::vector<WaterfallPoint> waterfall_sweep(const LinearPhasePrototype& g,
                                            const std::vector<double>& offsets,
                                            int padding, const SolverConfig& cfg) {
  const double gamma_psd = measure_gamma_psd(g);
  const int n = static_cast<int>(offsets.size());
  std::vector<PointOutcome> outcomes(static_cast<size_t>(n));

  // First pass: every point independently (parallel, deterministic per point).
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i)
    outcomes[static_cast<size_t>(i)] =
        run_point(g, gamma_psd, offsets[static_cast<size_t>(i)], padding, cfg, nullptr);

  // Second pass: points whose Cholesky seed failed fall back to the nearest
  // earlier seeded point's refined filter (input order), then re-refine.
  for (int i = 0; i < n; ++i) {
    if (outcomes[static_cast<size_t>(i)].seeded) continue;
    const FirFilter* fb = nullptr;
    for (int j = i - 1; j >= 0; --j) {
      if (outcomes[static_cast<size_t>(j)].seeded &&
          outcomes[static_cast<size_t>(j)].filter.length() > 0) {
        fb = &outcomes[static_cast<size_t>(j)].filter;
        break;
      }
    }
    if (fb != nullptr)
      outcomes[static_cast<size_t>(i)] =
          run_point(g, gamma_psd, offsets[static_cast<size_t>(i)], padding, cfg, fb);
  }

  std::vector<WaterfallPoint> curve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& oc = outcomes[static_cast<size_t>(i)];
    curve[static_cast<size_t>(i)] = {gamma_psd + offsets[static_cast<size_t>(i)],
                                     offsets[static_cast<size_t>(i)], oc.e_l2,
                                     oc.converged};
  }
  return curve;
}

DesignResult design_minphase(const LinearPhasePrototype& g, int padding,
                             const SolverConfig& cfg,
                             std::optional<double> epsilon) {
  if (padding <= 0) padding = default_padding(g.length());
  const double gamma_psd = measure_gamma_psd(g);

  DesignResult result;
  result.lift.gamma_psd = gamma_psd;

  auto attempt = [&](double eps) {
    const double gamma = gamma_psd + eps;
    const double s = equiripple_scale(g, gamma_psd);
    const auto lifted = lift_and_scale(g, gamma, s);
    const int taps = lifted.center() + 1;
    auto seed = extract_minphase(cholesky(build_gramian(lifted, padding, 0.0)), taps);
    auto refined = refine(seed, lifted, cfg);
    return std::tuple<FirFilter, ResidualReport, double>(
        std::move(refined.filter), std::move(refined.report), s);
  };

  if (gamma_psd == 0.0) {
    // already positive (semi)definite: no lifting, unit scale
    auto [c, rep, s] = attempt(0.0);
    result.filter = std::move(c);
    result.residual = std::move(rep);
    result.lift.gamma_final = gamma_psd;
    result.lift.epsilon = 0.0;
    result.lift.scale = s;
    result.lift.curve.push_back({0.0, 0.0, result.residual.e_l2, result.residual.converged});
    return result;
  }

  if (epsilon.has_value()) {
    const double eps = *epsilon;
    try {
      auto [c, rep, s] = attempt(eps);
      if (rep.e_l2 > 1e-12)
        throw DesignFailure("residual stayed above 1e-12 at the requested lift");
      result.filter = std::move(c);
      result.residual = std::move(rep);
      result.lift.gamma_final = gamma_psd + eps;
      result.lift.epsilon = eps;
      result.lift.scale = equiripple_scale(g, gamma_psd);
      result.lift.curve.push_back(
          {result.lift.gamma_final, eps, result.residual.e_l2, result.residual.converged});
      return result;
    } catch (const NonConvergence& nc) {
      throw DesignFailure("refinement did not converge at the requested lift (E_L2 = " +
                          std::to_string(nc.result.report.e_l2) + ")");
    }
  }

  // Automatic offset: bisect on log(offset) over [1e-16, 1e-6]*gamma_psd for
  // the smallest lift whose refined residual reaches the 1e-14 floor.
  const double lo_floor = 1e-16 * gamma_psd;
  const double hi_ceil = 1e-6 * gamma_psd;
  const double target = 1e-14;

  auto probe = [&](double eps) -> std::tuple<bool, FirFilter, ResidualReport> {
    try {
      auto [c, rep, s] = attempt(eps);
      (void)s;
      const bool ok = rep.e_l2 <= target;
      result.lift.curve.push_back({gamma_psd + eps, eps, rep.e_l2, rep.converged});
      return {ok, std::move(c), std::move(rep)};
    } catch (const NotPositiveDefinite&) {
      result.lift.curve.push_back(
          {gamma_psd + eps, eps, std::numeric_limits<double>::infinity(), false});
      return {false, FirFilter(), ResidualReport()};
    } catch (const NonConvergence& nc) {
      result.lift.curve.push_back({gamma_psd + eps, eps, nc.result.report.e_l2, false});
      return {false, FirFilter(), ResidualReport()};
    }
  };

  auto [hi_ok, hi_c, hi_rep] = probe(hi_ceil);
  if (!hi_ok)
    throw DesignFailure("no lift offset in [1e-16, 1e-6]*gamma_psd reaches E_L2 <= 1e-14");
  FirFilter best_c = std::move(hi_c);
  ResidualReport best_rep = std::move(hi_rep);
  double best_eps = hi_ceil;

  double lo = std::log(lo_floor);
  double hi = std::log(hi_ceil);
  for (int i = 0; i < 40; ++i) {
    const double mid = std::exp(0.5 * (lo + hi));
    auto [ok, c, rep] = probe(mid);
    if (ok) {
      best_c = std::move(c);
      best_rep = std::move(rep);
      best_eps = mid;
      hi = std::log(mid);
    } else {
      lo = std::log(mid);
    }
  }

  result.filter = std::move(best_c);
  result.residual = std::move(best_rep);
  result.lift.gamma_final = gamma_psd + best_eps;
  result.lift.epsilon = best_eps;
  result.lift.scale = equiripple_scale(g, gamma_psd);
  return result;
}

}  // namespace minphase

#pragma once

#include <optional>
#include <vector>

#include "minphase/fir.hpp"
#include "minphase/orchard_wilson.hpp"

namespace minphase {

/// Minimum-phase Chebyshev target: passband/stopband ripples (linear units)
/// and band edges in (0, pi).
struct DesignSpec {
  double passband_ripple;   // delta_p
  double stopband_ripple;   // delta_a
  double passband_edge;     // Omega_p
  double stopband_edge;     // Omega_s
};

struct LinearPhaseRipples {
  double passband;  // Delta_p
  double stopband;  // Delta_a
};

/// Delta_p = 4 dp / (2 + 2 dp^2 - da^2), Delta_a = da^2 / (2 + 2 dp^2 - da^2).
LinearPhaseRipples convert_ripples(const DesignSpec& spec);

/// Magnitude of the most negative amplitude value, located by dense-grid scan
/// plus parabolic refinement; 0 when the amplitude is nonnegative everywhere.
double measure_gamma_psd(const LinearPhasePrototype& g,
                         int grid_count = kDefaultGridCount);

/// Scale restoring unit equiripple passband gain to the factored magnitude.
/// The realized linear-phase ripples are measured from the taps themselves
/// (passband deviation 1 - A(0), stopband peak gamma_psd), the equivalent
/// minimum-phase ripples (dp, da) are recovered by fixed-point inversion of
/// the ripple conversion, and the scale is s = (2 + 2 dp^2 - da^2)/2 so that
/// s*(A + gamma) traces |C|^2 with passband extrema (1 +- dp)^2. Prototypes
/// without a measurable ripple structure (A(0) outside (0.5, 1), or already
/// nonnegative) get s = 1.
double equiripple_scale(const LinearPhasePrototype& g, double gamma_psd,
                        int grid_count = kDefaultGridCount);

/// Lift the center tap by gamma and scale every tap by s.
LinearPhasePrototype lift_and_scale(const LinearPhasePrototype& g, double gamma,
                                    double s);

struct WaterfallPoint {
  double gamma;
  double offset;  // gamma - gamma_psd
  double e_l2;
  bool converged;
};

/// For each offset: lift by gamma_psd + offset, scale, seed from the
/// symmetry-point Cholesky column (falling back to the nearest earlier
/// successful point's refined filter, or an energy-matched impulse, when the
/// factorization is not positive definite), refine, and record E_L2.
/// Output order matches input order; points are evaluated in parallel.
std::vector<WaterfallPoint> waterfall_sweep(const LinearPhasePrototype& g,
                                            const std::vector<double>& offsets,
                                            int padding,
                                            const SolverConfig& cfg = {});

struct LiftReport {
  double gamma_psd = 0;
  double gamma_final = 0;
  double epsilon = 0;  // gamma_final - gamma_psd
  double scale = 1;
  std::vector<WaterfallPoint> curve;
};

struct DesignResult {
  FirFilter filter;
  LiftReport lift;
  ResidualReport residual;
};

/// End-to-end design: measure gamma_psd, lift by gamma_psd + epsilon, scale,
/// factor, refine. With epsilon unset, bisect the offset on
/// [1e-16*gamma_psd, 1e-6*gamma_psd] (log scale, 40 steps) for the smallest
/// value whose refined E_L2 <= 1e-14. Throws DesignFailure when no offset in
/// range reaches the residual target.
DesignResult design_minphase(const LinearPhasePrototype& g, int padding,
                             const SolverConfig& cfg = {},
                             std::optional<double> epsilon = std::nullopt);

/// Default padding: ten times the tap count of the input.
int default_padding(int tap_count);

}  // namespace minphase

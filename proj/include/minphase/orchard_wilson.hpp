#pragma once

#include <vector>

#include "minphase/fir.hpp"

namespace minphase {

/// Residual of the lag system: e_k = sum_n c[n] c[n+k] - g_adj.lag(k).
struct ResidualReport {
  std::vector<double> residual;  // e
  double e_l2 = 0;               // sqrt(e^T e), exactly as computed from e
  int iterations = 0;
  bool converged = true;

  struct TraceEntry {
    int iteration;
    double damping;
    double e_l2;
    double step;  // line-search multiplier applied to the damped step
    bool accepted;
  };
  std::vector<TraceEntry> trace;
};

struct SolverConfig {
  int max_iterations = 200;
  double gradient_tolerance = 1e-16;  // on ||J^T e||_inf
  double step_tolerance = 1e-16;      // on ||delta||_inf
  // The exact line search guarantees descent along the solved direction, so
  // damping starts at zero and only kicks in after a rejected step. A
  // positive initial value over-damps the near-singular directions of
  // barely-lifted designs and strands the iterate near a mixed-phase
  // stationary point.
  double initial_damping = 0.0;
  bool newton_polish = false;  // one exact-Hessian Newton step after L-M
};

ResidualReport residual(const FirFilter& c, const LinearPhasePrototype& g_adj);

/// J[k][j] = d e_k / d c_j = c[j+k] (j+k < M) + c[j-k] (j >= k), row-major.
std::vector<double> jacobian(const FirFilter& c);

struct RefineResult {
  FirFilter filter;
  ResidualReport report;
};

/// Thrown when refine exhausts max_iterations with E_L2 still above 1e-12,
/// which signals a lift below the waterfall point. Carries the best iterate.
struct NonConvergence : std::runtime_error {
  explicit NonConvergence(RefineResult r);
  RefineResult result;
};

/// Damped Gauss-Newton refinement of the lag system. Each iteration solves
/// (J^T J + lambda I) delta = -J^T e through a QR factorization of the
/// stacked [J; sqrt(lambda) I] system, then minimizes the exact quartic
/// E(c + a*delta) over a (the residual is exactly quadratic in the taps, so
/// the 1-D objective is a polynomial with closed-form coefficients). Steps
/// accept on decrease (lambda /= 10) and reject otherwise (lambda *= 10).
/// Deterministic: identical inputs produce bitwise-identical traces.
RefineResult refine(const FirFilter& c0, const LinearPhasePrototype& g_adj,
                    const SolverConfig& cfg = {});

/// True iff residual(c, g_adj).e_l2 <= tol (taps are real by construction).
bool verify_definition(const FirFilter& c, const LinearPhasePrototype& g_adj,
                       double tol);

}  // namespace minphase

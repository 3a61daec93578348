#pragma once

#include <vector>

#include "minphase/errors.hpp"
#include "minphase/fir.hpp"

namespace minphase {

/// Banded symmetric Toeplitz matrix G_adj = Toeplitz(g) + gamma*I of
/// dimension D = 2Q + M, stored as the half-band plus the lift. The dense
/// matrix is never materialized outside tests.
struct GramianSystem {
  LinearPhasePrototype prototype;
  int padding = 0;   // Q
  double lift = 0;   // gamma

  int bandwidth() const { return prototype.center(); }
  int dimension() const { return 2 * padding + prototype.length(); }

  /// band()[k] = k-th off-diagonal value; band()[0] includes the lift.
  std::vector<double> band() const;
};

GramianSystem build_gramian(const LinearPhasePrototype& g, int padding,
                            double lift);

/// Smallest eigenvalue via inertia (Sturm) counts from banded LDL^T,
/// bisected from a Gershgorin bracket down to 1e-14 interval width.
double min_eigenvalue(const GramianSystem& sys);

/// Upper-triangular banded factor C with C^T C = G_adj, positive diagonal.
struct BandedCholesky {
  int dim = 0;
  int bandwidth = 0;
  std::vector<double> rows;  // rows[i*(bw+1)+k] = C[i, i+k]

  double at(int i, int j) const;  // dense accessor (zero off band)
  double entry(int i, int k) const { return rows[static_cast<size_t>(i) * (bandwidth + 1) + k]; }
};

/// Row-wise banded Cholesky. Throws NotPositiveDefinite on a pivot <= 0.
BandedCholesky cholesky(const GramianSystem& sys);

/// Same factorization for an arbitrary banded symmetric matrix given by rows
/// of half-band values (rows[i][k] = A[i, i+k]). Used by tests.
BandedCholesky cholesky_banded(const std::vector<double>& half_rows, int dim,
                               int bandwidth);

/// Read the approximate minimum-phase factor from the symmetry-point column
/// j* = Q + M - 1 (0-based): c[k] = C[j*-k, j*]. Requires padding >= taps.
FirFilter extract_minphase(const BandedCholesky& factor, int taps);

/// The unitary transformation F = (C^T)^{-1} A^T where C factors the Gramian
/// of h at gamma = 0 and A is the tall (D+M-1) x D convolution matrix of h.
/// A^T A equals the banded Toeplitz Gramian exactly, which makes F an exact
/// isometry (F F^T = I to rounding) at any finite padding. Rows are realized
/// on demand by one triangular solve against C plus one banded product.
class AllPassOperator {
 public:
  AllPassOperator(const FirFilter& h, int padding);

  int rows() const { return factor_.dim; }          // D
  int cols() const { return factor_.dim + h_.length() - 1; }

  /// Row i of F.
  std::vector<double> row(int i) const;

  /// Anti-causal prefilter f read from the symmetry row j* = Q + M - 1:
  /// f[j] = F[j*, j* + M - 1 - j]. Applying c[n] = sum_j f[j] h[n+j]
  /// reproduces the minimum-phase factor.
  std::vector<double> prefilter() const;

  int symmetry_row() const { return sym_; }
  const BandedCholesky& factor() const { return factor_; }

 private:
  FirFilter h_;
  int padding_;
  int sym_;
  BandedCholesky factor_;
};

AllPassOperator build_allpass(const FirFilter& h, int padding);

}  // namespace minphase

#include "minphase/zeros.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace minphase {

std::vector<std::complex<double>> zeros(const FirFilter& h) {
  const int m = h.length();
  if (m < 2 || m > 64)
    throw std::invalid_argument("zeros(): tap count must be in [2, 64]");
  bool all_zero = true;
  for (double t : h.taps)
    if (t != 0.0) { all_zero = false; break; }
  if (all_zero) throw std::invalid_argument("zeros(): degenerate all-zero filter");
  if (h[0] == 0.0) throw std::invalid_argument("zeros(): leading tap must be nonzero");

  // roots of h[0] z^{M-1} + h[1] z^{M-2} + ... + h[M-1]
  const int n = m - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(0, i) = -h[i + 1] / h[0];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()[i];
  return out;
}

double max_zero_modulus(const FirFilter& h) {
  if (h.length() < 2) return 0.0;
  double r = 0;
  for (const auto& z : zeros(h)) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace minphase

#include "minphase/transform.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "minphase/gramian.hpp"
#include "minphase/kernels.hpp"
#include "minphase/lifting.hpp"

namespace minphase {

double spectral_equality_check(const FirFilter& h, const FirFilter& c,
                               const FrequencyGrid& grid) {
  if (h.length() != c.length())
    throw std::invalid_argument("spectral_equality_check: lengths differ");
  const auto mh = kernels::magnitude_response(h, grid.omega);
  const auto mc = kernels::magnitude_response(c, grid.omega);
  double worst = 0;
  for (size_t i = 0; i < mh.size(); ++i)
    worst = std::max(worst, std::abs(mc[i] - mh[i]));
  return worst;
}

TransformResult transform(const FirFilter& h, int padding) {
  if (padding <= 0) padding = default_padding(h.length());
  const auto g = autocorrelation(h);
  const int taps = h.length();

  // gamma = 0: the matched-filter prototype of a filter without unit-circle
  // zeros is already positive definite.
  const auto factor = cholesky(build_gramian(g, padding, 0.0));
  auto seed = extract_minphase(factor, taps);
  auto refined = refine(seed, g);

  TransformResult out;
  out.minphase = std::move(refined.filter);
  out.residual = std::move(refined.report);
  out.prefilter = AllPassOperator(h, padding).prefilter();
  out.spectral_error =
      spectral_equality_check(h, out.minphase, FrequencyGrid(kDefaultGridCount));
  return out;
}

TransformResult mmse_transform(const FirFilter& h, const MmseConfig& cfg) {
  const int m = h.length();
  const int p1 = cfg.feedforward_length > 0 ? cfg.feedforward_length
                                            : default_padding(m);
  if (p1 < m)
    throw std::invalid_argument("mmse_transform: feedforward length must be >= len(h)");
  if (cfg.noise_variance < 0)
    throw std::invalid_argument("mmse_transform: noise variance must be >= 0");
  const auto g = autocorrelation(h);

  // Observation correlations R_y[i][j] = r_h(i-j) + sigma^2 [i==j] and
  // cross-correlations P[i][l] = E[y[n+i] s[n-l]] = h[i+l].
  Eigen::MatrixXd ry(p1, p1);
  for (int i = 0; i < p1; ++i)
    for (int j = 0; j < p1; ++j) {
      const int d = std::abs(i - j);
      ry(i, j) = (d < m ? g.lag(d) : 0.0) + (i == j ? cfg.noise_variance : 0.0);
    }
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(p1, m);
  for (int i = 0; i < p1; ++i)
    for (int l = 0; l < m; ++l)
      if (i + l < m) cross(i, l) = h[i + l];

  Eigen::LLT<Eigen::MatrixXd> ry_llt(ry);
  if (ry_llt.info() != Eigen::Success)
    throw std::runtime_error("mmse_transform: singular normal equations (noise variance too small)");

  // Minimize E|f*y - c*s|^2 = c^T (I - P^T Ry^{-1} P) c over monic c,
  // then f = Ry^{-1} P c.
  Eigen::MatrixXd bias = Eigen::MatrixXd::Identity(m, m) -
                         cross.transpose() * ry_llt.solve(cross);
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(m);
  e0(0) = 1.0;
  Eigen::VectorXd x = bias.fullPivLu().solve(e0);
  if (!(x.array().isFinite().all()) || x(0) == 0.0)
    throw std::runtime_error("mmse_transform: singular normal equations");
  Eigen::VectorXd c_monic = x / x(0);
  Eigen::VectorXd f = ry_llt.solve(cross * c_monic);

  // c = causal truncation of the combined response q[t] = sum_j f[j] h[t+j],
  // rescaled to ||c||^2 = r_h(0).
  std::vector<double> q(static_cast<size_t>(m), 0.0);
  for (int t = 0; t < m; ++t) {
    double acc = 0;
    for (int j = 0; j + t < m && j < p1; ++j) acc += f(j) * h[t + j];
    q[static_cast<size_t>(t)] = acc;
  }
  double qq = 0;
  for (double v : q) qq += v * v;
  if (qq == 0) throw std::runtime_error("mmse_transform: degenerate feedforward solution");
  double scale = std::sqrt(g.lag(0) / qq);
  if (q[0] < 0) scale = -scale;
  for (double& v : q) v *= scale;

  TransformResult out;
  out.minphase = FirFilter(std::move(q));
  out.residual = residual(out.minphase, g);
  out.prefilter.assign(f.data(), f.data() + p1);
  out.spectral_error =
      spectral_equality_check(h, out.minphase, FrequencyGrid(kDefaultGridCount));
  return out;
}

}  // namespace minphase

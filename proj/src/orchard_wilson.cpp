#include "minphase/orchard_wilson.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace minphase {

NonConvergence::NonConvergence(RefineResult r)
    : std::runtime_error("refinement did not reach the residual floor (E_L2 = " +
                         std::to_string(r.report.e_l2) + ")"),
      result(std::move(r)) {}

namespace {

std::vector<double> lag_products(const std::vector<double>& c) {
  const int m = static_cast<int>(c.size());
  std::vector<double> out(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    double acc = 0;
    for (int n = 0; n + k < m; ++n) acc += c[static_cast<size_t>(n)] * c[static_cast<size_t>(n + k)];
    out[static_cast<size_t>(k)] = acc;
  }
  return out;
}

double norm2(const std::vector<double>& v) {
  double acc = 0;
  for (double x : v) acc += x * x;
  return acc;
}

// Real roots of a3 x^3 + a2 x^2 + a1 x + a0 (trigonometric/Cardano form).
int cubic_real_roots(double a3, double a2, double a1, double a0, double out[3]) {
  if (a3 == 0.0) {
    if (a2 == 0.0) {
      if (a1 == 0.0) return 0;
      out[0] = -a0 / a1;
      return 1;
    }
    const double disc = a1 * a1 - 4 * a2 * a0;
    if (disc < 0) return 0;
    const double s = std::sqrt(disc);
    out[0] = (-a1 + s) / (2 * a2);
    out[1] = (-a1 - s) / (2 * a2);
    return 2;
  }
  const double b = a2 / a3, c = a1 / a3, d = a0 / a3;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + s);
    const double v = std::cbrt(-q / 2.0 - s);
    out[0] = u + v + shift;
    return 1;
  }
  if (p == 0.0) {
    out[0] = shift;
    return 1;
  }
  const double r = std::sqrt(-p * p * p / 27.0);
  const double phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
  const double mag = 2.0 * std::sqrt(-p / 3.0);
  for (int k = 0; k < 3; ++k)
    out[k] = mag * std::cos((phi + 2.0 * std::numbers::pi * k) / 3.0) + shift;
  return 3;
}

}  // namespace

ResidualReport residual(const FirFilter& c, const LinearPhasePrototype& g_adj) {
  const int m = c.length();
  if (g_adj.length() != 2 * m - 1)
    throw std::invalid_argument("residual: prototype length must be 2*len(c)-1");
  ResidualReport rep;
  rep.residual = lag_products(c.taps);
  for (int k = 0; k < m; ++k) rep.residual[static_cast<size_t>(k)] -= g_adj.lag(k);
  rep.e_l2 = std::sqrt(norm2(rep.residual));
  rep.iterations = 0;
  return rep;
}

std::vector<double> jacobian(const FirFilter& c) {
  const int m = c.length();
  std::vector<double> j(static_cast<size_t>(m) * m, 0.0);
  for (int k = 0; k < m; ++k)
    for (int col = 0; col < m; ++col) {
      double v = 0;
      if (col + k <= m - 1) v += c[col + k];
      if (col - k >= 0) v += c[col - k];
      j[static_cast<size_t>(k) * m + col] = v;
    }
  return j;
}

RefineResult refine(const FirFilter& c0, const LinearPhasePrototype& g_adj,
                    const SolverConfig& cfg) {
  const int m = c0.length();
  if (g_adj.length() != 2 * m - 1)
    throw std::invalid_argument("refine: prototype length must be 2*len(c0)-1");

  std::vector<double> target(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) target[static_cast<size_t>(k)] = g_adj.lag(k);

  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(c0.taps.data(), m);
  auto eval_residual = [&](const Eigen::VectorXd& x) {
    std::vector<double> xs(x.data(), x.data() + m);
    auto lp = lag_products(xs);
    Eigen::VectorXd e(m);
    for (int k = 0; k < m; ++k) e[k] = lp[static_cast<size_t>(k)] - target[static_cast<size_t>(k)];
    return e;
  };

  Eigen::VectorXd e = eval_residual(c);
  double energy = e.squaredNorm();
  double lambda = cfg.initial_damping;

  ResidualReport rep;
  rep.converged = false;
  int it = 0;
  for (it = 1; it <= cfg.max_iterations; ++it) {
    // Jacobian at c
    Eigen::MatrixXd J(m, m);
    {
      std::vector<double> cs(c.data(), c.data() + m);
      const auto jv = jacobian(FirFilter(cs));
      for (int r = 0; r < m; ++r)
        for (int cc = 0; cc < m; ++cc) J(r, cc) = jv[static_cast<size_t>(r) * m + cc];
    }
    Eigen::VectorXd grad = J.transpose() * e;
    if (grad.lpNorm<Eigen::Infinity>() < cfg.gradient_tolerance) {
      rep.converged = true;
      break;
    }

    // (J^T J + lambda I) delta = -J^T e via QR of the stacked system; at
    // lambda = 0 this is the plain Gauss-Newton least-squares direction.
    Eigen::VectorXd delta;
    if (lambda > 0) {
      Eigen::MatrixXd stacked(2 * m, m);
      stacked.topRows(m) = J;
      stacked.bottomRows(m) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(m, m);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * m);
      rhs.head(m) = -e;
      delta = stacked.colPivHouseholderQr().solve(rhs);
    } else {
      delta = J.colPivHouseholderQr().solve(Eigen::VectorXd(-e));
    }

    if (delta.lpNorm<Eigen::Infinity>() < cfg.step_tolerance) {
      rep.converged = true;
      break;
    }

    // The residual is exactly quadratic in the taps:
    //   e(c + a*delta) = e + a*(J delta) + a^2 * lags(delta),
    // so E(a) is a quartic whose stationary points are closed-form.
    Eigen::VectorXd Jd = J * delta;
    std::vector<double> ds(delta.data(), delta.data() + m);
    const auto lv = lag_products(ds);
    Eigen::VectorXd L = Eigen::Map<const Eigen::VectorXd>(lv.data(), m);

    const double q1 = 2.0 * e.dot(Jd);
    const double q2 = Jd.squaredNorm() + 2.0 * e.dot(L);
    const double q3 = 2.0 * Jd.dot(L);
    const double q4 = L.squaredNorm();
    double roots[3];
    const int nr = cubic_real_roots(4.0 * q4, 3.0 * q3, 2.0 * q2, q1, roots);
    double best_a = 1.0;
    double best_pred = energy + q1 + q2 + q3 + q4;  // E(1) predicted
    for (int i = 0; i < nr; ++i) {
      const double a = roots[i];
      const double pred = energy + a * (q1 + a * (q2 + a * (q3 + a * q4)));
      if (pred < best_pred) {
        best_pred = pred;
        best_a = a;
      }
    }

    Eigen::VectorXd cn = c + best_a * delta;
    Eigen::VectorXd en = eval_residual(cn);
    const double energy_n = en.squaredNorm();
    const bool accept = energy_n < energy;
    rep.trace.push_back({it, lambda, std::sqrt(accept ? energy_n : energy), best_a, accept});
    if (accept) {
      const bool stagnated = energy - energy_n <= 1e-12 * energy;
      c = cn;
      e = en;
      energy = energy_n;
      lambda /= 10.0;
      if (stagnated) {  // improvement at the rounding floor of E
        rep.converged = true;
        break;
      }
    } else {
      lambda = lambda > 0 ? lambda * 10.0 : 1e-8;
      if (lambda > 1e300) break;
    }
  }
  rep.iterations = std::min(it, cfg.max_iterations);

  if (cfg.newton_polish) {
    // One full Newton step on E = e^T e: (J^T J + sum_k e_k D2_k) d = -J^T e
    // with (D2_k)_{ij} = [|i-j| == k] (+1 more on the diagonal for k = 0).
    std::vector<double> cs(c.data(), c.data() + m);
    const auto jv = jacobian(FirFilter(cs));
    Eigen::MatrixXd J(m, m);
    for (int r = 0; r < m; ++r)
      for (int cc = 0; cc < m; ++cc) J(r, cc) = jv[static_cast<size_t>(r) * m + cc];
    Eigen::MatrixXd H = J.transpose() * J;
    for (int k = 0; k < m; ++k)
      for (int i = 0; i + k < m; ++i) {
        H(i, i + k) += e[k];
        H(i + k, i) += (k > 0) ? e[k] : 0.0;
      }
    Eigen::VectorXd d = H.colPivHouseholderQr().solve(Eigen::VectorXd(-(J.transpose() * e)));
    Eigen::VectorXd cn = c + d;
    Eigen::VectorXd en = eval_residual(cn);
    if (en.squaredNorm() < energy) {
      c = cn;
      e = en;
      energy = en.squaredNorm();
    }
  }

  rep.residual.assign(e.data(), e.data() + m);
  rep.e_l2 = std::sqrt(energy);

  RefineResult out{FirFilter(std::vector<double>(c.data(), c.data() + m)), rep};
  if (!rep.converged && rep.e_l2 > 1e-12) throw NonConvergence(std::move(out));
  return out;
}

bool verify_definition(const FirFilter& c, const LinearPhasePrototype& g_adj,
                       double tol) {
  if (tol <= 0) throw std::invalid_argument("verify_definition: tol must be > 0");
  return residual(c, g_adj).e_l2 <= tol;
}

}  // namespace minphase

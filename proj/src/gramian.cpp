#include "minphase/gramian.hpp"

#include <algorithm>
#include <cmath>

namespace minphase {

std::vector<double> GramianSystem::band() const {
  const int m = bandwidth();
  std::vector<double> b(static_cast<size_t>(m + 1));
  b[0] = prototype.lag(0) + lift;
  for (int k = 1; k <= m; ++k) b[static_cast<size_t>(k)] = prototype.lag(k);
  return b;
}

GramianSystem build_gramian(const LinearPhasePrototype& g, int padding, double lift) {
  if (padding < 1) throw std::invalid_argument("padding Q must be >= 1");
  if (lift < 0) throw std::invalid_argument("lift gamma must be >= 0");
  return GramianSystem{g, padding, lift};
}

double BandedCholesky::at(int i, int j) const {
  if (j < i || j - i > bandwidth) return 0.0;
  return entry(i, j - i);
}

namespace {

// Shared banded Cholesky core: row(i) supplies the half-band of row i.
template <typename RowFn>
BandedCholesky banded_cholesky_impl(int dim, int bw, RowFn row) {
  BandedCholesky c;
  c.dim = dim;
  c.bandwidth = bw;
  c.rows.assign(static_cast<size_t>(dim) * (bw + 1), 0.0);
  const int w = bw + 1;
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k <= bw; ++k) {
      if (i + k >= dim) break;
      double acc = row(i, k);
      const int lmax = std::min({i, bw - k});
      for (int l = 1; l <= lmax; ++l)
        acc -= c.rows[static_cast<size_t>(i - l) * w + l] *
               c.rows[static_cast<size_t>(i - l) * w + l + k];
      if (k == 0) {
        if (acc <= 0.0) throw NotPositiveDefinite(i, acc);
        c.rows[static_cast<size_t>(i) * w] = std::sqrt(acc);
      } else {
        c.rows[static_cast<size_t>(i) * w + k] = acc / c.rows[static_cast<size_t>(i) * w];
      }
    }
  }
  return c;
}

}  // namespace

BandedCholesky cholesky(const GramianSystem& sys) {
  const auto band = sys.band();
  return banded_cholesky_impl(sys.dimension(), sys.bandwidth(),
                              [&band](int, int k) { return band[static_cast<size_t>(k)]; });
}

BandedCholesky cholesky_banded(const std::vector<double>& half_rows, int dim,
                               int bandwidth) {
  const int w = bandwidth + 1;
  if (half_rows.size() != static_cast<size_t>(dim) * w)
    throw std::invalid_argument("cholesky_banded: bad row storage size");
  return banded_cholesky_impl(dim, bandwidth, [&](int i, int k) {
    return half_rows[static_cast<size_t>(i) * w + k];
  });
}

FirFilter extract_minphase(const BandedCholesky& factor, int taps) {
  if (taps != factor.bandwidth + 1)
    throw std::invalid_argument("extract_minphase: taps must equal bandwidth + 1");
  // D = 2Q + (2*taps - 1)  =>  j* = Q + taps - 1 = (D - 1) / 2
  const int j = (factor.dim - 1) / 2;
  if (j < factor.bandwidth)
    throw std::invalid_argument("extract_minphase: padding too small");
  std::vector<double> c(static_cast<size_t>(taps));
  for (int k = 0; k < taps; ++k) c[static_cast<size_t>(k)] = factor.at(j - k, j);
  return FirFilter(std::move(c));
}

// -------- smallest eigenvalue by inertia bisection --------

namespace {

// Number of eigenvalues of Toeplitz(band) - sigma*I strictly below zero,
// from the pivot signs of an unpivoted banded LDL^T. A vanishing pivot is
// nudged to a tiny negative value, the usual spectrum-slicing safeguard.
int inertia_below(const std::vector<double>& band, int dim, double sigma) {
  const int bw = static_cast<int>(band.size()) - 1;
  const int w = bw + 1;
  // work[i*w] = d_i, work[i*w+k] = (L d)[i+k, i] pre-division entries
  std::vector<double> work(static_cast<size_t>(dim) * w, 0.0);
  const double pivmin = 1e-300;
  int count = 0;
  for (int j = 0; j < dim; ++j) {
    double d = band[0] - sigma;
    const int lmax = std::min(j, bw);
    for (int l = 1; l <= lmax; ++l) {
      const double v = work[static_cast<size_t>(j - l) * w + l];
      d -= v * v / work[static_cast<size_t>(j - l) * w];
    }
    if (std::abs(d) < pivmin) d = -pivmin;
    work[static_cast<size_t>(j) * w] = d;
    if (d < 0) ++count;
    for (int k = 1; k <= bw && j + k < dim; ++k) {
      double v = band[static_cast<size_t>(k)];
      const int lmax2 = std::min(j, bw - k);
      for (int l = 1; l <= lmax2; ++l)
        v -= work[static_cast<size_t>(j - l) * w + l] *
             work[static_cast<size_t>(j - l) * w + l + k] /
             work[static_cast<size_t>(j - l) * w];
      work[static_cast<size_t>(j) * w + k] = v;
    }
  }
  return count;
}

}  // namespace

double min_eigenvalue(const GramianSystem& sys) {
  const int dim = sys.dimension();
  if (dim > 5000)
    throw std::invalid_argument("min_eigenvalue: dimension capped at 5000");
  const auto band = sys.band();
  double radius = 0;
  for (size_t k = 1; k < band.size(); ++k) radius += 2.0 * std::abs(band[k]);
  double lo = band[0] - radius;
  double hi = band[0] + radius;
  // smallest eigenvalue: first sigma with at least one eigenvalue below it
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (inertia_below(band, dim, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// -------- all-pass operator --------

AllPassOperator::AllPassOperator(const FirFilter& h, int padding)
    : h_(h), padding_(padding) {
  if (padding_ < 1) throw std::invalid_argument("padding Q must be >= 1");
  const auto g = autocorrelation(h_);
  factor_ = cholesky(build_gramian(g, padding_, 0.0));
  sym_ = padding_ + h_.length() - 1;
}

std::vector<double> AllPassOperator::row(int i) const {
  const int d = factor_.dim;
  const int m = h_.length();
  if (i < 0 || i >= d) throw std::out_of_range("AllPassOperator::row");
  // y = C^{-1} e_i  (C upper triangular, banded): back substitution upward.
  std::vector<double> y(static_cast<size_t>(d), 0.0);
  for (int r = i; r >= 0; --r) {
    double acc = (r == i) ? 1.0 : 0.0;
    const int kmax = std::min(factor_.bandwidth, i - r);
    for (int k = 1; k <= kmax; ++k) acc -= factor_.entry(r, k) * y[static_cast<size_t>(r + k)];
    y[static_cast<size_t>(r)] = acc / factor_.entry(r, 0);
  }
  // row_i(F) = (A y)^T with A the tall convolution matrix of reversed h:
  // A[p, j] = h[M-1-(p-j)] for 0 <= p-j <= M-1.
  std::vector<double> out(static_cast<size_t>(d + m - 1), 0.0);
  for (int p = 0; p < d + m - 1; ++p) {
    double acc = 0;
    const int jlo = std::max(0, p - m + 1);
    const int jhi = std::min(d - 1, p);
    for (int j = jlo; j <= jhi; ++j) acc += h_[m - 1 - (p - j)] * y[static_cast<size_t>(j)];
    out[static_cast<size_t>(p)] = acc;
  }
  return out;
}

std::vector<double> AllPassOperator::prefilter() const {
  const auto r = row(sym_);
  const int m = h_.length();
  const int len = sym_ + m;  // support of the symmetry row: columns 0 .. j*+M-1
  std::vector<double> f(static_cast<size_t>(len));
  for (int j = 0; j < len; ++j) f[static_cast<size_t>(j)] = r[static_cast<size_t>(sym_ + m - 1 - j)];
  return f;
}

AllPassOperator build_allpass(const FirFilter& h, int padding) {
  return AllPassOperator(h, padding);
}

}  // namespace minphase

#include "aomega/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aomega {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  require(f.grid == g.grid, "grid mismatch: functions live on different grids");
}

}  // namespace

Grid Grid::make(double h, double T) {
  require(std::isfinite(h) && std::isfinite(T) && h > 0.0 && T >= h,
          "Grid: need 0 < h <= T");
  Grid g;
  g.h = h;
  g.T = T;
  g.n = static_cast<std::size_t>(std::floor(T / h)) + 1;
  return g;
}

Grid Grid::standard() { return make(1.0 / 1024.0, 64.0); }

bool Grid::operator==(const Grid& other) const {
  return h == other.h && T == other.T && n == other.n;
}

GridFunction GridFunction::zeros(const Grid& g) {
  return {g, std::vector<cplx>(g.n, cplx{0.0, 0.0})};
}

GridFunction GridFunction::box(const Grid& g, double lo, double hi, cplx scale) {
  require(lo >= 0.0 && hi > lo, "box: need 0 <= lo < hi");
  GridFunction f = zeros(g);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double t = g.node(j);
    if (t >= lo && t < hi) f.v[j] = scale;
  }
  return f;
}

GridFunction GridFunction::bump(const Grid& g, double center, double radius,
                                cplx scale) {
  require(radius > 0.0 && center - radius >= 0.0,
          "bump: support must lie in the half-line");
  GridFunction f = zeros(g);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double u = (g.node(j) - center) / radius;
    if (u > -1.0 && u < 1.0)
      f.v[j] = scale * std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
  return f;
}

GridFunction GridFunction::exp_decay(const Grid& g, double rate, cplx scale) {
  require(rate > 0.0, "exp_decay: rate must be positive");
  GridFunction f = zeros(g);
  for (std::size_t j = 0; j < g.n; ++j) f.v[j] = scale * std::exp(-rate * g.node(j));
  return f;
}

GridFunction GridFunction::from_samples(const Grid& g, std::vector<cplx> samples) {
  require(samples.size() == g.n, "from_samples: sample count must match grid");
  for (const cplx& x : samples)
    require(std::isfinite(x.real()) && std::isfinite(x.imag()),
            "from_samples: samples must be finite");
  return {g, std::move(samples)};
}

namespace detail {

// Iterative radix-2 FFT with a precomputed twiddle table (accuracy ~eps*log n;
// the running-product recurrence would cost several digits at 2^18 points).
void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  static thread_local std::vector<cplx> roots;
  static thread_local std::size_t roots_n = 0;
  if (roots_n != n) {
    roots.assign(n / 2, cplx{});
    for (std::size_t k = 0; k < n / 2; ++k)
      roots[k] = std::polar(1.0, -2.0 * std::numbers::pi *
                                     static_cast<double>(k) / static_cast<double>(n));
    roots_n = n;
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        cplx w = roots[j * stride];
        if (inverse) w = std::conj(w);
        const cplx u = a[i + j];
        const cplx t = a[i + j + len / 2] * w;
        a[i + j] = u + t;
        a[i + j + len / 2] = u - t;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (cplx& x : a) x *= inv;
  }
}

std::size_t support_length(const std::vector<cplx>& v) {
  std::size_t s = v.size();
  while (s > 0 && v[s - 1] == cplx{0.0, 0.0}) --s;
  return s;
}

// Full linear convolution sums c_j = sum_i f_i g_{j-i} (no h factor, no
// truncation), j = 0 .. sf+sg-2.  Spectral path: exactly commutative.
std::vector<cplx> convolve_full(const std::vector<cplx>& f, std::size_t sf,
                                const std::vector<cplx>& g, std::size_t sg) {
  if (sf == 0 || sg == 0) return {};
  const std::size_t full = sf + sg - 1;
  std::size_t m = 1;
  while (m < full) m <<= 1;
  std::vector<cplx> fa(m, cplx{}), ga(m, cplx{});
  std::copy(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(sf), fa.begin());
  std::copy(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(sg), ga.begin());
  fft_pow2(fa, false);
  fft_pow2(ga, false);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= ga[i];
  fft_pow2(fa, true);
  fa.resize(full);
  return fa;
}

}  // namespace detail

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  const std::size_t sf = detail::support_length(f.v);
  const std::size_t sg = detail::support_length(g.v);
  GridFunction out = GridFunction::zeros(f.grid);
  if (sf == 0 || sg == 0) return out;
  const auto full = detail::convolve_full(f.v, sf, g.v, sg);
  const std::size_t keep = std::min(out.v.size(), full.size());
  for (std::size_t j = 0; j < keep; ++j) out.v[j] = f.grid.h * full[j];
  return out;
}

GridFunction convolve_direct(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  GridFunction out = GridFunction::zeros(f.grid);
  const std::size_t sf = detail::support_length(f.v);
  const std::size_t sg = detail::support_length(g.v);
  for (std::size_t j = 0; j < out.v.size(); ++j) {
    cplx acc{0.0, 0.0};
    const std::size_t lo = j >= sg ? j - sg + 1 : 0;
    const std::size_t hi = std::min(j, sf == 0 ? 0 : sf - 1);
    for (std::size_t i = lo; i <= hi && sf > 0; ++i) acc += f.v[i] * g.v[j - i];
    out.v[j] = f.grid.h * acc;
  }
  return out;
}

double weighted_norm(const GridFunction& f, const Weight& w) {
  double acc = 0.0;
  for (std::size_t j = 0; j < f.v.size(); ++j)
    acc += std::abs(f.v[j]) * w.eval(f.grid.node(j));
  return f.grid.h * acc;
}

GridFunction apply_X(const GridFunction& f) {
  GridFunction out = f;
  for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] *= f.grid.node(j);
  return out;
}

cplx laplace(const GridFunction& f, cplx z) {
  if (!(z.real() >= 0.0))
    throw std::domain_error("laplace: Re z must be >= 0");
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < f.v.size(); ++j)
    acc += f.v[j] * std::exp(-z * f.grid.node(j));
  return f.grid.h * acc;
}

cplx dual_pairing(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < f.v.size(); ++j) acc += f.v[j] * g.v[j];
  return f.grid.h * acc;
}

double sup_norm_over_weight(const GridFunction& f, const Weight& w) {
  double sup = 0.0;
  for (std::size_t j = 0; j < f.v.size(); ++j) {
    const double wv = w.eval(f.grid.node(j));
    if (wv > 0.0 && std::isfinite(wv))
      sup = std::max(sup, std::abs(f.v[j]) / wv);
  }
  return sup;
}

double alpha_support(const GridFunction& f, double eps_rel) {
  double max_abs = 0.0;
  for (const cplx& x : f.v) max_abs = std::max(max_abs, std::abs(x));
  if (max_abs == 0.0) return std::numeric_limits<double>::infinity();
  const double threshold = eps_rel * max_abs;
  for (std::size_t j = 0; j < f.v.size(); ++j)
    if (std::abs(f.v[j]) > threshold) return f.grid.node(j);
  return std::numeric_limits<double>::infinity();
}

GridFunction approximate_identity(int k, const Grid& g) {
  require(k >= 1, "approximate_identity: k must be >= 1");
  if (1.0 / static_cast<double>(k) < g.h)
    throw std::invalid_argument(
        "approximate_identity: 1/k below grid resolution");
  GridFunction f = GridFunction::zeros(g);
  const double width = 1.0 / static_cast<double>(k);
  for (std::size_t j = 0; j < g.n && g.node(j) < width; ++j)
    f.v[j] = static_cast<double>(k);
  return f;
}

std::vector<double> norms_profile(const GridFunction& f,
                                  const WeightFamily& fam, int n_max) {
  require(n_max >= 1 && n_max <= fam.n_max(), "norms_profile: n_max out of range");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) out.push_back(weighted_norm(f, fam.member(n)));
  return out;
}

}  // namespace aomega

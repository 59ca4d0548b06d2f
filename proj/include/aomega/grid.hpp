#pragma once

#include <complex>
#include <vector>

#include "aomega/family.hpp"
#include "aomega/weight.hpp"

namespace aomega {

using cplx = std::complex<double>;

/// Uniform grid 0, h, 2h, ..., covering [0, T].  n = floor(T/h) + 1 nodes.
struct Grid {
  double h = 0.0;
  double T = 0.0;
  std::size_t n = 0;

  /// Throws std::invalid_argument unless 0 < h <= T.
  static Grid make(double h, double T);
  static Grid standard();  // h = 2^-10, T = 64

  double node(std::size_t j) const { return static_cast<double>(j) * h; }
  bool operator==(const Grid& other) const;
};

/// Sampled function on a Grid; complex samples, finite by construction.
/// All binary operations require identical grids.
struct GridFunction {
  Grid grid;
  std::vector<cplx> v;

  static GridFunction zeros(const Grid& g);
  /// scale * indicator of the half-open interval [lo, hi).
  static GridFunction box(const Grid& g, double lo, double hi, cplx scale = 1.0);
  /// Smooth bump supported on (center-radius, center+radius), peak `scale`:
  /// scale * exp(1 - 1/(1-u^2)), u = (t-center)/radius.
  static GridFunction bump(const Grid& g, double center, double radius,
                           cplx scale = 1.0);
  /// scale * e^{-rate t}.
  static GridFunction exp_decay(const Grid& g, double rate, cplx scale = 1.0);
  /// Explicit samples; validates size and finiteness.
  static GridFunction from_samples(const Grid& g, std::vector<cplx> samples);

  std::size_t size() const { return v.size(); }
};

/// Causal convolution by left-rectangle quadrature, truncated at T:
///   (f*g)_j = h * sum_{i=0..j} f_i g_{j-i}.
/// Computed spectrally (radix-2 FFT over the joint support), which matches
/// the direct sum to ~1e-13 and is exactly commutative.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

/// Reference direct sum in canonical index order; the oracle convolve is
/// tested against.  O(support^2).
GridFunction convolve_direct(const GridFunction& f, const GridFunction& g);

/// Weighted L1 norm by the same quadrature: h * sum |f_j| w(t_j).
double weighted_norm(const GridFunction& f, const Weight& w);

/// Pointwise multiplication by the independent variable: (Xf)(t) = t f(t).
GridFunction apply_X(const GridFunction& f);

/// Laplace transform h * sum f_j e^{-z t_j}.  Re z >= 0 required
/// (std::domain_error otherwise); these are exactly the characters of the
/// algebra.
cplx laplace(const GridFunction& f, cplx z);

/// Bilinear pairing h * sum f_j g_j (no conjugation).
cplx dual_pairing(const GridFunction& f, const GridFunction& g);

/// max_j |f_j| / w(t_j); the norm of the dual realized as functions against
/// the weight.
double sup_norm_over_weight(const GridFunction& f, const Weight& w);

/// Infimum of the support up to relative noise: smallest node with
/// |f_j| > eps_rel * max|f|.  Identically-zero input returns +infinity.
double alpha_support(const GridFunction& f, double eps_rel = 1e-12);

/// The bump e_k = k * indicator [0, 1/k): unit mass, shrinking support.
/// Requires 1/k >= h (std::invalid_argument otherwise: the bump must contain
/// at least one grid cell).
GridFunction approximate_identity(int k, const Grid& g);

/// Norms of f against members 1..n_max of the family.  Nondecreasing in n
/// whenever the family is pointwise nondecreasing.
std::vector<double> norms_profile(const GridFunction& f,
                                  const WeightFamily& fam, int n_max);

namespace detail {

/// Index one past the last nonzero sample.
std::size_t support_length(const std::vector<cplx>& v);

/// Full linear convolution sums c_j = sum_i f_i g_{j-i} (no h factor, no
/// horizon truncation), j = 0 .. sf+sg-2.  Lets callers account for mass the
/// truncated convolve drops past T.
std::vector<cplx> convolve_full(const std::vector<cplx>& f, std::size_t sf,
                                const std::vector<cplx>& g, std::size_t sg);

}  // namespace detail

}  // namespace aomega

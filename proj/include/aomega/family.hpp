#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aomega/report.hpp"
#include "aomega/sampling.hpp"
#include "aomega/weight.hpp"

namespace aomega {

/// An increasing sequence of weights w_1 <= w_2 <= ... generated in closed
/// form, the defining data of a Frechet convolution algebra on the half-line.
///
/// Built-in generators:
///   power_n       (1+t)^n
///   frac_power    (1+t)^{1-1/n}
///   exp_sqrt_n    e^{n sqrt(t)}
///   exp_n         e^{n t}
///   binary_pow_n  2^{n v(t)}  (v = binary digit sum; the family that is
///                 everywhere-growing on average yet pinned to 2^n along the
///                 dyadic points)
///   pow_weight    w^n for an arbitrary base weight
class WeightFamily {
 public:
  static WeightFamily power_n(int n_max);
  static WeightFamily frac_power(int n_max);
  static WeightFamily exp_sqrt_n(int n_max);
  static WeightFamily exp_n(int n_max);
  static WeightFamily binary_pow_n(int n_max);
  static WeightFamily pow_weight(Weight base, int n_max);
  /// Arbitrary generator, for tests and experiments.
  static WeightFamily custom(std::string name, std::function<Weight(int)> gen,
                             int n_max);

  /// 1-based member access.  Throws std::out_of_range outside [1, n_max].
  const Weight& member(int n) const;

  int n_max() const { return n_max_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<Weight> members_;
  int n_max_ = 0;
};

/// log(w_m(t)) - log(w_n(t)) turned into a ratio, using exact division when
/// both values are finite and the log-domain difference otherwise.
double weight_ratio(const Weight& numerator, const Weight& denominator,
                    double t);

/// Unboundedness of the quotient w_{n+1}/w_n: pass iff the sampled sup over
/// [0, horizon] reaches `threshold`.  Witnesses record the attaining points.
CheckReport check_condition_c(const WeightFamily& fam, int n, double horizon,
                              double threshold);

/// Pointwise divergence w_n(t) -> infinity in n: pass iff the sequence is
/// nondecreasing in n at t and exceeds `threshold` for some n <= n_max.
CheckReport check_condition_d(const WeightFamily& fam, double t,
                              double threshold);

/// Relative-growth condition: find the least m <= n_max such that the sampled
/// inf of w_m(s)/w_n(s) over s in [horizon/2, horizon] (dyadics included)
/// reaches growth_threshold.  Fail reports the bounded subsequence: the
/// points where the best m's ratio stays smallest.
CheckReport check_wein(const WeightFamily& fam, int n, double horizon,
                       double growth_threshold);

/// Domination condition with weight t: find the least m in (n, m_max] such
/// that the sampled sup of t w_n(t)/w_m(t) stabilizes under horizon doubling
/// (sup over [0, 2*horizon] <= (1+stab_tol) * sup over [0, horizon]).
/// Fail iff no m stabilizes; the report carries each m's growth ratio, with
/// ratios >= 1.5 marked as strong growth.
CheckReport check_weco(const WeightFamily& fam, int n, double horizon,
                       int m_max, double stab_tol = 1e-3);

/// Same with weight t^p in place of t.
CheckReport check_weco_p(const WeightFamily& fam, int n, double p,
                         double horizon, int m_max, double stab_tol = 1e-3);

/// Convergence factor: sampled sup over the tail s in [horizon/2, horizon] of
///   w_n(r+s) / w_m(s),
/// pass iff it is <= tol.  Requires m > n (std::invalid_argument otherwise).
/// This is the quantity whose decay makes translation orbits t -> delta_t * f
/// continuous into the algebra.
CheckReport check_convergence_factor(const WeightFamily& fam, int n, int m,
                                     double r, double horizon, double tol);

/// sup_t  t * w_n(t + shift) / w_m(t) over the asymptotic sampling plus any
/// caller-supplied points (pass grid nodes to make the bound valid for grid
/// sums).  The continuity constant of a derivation with symbol delta_shift.
double derivation_continuity_bound(const WeightFamily& fam, int n, int m,
                                   double shift, double horizon,
                                   const std::vector<double>& extra_points = {});

}  // namespace aomega

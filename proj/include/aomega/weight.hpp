#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aomega/report.hpp"

namespace aomega {

/// Binary digit-sum v(m): number of ones in the binary expansion of m.
/// v is subadditive (v(m+n) <= v(m)+v(n)) and unbounded but does not tend to
/// infinity: v(2^k) = 1 for every k.
uint32_t popcount_v(uint64_t m);

/// A subadditive integer sequence together with its piecewise-linear
/// extension to [0, n_max].  Either backed by the binary digit-sum rule or by
/// an explicit table (which lets tests feed in arbitrary sequences).
class IntegerSubadditive {
 public:
  static constexpr uint64_t kDefaultMax = uint64_t{1} << 20;

  /// The binary digit-sum sequence, defined up to n_max.
  static IntegerSubadditive popcount(uint64_t n_max = kDefaultMax);

  /// Explicit table v(0), v(1), ..., v(table.size()-1).
  static IntegerSubadditive from_table(std::vector<double> table);

  /// v at an integer argument.  Throws std::out_of_range beyond n_max.
  double at(uint64_t m) const;

  /// Piecewise-linear extension: for x = m + r with 0 <= r < 1,
  ///   v(x) = (1-r) v(m) + r v(m+1).
  /// Extending this way preserves subadditivity.  Throws std::out_of_range
  /// when the needed integer values exceed n_max, std::domain_error for x < 0.
  double extend(double x) const;

  uint64_t n_max() const { return n_max_; }

 private:
  bool use_popcount_ = true;
  std::vector<double> table_;
  uint64_t n_max_ = kDefaultMax;
};

/// Piecewise-linear extension of an arbitrary integer sequence, same formula
/// as IntegerSubadditive::extend.
double extend_piecewise_linear(const IntegerSubadditive& v, double x);

/// An algebra weight on the half-line: positive, w(0)=1, submultiplicative
/// (the latter checked by check_submultiplicative, not assumed).
///
/// Closed-form kinds, composable by product and integer power:
///   power(a)             (1+t)^a,   a >= 0
///   exponential(a)       e^{a t}
///   exp_sqrt(a)          e^{a sqrt(t)},  a >= 0
///   fractional_power(a)  (1+t)^a,   0 < a < 1
///   binary_pow(b)        b^{v(t)},  b > 1, v = piecewise-linear digit sum
///
/// Evaluation is available in the log domain so asymptotic checks can work at
/// horizons where the values themselves overflow.
class Weight {
 public:
  enum class Kind {
    power,
    exponential,
    exp_sqrt,
    fractional_power,
    binary_pow,
    product,
    int_pow,
  };

  static Weight power(double a);
  static Weight exponential(double a);
  static Weight exp_sqrt(double a);
  static Weight fractional_power(double a);
  static Weight binary_pow(double b);
  static Weight product(Weight lhs, Weight rhs);
  /// w^k.  k may be negative, which produces non-weights such as (1+t)^{-1};
  /// useful as failing inputs for the checkers.
  static Weight pow(Weight base, int k);

  /// log w(t).  Throws std::domain_error for t < 0.
  double log_eval(double t) const;

  /// w(t), evaluated natively per kind (may overflow to +inf at extreme
  /// arguments; use log_eval there).  Exact for binary_pow at points where v
  /// is a small integer, which the dyadic-witness checks rely on.
  double eval(double t) const;

  Kind kind() const { return kind_; }
  double param() const { return a_; }
  int exponent() const { return k_; }
  const Weight& lhs() const { return *lhs_; }
  const Weight& rhs() const { return *rhs_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::power;
  double a_ = 0.0;
  int k_ = 0;
  std::shared_ptr<const Weight> lhs_, rhs_;
};

/// Submultiplicativity probe: pass iff for every pair (s,t) in `pairs`
///   w(s+t) <= w(s) w(t) (1 + rel_tol),
/// compared in the log domain.  On fail the witness holds the worst pair and
/// extremum the worst ratio w(s+t) / (w(s) w(t)).
CheckReport check_submultiplicative(const Weight& w,
                                    std::span<const std::pair<double, double>> pairs,
                                    double rel_tol = 1e-9);

/// Subadditivity of the piecewise-linear extension on a uniform grid:
/// v(x+y) <= v(x)+v(y)+abs_tol for all grid pairs with x+y <= x_max.
/// The two interpolation branches (fractional parts summing <= 1 or > 1) are
/// counted separately in the report so both are known to be exercised.
CheckReport check_subadditive_extension(const IntegerSubadditive& v,
                                        double grid_step, double x_max,
                                        double abs_tol = 1e-12);

/// Radical behaviour probe: sampled sup of |w(t)^{1/t} - 1| over
/// [horizon - window, horizon], pass iff <= tol.  Finite-horizon evidence
/// only; the report is labelled accordingly.
CheckReport check_root_limit(const Weight& w, double horizon, double window,
                             double tol);

/// Probe of w(t) -> infinity: pass iff for every threshold M there is a
/// sampled t0 <= horizon/2 with w(t) >= M for all sampled t in [t0, horizon].
/// The sampling includes the dyadic points 2^k, so weights that dip on the
/// dyadic subsequence (binary_pow) fail with those witnesses.
CheckReport check_tends_to_infinity(const Weight& w, double horizon,
                                    std::span<const double> thresholds);

}  // namespace aomega

#include "aomega/weight.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aomega/sampling.hpp"

namespace aomega {

uint32_t popcount_v(uint64_t m) { return static_cast<uint32_t>(std::popcount(m)); }

IntegerSubadditive IntegerSubadditive::popcount(uint64_t n_max) {
  IntegerSubadditive v;
  v.use_popcount_ = true;
  v.n_max_ = n_max;
  return v;
}

IntegerSubadditive IntegerSubadditive::from_table(std::vector<double> table) {
  if (table.empty()) throw std::invalid_argument("IntegerSubadditive: empty table");
  IntegerSubadditive v;
  v.use_popcount_ = false;
  v.n_max_ = table.size() - 1;
  v.table_ = std::move(table);
  return v;
}

double IntegerSubadditive::at(uint64_t m) const {
  if (m > n_max_) throw std::out_of_range("IntegerSubadditive: index beyond tabulated range");
  if (use_popcount_) return static_cast<double>(popcount_v(m));
  return table_[m];
}

double IntegerSubadditive::extend(double x) const {
  if (!(x >= 0.0)) throw std::domain_error("IntegerSubadditive: negative argument");
  const double mf = std::floor(x);
  const auto m = static_cast<uint64_t>(mf);
  const double r = x - mf;
  if (r == 0.0) return at(m);
  return (1.0 - r) * at(m) + r * at(m + 1);
}

double extend_piecewise_linear(const IntegerSubadditive& v, double x) {
  return v.extend(x);
}

namespace {

const IntegerSubadditive& default_digit_sum() {
  static const IntegerSubadditive v = IntegerSubadditive::popcount();
  return v;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_nonnegative_arg(double t) {
  if (!(t >= 0.0)) throw std::domain_error("Weight: negative argument");
}

}  // namespace

Weight Weight::power(double a) {
  require(std::isfinite(a) && a >= 0.0, "power weight needs a >= 0");
  Weight w;
  w.kind_ = Kind::power;
  w.a_ = a;
  return w;
}

Weight Weight::exponential(double a) {
  require(std::isfinite(a), "exponential weight needs finite a");
  Weight w;
  w.kind_ = Kind::exponential;
  w.a_ = a;
  return w;
}

Weight Weight::exp_sqrt(double a) {
  require(std::isfinite(a) && a >= 0.0, "exp_sqrt weight needs a >= 0");
  Weight w;
  w.kind_ = Kind::exp_sqrt;
  w.a_ = a;
  return w;
}

Weight Weight::fractional_power(double a) {
  require(std::isfinite(a) && a > 0.0 && a < 1.0,
          "fractional_power weight needs 0 < a < 1");
  Weight w;
  w.kind_ = Kind::fractional_power;
  w.a_ = a;
  return w;
}

Weight Weight::binary_pow(double b) {
  require(std::isfinite(b) && b > 1.0, "binary_pow weight needs base > 1");
  Weight w;
  w.kind_ = Kind::binary_pow;
  w.a_ = b;
  return w;
}

Weight Weight::product(Weight lhs, Weight rhs) {
  Weight w;
  w.kind_ = Kind::product;
  w.lhs_ = std::make_shared<Weight>(std::move(lhs));
  w.rhs_ = std::make_shared<Weight>(std::move(rhs));
  return w;
}

Weight Weight::pow(Weight base, int k) {
  Weight w;
  w.kind_ = Kind::int_pow;
  w.k_ = k;
  w.lhs_ = std::make_shared<Weight>(std::move(base));
  return w;
}

double Weight::log_eval(double t) const {
  require_nonnegative_arg(t);
  switch (kind_) {
    case Kind::power:
    case Kind::fractional_power:
      return a_ * std::log1p(t);
    case Kind::exponential:
      return a_ * t;
    case Kind::exp_sqrt:
      return a_ * std::sqrt(t);
    case Kind::binary_pow:
      return default_digit_sum().extend(t) * std::log(a_);
    case Kind::product:
      return lhs_->log_eval(t) + rhs_->log_eval(t);
    case Kind::int_pow:
      return static_cast<double>(k_) * lhs_->log_eval(t);
  }
  return 0.0;
}

double Weight::eval(double t) const {
  require_nonnegative_arg(t);
  switch (kind_) {
    case Kind::power:
    case Kind::fractional_power:
      return std::pow(1.0 + t, a_);
    case Kind::exponential:
      return std::exp(a_ * t);
    case Kind::exp_sqrt:
      return std::exp(a_ * std::sqrt(t));
    case Kind::binary_pow:
      return std::pow(a_, default_digit_sum().extend(t));
    case Kind::product:
      return lhs_->eval(t) * rhs_->eval(t);
    case Kind::int_pow:
      return std::pow(lhs_->eval(t), static_cast<double>(k_));
  }
  return 1.0;
}

std::string Weight::describe() const {
  switch (kind_) {
    case Kind::power:
    case Kind::fractional_power:
      return "(1+t)^" + std::to_string(a_);
    case Kind::exponential:
      return "exp(" + std::to_string(a_) + "*t)";
    case Kind::exp_sqrt:
      return "exp(" + std::to_string(a_) + "*sqrt(t))";
    case Kind::binary_pow:
      return std::to_string(a_) + "^v(t)";
    case Kind::product:
      return lhs_->describe() + " * " + rhs_->describe();
    case Kind::int_pow:
      return "(" + lhs_->describe() + ")^" + std::to_string(k_);
  }
  return "?";
}

CheckReport check_submultiplicative(const Weight& w,
                                    std::span<const std::pair<double, double>> pairs,
                                    double rel_tol) {
  if (pairs.empty()) throw std::invalid_argument("check_submultiplicative: no pairs");
  const double allowance = std::log1p(rel_tol);
  double worst_margin = -std::numeric_limits<double>::infinity();
  std::pair<double, double> worst{0.0, 0.0};
  std::size_t violations = 0;
  for (const auto& [s, t] : pairs) {
    const double margin = w.log_eval(s + t) - w.log_eval(s) - w.log_eval(t);
    if (margin > allowance) ++violations;
    if (margin > worst_margin) {
      worst_margin = margin;
      worst = {s, t};
    }
  }
  CheckReport r;
  r.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
  const double worst_ratio = std::exp(worst_margin);
  r.extremum = worst_ratio;
  r.witness = {{worst.first, worst_ratio}, {worst.second, worst_ratio}};
  r.parameters = {{"pairs", pairs.size()},
                  {"rel_tol", rel_tol},
                  {"violations", violations},
                  {"worst_pair", {worst.first, worst.second}}};
  return r;
}

CheckReport check_subadditive_extension(const IntegerSubadditive& v,
                                        double grid_step, double x_max,
                                        double abs_tol) {
  if (!(grid_step > 0.0) || !(x_max >= grid_step))
    throw std::invalid_argument("check_subadditive_extension: bad grid");
  const auto count = static_cast<std::size_t>(std::floor(x_max / grid_step + 0.5)) + 1;

  // Tabulate the extension on the grid once; pairwise defects are then pure
  // table arithmetic.
  std::vector<double> vals(count), frac(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = static_cast<double>(i) * grid_step;
    vals[i] = v.extend(x);
    frac[i] = x - std::floor(x);
  }

  double min_defect = std::numeric_limits<double>::infinity();
  std::pair<double, double> worst{0.0, 0.0};
  std::size_t violations = 0, low_branch = 0, high_branch = 0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; i + j < count; ++j) {
      const double defect = vals[i] + vals[j] - vals[i + j];
      if (frac[i] + frac[j] <= 1.0)
        ++low_branch;
      else
        ++high_branch;
      if (defect < -abs_tol) ++violations;
      if (defect < min_defect) {
        min_defect = defect;
        worst = {static_cast<double>(i) * grid_step,
                 static_cast<double>(j) * grid_step};
      }
    }
  }
  CheckReport r;
  r.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
  r.extremum = min_defect;
  r.witness = {{worst.first, min_defect}, {worst.second, min_defect}};
  r.parameters = {{"grid_step", grid_step},
                  {"x_max", x_max},
                  {"abs_tol", abs_tol},
                  {"violations", violations},
                  {"pairs_low_branch", low_branch},
                  {"pairs_high_branch", high_branch}};
  return r;
}

CheckReport check_root_limit(const Weight& w, double horizon, double window,
                             double tol) {
  if (!(horizon > 0.0) || !(window > 0.0) || window >= horizon)
    throw std::invalid_argument("check_root_limit: need 0 < window < horizon");
  const double lo = horizon - window;
  double sup = 0.0, arg = lo;
  for (double t : asymptotic_sample_points(horizon)) {
    if (t < lo || t <= 0.0) continue;
    const double dev = std::abs(std::expm1(w.log_eval(t) / t));
    if (dev > sup) {
      sup = dev;
      arg = t;
    }
  }
  CheckReport r;
  r.verdict = sup <= tol ? Verdict::pass : Verdict::fail;
  r.extremum = sup;
  r.witness = {{arg, sup}};
  r.label = kNumericOnlyLabel;
  r.parameters = {{"horizon", horizon}, {"window", window}, {"tol", tol}};
  return r;
}

CheckReport check_tends_to_infinity(const Weight& w, double horizon,
                                    std::span<const double> thresholds) {
  if (!(horizon > 1.0)) throw std::invalid_argument("check_tends_to_infinity: horizon too small");
  if (thresholds.empty()) throw std::invalid_argument("check_tends_to_infinity: no thresholds");
  const auto points = asymptotic_sample_points(horizon);
  std::vector<double> logs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) logs[i] = w.log_eval(points[i]);

  // Latest admissible tail start t0 <= horizon/2; the tail min over
  // [t0, horizon] is what every threshold must clear.  The tail always
  // contains the top dyadic points, so a weight pinned low on the dyadic
  // subsequence cannot pass by cherry-picking a start.
  std::size_t start = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i] <= horizon / 2.0) start = i;
  double tail_min = std::numeric_limits<double>::infinity();
  std::size_t tail_arg = start;
  for (std::size_t i = start; i < points.size(); ++i) {
    if (logs[i] < tail_min) {
      tail_min = logs[i];
      tail_arg = i;
    }
  }

  CheckReport r;
  r.label = kNumericOnlyLabel;
  r.extremum = std::exp(std::min(tail_min, 700.0));
  double failed_at = 0.0;
  bool all = true;
  for (double m : thresholds) {
    if (!(tail_min >= std::log(m))) {
      all = false;
      failed_at = m;
      break;
    }
  }
  r.verdict = all ? Verdict::pass : Verdict::fail;
  if (all) {
    r.witness = {{points[start], std::exp(std::min(logs[start], 700.0))}};
  } else {
    // Bounded subsequence: every tail point at (or within a whisker of) the
    // tail minimum.
    for (std::size_t i = start; i < points.size() && r.witness.size() < 8; ++i)
      if (logs[i] <= tail_min + 1e-12)
        r.witness.push_back({points[i], std::exp(std::min(logs[i], 700.0))});
  }
  r.parameters = {{"horizon", horizon},
                  {"thresholds", std::vector<double>(thresholds.begin(), thresholds.end())},
                  {"tail_start", points[start]},
                  {"tail_min_at", points[tail_arg]},
                  {"first_failed_threshold", failed_at}};
  return r;
}

}  // namespace aomega

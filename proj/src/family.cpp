#include "aomega/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aomega/sampling.hpp"

namespace aomega {

namespace {

constexpr double kStrongGrowthFactor = 1.5;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

WeightFamily build(std::string name, std::function<Weight(int)> gen, int n_max) {
  require(n_max >= 1, "WeightFamily: n_max must be >= 1");
  return WeightFamily::custom(std::move(name), std::move(gen), n_max);
}

double safe_value(double log_value) { return std::exp(std::min(log_value, 700.0)); }

}  // namespace

WeightFamily WeightFamily::power_n(int n_max) {
  return build("power_n", [](int n) { return Weight::power(n); }, n_max);
}

WeightFamily WeightFamily::frac_power(int n_max) {
  return build("frac_power",
               [](int n) {
                 return n == 1 ? Weight::power(0.0)
                               : Weight::fractional_power(1.0 - 1.0 / n);
               },
               n_max);
}

WeightFamily WeightFamily::exp_sqrt_n(int n_max) {
  return build("exp_sqrt_n", [](int n) { return Weight::exp_sqrt(n); }, n_max);
}

WeightFamily WeightFamily::exp_n(int n_max) {
  return build("exp_n", [](int n) { return Weight::exponential(n); }, n_max);
}

WeightFamily WeightFamily::binary_pow_n(int n_max) {
  return build("binary_pow_n",
               [](int n) { return Weight::pow(Weight::binary_pow(2.0), n); },
               n_max);
}

WeightFamily WeightFamily::pow_weight(Weight base, int n_max) {
  return build("pow_weight",
               [base](int n) { return Weight::pow(base, n); }, n_max);
}

WeightFamily WeightFamily::custom(std::string name,
                                  std::function<Weight(int)> gen, int n_max) {
  require(n_max >= 1, "WeightFamily: n_max must be >= 1");
  WeightFamily fam;
  fam.name_ = std::move(name);
  fam.n_max_ = n_max;
  fam.members_.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) fam.members_.push_back(gen(n));
  return fam;
}

const Weight& WeightFamily::member(int n) const {
  if (n < 1 || n > n_max_)
    throw std::out_of_range("WeightFamily: member index outside [1, n_max]");
  return members_[static_cast<std::size_t>(n) - 1];
}

std::vector<double> asymptotic_sample_points(double horizon) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("asymptotic_sample_points: horizon must be positive");
  std::vector<double> pts;
  pts.push_back(0.0);
  // 16 points per octave from 2^-10 up to the horizon.
  for (int e = -160;; ++e) {
    const double t = std::exp2(static_cast<double>(e) / 16.0);
    if (t > horizon) break;
    pts.push_back(t);
  }
  // Dyadic integers and their neighbours: where the binary digit sum dips to 1
  // (at 2^k) and spikes to k (at 2^k - 1).
  for (double d = 2.0; d <= horizon; d *= 2.0) {
    if (d - 1.0 <= horizon) pts.push_back(d - 1.0);
    if (d + 1.0 <= horizon) pts.push_back(d + 1.0);
  }
  pts.push_back(horizon / 2.0);
  pts.push_back(horizon);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double weight_ratio(const Weight& numerator, const Weight& denominator, double t) {
  const double a = numerator.eval(t);
  const double b = denominator.eval(t);
  if (std::isfinite(a) && std::isfinite(b) && b > 0.0) return a / b;
  return std::exp(numerator.log_eval(t) - denominator.log_eval(t));
}

CheckReport check_condition_c(const WeightFamily& fam, int n, double horizon,
                              double threshold) {
  require(n >= 1 && n + 1 <= fam.n_max(), "check_condition_c: need n+1 <= n_max");
  require(threshold > 0.0, "check_condition_c: threshold must be positive");
  const Weight& top = fam.member(n + 1);
  const Weight& bot = fam.member(n);
  double sup = -std::numeric_limits<double>::infinity();
  double arg = 0.0;
  for (double t : asymptotic_sample_points(horizon)) {
    const double ratio = weight_ratio(top, bot, t);
    if (ratio > sup) {
      sup = ratio;
      arg = t;
    }
  }
  CheckReport r;
  r.verdict = sup >= threshold ? Verdict::pass : Verdict::fail;
  r.extremum = sup;
  r.witness = {{arg, sup}};
  r.label = kNumericOnlyLabel;
  r.parameters = {{"family", fam.name()},
                  {"n", n},
                  {"horizon", horizon},
                  {"threshold", threshold}};
  return r;
}

CheckReport check_condition_d(const WeightFamily& fam, double t,
                              double threshold) {
  require(threshold > 0.0, "check_condition_d: threshold must be positive");
  const double log_threshold = std::log(threshold);
  bool nondecreasing = true;
  double prev = -std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  int best_n = 1;
  std::vector<Witness> seq;
  for (int n = 1; n <= fam.n_max(); ++n) {
    const double lv = fam.member(n).log_eval(t);
    if (lv < prev - 1e-12) nondecreasing = false;
    prev = lv;
    if (lv > best) {
      best = lv;
      best_n = n;
    }
    if (n <= 8 || n == fam.n_max()) seq.push_back({static_cast<double>(n), safe_value(lv)});
  }
  CheckReport r;
  const bool exceeded = best >= log_threshold;
  r.verdict = (exceeded && nondecreasing) ? Verdict::pass : Verdict::fail;
  r.extremum = safe_value(best);
  r.witness = r.passed() ? std::vector<Witness>{{static_cast<double>(best_n), safe_value(best)}}
                         : seq;
  r.label = kNumericOnlyLabel;
  r.parameters = {{"family", fam.name()},
                  {"t", t},
                  {"threshold", threshold},
                  {"nondecreasing", nondecreasing}};
  return r;
}

CheckReport check_wein(const WeightFamily& fam, int n, double horizon,
                       double growth_threshold) {
  require(n >= 1 && n < fam.n_max(), "check_wein: need n < n_max");
  require(growth_threshold > 1.0, "check_wein: growth threshold must exceed 1");
  std::vector<double> window;
  for (double t : asymptotic_sample_points(horizon))
    if (t >= horizon / 2.0) window.push_back(t);

  CheckReport r;
  r.label = kNumericOnlyLabel;
  ojson per_m = ojson::object();
  double best_inf = -std::numeric_limits<double>::infinity();
  int best_m = n + 1;
  double best_arg = window.front();
  for (int m = n + 1; m <= fam.n_max(); ++m) {
    const Weight& top = fam.member(m);
    const Weight& bot = fam.member(n);
    double inf = std::numeric_limits<double>::infinity();
    double arg = window.front();
    for (double s : window) {
      const double ratio = weight_ratio(top, bot, s);
      if (ratio < inf) {
        inf = ratio;
        arg = s;
      }
    }
    per_m[std::to_string(m)] = inf;
    if (inf > best_inf) {
      best_inf = inf;
      best_m = m;
      best_arg = arg;
    }
    if (inf >= growth_threshold) {
      r.verdict = Verdict::pass;
      r.selected_m = m;
      r.extremum = inf;
      r.witness = {{arg, inf}};
      r.parameters = {{"family", fam.name()}, {"n", n}, {"horizon", horizon},
                      {"growth_threshold", growth_threshold}, {"inf_per_m", per_m}};
      return r;
    }
  }
  // No m works: report the subsequence where even the best m stays low.
  r.verdict = Verdict::fail;
  r.selected_m = -1;
  r.extremum = best_inf;
  const Weight& top = fam.member(best_m);
  const Weight& bot = fam.member(n);
  for (double s : window) {
    const double ratio = weight_ratio(top, bot, s);
    if (ratio <= best_inf * (1.0 + 1e-12) && r.witness.size() < 8)
      r.witness.push_back({s, ratio});
  }
  if (r.witness.empty()) r.witness = {{best_arg, best_inf}};
  r.parameters = {{"family", fam.name()}, {"n", n}, {"horizon", horizon},
                  {"growth_threshold", growth_threshold}, {"best_m", best_m},
                  {"inf_per_m", per_m}};
  return r;
}

namespace {

/// Sampled sup of t^p * w_n(t)/w_m(t) in the log domain over points <= cap.
struct LogSup {
  double value = -std::numeric_limits<double>::infinity();
  double arg = 0.0;
};

LogSup log_sup_weighted_quotient(const WeightFamily& fam, int n, int m, double p,
                                 const std::vector<double>& pts, double cap) {
  LogSup s;
  const Weight& wn = fam.member(n);
  const Weight& wm = fam.member(m);
  for (double t : pts) {
    if (t > cap || t <= 0.0) continue;
    const double lv = p * std::log(t) + wn.log_eval(t) - wm.log_eval(t);
    if (lv > s.value) {
      s.value = lv;
      s.arg = t;
    }
  }
  return s;
}

CheckReport weco_impl(const WeightFamily& fam, int n, double p, double horizon,
                      int m_max, double stab_tol) {
  require(n >= 1 && n <= fam.n_max(), "domination check: n outside [1, n_max]");
  require(m_max > n && m_max <= fam.n_max(),
          "domination check: need n < m_max <= n_max");
  require(p > 0.0, "domination check: power must be positive");
  const auto pts = asymptotic_sample_points(2.0 * horizon);
  const double log_allow = std::log1p(stab_tol);

  CheckReport r;
  r.label = kNumericOnlyLabel;
  ojson growth = ojson::object();
  ojson strong = ojson::object();
  double best_growth = std::numeric_limits<double>::infinity();
  LogSup best_sup;
  for (int m = n + 1; m <= m_max; ++m) {
    const LogSup s1 = log_sup_weighted_quotient(fam, n, m, p, pts, horizon);
    const LogSup s2 = log_sup_weighted_quotient(fam, n, m, p, pts, 2.0 * horizon);
    const double log_growth = s2.value - s1.value;
    if (log_growth <= log_allow) {
      r.verdict = Verdict::pass;
      r.selected_m = m;
      r.extremum = std::exp(std::min(s2.value, 700.0));
      r.witness = {{s2.arg, r.extremum}};
      r.parameters = {{"family", fam.name()}, {"n", n}, {"p", p},
                      {"horizon", horizon}, {"m_max", m_max},
                      {"stab_tol", stab_tol}, {"growth_per_m", growth}};
      return r;
    }
    const double g = std::exp(log_growth);
    growth[std::to_string(m)] = g;
    strong[std::to_string(m)] = g >= kStrongGrowthFactor;
    if (g < best_growth) {
      best_growth = g;
      best_sup = s2;
    }
  }
  r.verdict = Verdict::fail;
  r.selected_m = -1;
  r.extremum = best_growth;
  r.witness = {{best_sup.arg, std::exp(std::min(best_sup.value, 700.0))}};
  r.parameters = {{"family", fam.name()}, {"n", n}, {"p", p},
                  {"horizon", horizon}, {"m_max", m_max}, {"stab_tol", stab_tol},
                  {"growth_per_m", growth}, {"strong_growth", strong}};
  return r;
}

}  // namespace

CheckReport check_weco(const WeightFamily& fam, int n, double horizon,
                       int m_max, double stab_tol) {
  return weco_impl(fam, n, 1.0, horizon, m_max, stab_tol);
}

CheckReport check_weco_p(const WeightFamily& fam, int n, double p,
                         double horizon, int m_max, double stab_tol) {
  return weco_impl(fam, n, p, horizon, m_max, stab_tol);
}

CheckReport check_convergence_factor(const WeightFamily& fam, int n, int m,
                                     double r_shift, double horizon, double tol) {
  if (m <= n)
    throw std::invalid_argument("check_convergence_factor: need m > n");
  require(n >= 1 && m <= fam.n_max(), "check_convergence_factor: indices out of range");
  require(r_shift >= 0.0, "check_convergence_factor: shift must be >= 0");
  const Weight& wn = fam.member(n);
  const Weight& wm = fam.member(m);
  double sup = -std::numeric_limits<double>::infinity();
  double arg = horizon;
  std::vector<std::pair<double, double>> tail;
  for (double s : asymptotic_sample_points(horizon)) {
    if (s < horizon / 2.0) continue;
    const double lv = wn.log_eval(r_shift + s) - wm.log_eval(s);
    tail.emplace_back(s, lv);
    if (lv > sup) {
      sup = lv;
      arg = s;
    }
  }
  CheckReport rep;
  rep.label = kNumericOnlyLabel;
  const double value = std::exp(std::min(sup, 700.0));
  rep.extremum = value;
  rep.verdict = value <= tol ? Verdict::pass : Verdict::fail;
  if (rep.passed()) {
    rep.witness = {{arg, value}};
  } else {
    for (const auto& [s, lv] : tail)
      if (lv >= sup - 1e-12 && rep.witness.size() < 8)
        rep.witness.push_back({s, std::exp(std::min(lv, 700.0))});
  }
  rep.parameters = {{"family", fam.name()}, {"n", n}, {"m", m},
                    {"shift", r_shift}, {"horizon", horizon}, {"tol", tol}};
  return rep;
}

double derivation_continuity_bound(const WeightFamily& fam, int n, int m,
                                   double shift, double horizon,
                                   const std::vector<double>& extra_points) {
  require(n >= 1 && m >= 1 && n <= fam.n_max() && m <= fam.n_max(),
          "derivation_continuity_bound: indices out of range");
  require(shift >= 0.0, "derivation_continuity_bound: shift must be >= 0");
  const Weight& wn = fam.member(n);
  const Weight& wm = fam.member(m);
  auto pts = asymptotic_sample_points(horizon);
  pts.insert(pts.end(), extra_points.begin(), extra_points.end());
  double sup = 0.0;
  for (double t : pts) {
    if (t <= 0.0 || t > horizon) continue;
    const double lv = std::log(t) + wn.log_eval(t + shift) - wm.log_eval(t);
    sup = std::max(sup, std::exp(std::min(lv, 700.0)));
  }
  return sup;
}

}  // namespace aomega

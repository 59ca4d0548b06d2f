#include "aomega/runner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "aomega/operators.hpp"

namespace aomega {

namespace {

// -------- deterministic sampling (identical across platforms for a fixed
// seed: raw mt19937_64 bits mapped to [0,1) directly) --------

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int pick(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
};

struct RunContext {
  const ExperimentConfig& cfg;
  std::map<std::string, WeightFamily> families;
  std::map<std::string, GridFunction> functions;
  std::map<std::string, Measure> measures;
};

// -------- suite parameter access --------

double p_num(const SuiteSpec& s, const char* key, double fallback) {
  if (!s.params.contains(key)) return fallback;
  if (!s.params[key].is_number())
    throw ConfigError("suite '" + s.name + "': param '" + key + "' must be numeric");
  return s.params[key].get<double>();
}

int p_int(const SuiteSpec& s, const char* key, int fallback) {
  if (!s.params.contains(key)) return fallback;
  if (!s.params[key].is_number_integer())
    throw ConfigError("suite '" + s.name + "': param '" + key + "' must be an integer");
  return s.params[key].get<int>();
}

double p_num_req(const SuiteSpec& s, const char* key) {
  if (!s.params.contains(key))
    throw ConfigError("suite '" + s.name + "': missing param '" + key + "'");
  return p_num(s, key, 0.0);
}

std::vector<double> p_list(const SuiteSpec& s, const char* key,
                           std::vector<double> fallback) {
  if (!s.params.contains(key)) return fallback;
  if (!s.params[key].is_array())
    throw ConfigError("suite '" + s.name + "': param '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : s.params[key]) out.push_back(x.get<double>());
  return out;
}

std::vector<int> p_int_list(const SuiteSpec& s, const char* key,
                            std::vector<int> fallback) {
  if (!s.params.contains(key)) return fallback;
  std::vector<int> out;
  for (const auto& x : s.params[key]) out.push_back(x.get<int>());
  return out;
}

const WeightFamily& t_family(RunContext& ctx, const SuiteSpec& s) {
  if (!s.targets.contains("family"))
    throw ConfigError("suite '" + s.name + "': check needs target 'family'");
  return ctx.families.at(s.targets["family"].get<std::string>());
}

const GridFunction& t_function(RunContext& ctx, const SuiteSpec& s, const char* key) {
  if (!s.targets.contains(key))
    throw ConfigError("suite '" + s.name + "': check needs target '" + key + "'");
  return ctx.functions.at(s.targets[key].get<std::string>());
}

const Measure& t_measure(RunContext& ctx, const SuiteSpec& s, const char* key = "measure") {
  if (!s.targets.contains(key))
    throw ConfigError("suite '" + s.name + "': check needs target '" + key + "'");
  return ctx.measures.at(s.targets[key].get<std::string>());
}

const Weight& t_member(RunContext& ctx, const SuiteSpec& s) {
  return t_family(ctx, s).member(p_int(s, "n", 1));
}

// -------- random test data --------

GridFunction random_compact_function(Rng& rng, const Grid& g, double support_max) {
  const cplx scale{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  if (rng.pick(2) == 0) {
    const double lo = rng.uniform(0.0, support_max / 2.0);
    const double width = rng.uniform(8.0 * g.h, support_max / 2.0);
    return GridFunction::box(g, lo, lo + width, scale);
  }
  const double radius = rng.uniform(8.0 * g.h, support_max / 4.0);
  const double center = rng.uniform(radius, support_max / 2.0);
  return GridFunction::bump(g, center, radius, scale);
}

Measure random_atom_measure(Rng& rng, int atoms, double loc_max) {
  std::vector<Atom> out;
  for (int i = 0; i < atoms; ++i) {
    // Dyadic locations and masses so measure identities stay exact.
    const double t = static_cast<double>(rng.pick(static_cast<int>(loc_max * 4))) * 0.25;
    const double re = (rng.pick(2) ? 1.0 : -1.0) * std::exp2(-rng.pick(3));
    const double im = (rng.pick(2) ? 1.0 : -1.0) * std::exp2(-rng.pick(3));
    out.push_back({t, {re, im}});
  }
  return Measure::from_atoms(std::move(out));
}

// -------- check handlers --------

using Handler = std::function<CheckReport(RunContext&, const SuiteSpec&, std::uint64_t)>;

CheckReport h_submultiplicative(RunContext& ctx, const SuiteSpec& s, std::uint64_t seed) {
  const Weight& w = t_member(ctx, s);
  Rng rng(seed);
  const int pairs = p_int(s, "num_pairs", 1000);
  const double s_max = p_num(s, "s_max", 50.0);
  std::vector<std::pair<double, double>> data;
  data.reserve(static_cast<std::size_t>(pairs));
  for (int i = 0; i < pairs; ++i)
    data.emplace_back(rng.uniform(0.0, s_max), rng.uniform(0.0, s_max));
  return check_submultiplicative(w, data, p_num(s, "rel_tol", 1e-9));
}

CheckReport h_subadditive_extension(RunContext&, const SuiteSpec& s, std::uint64_t) {
  const auto v = IntegerSubadditive::popcount();
  return check_subadditive_extension(v, p_num(s, "grid_step", 1.0 / 64.0),
                                     p_num(s, "x_max", 64.0),
                                     p_num(s, "abs_tol", 1e-12));
}

CheckReport h_root_limit(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const double horizon = p_num(s, "horizon", 1e4);
  return check_root_limit(t_member(ctx, s), horizon,
                          p_num(s, "window", horizon / 2.0), p_num(s, "tol", 1e-2));
}

CheckReport h_tends_to_infinity(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const auto thresholds = p_list(s, "thresholds", {10.0, 100.0});
  return check_tends_to_infinity(t_member(ctx, s), p_num(s, "horizon", 1e4), thresholds);
}

CheckReport h_condition_c(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  return check_condition_c(t_family(ctx, s), p_int(s, "n", 1),
                           p_num(s, "horizon", 1024.0), p_num_req(s, "threshold"));
}

CheckReport h_condition_d(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  return check_condition_d(t_family(ctx, s), p_num_req(s, "t"), p_num_req(s, "threshold"));
}

CheckReport h_wein(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  return check_wein(t_family(ctx, s), p_int(s, "n", 1), p_num(s, "horizon", 1024.0),
                    p_num_req(s, "growth_threshold"));
}

CheckReport h_weco(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const WeightFamily& fam = t_family(ctx, s);
  return check_weco(fam, p_int(s, "n", 1), p_num(s, "horizon", 1024.0),
                    p_int(s, "m_max", fam.n_max()), p_num(s, "stab_tol", 1e-3));
}

CheckReport h_weco_p(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const WeightFamily& fam = t_family(ctx, s);
  return check_weco_p(fam, p_int(s, "n", 1), p_num_req(s, "p"),
                      p_num(s, "horizon", 1024.0), p_int(s, "m_max", fam.n_max()),
                      p_num(s, "stab_tol", 1e-3));
}

CheckReport h_convergence_factor(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  return check_convergence_factor(t_family(ctx, s), p_int(s, "n", 1),
                                  p_int(s, "m", 2), p_num(s, "r", 1.0),
                                  p_num(s, "horizon", 1024.0), p_num_req(s, "tol"));
}

CheckReport banach_report(double worst, int worst_case, double slack, int cases,
                          std::size_t violations, const char* what) {
  CheckReport r;
  r.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
  r.extremum = worst;
  r.witness = {{static_cast<double>(worst_case), worst}};
  r.parameters = {{"cases", cases}, {"slack", slack}, {"violations", violations},
                  {"data", what}};
  return r;
}

CheckReport h_banach_function_norm(RunContext& ctx, const SuiteSpec& s, std::uint64_t seed) {
  const Weight& w = t_member(ctx, s);
  Rng rng(seed);
  const int cases = p_int(s, "num_pairs", 25);
  const double support_max = p_num(s, "support_max", 8.0);
  const double slack = p_num(s, "slack", 1e-6);
  double worst = 0.0;
  int worst_case = 0;
  std::size_t violations = 0;
  for (int i = 0; i < cases; ++i) {
    const GridFunction f = random_compact_function(rng, ctx.cfg.grid, support_max);
    const GridFunction g = random_compact_function(rng, ctx.cfg.grid, support_max);
    const double denom = weighted_norm(f, w) * weighted_norm(g, w);
    if (denom == 0.0) continue;
    const double ratio = weighted_norm(convolve(f, g), w) / denom;
    if (ratio > 1.0 + slack) ++violations;
    if (ratio > worst) {
      worst = ratio;
      worst_case = i;
    }
  }
  return banach_report(worst, worst_case, slack, cases, violations, "box/bump pairs");
}

CheckReport h_banach_measure_norm(RunContext& ctx, const SuiteSpec& s, std::uint64_t seed) {
  const Weight& w = t_member(ctx, s);
  Rng rng(seed);
  const int cases = p_int(s, "num_pairs", 25);
  const int atoms = p_int(s, "atoms_per", 4);
  const double loc_max = p_num(s, "loc_max", 8.0);
  const double slack = p_num(s, "slack", 1e-6);
  double worst = 0.0;
  int worst_case = 0;
  std::size_t violations = 0;
  for (int i = 0; i < cases; ++i) {
    const Measure mu = random_atom_measure(rng, atoms, loc_max);
    const Measure nu = random_atom_measure(rng, atoms, loc_max);
    const double denom = measure_norm(mu, w) * measure_norm(nu, w);
    if (denom == 0.0) continue;
    const double ratio = measure_norm(convolve_measures(mu, nu), w) / denom;
    if (ratio > 1.0 + slack) ++violations;
    if (ratio > worst) {
      worst = ratio;
      worst_case = i;
    }
  }
  return banach_report(worst, worst_case, slack, cases, violations, "atom measures");
}

CheckReport h_character(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const GridFunction& f = t_function(ctx, s, "f");
  const GridFunction& g = t_function(ctx, s, "g");
  const double tol = p_num(s, "tol", 1e-2);
  std::vector<std::pair<double, double>> zs = {{0, 0}, {1, 0}, {1, 1}, {0, 5}};
  if (s.params.contains("z")) {
    zs.clear();
    for (const auto& z : s.params["z"]) zs.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  const GridFunction conv = convolve(f, g);
  CheckReport r;
  r.verdict = Verdict::pass;
  ojson detail = ojson::array();
  for (const auto& [re, im] : zs) {
    const cplx z{re, im};
    const double err = std::abs(laplace(conv, z) - laplace(f, z) * laplace(g, z));
    detail.push_back({{"z", {re, im}}, {"error", err}});
    if (err > r.extremum) {
      r.extremum = err;
      r.witness = {{re, err}};
    }
    if (err > tol) r.verdict = Verdict::fail;
  }
  r.parameters = {{"tol", tol}, {"errors", detail}};
  return r;
}

CheckReport h_titchmarsh(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  return check_titchmarsh(t_function(ctx, s, "f"), t_function(ctx, s, "g"));
}

std::vector<int> default_k_list(int top) {
  std::vector<int> ks;
  for (int k = 16; k <= top; k *= 2) ks.push_back(k);
  return ks;
}

CheckReport h_ai_norms(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const WeightFamily& fam = t_family(ctx, s);
  const int n = p_int(s, "n", 1);
  const double tol = p_num(s, "tol", 1e-3);
  const auto ks = p_int_list(s, "k_list", default_k_list(1024));
  CheckReport r;
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int k : ks) {
    const double norm = weighted_norm(approximate_identity(k, ctx.cfg.grid), fam.member(n));
    if (norm > prev * (1.0 + 1e-12)) decreasing = false;
    prev = norm;
    r.witness.push_back({static_cast<double>(k), norm});
  }
  r.extremum = prev;
  r.verdict = (decreasing && std::abs(prev - 1.0) <= tol) ? Verdict::pass : Verdict::fail;
  r.parameters = {{"family", fam.name()}, {"n", n}, {"tol", tol},
                  {"decreasing", decreasing}};
  return r;
}

CheckReport h_ai_converges(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const WeightFamily& fam = t_family(ctx, s);
  const GridFunction& f = t_function(ctx, s, "f");
  const int n = p_int(s, "n", 1);
  const double tol = p_num(s, "tol", 1e-3);
  const auto ks = p_int_list(s, "k_list", default_k_list(1024));
  CheckReport r;
  for (int k : ks) {
    GridFunction diff = convolve(approximate_identity(k, ctx.cfg.grid), f);
    for (std::size_t j = 0; j < diff.v.size(); ++j) diff.v[j] -= f.v[j];
    r.witness.push_back({static_cast<double>(k), weighted_norm(diff, fam.member(n))});
  }
  bool decreasing = true;
  for (std::size_t i = r.witness.size() / 2; i + 1 < r.witness.size(); ++i)
    if (r.witness[i + 1].value > r.witness[i].value * (1.0 + 1e-9)) decreasing = false;
  r.extremum = r.witness.back().value;
  r.verdict = (decreasing && r.extremum <= tol) ? Verdict::pass : Verdict::fail;
  r.parameters = {{"family", fam.name()}, {"n", n}, {"tol", tol},
                  {"eventually_decreasing", decreasing}};
  return r;
}

CheckReport h_endo_ai(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const DilationEndo phi{p_num(s, "c", 2.0)};
  return endo_ai_check(phi, t_family(ctx, s), p_int(s, "n", 1),
                       t_function(ctx, s, "f"),
                       p_int_list(s, "k_list", default_k_list(512)),
                       p_num(s, "tol", 1e-3));
}

CheckReport h_dilation_norm_identity(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  return check_dilation_norm_identity(p_num(s, "a", 1.0), t_function(ctx, s, "f"),
                                      p_num(s, "tol", 1e-3));
}

CheckReport h_endo_semigroup(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const GridFunction& f = t_function(ctx, s, "f");
  const DilationEndo phi{p_num(s, "c", 2.0)};
  const auto s_list = p_list(s, "s_list", {0.5, 1.0, 2.0});
  const double factor = p_num(s, "factor", 8.0);
  const Weight one = Weight::power(0.0);
  const double scale = weighted_norm(f, one);
  CheckReport r;
  r.verdict = Verdict::pass;
  for (double sv : s_list) {
    const GridFunction lhs =
        dilation_apply(phi, convolve_measure_function(Measure::dirac(sv), f));
    const GridFunction rhs =
        convolve_measure_function(endo_semigroup_nu(phi, sv), dilation_apply(phi, f));
    GridFunction diff = lhs;
    for (std::size_t j = 0; j < diff.v.size(); ++j) diff.v[j] -= rhs.v[j];
    const double res = weighted_norm(diff, one);
    r.witness.push_back({sv, res});
    if (res > factor * f.grid.h * scale) r.verdict = Verdict::fail;
    r.extremum = std::max(r.extremum, res);
  }
  // Semigroup law on the point masses themselves: exact atom arithmetic.
  bool exact = true;
  for (double a : s_list)
    for (double b : s_list) {
      const Measure lhs = convolve_measures(endo_semigroup_nu(phi, a),
                                            endo_semigroup_nu(phi, b));
      const Measure rhs = endo_semigroup_nu(phi, a + b);
      exact = exact && lhs.atoms().size() == 1 && rhs.atoms().size() == 1 &&
              lhs.atoms()[0].t == rhs.atoms()[0].t &&
              lhs.atoms()[0].mass == rhs.atoms()[0].mass;
    }
  if (!exact) r.verdict = Verdict::fail;
  r.parameters = {{"c", phi.c}, {"factor", factor}, {"semigroup_exact", exact}};
  return r;
}

CheckReport h_leibniz(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const Measure& mu = t_measure(ctx, s);
  const GridFunction& f = t_function(ctx, s, "f");
  const GridFunction& g = t_function(ctx, s, "g");
  const Weight& w = t_member(ctx, s);
  const double factor = p_num(s, "factor", 1.0);
  const DerivationOp d{mu};
  const GridFunction lhs = derivation_apply(d, convolve(f, g));
  const GridFunction t1 = convolve(derivation_apply(d, f), g);
  const GridFunction t2 = convolve(f, derivation_apply(d, g));
  GridFunction diff = lhs;
  for (std::size_t j = 0; j < diff.v.size(); ++j) diff.v[j] -= t1.v[j] + t2.v[j];
  const double residual = weighted_norm(diff, w);
  CheckReport r;
  r.verdict = residual <= factor * f.grid.h ? Verdict::pass : Verdict::fail;
  r.extremum = residual;
  r.witness = {{f.grid.h, residual}};
  r.parameters = {{"factor", factor}, {"h", f.grid.h},
                  {"residual_over_h", residual / f.grid.h}};
  return r;
}

CheckReport h_derivation_symbol(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const Measure& mu = t_measure(ctx, s);
  if (mu.density())
    throw ConfigError("suite '" + s.name + "': derivation_symbol needs an atom-only measure");
  const auto ts = p_list(s, "t_list", {0.0, 0.25, 1.0, 3.0});
  const DerivationOp d{mu};
  CheckReport r;
  r.verdict = Verdict::pass;
  for (double t : ts) {
    const Measure got = derivation_on_dirac(d, t);
    const Measure want =
        convolve_measures(apply_X_measure(Measure::dirac(t)), mu);
    bool same = got.atoms().size() == want.atoms().size();
    for (std::size_t i = 0; same && i < got.atoms().size(); ++i)
      same = got.atoms()[i].t == want.atoms()[i].t &&
             got.atoms()[i].mass == want.atoms()[i].mass;
    r.witness.push_back({t, same ? 0.0 : 1.0});
    if (!same) r.verdict = Verdict::fail;
  }
  r.parameters = {{"points", ts.size()}};
  return r;
}

CheckReport h_alpha_inequality(RunContext& ctx, const SuiteSpec& s, std::uint64_t seed) {
  const Measure& mu = t_measure(ctx, s);
  const DerivationOp d{mu};
  CheckReport r;
  r.verdict = Verdict::pass;
  r.extremum = std::numeric_limits<double>::infinity();
  auto run_case = [&](const Measure& nu, double label) {
    const CheckReport c = check_alpha_inequality(d, nu, ctx.cfg.grid.h);
    if (!c.passed()) r.verdict = Verdict::fail;
    r.extremum = std::min(r.extremum, c.extremum);
    r.witness.push_back({label, c.extremum});
  };
  if (s.targets.contains("mu_in")) {
    run_case(t_measure(ctx, s, "mu_in"), 0.0);
  } else {
    Rng rng(seed);
    const int cases = p_int(s, "num_cases", 20);
    for (int i = 0; i < cases; ++i)
      run_case(random_atom_measure(rng, p_int(s, "atoms_per", 3), 8.0),
               static_cast<double>(i));
  }
  if (std::isinf(r.extremum)) r.extremum = 0.0;
  r.parameters = {{"slack", ctx.cfg.grid.h}};
  return r;
}

CheckReport h_ghahramani(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  return ghahramani_bound(t_measure(ctx, s), t_member(ctx, s),
                          p_num(s, "horizon", 1024.0));
}

CheckReport h_norms_profile(RunContext& ctx, const SuiteSpec& s, std::uint64_t) {
  const WeightFamily& fam = t_family(ctx, s);
  const GridFunction& f = t_function(ctx, s, "f");
  const int n_max = p_int(s, "n_max", fam.n_max());
  const auto profile = norms_profile(f, fam, n_max);
  CheckReport r;
  bool nondecreasing = true;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0 && profile[i] < profile[i - 1] * (1.0 - 1e-12)) nondecreasing = false;
    r.witness.push_back({static_cast<double>(i + 1), profile[i]});
  }
  r.verdict = nondecreasing ? Verdict::pass : Verdict::fail;
  r.extremum = profile.back();
  r.parameters = {{"family", fam.name()}, {"n_max", n_max},
                  {"nondecreasing", nondecreasing}};
  return r;
}

struct CheckDef {
  const char* targets;
  const char* params;
  Handler fn;
};

const std::map<std::string, CheckDef>& registry() {
  static const std::map<std::string, CheckDef> defs = {
      {"submultiplicative",
       {"family", "n, num_pairs, s_max, rel_tol", h_submultiplicative}},
      {"subadditive_extension", {"", "grid_step, x_max, abs_tol", h_subadditive_extension}},
      {"root_limit", {"family", "n, horizon, window, tol", h_root_limit}},
      {"tends_to_infinity", {"family", "n, horizon, thresholds", h_tends_to_infinity}},
      {"condition_c", {"family", "n, horizon, threshold", h_condition_c}},
      {"condition_d", {"family", "t, threshold", h_condition_d}},
      {"wein", {"family", "n, horizon, growth_threshold", h_wein}},
      {"weco", {"family", "n, horizon, m_max, stab_tol", h_weco}},
      {"weco_p", {"family", "n, p, horizon, m_max, stab_tol", h_weco_p}},
      {"convergence_factor", {"family", "n, m, r, horizon, tol", h_convergence_factor}},
      {"banach_function_norm",
       {"family", "n, num_pairs, support_max, slack", h_banach_function_norm}},
      {"banach_measure_norm",
       {"family", "n, num_pairs, atoms_per, loc_max, slack", h_banach_measure_norm}},
      {"character", {"f, g", "z, tol", h_character}},
      {"titchmarsh", {"f, g", "", h_titchmarsh}},
      {"ai_norms", {"family", "n, k_list, tol", h_ai_norms}},
      {"ai_converges", {"family, f", "n, k_list, tol", h_ai_converges}},
      {"endo_ai", {"family, f", "n, c, k_list, tol", h_endo_ai}},
      {"dilation_norm_identity", {"f", "a, tol", h_dilation_norm_identity}},
      {"endo_semigroup", {"f", "c, s_list, factor", h_endo_semigroup}},
      {"leibniz", {"measure, f, g, family", "n, factor", h_leibniz}},
      {"derivation_symbol", {"measure", "t_list", h_derivation_symbol}},
      {"alpha_inequality", {"measure[, mu_in]", "num_cases, atoms_per", h_alpha_inequality}},
      {"ghahramani", {"measure, family", "n, horizon", h_ghahramani}},
      {"norms_profile", {"family, f", "n_max", h_norms_profile}},
  };
  return defs;
}

}  // namespace

ExperimentConfig config_from_json(const ojson& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    try {
      cfg.grid = Grid::make(g.value("h", 1.0 / 1024.0), g.value("T", 64.0));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError("seed must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  auto read_map = [&](const char* key, std::map<std::string, ojson>& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_object()) throw ConfigError(std::string(key) + " must be an object");
    for (const auto& [name, desc] : j[key].items()) out[name] = desc;
  };
  read_map("families", cfg.families);
  read_map("functions", cfg.functions);
  read_map("measures", cfg.measures);

  if (j.contains("suites")) {
    if (!j["suites"].is_array()) throw ConfigError("suites must be an array");
    std::size_t index = 0;
    for (const auto& sj : j["suites"]) {
      SuiteSpec s;
      s.check = sj.value("check", "");
      s.name = sj.value("name", s.check + "#" + std::to_string(index));
      if (sj.contains("targets")) s.targets = sj["targets"];
      if (sj.contains("params")) s.params = sj["params"];
      s.expect = sj.value("expect", "pass");
      if (s.expect != "pass" && s.expect != "fail")
        throw ConfigError("suite '" + s.name + "': expect must be 'pass' or 'fail'");
      if (!registry().contains(s.check))
        throw ConfigError("suite '" + s.name + "': unknown check '" + s.check + "'");
      for (const auto& [key, val] : s.targets.items()) {
        if (!val.is_string())
          throw ConfigError("suite '" + s.name + "': target '" + key + "' must name an object");
        const std::string name = val.get<std::string>();
        const bool is_family = key == "family";
        const bool is_function = key == "f" || key == "g" || key == "function";
        const bool is_measure = key == "measure" || key == "mu" || key == "mu_in";
        if (!is_family && !is_function && !is_measure)
          throw ConfigError("suite '" + s.name + "': unknown target key '" + key + "'");
        if (is_family && !cfg.families.contains(name))
          throw ConfigError("suite '" + s.name + "': unknown family '" + name + "'");
        if (is_function && !cfg.functions.contains(name))
          throw ConfigError("suite '" + s.name + "': unknown function '" + name + "'");
        if (is_measure && !cfg.measures.contains(name))
          throw ConfigError("suite '" + s.name + "': unknown measure '" + name + "'");
      }
      cfg.suites.push_back(std::move(s));
      ++index;
    }
  }
  return cfg;
}

RunReport run_experiments(const ExperimentConfig& config) {
  RunContext ctx{config, {}, {}, {}};
  for (const auto& [name, desc] : config.families)
    ctx.families.emplace(name, family_from_json(desc));
  for (const auto& [name, desc] : config.functions)
    ctx.functions.emplace(name, function_from_json(desc, config.grid));
  for (const auto& [name, desc] : config.measures)
    ctx.measures.emplace(name, measure_from_json(desc, config.grid));

  RunReport report;
  report.config = config;
  report.aggregate = true;
  std::uint64_t index = 0;
  for (const SuiteSpec& s : config.suites) {
    SuiteResult res;
    res.spec = s;
    const std::uint64_t seed =
        config.seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    try {
      const CheckReport rep = registry().at(s.check).fn(ctx, s, seed);
      res.ok = (s.expect == "pass") == rep.passed() &&
               (s.expect != "fail" || rep.verdict == Verdict::fail);
      res.report = rep;
    } catch (const ConfigError&) {
      throw;  // malformed suite: a config problem, not a numeric outcome
    } catch (const std::exception& e) {
      res.ok = false;
      res.error = e.what();
    }
    report.aggregate = report.aggregate && res.ok;
    report.suites.push_back(std::move(res));
    ++index;
  }
  return report;
}

ojson RunReport::to_json() const {
  ojson j;
  j["environment"] = {{"version", kVersion},
                      {"grid", {{"h", config.grid.h}, {"T", config.grid.T}}},
                      {"seed", config.seed}};
  ojson suites_j = ojson::array();
  for (const SuiteResult& r : suites) {
    ojson sj;
    sj["name"] = r.spec.name;
    sj["check"] = r.spec.check;
    sj["targets"] = r.spec.targets;
    sj["params"] = r.spec.params;
    sj["expect"] = r.spec.expect;
    sj["ok"] = r.ok;
    if (r.report)
      sj["report"] = report_to_json(*r.report);
    else
      sj["error"] = r.error;
    suites_j.push_back(std::move(sj));
  }
  j["suites"] = suites_j;
  j["aggregate"] = aggregate ? "pass" : "fail";
  return j;
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "check,target,verdict,extremum,witness\n";
  for (const SuiteResult& r : suites) {
    std::string target;
    for (const auto& [key, val] : r.spec.targets.items()) {
      if (!target.empty()) target += ";";
      target += key + "=" + val.get<std::string>();
    }
    std::string witness;
    std::string verdict = "error";
    double extremum = 0.0;
    if (r.report) {
      verdict = to_string(r.report->verdict);
      extremum = r.report->extremum;
      char buf[64];
      for (const Witness& w : r.report->witness) {
        std::snprintf(buf, sizeof buf, "%.17g@%.17g", w.point, w.value);
        if (!witness.empty()) witness += "|";
        witness += buf;
      }
    }
    char ebuf[32];
    std::snprintf(ebuf, sizeof ebuf, "%.17g", extremum);
    os << r.spec.check << ",\"" << target << "\"," << verdict << "," << ebuf
       << ",\"" << witness << "\"\n";
  }
  return os.str();
}

ojson builtin_catalog() {
  ojson j;
  j["weights"] = ojson::array({
      ojson{{"kind", "power"}, {"params", "a >= 0"}},
      ojson{{"kind", "exponential"}, {"params", "a real"}},
      ojson{{"kind", "exp_sqrt"}, {"params", "a >= 0"}},
      ojson{{"kind", "fractional_power"}, {"params", "0 < a < 1"}},
      ojson{{"kind", "binary_pow"}, {"params", "b > 1"}},
      ojson{{"kind", "product"}, {"params", "factors: [weight, weight]"}},
      ojson{{"kind", "pow"}, {"params", "base: weight, k integer"}},
  });
  j["families"] = ojson::array({
      ojson{{"kind", "power_n"}, {"params", "n_max"}},
      ojson{{"kind", "frac_power"}, {"params", "n_max"}},
      ojson{{"kind", "exp_sqrt_n"}, {"params", "n_max"}},
      ojson{{"kind", "exp_n"}, {"params", "n_max"}},
      ojson{{"kind", "binary_pow_n"}, {"params", "n_max"}},
      ojson{{"kind", "pow_weight"}, {"params", "base: weight, n_max"}},
  });
  j["functions"] = ojson::array({
      ojson{{"kind", "box"}, {"params", "lo, hi, scale_re?, scale_im?"}},
      ojson{{"kind", "bump"}, {"params", "center, radius, scale_re?, scale_im?"}},
      ojson{{"kind", "exp_decay"}, {"params", "rate, scale_re?, scale_im?"}},
      ojson{{"kind", "samples"}, {"params", "re: [..], im?: [..]"}},
  });
  j["measures"] = ojson{{"schema", "atoms: [{t, re, im?}], density?: function"}};
  ojson checks = ojson::array();
  for (const auto& [name, def] : registry())
    checks.push_back({{"check", name}, {"targets", def.targets}, {"params", def.params}});
  j["checks"] = checks;
  return j;
}

}  // namespace aomega

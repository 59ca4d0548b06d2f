#include "aomega/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace aomega {

namespace {

double get_num(const ojson& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

double get_num_or(const ojson& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError(std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

int get_int(const ojson& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ConfigError(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

std::string get_kind(const ojson& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("descriptor needs a string 'kind'");
  return j["kind"].get<std::string>();
}

cplx get_scale(const ojson& j) {
  return {get_num_or(j, "scale_re", 1.0), get_num_or(j, "scale_im", 0.0)};
}

double finite_or_clamped(double x) {
  if (std::isnan(x)) return 0.0;
  if (std::isinf(x)) return x > 0 ? 1e308 : -1e308;
  return x;
}

}  // namespace

Weight weight_from_json(const ojson& j) {
  const std::string kind = get_kind(j);
  try {
    if (kind == "power") return Weight::power(get_num(j, "a"));
    if (kind == "exponential") return Weight::exponential(get_num(j, "a"));
    if (kind == "exp_sqrt") return Weight::exp_sqrt(get_num(j, "a"));
    if (kind == "fractional_power") return Weight::fractional_power(get_num(j, "a"));
    if (kind == "binary_pow") return Weight::binary_pow(get_num(j, "b"));
    if (kind == "product") {
      if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() != 2)
        throw ConfigError("product weight needs a 2-element 'factors' array");
      return Weight::product(weight_from_json(j["factors"][0]),
                             weight_from_json(j["factors"][1]));
    }
    if (kind == "pow") {
      if (!j.contains("base")) throw ConfigError("pow weight needs 'base'");
      return Weight::pow(weight_from_json(j["base"]), get_int(j, "k"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("weight '") + kind + "': " + e.what());
  }
  throw ConfigError("unknown weight kind '" + kind + "'");
}

ojson weight_to_json(const Weight& w) {
  switch (w.kind()) {
    case Weight::Kind::power:
      return {{"kind", "power"}, {"a", w.param()}};
    case Weight::Kind::exponential:
      return {{"kind", "exponential"}, {"a", w.param()}};
    case Weight::Kind::exp_sqrt:
      return {{"kind", "exp_sqrt"}, {"a", w.param()}};
    case Weight::Kind::fractional_power:
      return {{"kind", "fractional_power"}, {"a", w.param()}};
    case Weight::Kind::binary_pow:
      return {{"kind", "binary_pow"}, {"b", w.param()}};
    case Weight::Kind::product:
      return {{"kind", "product"},
              {"factors", ojson::array({weight_to_json(w.lhs()), weight_to_json(w.rhs())})}};
    case Weight::Kind::int_pow:
      return {{"kind", "pow"}, {"base", weight_to_json(w.lhs())}, {"k", w.exponent()}};
  }
  throw ConfigError("unserializable weight");
}

WeightFamily family_from_json(const ojson& j) {
  const std::string kind = get_kind(j);
  const int n_max = get_int(j, "n_max");
  try {
    if (kind == "power_n") return WeightFamily::power_n(n_max);
    if (kind == "frac_power") return WeightFamily::frac_power(n_max);
    if (kind == "exp_sqrt_n") return WeightFamily::exp_sqrt_n(n_max);
    if (kind == "exp_n") return WeightFamily::exp_n(n_max);
    if (kind == "binary_pow_n") return WeightFamily::binary_pow_n(n_max);
    if (kind == "pow_weight") {
      if (!j.contains("base")) throw ConfigError("pow_weight family needs 'base'");
      return WeightFamily::pow_weight(weight_from_json(j["base"]), n_max);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("family '") + kind + "': " + e.what());
  }
  throw ConfigError("unknown family kind '" + kind + "'");
}

ojson family_to_json(const WeightFamily& fam) {
  return {{"kind", fam.name()}, {"n_max", fam.n_max()}};
}

GridFunction function_from_json(const ojson& j, const Grid& g) {
  const std::string kind = get_kind(j);
  try {
    if (kind == "box")
      return GridFunction::box(g, get_num(j, "lo"), get_num(j, "hi"), get_scale(j));
    if (kind == "bump")
      return GridFunction::bump(g, get_num(j, "center"), get_num(j, "radius"),
                                get_scale(j));
    if (kind == "exp_decay")
      return GridFunction::exp_decay(g, get_num(j, "rate"), get_scale(j));
    if (kind == "samples") {
      if (!j.contains("re") || !j["re"].is_array())
        throw ConfigError("samples function needs an 're' array");
      const auto& re = j["re"];
      if (re.size() > g.n) throw ConfigError("samples function longer than the grid");
      std::vector<cplx> v(g.n, cplx{0.0, 0.0});
      for (std::size_t i = 0; i < re.size(); ++i) v[i] = re[i].get<double>();
      if (j.contains("im")) {
        const auto& im = j["im"];
        if (!im.is_array() || im.size() != re.size())
          throw ConfigError("samples 'im' must match 're' in length");
        for (std::size_t i = 0; i < im.size(); ++i)
          v[i] = {v[i].real(), im[i].get<double>()};
      }
      return GridFunction::from_samples(g, std::move(v));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("function '") + kind + "': " + e.what());
  }
  throw ConfigError("unknown function kind '" + kind + "'");
}

Measure measure_from_json(const ojson& j, const Grid& g) {
  if (!j.is_object()) throw ConfigError("measure descriptor must be an object");
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) throw ConfigError("measure 'atoms' must be an array");
    for (const auto& a : j["atoms"])
      atoms.push_back({get_num(a, "t"),
                       {get_num_or(a, "re", 0.0), get_num_or(a, "im", 0.0)}});
  }
  std::optional<GridFunction> density;
  if (j.contains("density")) density = function_from_json(j["density"], g);
  try {
    return Measure::make(std::move(atoms), std::move(density));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("measure: ") + e.what());
  }
}

ojson report_to_json(const CheckReport& r) {
  ojson j;
  j["verdict"] = to_string(r.verdict);
  if (!r.label.empty()) j["label"] = r.label;
  j["extremum"] = finite_or_clamped(r.extremum);
  if (r.selected_m >= 0) j["selected_m"] = r.selected_m;
  ojson w = ojson::array();
  for (const Witness& x : r.witness)
    w.push_back({{"point", finite_or_clamped(x.point)},
                 {"value", finite_or_clamped(x.value)}});
  j["witness"] = w;
  j["parameters"] = r.parameters;
  return j;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive-numeric";
  }
  return "?";
}

void write_function_csv(std::ostream& os, const GridFunction& f) {
  os << "t,re,im\n";
  char buf[96];
  for (std::size_t j = 0; j < f.v.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.node(j),
                  f.v[j].real(), f.v[j].imag());
    os << buf;
  }
}

GridFunction read_function_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,re,im", 0) != 0)
    throw ConfigError("function csv: missing 't,re,im' header");
  std::vector<double> ts;
  std::vector<cplx> vs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double t = 0, re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &t, &re, &im) != 3)
      throw ConfigError("function csv: malformed row '" + line + "'");
    ts.push_back(t);
    vs.emplace_back(re, im);
  }
  if (ts.size() < 2) throw ConfigError("function csv: need at least two rows");
  if (ts.front() != 0.0) throw ConfigError("function csv: grid must start at 0");
  const double h = ts[1] - ts[0];
  if (!(h > 0.0)) throw ConfigError("function csv: nodes must increase");
  for (std::size_t j = 1; j < ts.size(); ++j)
    if (std::abs(ts[j] - static_cast<double>(j) * h) > 1e-9 * std::max(1.0, ts[j]))
      throw ConfigError("function csv: nodes must be uniformly spaced");
  const Grid g = Grid::make(h, ts.back());
  if (g.n != ts.size()) throw ConfigError("function csv: inconsistent node count");
  return GridFunction::from_samples(g, std::move(vs));
}

}  // namespace aomega

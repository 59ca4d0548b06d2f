#include "aomega/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aomega {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
  for (const Atom& a : atoms)
    require(std::isfinite(a.t) && a.t >= 0.0 && std::isfinite(a.mass.real()) &&
                std::isfinite(a.mass.imag()),
            "Measure: atom locations must be finite and >= 0, masses finite");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.t < b.t; });
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && out.back().t == a.t)
      out.back().mass += a.mass;
    else
      out.push_back(a);
  }
  std::erase_if(out, [](const Atom& a) { return a.mass == cplx{0.0, 0.0}; });
  return out;
}

std::int64_t node_index(double t, double h) {
  return std::llround(t / h);
}

}  // namespace

Measure Measure::dirac(double t, cplx mass) {
  return from_atoms({Atom{t, mass}});
}

Measure Measure::from_atoms(std::vector<Atom> atoms) {
  Measure mu;
  mu.atoms_ = normalize_atoms(std::move(atoms));
  return mu;
}

Measure Measure::from_density(GridFunction density) {
  Measure mu;
  mu.density_ = std::move(density);
  return mu;
}

Measure Measure::make(std::vector<Atom> atoms, std::optional<GridFunction> density) {
  Measure mu;
  mu.atoms_ = normalize_atoms(std::move(atoms));
  mu.density_ = std::move(density);
  return mu;
}

Measure Measure::scaled(cplx factor) const {
  if (factor == cplx{0.0, 0.0}) return Measure{};
  Measure out = *this;
  for (Atom& a : out.atoms_) a.mass *= factor;
  if (out.density_)
    for (cplx& x : out.density_->v) x *= factor;
  return out;
}

double measure_norm(const Measure& mu, const Weight& w) {
  double acc = 0.0;
  for (const Atom& a : mu.atoms()) acc += std::abs(a.mass) * w.eval(a.t);
  if (mu.density()) acc += weighted_norm(*mu.density(), w);
  return acc;
}

GridFunction convolve_measure_function(const Measure& mu, const GridFunction& f) {
  GridFunction out = GridFunction::zeros(f.grid);
  const auto n = static_cast<std::int64_t>(f.grid.n);
  for (const Atom& a : mu.atoms()) {
    const std::int64_t r = node_index(a.t, f.grid.h);
    if (r >= n) continue;  // shifted entirely past the horizon
    for (std::int64_t j = r; j < n; ++j)
      out.v[static_cast<std::size_t>(j)] += a.mass * f.v[static_cast<std::size_t>(j - r)];
  }
  if (mu.density()) {
    const GridFunction conv = convolve(*mu.density(), f);
    for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] += conv.v[j];
  }
  return out;
}

Measure convolve_measures(const Measure& mu, const Measure& nu) {
  double dropped = 0.0;

  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size() * nu.atoms().size());
  for (const Atom& a : mu.atoms())
    for (const Atom& b : nu.atoms()) atoms.push_back({a.t + b.t, a.mass * b.mass});

  std::optional<GridFunction> density;
  const GridFunction* dmu = mu.density() ? &*mu.density() : nullptr;
  const GridFunction* dnu = nu.density() ? &*nu.density() : nullptr;
  if (dmu && dnu)
    require(dmu->grid == dnu->grid, "convolve_measures: density grid mismatch");
  const GridFunction* any = dmu ? dmu : dnu;
  if (any) density = GridFunction::zeros(any->grid);

  // Atom-shifted copies of the other part's density.
  auto add_shifted = [&](const GridFunction& d, const std::vector<Atom>& shifts) {
    const auto n = static_cast<std::int64_t>(d.grid.n);
    const std::size_t sd = detail::support_length(d.v);
    for (const Atom& a : shifts) {
      const std::int64_t r = node_index(a.t, d.grid.h);
      for (std::size_t i = 0; i < sd; ++i) {
        const std::int64_t j = r + static_cast<std::int64_t>(i);
        if (j < n)
          density->v[static_cast<std::size_t>(j)] += a.mass * d.v[i];
        else
          dropped += std::abs(a.mass * d.v[i]) * d.grid.h;
      }
    }
  };
  if (dmu) add_shifted(*dmu, nu.atoms());
  if (dnu) add_shifted(*dnu, mu.atoms());

  if (dmu && dnu) {
    const std::size_t sf = detail::support_length(dmu->v);
    const std::size_t sg = detail::support_length(dnu->v);
    const auto full = detail::convolve_full(dmu->v, sf, dnu->v, sg);
    const double h = dmu->grid.h;
    for (std::size_t j = 0; j < full.size(); ++j) {
      if (j < density->v.size())
        density->v[j] += h * full[j];
      else
        dropped += std::abs(h * full[j]) * h;
    }
  }

  if (density && detail::support_length(density->v) == 0) density.reset();
  Measure out = Measure::make(std::move(atoms), std::move(density));
  out.set_truncated_variation(dropped);
  return out;
}

Measure translate_measure(const Measure& mu, double t) {
  require(std::isfinite(t) && t >= 0.0, "translate_measure: shift must be >= 0");
  std::vector<Atom> atoms;
  for (const Atom& a : mu.atoms()) {
    if (a.t < t)
      throw std::domain_error("translate_measure: atom below the shift");
    atoms.push_back({a.t - t, a.mass});
  }
  std::optional<GridFunction> density;
  if (mu.density()) {
    const GridFunction& d = *mu.density();
    const auto r = static_cast<std::size_t>(node_index(t, d.grid.h));
    double max_abs = 0.0;
    for (const cplx& x : d.v) max_abs = std::max(max_abs, std::abs(x));
    for (std::size_t j = 0; j < std::min<std::size_t>(r, d.v.size()); ++j)
      if (std::abs(d.v[j]) > 1e-12 * max_abs)
        throw std::domain_error("translate_measure: density mass below the shift");
    GridFunction shifted = GridFunction::zeros(d.grid);
    for (std::size_t j = 0; j + r < d.v.size(); ++j) shifted.v[j] = d.v[j + r];
    density = std::move(shifted);
  }
  return Measure::make(std::move(atoms), std::move(density));
}

double alpha_measure(const Measure& mu, double eps_rel) {
  double alpha = std::numeric_limits<double>::infinity();
  if (!mu.atoms().empty()) alpha = mu.atoms().front().t;  // sorted
  if (mu.density()) alpha = std::min(alpha, alpha_support(*mu.density(), eps_rel));
  return alpha;
}

Measure apply_X_measure(const Measure& mu) {
  std::vector<Atom> atoms;
  for (const Atom& a : mu.atoms()) atoms.push_back({a.t, a.t * a.mass});
  std::optional<GridFunction> density;
  if (mu.density()) density = apply_X(*mu.density());
  return Measure::make(std::move(atoms), std::move(density));
}

}  // namespace aomega

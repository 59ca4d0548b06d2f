#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "aomega/grid.hpp"
#include "aomega/weight.hpp"

namespace aomega {

/// Point mass: location t >= 0 (kept exact, never grid-rounded while the
/// measure is at rest), complex mass.
struct Atom {
  double t = 0.0;
  cplx mass = 0.0;
};

/// Finite complex measure on the half-line: finitely many atoms plus an
/// optional absolutely continuous part sampled on a grid.  Atoms are kept
/// sorted by location, merged at identical locations, zero masses dropped.
class Measure {
 public:
  Measure() = default;

  static Measure dirac(double t, cplx mass = 1.0);
  static Measure from_atoms(std::vector<Atom> atoms);
  static Measure from_density(GridFunction density);
  static Measure make(std::vector<Atom> atoms, std::optional<GridFunction> density);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<GridFunction>& density() const { return density_; }
  bool is_zero() const { return atoms_.empty() && !density_.has_value(); }

  /// Raw variation dropped past the grid horizon by the operation that
  /// produced this measure (convolutions truncate densities at T).
  double truncated_variation() const { return truncated_variation_; }
  void set_truncated_variation(double m) { truncated_variation_ = m; }

  Measure scaled(cplx factor) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<GridFunction> density_;
  double truncated_variation_ = 0.0;
};

/// Weighted total variation: sum |c_i| w(t_i) + h sum |density_j| w(t_j).
double measure_norm(const Measure& mu, const Weight& w);

/// mu * f on the grid of f.  Atom shifts round t_i to the nearest node
/// (error <= h/2); density parts convolve by the standard quadrature.  Mass
/// shifted past T is dropped.
GridFunction convolve_measure_function(const Measure& mu, const GridFunction& f);

/// mu * nu.  Atom locations add exactly; atom x density and density x density
/// parts land on the common grid, with dropped past-horizon variation
/// recorded on the result (truncated_variation).
Measure convolve_measures(const Measure& mu, const Measure& nu);

/// Shift left by t: the inverse of convolving with dirac(t).  Requires every
/// atom location >= t and density support within [t, infinity)
/// (std::domain_error otherwise).
Measure translate_measure(const Measure& mu, double t);

/// Infimum of the support: smallest atom location or density support point.
/// Zero measure returns +infinity.
double alpha_measure(const Measure& mu, double eps_rel = 1e-12);

/// d(X mu)(t) = t dmu(t): atoms (t_i, t_i c_i) -- an atom at 0 is
/// annihilated -- and density t * density(t).  Satisfies the Leibniz rule
/// exactly on atom-only measures with exactly-representable data.
Measure apply_X_measure(const Measure& mu);

}  // namespace aomega

#pragma once

#include <vector>

#include "aomega/family.hpp"
#include "aomega/grid.hpp"
#include "aomega/measure.hpp"
#include "aomega/report.hpp"

namespace aomega {

/// Dilation endomorphism Phi(f)(t) = c f(c t), c > 0.  For the weights
/// e^{a sqrt(t)} and c = 2 it is an exact isometry onto the a/sqrt(2) norm,
/// which check_dilation_norm_identity verifies numerically.
struct DilationEndo {
  double c = 2.0;
};

/// Derivation D(f) = (Xf) * mu determined by its symbol measure mu.
struct DerivationOp {
  Measure mu;
};

/// Multiplier T_mu(f) = mu * f.
GridFunction multiplier_apply(const Measure& mu, const GridFunction& f);

/// D(f) = mu * (Xf).
GridFunction derivation_apply(const DerivationOp& d, const GridFunction& f);

/// Extension of the derivation to measures: D(nu) = (X nu) * mu.
Measure derivation_on_measure(const DerivationOp& d, const Measure& nu);

/// D(delta_t) = t * (delta_t * mu); exact atom arithmetic.
Measure derivation_on_dirac(const DerivationOp& d, double t);

/// Support bound: alpha(D(nu)) >= alpha(nu), up to one grid cell of slack for
/// density parts (exact for atoms).
CheckReport check_alpha_inequality(const DerivationOp& d, const Measure& nu,
                                   double h = 1.0 / 1024.0);

/// sup_t (t / w(t)) * integral w(t+s) d|mu|(s), sampled over [0, horizon]
/// and classified by horizon doubling: verdict pass = bounded (extremum is
/// the bound), fail = unbounded, inconclusive in between.  Finiteness of this
/// quantity is what makes X-composed-with-mu a bounded derivation on the
/// single-weight algebra.
CheckReport ghahramani_bound(const Measure& mu, const Weight& w,
                             double horizon);

/// Phi(f)(t) = c f(c t) by linear interpolation on the grid; reads beyond T
/// are taken as 0 (grid functions represent truncations of functions
/// supported in [0, T]).
GridFunction dilation_apply(const DilationEndo& phi, const GridFunction& f);

/// | ||Phi f||_{e^{a sqrt t}} - ||f||_{e^{(a/sqrt2) sqrt t}} | against
/// tol * ||f||_{e^{a sqrt t}}, for the c = 2 dilation.
CheckReport check_dilation_norm_identity(double a, const GridFunction& f,
                                         double tol = 1e-3);

/// The one-parameter semigroup the dilation induces on point masses:
/// nu^t = Phi~(delta_t) = delta_{t/c}.
Measure endo_semigroup_nu(const DilationEndo& phi, double t);

/// Approximate identity through the endomorphism: pass iff
/// k -> ||Phi(e_k) * f - f||_{w_n} is eventually decreasing over k_list and
/// ends below tol.  Every c*k must stay within grid resolution.
CheckReport endo_ai_check(const DilationEndo& phi, const WeightFamily& fam,
                          int n, const GridFunction& f,
                          const std::vector<int>& k_list, double tol = 1e-3);

/// Support additivity under convolution: pass iff
/// |alpha(f*g) - alpha(f) - alpha(g)| <= 2h.  Supports are scanned for exact
/// zeros over the direct (non-spectral) convolution, so the defect is 0 for
/// on-grid supports; O(support^2).  Identically-zero input is a precondition
/// violation (std::invalid_argument): its support infimum is +infinity and
/// the statement is vacuous.
CheckReport check_titchmarsh(const GridFunction& f, const GridFunction& g);

}  // namespace aomega

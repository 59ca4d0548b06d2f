#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace aomega {

using ojson = nlohmann::ordered_json;

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

/// One witness point backing a verdict: where something was attained or violated.
struct Witness {
  double point = 0.0;
  double value = 0.0;
};

/// Outcome of a mechanical check.  Checks never throw to signal a negative
/// verdict; exceptions are reserved for precondition violations.
///
/// `label` carries "inconclusive-numeric" on finite-horizon probes: a sampled
/// sup/limit over [0, horizon] is evidence, not proof, even when the verdict
/// is pass or fail.  `parameters` echoes the inputs plus check-specific data
/// (per-m growth ratios, branch counts, truncation masses, ...) so a report is
/// interpretable on its own.
struct CheckReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<Witness> witness;
  double extremum = 0.0;
  int selected_m = -1;  // m-search checks only; -1 means not applicable
  std::string label;
  ojson parameters = ojson::object();

  bool passed() const { return verdict == Verdict::pass; }
};

/// Finite-horizon evidence marker, see CheckReport::label.
inline constexpr const char* kNumericOnlyLabel = "inconclusive-numeric";

}  // namespace aomega

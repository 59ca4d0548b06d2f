#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aomega/serialize.hpp"

namespace aomega {

inline constexpr const char* kVersion = "0.1.0";

/// One experiment: a named check run against named targets.
/// `expect` is "pass" or "fail"; a suite succeeds when the check's verdict
/// matches it, so a config can assert counterexample behaviour positively.
struct SuiteSpec {
  std::string name;
  std::string check;
  ojson targets = ojson::object();  // family/f/g/measure/... -> config names
  ojson params = ojson::object();
  std::string expect = "pass";
};

/// Parsed experiment file.  Functions and measures are kept as descriptors
/// and realized on the final grid (CLI flags may override grid and seed).
struct ExperimentConfig {
  Grid grid = Grid::standard();
  std::uint64_t seed = 0;
  std::map<std::string, ojson> families;
  std::map<std::string, ojson> functions;
  std::map<std::string, ojson> measures;
  std::vector<SuiteSpec> suites;
};

struct SuiteResult {
  SuiteSpec spec;
  std::optional<CheckReport> report;  // absent when the suite errored
  std::string error;
  bool ok = false;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<SuiteResult> suites;
  bool aggregate = false;

  ojson to_json() const;
  /// Rows "check,target,verdict,extremum,witness".
  std::string to_csv() const;
};

/// Validates shape, check names, and target references.  Throws ConfigError.
ExperimentConfig config_from_json(const ojson& j);

/// Runs every suite; a numeric failure inside one suite is recorded on that
/// suite and the rest still run.  Deterministic for a fixed config and seed.
RunReport run_experiments(const ExperimentConfig& config);

/// Machine-readable catalog of every built-in kind and check (the `list`
/// subcommand).
ojson builtin_catalog();

}  // namespace aomega

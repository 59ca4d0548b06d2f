#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "aomega/family.hpp"
#include "aomega/grid.hpp"
#include "aomega/measure.hpp"
#include "aomega/report.hpp"
#include "aomega/weight.hpp"

namespace aomega {

/// Raised for malformed or out-of-range descriptors; the CLI maps it to the
/// config-error exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weight descriptors:
//   {"kind":"power","a":..}  {"kind":"exponential","a":..}
//   {"kind":"exp_sqrt","a":..}  {"kind":"fractional_power","a":..}
//   {"kind":"binary_pow","b":..}
//   {"kind":"product","factors":[w1,w2]}
//   {"kind":"pow","base":w,"k":int}
Weight weight_from_json(const ojson& j);
ojson weight_to_json(const Weight& w);

// Family descriptors:
//   {"kind":"power_n"|"frac_power"|"exp_sqrt_n"|"exp_n"|"binary_pow_n",
//    "n_max":int}
//   {"kind":"pow_weight","base":weight,"n_max":int}
WeightFamily family_from_json(const ojson& j);
ojson family_to_json(const WeightFamily& fam);

// Function descriptors, realized on a grid:
//   {"kind":"box","lo":..,"hi":..,"scale_re":?,"scale_im":?}
//   {"kind":"bump","center":..,"radius":..,"scale_re":?,"scale_im":?}
//   {"kind":"exp_decay","rate":..,"scale_re":?,"scale_im":?}
//   {"kind":"samples","re":[..],"im":[..]?}   (padded with zeros to the grid)
GridFunction function_from_json(const ojson& j, const Grid& g);

// Measure descriptors:
//   {"atoms":[{"t":..,"re":..,"im":?}, ...], "density": function-descriptor?}
Measure measure_from_json(const ojson& j, const Grid& g);

ojson report_to_json(const CheckReport& r);

/// CSV with header "t,re,im", one row per node.
void write_function_csv(std::ostream& os, const GridFunction& f);
/// Parses the same format; validates uniform spacing and reconstructs the
/// grid.  Throws ConfigError on malformed input.
GridFunction read_function_csv(std::istream& is);

}  // namespace aomega

#pragma once

#include <vector>

namespace aomega {

/// Shared sampling grid for the asymptotic probes: 0, a geometric ladder with
/// 16 points per octave from 2^-10 up to `horizon`, the dyadic points 2^k
/// with their integer neighbours 2^k +- 1 (where the binary digit sum attains
/// its extremes), plus horizon and horizon/2.  Sorted, deduplicated.
std::vector<double> asymptotic_sample_points(double horizon);

}  // namespace aomega

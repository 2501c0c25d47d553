#pragma once

#include <span>
#include <vector>

namespace frugal {

/// Linear-interpolation percentile (closest-ranks method).
///
/// Sort ascending, take rank r = (c/100)*(n-1) and interpolate between
/// v[floor(r)] and v[floor(r)+1]. The same routine is reused everywhere a
/// percentile appears (feature cutoffs, the K median, report IQRs) so
/// results are reproducible bit for bit.
///
/// values must be non-empty and finite; c must lie in (0, 100).
double percentile(std::span<const double> values, double c);

/// In-place variant: sorts `values` and interpolates. No copy.
double percentile_sorted_inplace(std::vector<double>& values, double c);

}  // namespace frugal

#include "frugal/percentile.hpp"

#include <algorithm>
#include <cmath>

#include "frugal/errors.hpp"

namespace frugal {

double percentile_sorted_inplace(std::vector<double>& values, double c) {
  require(!values.empty(), "percentile: empty input");
  require(c > 0.0 && c < 100.0, "percentile: c must lie in (0, 100)");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  const double rank = (c / 100.0) * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(rank);
  const size_t hi = std::min(lo + 1, n - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double percentile(std::span<const double> values, double c) {
  std::vector<double> copy(values.begin(), values.end());
  return percentile_sorted_inplace(copy, c);
}

}  // namespace frugal

#include "frugal/cla.hpp"

#include "frugal/errors.hpp"
#include "frugal/percentile.hpp"

namespace frugal {

ClaCutoffs cla_fit(const Dataset& features, double c_percentile) {
  require(features.rows() > 0, "cla_fit: empty dataset");
  require(c_percentile > 0.0 && c_percentile < 100.0, "cla_fit: C must lie in (0, 100)");
  ClaCutoffs out;
  out.c_percentile = c_percentile;
  out.cutoffs.reserve(features.features());
  std::vector<double> col;
  for (size_t c = 0; c < features.features(); ++c) {
    col = features.column(c);
    out.cutoffs.push_back(percentile_sorted_inplace(col, c_percentile));
  }
  return out;
}

std::vector<Prediction> cla_label(const ClaCutoffs& cutoffs, const Dataset& features) {
  require(cutoffs.cutoffs.size() == features.features(),
          "cla_label: cutoff count does not match feature count");
  const size_t n = features.rows();
  std::vector<double> k(n, 0.0);
  for (size_t r = 0; r < n; ++r) {
    const auto row = features.row(r);
    size_t exceed = 0;
    for (size_t c = 0; c < row.size(); ++c) {
      if (row[c] > cutoffs.cutoffs[c]) ++exceed;
    }
    k[r] = static_cast<double>(exceed);
  }

  const double k_median = percentile(k, 50.0);
  std::vector<Prediction> out(n);
  for (size_t r = 0; r < n; ++r) {
    out[r].score = k[r];
    out[r].label = k[r] > k_median ? 1 : 0;
  }
  return out;
}

std::vector<int8_t> hard_labels(const std::vector<Prediction>& predictions) {
  std::vector<int8_t> out;
  out.reserve(predictions.size());
  for (const auto& p : predictions) out.push_back(static_cast<int8_t>(p.label));
  return out;
}

}  // namespace frugal

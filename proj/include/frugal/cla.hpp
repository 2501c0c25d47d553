#pragma once

#include <vector>

#include "frugal/dataset.hpp"

namespace frugal {

/// Per-feature percentile cutoffs at a common percentile C.
struct ClaCutoffs {
  double c_percentile = 50.0;
  std::vector<double> cutoffs;  // one per feature, cutoffs[i] = percentile(F_i, C)
};

/// Hard label plus a continuous score (higher means more likely positive).
/// For CLA the score is the exceedance count K; for forest-backed modes it
/// is the positive-vote fraction.
struct Prediction {
  int label = 0;
  double score = 0.0;
};

/// Compute percentile(F_i, C) for every feature column of d.
ClaCutoffs cla_fit(const Dataset& features, double c_percentile);

/// Label rows by exceedance count: K_i = |{j : F_j(X_i) > cutoffs[j]}|
/// (strict), positive iff K_i > median(K). The median reuses the shared
/// linear-interpolation percentile at 50. Score is K_i.
std::vector<Prediction> cla_label(const ClaCutoffs& cutoffs, const Dataset& features);

/// Hard labels of a prediction sequence, as a label column.
std::vector<int8_t> hard_labels(const std::vector<Prediction>& predictions);

}  // namespace frugal

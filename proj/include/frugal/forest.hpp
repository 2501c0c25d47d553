#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "frugal/cla.hpp"
#include "frugal/dataset.hpp"

#include <nlohmann/json_fwd.hpp>

namespace frugal {

struct ForestParams {
  size_t n_trees = 100;
  std::optional<size_t> max_depth;           // nullopt = unlimited
  size_t min_split = 2;                      // smallest node that may split
  std::optional<size_t> features_per_split;  // default floor(log2(m)), clamped to [1, m]
  bool bootstrap = true;                     // n draws with replacement per tree
  uint64_t seed = 0;
};

/// Binary-split tree stored as a flat node array. Internal nodes route on
/// value <= threshold to `left`; leaves carry class counts.
struct TreeNode {
  int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int32_t left = -1;
  int32_t right = -1;
  std::array<uint32_t, 2> counts{0, 0};
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct ForestModel {
  std::vector<Tree> trees;
  size_t feature_count = 0;
};

/// Shannon entropy of a two-class count pair, in bits. Pure node -> 0,
/// balanced node -> 1. Throws when both counts are zero.
double entropy(uint64_t count0, uint64_t count1);

struct SplitCandidate {
  size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Exhaustive split search over the given candidate features and the rows
/// of a node: thresholds are midpoints between consecutive distinct sorted
/// values, the winner maximizes information gain, ties break to the lowest
/// feature index then the lowest threshold. Returns nullopt when no split
/// attains positive gain.
std::optional<SplitCandidate> find_best_split(const Dataset& features,
                                              const std::vector<int8_t>& labels,
                                              const std::vector<size_t>& rows,
                                              const std::vector<size_t>& candidate_features);

/// Fit a bagged forest of entropy-split trees. Each tree draws its own
/// bootstrap sample and per-node feature subsets from a sub-generator
/// derived from params.seed by fixed arithmetic, so results are identical
/// regardless of evaluation order. Requires fully known labels.
ForestModel forest_fit(const Dataset& labeled, const ForestParams& params);

/// Majority vote across trees. Score = fraction of trees voting positive
/// (per-tree leaf ties vote 1); label = 1 iff score >= 1/2.
std::vector<Prediction> forest_predict(const ForestModel& model, const Dataset& features);

/// Debug dump: nested {feature, threshold, left, right} / {counts} objects.
nlohmann::json forest_to_json(const ForestModel& model);

}  // namespace frugal

#pragma once

#include <vector>

#include "frugal/cla.hpp"
#include "frugal/dataset.hpp"

namespace frugal {

/// How a (feature value, pseudo-label) pair counts as violating the
/// proneness assumption (higher values go with the positive class).
///
/// `proneness` is the original rule: a value above the cutoff with label 0,
/// or at/below the cutoff with label 1, violates. `inverted` flips both
/// conditions; it exists only so the alternative reading can be audited.
enum class ViolationRule {
  proneness,
  inverted,
};

/// Outcome of the full feature + instance selection pass.
struct ViolationReport {
  std::vector<size_t> violation_counts;   // per feature
  std::vector<size_t> selected_features;  // ascending, non-empty
  std::vector<size_t> removed_instances;  // ascending, train rows dropped
  size_t fallback_depth = 0;              // score tiers consumed beyond the minimum
};

/// Per-feature count of instances whose value/pseudo-label pair violates
/// the proneness assumption. Every row must carry a known pseudo-label.
std::vector<size_t> violation_scores(const Dataset& pseudo_labeled, const ClaCutoffs& cutoffs,
                                     ViolationRule rule = ViolationRule::proneness);

/// All features whose score equals the (tier+1)-th smallest distinct score.
/// Throws ContractError when the tier exhausts the distinct scores.
std::vector<size_t> select_features(const std::vector<size_t>& scores, size_t tier);

struct InstanceSelection {
  std::vector<size_t> survivors;  // rows with zero violations on every selected feature
  bool both_classes = false;      // survivors' pseudo-labels span {0, 1}
};

/// Keep rows with zero violations on every selected feature. The caller
/// must retry with the next score tier when both_classes is false.
InstanceSelection select_instances(const Dataset& pseudo_labeled, const ClaCutoffs& cutoffs,
                                   const std::vector<size_t>& selected,
                                   ViolationRule rule = ViolationRule::proneness);

/// Column projection: restrict d to the selected features, order preserved.
Dataset project(const Dataset& d, const std::vector<size_t>& selected);

/// Full selection pass: score features, walk score tiers from the minimum
/// until instance selection leaves a two-class survivor set. Throws
/// DegenerateDataError when every tier is exhausted.
ViolationReport run_selection(const Dataset& pseudo_labeled, const ClaCutoffs& cutoffs,
                              ViolationRule rule = ViolationRule::proneness);

}  // namespace frugal

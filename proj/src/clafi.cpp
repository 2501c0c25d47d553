#include "frugal/clafi.hpp"

#include <algorithm>

#include "frugal/errors.hpp"

namespace frugal {

namespace {

bool violates(double value, double cutoff, int label, ViolationRule rule) {
  const bool above = value > cutoff;
  if (rule == ViolationRule::proneness) {
    return (above && label == 0) || (!above && label == 1);
  }
  return (above && label == 1) || (!above && label == 0);
}

}  // namespace

std::vector<size_t> violation_scores(const Dataset& pseudo_labeled, const ClaCutoffs& cutoffs,
                                     ViolationRule rule) {
  require(cutoffs.cutoffs.size() == pseudo_labeled.features(),
          "violation_scores: cutoff count does not match feature count");
  require(pseudo_labeled.labels_fully_known(),
          "violation_scores: every instance needs a pseudo-label");

  std::vector<size_t> scores(pseudo_labeled.features(), 0);
  for (size_t r = 0; r < pseudo_labeled.rows(); ++r) {
    const auto row = pseudo_labeled.row(r);
    const int label = pseudo_labeled.label(r);
    for (size_t c = 0; c < row.size(); ++c) {
      if (violates(row[c], cutoffs.cutoffs[c], label, rule)) ++scores[c];
    }
  }
  return scores;
}

std::vector<size_t> select_features(const std::vector<size_t>& scores, size_t tier) {
  require(!scores.empty(), "select_features: empty score list");

  std::vector<size_t> distinct(scores);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  require(tier < distinct.size(), "select_features: tier exhausts distinct scores");

  const size_t target = distinct[tier];
  std::vector<size_t> out;
  for (size_t c = 0; c < scores.size(); ++c) {
    if (scores[c] == target) out.push_back(c);
  }
  return out;
}

InstanceSelection select_instances(const Dataset& pseudo_labeled, const ClaCutoffs& cutoffs,
                                   const std::vector<size_t>& selected, ViolationRule rule) {
  require(!selected.empty(), "select_instances: empty feature selection");
  require(pseudo_labeled.labels_fully_known(),
          "select_instances: every instance needs a pseudo-label");
  for (size_t c : selected) {
    require(c < pseudo_labeled.features(), "select_instances: feature index out of range");
  }

  InstanceSelection out;
  bool saw0 = false, saw1 = false;
  for (size_t r = 0; r < pseudo_labeled.rows(); ++r) {
    const int label = pseudo_labeled.label(r);
    bool clean = true;
    for (size_t c : selected) {
      if (violates(pseudo_labeled.at(r, c), cutoffs.cutoffs[c], label, rule)) {
        clean = false;
        break;
      }
    }
    if (clean) {
      out.survivors.push_back(r);
      (label == 1 ? saw1 : saw0) = true;
    }
  }
  out.both_classes = saw0 && saw1;
  return out;
}

Dataset project(const Dataset& d, const std::vector<size_t>& selected) {
  require(!selected.empty(), "project: empty feature selection");
  std::vector<std::string> names;
  names.reserve(selected.size());
  for (size_t c : selected) {
    require(c < d.features(), "project: feature index out of range");
    names.push_back(d.feature_names()[c]);
  }

  std::vector<double> values;
  values.reserve(d.rows() * selected.size());
  for (size_t r = 0; r < d.rows(); ++r) {
    for (size_t c : selected) values.push_back(d.at(r, c));
  }
  return Dataset(std::move(names), std::move(values), d.labels(), d.label_name());
}

ViolationReport run_selection(const Dataset& pseudo_labeled, const ClaCutoffs& cutoffs,
                              ViolationRule rule) {
  ViolationReport report;
  report.violation_counts = violation_scores(pseudo_labeled, cutoffs, rule);

  std::vector<size_t> distinct(report.violation_counts);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  for (size_t tier = 0; tier < distinct.size(); ++tier) {
    const auto selected = select_features(report.violation_counts, tier);
    const auto picked = select_instances(pseudo_labeled, cutoffs, selected, rule);
    if (!picked.both_classes) continue;

    report.selected_features = selected;
    report.fallback_depth = tier;
    report.removed_instances.clear();
    size_t next = 0;
    for (size_t r = 0; r < pseudo_labeled.rows(); ++r) {
      if (next < picked.survivors.size() && picked.survivors[next] == r) {
        ++next;
      } else {
        report.removed_instances.push_back(r);
      }
    }
    return report;
  }
  throw DegenerateDataError(
      "feature/instance selection: no score tier leaves a two-class survivor set");
}

}  // namespace frugal

#include "frugal/forest.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

namespace frugal {

namespace {

size_t default_features_per_split(size_t m) {
  size_t k = 0;
  for (size_t v = m; v > 1; v >>= 1) ++k;  // floor(log2(m))
  return std::clamp<size_t>(k, 1, std::max<size_t>(m, 1));
}

struct TreeBuilder {
  const Dataset& data;
  const std::vector<int8_t>& labels;
  const ForestParams& params;
  size_t features_per_split;
  Rng rng;
  Tree tree;
  std::vector<size_t> feature_pool;  // scratch for per-node draws
  std::vector<std::pair<double, int8_t>> scratch;

  TreeBuilder(const Dataset& d, const std::vector<int8_t>& l, const ForestParams& p, size_t fps,
              uint64_t seed)
      : data(d), labels(l), params(p), features_per_split(fps), rng(seed) {
    feature_pool.resize(d.features());
    for (size_t i = 0; i < feature_pool.size(); ++i) feature_pool[i] = i;
  }

  std::array<uint32_t, 2> count_classes(const std::vector<size_t>& rows) const {
    std::array<uint32_t, 2> counts{0, 0};
    for (size_t r : rows) ++counts[labels[r] == 1 ? 1 : 0];
    return counts;
  }

  // Partial Fisher-Yates draw of k distinct features, returned ascending
  // so tie-breaking is independent of draw order.
  std::vector<size_t> draw_features() {
    const size_t k = std::min(features_per_split, feature_pool.size());
    for (size_t i = 0; i < k; ++i) {
      const size_t j = i + static_cast<size_t>(rng.bounded(feature_pool.size() - i));
      std::swap(feature_pool[i], feature_pool[j]);
    }
    std::vector<size_t> drawn(feature_pool.begin(), feature_pool.begin() + static_cast<ptrdiff_t>(k));
    std::sort(drawn.begin(), drawn.end());
    return drawn;
  }

  int32_t make_leaf(const std::vector<size_t>& rows) {
    TreeNode node;
    node.counts = count_classes(rows);
    tree.nodes.push_back(node);
    return static_cast<int32_t>(tree.nodes.size() - 1);
  }

  int32_t build(const std::vector<size_t>& rows, size_t depth) {
    const auto counts = count_classes(rows);
    const bool pure = counts[0] == 0 || counts[1] == 0;
    const bool depth_capped = params.max_depth && depth >= *params.max_depth;
    if (pure || depth_capped || rows.size() < params.min_split) return make_leaf(rows);

    const auto candidates = draw_features();
    const auto split = find_best_split(data, labels, rows, candidates);
    if (!split) return make_leaf(rows);

    std::vector<size_t> left_rows, right_rows;
    for (size_t r : rows) {
      (data.at(r, split->feature) <= split->threshold ? left_rows : right_rows).push_back(r);
    }

    const size_t index = tree.nodes.size();
    tree.nodes.emplace_back();
    tree.nodes[index].feature = static_cast<int32_t>(split->feature);
    tree.nodes[index].threshold = split->threshold;
    const int32_t left = build(left_rows, depth + 1);
    const int32_t right = build(right_rows, depth + 1);
    tree.nodes[index].left = left;
    tree.nodes[index].right = right;
    return static_cast<int32_t>(index);
  }
};

int tree_vote(const Tree& tree, std::span<const double> row) {
  int32_t at = 0;
  while (tree.nodes[at].feature >= 0) {
    const auto& node = tree.nodes[at];
    at = row[static_cast<size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  const auto& counts = tree.nodes[at].counts;
  return counts[1] >= counts[0] ? 1 : 0;  // leaf tie votes positive
}

nlohmann::json node_to_json(const Tree& tree, int32_t index) {
  const auto& node = tree.nodes[index];
  if (node.feature < 0) {
    return nlohmann::json{{"counts", {node.counts[0], node.counts[1]}}};
  }
  return nlohmann::json{{"feature", node.feature},
                        {"threshold", node.threshold},
                        {"left", node_to_json(tree, node.left)},
                        {"right", node_to_json(tree, node.right)}};
}

}  // namespace

double entropy(uint64_t count0, uint64_t count1) {
  require(count0 + count1 > 0, "entropy: both counts are zero");
  const double total = static_cast<double>(count0 + count1);
  double h = 0.0;
  for (uint64_t c : {count0, count1}) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

std::optional<SplitCandidate> find_best_split(const Dataset& features,
                                              const std::vector<int8_t>& labels,
                                              const std::vector<size_t>& rows,
                                              const std::vector<size_t>& candidate_features) {
  std::array<uint64_t, 2> totals{0, 0};
  for (size_t r : rows) ++totals[labels[r] == 1 ? 1 : 0];
  const double parent = entropy(totals[0], totals[1]);
  const double n = static_cast<double>(rows.size());

  std::optional<SplitCandidate> best;
  std::vector<std::pair<double, int8_t>> ordered;
  ordered.reserve(rows.size());

  for (size_t feature : candidate_features) {
    ordered.clear();
    for (size_t r : rows) ordered.emplace_back(features.at(r, feature), labels[r]);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::array<uint64_t, 2> left{0, 0};
    for (size_t i = 0; i + 1 < ordered.size(); ++i) {
      ++left[ordered[i].second == 1 ? 1 : 0];
      if (ordered[i].first == ordered[i + 1].first) continue;

      const double threshold = std::midpoint(ordered[i].first, ordered[i + 1].first);
      // guard against midpoints that collapse onto a neighbor in floating point
      if (!(threshold >= ordered[i].first && threshold < ordered[i + 1].first)) continue;

      const std::array<uint64_t, 2> right{totals[0] - left[0], totals[1] - left[1]};
      const double n_left = static_cast<double>(left[0] + left[1]);
      const double n_right = n - n_left;
      const double gain =
          parent - (n_left * entropy(left[0], left[1]) + n_right * entropy(right[0], right[1])) / n;
      if (gain <= 0.0) continue;
      if (!best || gain > best->gain) {
        best = SplitCandidate{feature, threshold, gain};
      }
      // equal gains: candidates arrive in ascending feature order and
      // ascending threshold order, so the first winner already carries the
      // lowest (feature, threshold) pair
    }
  }
  return best;
}

ForestModel forest_fit(const Dataset& labeled, const ForestParams& params) {
  require(labeled.rows() > 0, "forest_fit: empty dataset");
  require(labeled.labels_fully_known(), "forest_fit: every instance needs a known label");
  require(params.n_trees >= 1, "forest_fit: n_trees must be >= 1");
  require(params.min_split >= 2, "forest_fit: min_split must be >= 2");

  const size_t m = labeled.features();
  const size_t fps = params.features_per_split
                         ? std::clamp<size_t>(*params.features_per_split, 1, m)
                         : default_features_per_split(m);

  ForestModel model;
  model.feature_count = m;
  model.trees.resize(params.n_trees);

  const size_t n = labeled.rows();
  for (size_t t = 0; t < params.n_trees; ++t) {
    const uint64_t tree_seed = derive_seed(params.seed, 0xf0e5700 + t);
    TreeBuilder builder(labeled, labeled.labels(), params, fps, tree_seed);

    std::vector<size_t> rows(n);
    if (params.bootstrap) {
      for (size_t i = 0; i < n; ++i) rows[i] = static_cast<size_t>(builder.rng.bounded(n));
    } else {
      for (size_t i = 0; i < n; ++i) rows[i] = i;
    }
    builder.build(rows, 0);
    model.trees[t] = std::move(builder.tree);
  }
  return model;
}

std::vector<Prediction> forest_predict(const ForestModel& model, const Dataset& features) {
  require(features.features() == model.feature_count,
          "forest_predict: feature count does not match the fitted model");
  require(!model.trees.empty(), "forest_predict: empty model");

  std::vector<Prediction> out(features.rows());
  const size_t n_trees = model.trees.size();
  for (size_t r = 0; r < features.rows(); ++r) {
    const auto row = features.row(r);
    size_t votes = 0;
    for (const auto& tree : model.trees) votes += static_cast<size_t>(tree_vote(tree, row));
    out[r].score = static_cast<double>(votes) / static_cast<double>(n_trees);
    out[r].label = (2 * votes >= n_trees) ? 1 : 0;  // exact vote tie resolves to 1
  }
  return out;
}

nlohmann::json forest_to_json(const ForestModel& model) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : model.trees) trees.push_back(node_to_json(tree, 0));
  return nlohmann::json{{"feature_count", model.feature_count}, {"trees", std::move(trees)}};
}

}  // namespace frugal

#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace frugal {

/// Sentinel for a label cell that is present in the schema but unknown
/// (empty CSV cell). Known labels are exactly 0 or 1.
inline constexpr int8_t kLabelUnknown = -1;

/// Immutable numeric table: n rows by m named feature columns, plus an
/// optional binary label column whose individual values may be unknown.
/// Every feature value is finite; feature names are unique. Instances are
/// safe to share across threads once constructed.
class Dataset {
 public:
  Dataset() = default;

  /// values is row-major with rows()*features() entries. labels is either
  /// empty (no label column) or one entry per row in {0, 1, kLabelUnknown}.
  Dataset(std::vector<std::string> feature_names, std::vector<double> values,
          std::vector<int8_t> labels = {}, std::string label_name = "label");

  size_t rows() const { return rows_; }
  size_t features() const { return feature_names_.size(); }

  double at(size_t row, size_t col) const { return values_[row * feature_names_.size() + col]; }
  std::span<const double> row(size_t r) const {
    return {values_.data() + r * feature_names_.size(), feature_names_.size()};
  }
  std::vector<double> column(size_t c) const;

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::string& label_name() const { return label_name_; }

  bool has_labels() const { return !labels_.empty(); }
  bool label_known(size_t r) const { return has_labels() && labels_[r] != kLabelUnknown; }
  bool labels_fully_known() const;
  /// Known label of row r (0 or 1). Throws ContractError if unknown/absent.
  int label(size_t r) const;
  const std::vector<int8_t>& labels() const { return labels_; }
  /// Count of rows with known label 1.
  size_t positives() const;

  /// Copy without the label column.
  Dataset features_only() const;
  /// Row subset in the given order; labels (if any) follow their rows.
  Dataset subset(std::span<const size_t> row_indices) const;
  /// Copy with the label column replaced.
  Dataset with_labels(std::vector<int8_t> labels, std::string label_name = "label") const;

 private:
  std::vector<std::string> feature_names_;
  std::vector<double> values_;  // row-major
  std::vector<int8_t> labels_;  // empty or rows_ entries
  std::string label_name_;
  size_t rows_ = 0;
};

/// Parse a CSV file (UTF-8, comma-separated, header row, no quoting).
/// If label_column is non-empty that column supplies labels: cells must be
/// 0, 1, or empty (= unknown). Every other cell must parse as a finite
/// real. Errors carry the 1-based file row and the column name.
Dataset load_csv(const std::string& path, const std::string& label_column = "");

/// Emit the table back to CSV text. Numbers are printed in shortest
/// round-trip form, so load_csv(to_csv(d)) is value-identical to d.
std::string to_csv(const Dataset& d);
void save_csv(const Dataset& d, const std::string& path);

/// Partition bookkeeping for the stratified evaluation protocol:
/// test_bins partition the test set; each train sample is a seeded
/// ordering of the full train set from which a label-budget validation
/// slice is drawn.
struct SplitPlan {
  std::vector<std::vector<size_t>> test_bins;
  std::vector<std::vector<size_t>> train_samples;        // per-sample row order
  std::vector<std::vector<size_t>> validation_indices;   // per-sample, sorted
  double label_budget = 0.0;
};

/// Stratified partition of d's rows into `bins` parts. Class index lists
/// are shuffled with the seeded generator and dealt round-robin with a
/// continuing bin pointer, so both per-class and total bin sizes are
/// balanced within one instance. Requires fully known labels and
/// bins <= minority class count.
std::vector<std::vector<size_t>> stratified_split(const Dataset& d, size_t bins, uint64_t seed);

/// Build the full evaluation plan: `bins` stratified test bins and
/// `samples` train samples, each with a validation slice of
/// ceil(label_budget * train rows). The slice is a stratified draw by
/// default so tiny budgets still contain both classes when possible;
/// stratified_validation = false switches to a uniform draw.
SplitPlan make_split_plan(const Dataset& train, const Dataset& test, size_t bins, size_t samples,
                          double label_budget, uint64_t seed, bool stratified_validation = true);

/// Counts true-label reveals (the Cost numerator). Safe under concurrent
/// increments.
class LabelCounter {
 public:
  void add(uint64_t k) { count_.fetch_add(k, std::memory_order_relaxed); }
  uint64_t count() const { return count_.load(std::memory_order_relaxed); }
  void reset() { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<uint64_t> count_{0};
};

struct RevealedViews {
  Dataset validation;  // labeled, exactly the validation slice
  Dataset tuning;      // features only, the rest of the train sample
};

/// Materialize the labeled validation view and the unlabeled tuning view
/// for one train sample, charging exactly |validation slice| reveals to
/// the counter. The tuning view carries no label column at all, so no
/// label outside the slice can be read downstream.
RevealedViews reveal_labels(const Dataset& train, const SplitPlan& plan, size_t sample,
                            LabelCounter& counter);

/// The unlabeled tuning view alone, with no labels revealed or counted.
/// Used by the label-free fixed-configuration treatments.
Dataset tuning_view(const Dataset& train, const SplitPlan& plan, size_t sample);

}  // namespace frugal

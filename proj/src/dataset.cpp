#include "frugal/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

namespace frugal {

namespace {

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

void format_double(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

// Round-robin deal of shuffled per-class index lists into `bins` parts.
// The bin pointer continues across classes so total bin sizes stay
// balanced within one instance as well.
std::vector<std::vector<size_t>> deal_stratified(const std::vector<std::vector<size_t>>& by_class,
                                                 size_t bins) {
  std::vector<std::vector<size_t>> out(bins);
  size_t cursor = 0;
  for (const auto& members : by_class) {
    for (size_t idx : members) {
      out[cursor % bins].push_back(idx);
      ++cursor;
    }
  }
  for (auto& bin : out) std::sort(bin.begin(), bin.end());
  return out;
}

// Apportion `want` validation slots across the two classes proportionally
// (largest remainder), guaranteeing each nonempty class at least one slot
// when want >= 2.
std::array<size_t, 2> apportion(size_t want, size_t n0, size_t n1) {
  const size_t n = n0 + n1;
  const double f0 = static_cast<double>(want) * static_cast<double>(n0) / static_cast<double>(n);
  const double f1 = static_cast<double>(want) * static_cast<double>(n1) / static_cast<double>(n);
  std::array<size_t, 2> q{static_cast<size_t>(f0), static_cast<size_t>(f1)};
  size_t assigned = q[0] + q[1];
  while (assigned < want) {
    const double r0 = f0 - static_cast<double>(q[0]);
    const double r1 = f1 - static_cast<double>(q[1]);
    size_t pick;
    if (q[0] >= n0) {
      pick = 1;
    } else if (q[1] >= n1) {
      pick = 0;
    } else {
      pick = (r1 > r0) ? 1 : 0;  // tie goes to class 0
    }
    ++q[pick];
    ++assigned;
  }
  if (want >= 2) {
    if (n0 > 0 && q[0] == 0 && q[1] >= 2) {
      q[0] = 1;
      --q[1];
    } else if (n1 > 0 && q[1] == 0 && q[0] >= 2) {
      q[1] = 1;
      --q[0];
    }
  }
  return q;
}

}  // namespace

Dataset::Dataset(std::vector<std::string> feature_names, std::vector<double> values,
                 std::vector<int8_t> labels, std::string label_name)
    : feature_names_(std::move(feature_names)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      label_name_(std::move(label_name)) {
  const size_t m = feature_names_.size();
  require(m > 0 || values_.empty(), "Dataset: values present but no feature names");
  rows_ = (m == 0) ? 0 : values_.size() / m;
  require(m == 0 || values_.size() == rows_ * m, "Dataset: values size not a multiple of feature count");
  require(labels_.empty() || labels_.size() == rows_, "Dataset: label count does not match row count");

  std::unordered_set<std::string_view> seen;
  for (const auto& name : feature_names_) {
    if (!seen.insert(name).second) throw SchemaError("duplicate feature name: " + name);
  }
  for (double v : values_) {
    require(std::isfinite(v), "Dataset: non-finite feature value");
  }
  for (int8_t l : labels_) {
    require(l == 0 || l == 1 || l == kLabelUnknown, "Dataset: label outside {0, 1, unknown}");
  }
}

std::vector<double> Dataset::column(size_t c) const {
  require(c < features(), "Dataset::column: index out of range");
  std::vector<double> out(rows_);
  for (size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

bool Dataset::labels_fully_known() const {
  if (!has_labels()) return false;
  for (int8_t l : labels_) {
    if (l == kLabelUnknown) return false;
  }
  return true;
}

int Dataset::label(size_t r) const {
  require(r < rows_, "Dataset::label: row out of range");
  require(label_known(r), "Dataset::label: label unknown or absent");
  return labels_[r];
}

size_t Dataset::positives() const {
  size_t count = 0;
  for (int8_t l : labels_) {
    if (l == 1) ++count;
  }
  return count;
}

Dataset Dataset::features_only() const {
  return Dataset(feature_names_, values_, {}, label_name_);
}

Dataset Dataset::subset(std::span<const size_t> row_indices) const {
  const size_t m = features();
  std::vector<double> values;
  values.reserve(row_indices.size() * m);
  std::vector<int8_t> labels;
  if (has_labels()) labels.reserve(row_indices.size());
  for (size_t r : row_indices) {
    require(r < rows_, "Dataset::subset: row index out of range");
    const auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    if (has_labels()) labels.push_back(labels_[r]);
  }
  return Dataset(feature_names_, std::move(values), std::move(labels), label_name_);
}

Dataset Dataset::with_labels(std::vector<int8_t> labels, std::string label_name) const {
  return Dataset(feature_names_, values_, std::move(labels), std::move(label_name));
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      const size_t nl = rest.find('\n');
      if (nl == std::string_view::npos) {
        lines.push_back(rest);
        break;
      }
      lines.push_back(rest.substr(0, nl));
      rest = rest.substr(nl + 1);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  }
  if (lines.empty()) throw SchemaError(path + ": empty file, header row required");

  const auto header = split_fields(lines[0]);
  std::vector<std::string> names;
  names.reserve(header.size());
  for (auto field : header) names.emplace_back(trim(field));
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& name : names) {
      if (name.empty()) throw SchemaError(path + ": empty column name in header");
      if (!seen.insert(name).second) throw SchemaError(path + ": duplicate column '" + name + "'");
    }
  }

  size_t label_idx = names.size();  // = none
  if (!label_column.empty()) {
    const auto it = std::find(names.begin(), names.end(), label_column);
    if (it == names.end()) {
      throw SchemaError(path + ": label column '" + label_column + "' not found");
    }
    label_idx = static_cast<size_t>(it - names.begin());
  }

  std::vector<std::string> feature_names;
  for (size_t c = 0; c < names.size(); ++c) {
    if (c != label_idx) feature_names.push_back(names[c]);
  }

  std::vector<double> values;
  values.reserve((lines.size() - 1) * feature_names.size());
  std::vector<int8_t> labels;
  if (label_idx < names.size()) labels.reserve(lines.size() - 1);

  for (size_t li = 1; li < lines.size(); ++li) {
    const size_t file_row = li + 1;  // 1-based, header is row 1
    const auto fields = split_fields(lines[li]);
    if (fields.size() != names.size()) {
      throw SchemaError(path + ": row " + std::to_string(file_row) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(names.size()));
    }
    for (size_t c = 0; c < fields.size(); ++c) {
      if (c == label_idx) {
        const auto cell = trim(fields[c]);
        if (cell.empty()) {
          labels.push_back(kLabelUnknown);
          continue;
        }
        double v;
        if (!parse_double(cell, v) || (v != 0.0 && v != 1.0)) {
          throw ParseError(path + ": row " + std::to_string(file_row) + " column " + names[c] +
                           ": label must be 0, 1, or empty, got '" + std::string(cell) + "'");
        }
        labels.push_back(static_cast<int8_t>(v));
      } else {
        double v;
        if (!parse_double(fields[c], v)) {
          throw ParseError(path + ": row " + std::to_string(file_row) + " column " + names[c] +
                           ": cannot parse '" + std::string(trim(fields[c])) + "' as a finite number");
        }
        values.push_back(v);
      }
    }
  }

  return Dataset(std::move(feature_names), std::move(values), std::move(labels),
                 label_idx < names.size() ? names[label_idx] : std::string("label"));
}

std::string to_csv(const Dataset& d) {
  std::string out;
  for (size_t c = 0; c < d.features(); ++c) {
    if (c) out.push_back(',');
    out += d.feature_names()[c];
  }
  if (d.has_labels()) {
    if (d.features()) out.push_back(',');
    out += d.label_name();
  }
  out.push_back('\n');
  for (size_t r = 0; r < d.rows(); ++r) {
    for (size_t c = 0; c < d.features(); ++c) {
      if (c) out.push_back(',');
      format_double(out, d.at(r, c));
    }
    if (d.has_labels()) {
      if (d.features()) out.push_back(',');
      if (d.label_known(r)) out.push_back(d.labels()[r] == 1 ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << to_csv(d);
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::vector<size_t>> stratified_split(const Dataset& d, size_t bins, uint64_t seed) {
  require(bins >= 1, "stratified_split: bins must be >= 1");
  require(d.rows() > 0, "stratified_split: empty dataset");
  if (!d.labels_fully_known()) {
    throw ContractError("stratified_split: all labels must be known");
  }

  std::vector<std::vector<size_t>> by_class(2);
  for (size_t r = 0; r < d.rows(); ++r) by_class[d.label(r) == 1 ? 1 : 0].push_back(r);

  const size_t minority = std::min(by_class[0].size(), by_class[1].size());
  if (by_class[0].empty() || by_class[1].empty()) {
    // single-class data: only the total-size balance applies
    if (bins > d.rows()) {
      throw InfeasibleError("stratified_split: more bins than instances");
    }
  } else if (bins > minority) {
    throw InfeasibleError("stratified_split: " + std::to_string(bins) +
                          " bins exceed minority class count " + std::to_string(minority));
  }

  Rng rng(seed);
  // positives dealt first, then negatives
  std::swap(by_class[0], by_class[1]);
  for (auto& members : by_class) rng.shuffle(members);
  return deal_stratified(by_class, bins);
}

SplitPlan make_split_plan(const Dataset& train, const Dataset& test, size_t bins, size_t samples,
                          double label_budget, uint64_t seed, bool stratified_validation) {
  require(bins >= 1 && samples >= 1, "make_split_plan: bins and samples must be >= 1");
  require(label_budget > 0.0 && label_budget <= 1.0, "make_split_plan: budget must lie in (0, 1]");
  require(train.labels_fully_known(), "make_split_plan: train labels must be fully known");
  require(test.labels_fully_known(), "make_split_plan: test labels must be fully known");

  SplitPlan plan;
  plan.label_budget = label_budget;
  plan.test_bins = stratified_split(test, bins, derive_seed(seed, 0x7e57));

  const size_t n = train.rows();
  const size_t reveal = static_cast<size_t>(
      std::ceil(label_budget * static_cast<double>(n)) + 0.5);

  for (size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, 0x5a3d7e00 + s));
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);

    std::vector<size_t> validation;
    validation.reserve(reveal);
    if (stratified_validation) {
      std::array<std::vector<size_t>, 2> by_class;
      for (size_t idx : order) by_class[train.label(idx) == 1 ? 1 : 0].push_back(idx);
      const auto quota = apportion(reveal, by_class[0].size(), by_class[1].size());
      for (size_t cls = 0; cls < 2; ++cls) {
        validation.insert(validation.end(), by_class[cls].begin(),
                          by_class[cls].begin() + static_cast<ptrdiff_t>(quota[cls]));
      }
    } else {
      validation.assign(order.begin(), order.begin() + static_cast<ptrdiff_t>(reveal));
    }
    std::sort(validation.begin(), validation.end());

    plan.train_samples.push_back(std::move(order));
    plan.validation_indices.push_back(std::move(validation));
  }
  return plan;
}

RevealedViews reveal_labels(const Dataset& train, const SplitPlan& plan, size_t sample,
                            LabelCounter& counter) {
  require(sample < plan.train_samples.size(), "reveal_labels: sample index out of range");
  const auto& validation = plan.validation_indices[sample];
  RevealedViews views;
  views.validation = train.subset(validation);
  counter.add(validation.size());
  views.tuning = tuning_view(train, plan, sample);
  return views;
}

Dataset tuning_view(const Dataset& train, const SplitPlan& plan, size_t sample) {
  require(sample < plan.train_samples.size(), "tuning_view: sample index out of range");
  const auto& validation = plan.validation_indices[sample];
  std::vector<size_t> rest;
  rest.reserve(plan.train_samples[sample].size() - validation.size());
  for (size_t idx : plan.train_samples[sample]) {
    if (!std::binary_search(validation.begin(), validation.end(), idx)) rest.push_back(idx);
  }
  std::sort(rest.begin(), rest.end());
  return train.subset(rest).features_only();
}

}  // namespace frugal

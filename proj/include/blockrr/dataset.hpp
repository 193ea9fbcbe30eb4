// Copyright 2026 The BlockRR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOCKRR_DATASET_HPP_
#define BLOCKRR_DATASET_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"
#include "blockrr/random.hpp"

namespace blockrr {

struct LabelRecord {
  long long id = 0;
  int label = 0;
};

struct LabelDataset {
  std::vector<LabelRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

struct RandomizedRecord {
  long long id = 0;
  int label = 0;  // privatized
  long long original_index = 0;
};

struct RandomizedDataset {
  std::vector<RandomizedRecord> records;
};

namespace detail {

inline long long parse_integer_field(const std::string& field,
                                     std::size_t line_no) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(field, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != field.size()) {
    throw std::runtime_error("CSV line " + std::to_string(line_no) +
                             ": expected integer, got '" + field + "'");
  }
  return value;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail

inline LabelDataset read_label_dataset_csv(std::istream& in) {
  LabelDataset out;
  std::string line;
  if (!std::getline(in, line) || detail::strip_cr(line) != "id,label") {
    throw std::runtime_error("dataset CSV must start with header 'id,label'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 2) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) +
                               ": expected 2 fields");
    }
    out.records.push_back(
        {detail::parse_integer_field(fields[0], line_no),
         static_cast<int>(detail::parse_integer_field(fields[1], line_no))});
  }
  return out;
}

inline LabelDataset read_label_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_label_dataset_csv(in);
}

inline void write_label_dataset_csv(const LabelDataset& dataset,
                                    std::ostream& out) {
  out << "id,label\n";
  for (const LabelRecord& r : dataset.records) {
    out << r.id << ',' << r.label << '\n';
  }
}

// The original label column is never written; with_original_labels exists
// for debug fixtures only.
inline void write_randomized_dataset_csv(
    const RandomizedDataset& dataset, std::ostream& out,
    const std::vector<int>* original_labels = nullptr) {
  if (original_labels == nullptr) {
    out << "id,label,original_index\n";
    for (const RandomizedRecord& r : dataset.records) {
      out << r.id << ',' << r.label << ',' << r.original_index << '\n';
    }
    return;
  }
  out << "id,label,original_index,original_label\n";
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const RandomizedRecord& r = dataset.records[i];
    out << r.id << ',' << r.label << ',' << r.original_index << ','
        << (*original_labels)[i] << '\n';
  }
}

inline RandomizedDataset read_randomized_dataset_csv(std::istream& in) {
  RandomizedDataset out;
  std::string line;
  if (!std::getline(in, line) ||
      detail::strip_cr(line) != "id,label,original_index") {
    throw std::runtime_error(
        "randomized CSV must start with header 'id,label,original_index'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 3) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) +
                               ": expected 3 fields");
    }
    out.records.push_back(
        {detail::parse_integer_field(fields[0], line_no),
         static_cast<int>(detail::parse_integer_field(fields[1], line_no)),
         detail::parse_integer_field(fields[2], line_no)});
  }
  return out;
}

// Maps arbitrary integer label values onto the canonical contiguous range
// {0..K-1} and back.
class LabelCodec {
 public:
  static LabelCodec from_dataset(const LabelDataset& dataset) {
    LabelSet raw;
    raw.reserve(dataset.records.size());
    for (const LabelRecord& r : dataset.records) raw.push_back(r.label);
    return LabelCodec(canonicalize_set(std::move(raw)));
  }

  explicit LabelCodec(LabelSet raw_values) : raw_values_(std::move(raw_values)) {
    if (raw_values_.empty()) {
      throw std::invalid_argument("LabelCodec needs at least one label value");
    }
  }

  int class_count() const { return static_cast<int>(raw_values_.size()); }
  const LabelSet& raw_values() const { return raw_values_; }

  // True when the raw labels already are {0..K-1}.
  bool is_identity() const {
    for (std::size_t i = 0; i < raw_values_.size(); ++i) {
      if (raw_values_[i] != static_cast<int>(i)) return false;
    }
    return true;
  }

  int encode(int raw) const {
    auto it = std::lower_bound(raw_values_.begin(), raw_values_.end(), raw);
    if (it == raw_values_.end() || *it != raw) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label value " + std::to_string(raw) + " not in dictionary");
    }
    return static_cast<int>(it - raw_values_.begin());
  }

  int decode(int canonical) const {
    if (canonical < 0 || canonical >= class_count()) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "canonical label " + std::to_string(canonical) +
                      " out of range");
    }
    return raw_values_[static_cast<std::size_t>(canonical)];
  }

  LabelDataset encode_dataset(const LabelDataset& dataset) const {
    LabelDataset out;
    out.records.reserve(dataset.records.size());
    for (const LabelRecord& r : dataset.records) {
      out.records.push_back({r.id, encode(r.label)});
    }
    return out;
  }

 private:
  LabelSet raw_values_;
};

// Requested per-class record counts for synthetic data.
struct ClassCountProfile {
  std::vector<long long> counts;

  long long total() const {
    long long sum = 0;
    for (long long c : counts) sum += c;
    return sum;
  }
};

// Emits exactly counts[c] records of each class c, order shuffled by the
// stream, ids assigned 0..n-1 in output order.
inline LabelDataset generate_synthetic(const ClassCountProfile& profile,
                                       RandomStream& stream) {
  bool any_positive = false;
  for (long long c : profile.counts) {
    if (c < 0) throw Error(ErrorCode::kEmptyProfile, "negative class count");
    if (c > 0) any_positive = true;
  }
  if (profile.counts.empty() || !any_positive) {
    throw Error(ErrorCode::kEmptyProfile,
                "profile needs at least one positive count");
  }
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(profile.total()));
  for (std::size_t c = 0; c < profile.counts.size(); ++c) {
    labels.insert(labels.end(),
                  static_cast<std::size_t>(profile.counts[c]),
                  static_cast<int>(c));
  }
  seeded_shuffle(labels, stream);
  LabelDataset out;
  out.records.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.records.push_back({static_cast<long long>(i), labels[i]});
  }
  return out;
}

}  // namespace blockrr

#endif  // BLOCKRR_DATASET_HPP_

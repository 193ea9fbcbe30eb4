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

#ifndef BLOCKRR_RETENTION_HPP_
#define BLOCKRR_RETENTION_HPP_

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "blockrr/dataset.hpp"
#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"
#include "blockrr/matrix.hpp"

namespace blockrr {

// Label retention: how often the privatized label lands inside B(y) of the
// true label. With identity blocks this is plain label agreement. Serves
// as the utility proxy for comparing mechanisms without training a model.
struct RetentionReport {
  double overall_retention = 0.0;
  std::vector<double> per_class_retention;   // empirical, 0 when class absent
  std::vector<long long> per_class_count;
  std::vector<double> analytic_retention;    // sum of row mass over B(y)
  double max_abs_gap = 0.0;  // over classes with at least one record
};

inline RetentionReport measure_retention(const LabelDataset& dataset,
                                         const RandomizedDataset& randomized,
                                         const MechanismMatrix& matrix,
                                         const BlockMapping& mapping) {
  if (dataset.size() != randomized.records.size()) {
    throw Error(ErrorCode::kIdMismatch, "datasets differ in size");
  }
  std::unordered_map<long long, int> original_label_by_id;
  original_label_by_id.reserve(dataset.size());
  for (const LabelRecord& r : dataset.records) {
    if (!original_label_by_id.emplace(r.id, r.label).second) {
      throw Error(ErrorCode::kIdMismatch,
                  "duplicate id " + std::to_string(r.id));
    }
  }

  const int k = mapping.class_count();
  RetentionReport report;
  report.per_class_retention.assign(static_cast<std::size_t>(k), 0.0);
  report.per_class_count.assign(static_cast<std::size_t>(k), 0);
  report.analytic_retention.assign(static_cast<std::size_t>(k), 0.0);

  std::vector<long long> hits(static_cast<std::size_t>(k), 0);
  long long total_hits = 0;
  for (const RandomizedRecord& r : randomized.records) {
    auto it = original_label_by_id.find(r.id);
    if (it == original_label_by_id.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "randomized id " + std::to_string(r.id) +
                      " missing from the original dataset");
    }
    const int y = it->second;
    if (y < 0 || y >= k) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(y) + " outside mapping");
    }
    ++report.per_class_count[static_cast<std::size_t>(y)];
    if (set_contains(mapping.block(y), r.label)) {
      ++hits[static_cast<std::size_t>(y)];
      ++total_hits;
    }
  }

  for (int y = 0; y < k; ++y) {
    double analytic = 0.0;
    const int row = matrix.row_of(y);
    if (row >= 0) {
      for (int yt : mapping.block(y)) {
        const int col = matrix.col_of(yt);
        if (col >= 0) {
          analytic += matrix.p[static_cast<std::size_t>(row)]
                              [static_cast<std::size_t>(col)];
        }
      }
    }
    report.analytic_retention[static_cast<std::size_t>(y)] = analytic;
    const long long count = report.per_class_count[static_cast<std::size_t>(y)];
    if (count > 0) {
      const double empirical =
          static_cast<double>(hits[static_cast<std::size_t>(y)]) /
          static_cast<double>(count);
      report.per_class_retention[static_cast<std::size_t>(y)] = empirical;
      report.max_abs_gap =
          std::max(report.max_abs_gap, std::abs(empirical - analytic));
    }
  }
  report.overall_retention =
      randomized.records.empty()
          ? 0.0
          : static_cast<double>(total_hits) /
                static_cast<double>(randomized.records.size());
  return report;
}

inline nlohmann::json retention_report_to_json(const RetentionReport& report) {
  return nlohmann::json{
      {"overall_retention", report.overall_retention},
      {"per_class_retention", report.per_class_retention},
      {"per_class_count", report.per_class_count},
      {"analytic_retention", report.analytic_retention},
      {"max_abs_gap", report.max_abs_gap}};
}

}  // namespace blockrr

#endif  // BLOCKRR_RETENTION_HPP_

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

#ifndef BLOCKRR_MATRIX_HPP_
#define BLOCKRR_MATRIX_HPP_

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"

namespace blockrr {

// Row-stochastic transition matrix p_{ytilde|y} over (input, output) label
// lists. This is the interchange format every mechanism produces and every
// verifier check consumes.
struct MechanismMatrix {
  LabelSet input_labels;   // rows, over S
  LabelSet output_labels;  // columns, over S-tilde
  std::vector<std::vector<double>> p;

  int row_count() const { return static_cast<int>(input_labels.size()); }
  int col_count() const { return static_cast<int>(output_labels.size()); }

  int row_of(int input_label) const {
    auto it = std::lower_bound(input_labels.begin(), input_labels.end(),
                               input_label);
    if (it == input_labels.end() || *it != input_label) return -1;
    return static_cast<int>(it - input_labels.begin());
  }

  int col_of(int output_label) const {
    auto it = std::lower_bound(output_labels.begin(), output_labels.end(),
                               output_label);
    if (it == output_labels.end() || *it != output_label) return -1;
    return static_cast<int>(it - output_labels.begin());
  }

  double at(int input_label, int output_label) const {
    const int r = row_of(input_label);
    const int c = col_of(output_label);
    if (r < 0 || c < 0) {
      throw Error(ErrorCode::kLabelOutOfRange, "matrix entry lookup");
    }
    return p[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }

  // Empty string when well formed; otherwise the first violation found.
  std::string describe_malformation() const {
    if (input_labels.empty() || output_labels.empty()) {
      return "matrix must have at least one row and column";
    }
    if (!is_canonical_set(input_labels) || !is_canonical_set(output_labels)) {
      return "label lists must be sorted and distinct";
    }
    if (p.size() != input_labels.size()) return "row count mismatch";
    for (std::size_t r = 0; r < p.size(); ++r) {
      if (p[r].size() != output_labels.size()) return "column count mismatch";
      double sum = 0.0;
      for (double v : p[r]) {
        if (!(v >= 0.0) || !std::isfinite(v)) return "negative or non-finite entry";
        sum += v;
      }
      if (std::abs(sum - 1.0) > kMatrixRowTolerance) {
        return "row does not sum to 1 within 1e-12";
      }
    }
    return "";
  }

  bool well_formed() const { return describe_malformation().empty(); }

  static constexpr double kMatrixRowTolerance = 1e-12;
};

inline double max_abs_diff(const MechanismMatrix& a, const MechanismMatrix& b) {
  if (a.input_labels != b.input_labels || a.output_labels != b.output_labels) {
    throw Error(ErrorCode::kMalformedMatrix,
                "matrices are over different label lists");
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < a.p.size(); ++r) {
    for (std::size_t c = 0; c < a.p[r].size(); ++c) {
      worst = std::max(worst, std::abs(a.p[r][c] - b.p[r][c]));
    }
  }
  return worst;
}

inline nlohmann::json matrix_to_json(const MechanismMatrix& m) {
  return nlohmann::json{{"input_labels", m.input_labels},
                        {"output_labels", m.output_labels},
                        {"p", m.p}};
}

inline MechanismMatrix matrix_from_json(const nlohmann::json& j) {
  MechanismMatrix m;
  m.input_labels = j.at("input_labels").get<LabelSet>();
  m.output_labels = j.at("output_labels").get<LabelSet>();
  m.p = j.at("p").get<std::vector<std::vector<double>>>();
  return m;
}

}  // namespace blockrr

#endif  // BLOCKRR_MATRIX_HPP_

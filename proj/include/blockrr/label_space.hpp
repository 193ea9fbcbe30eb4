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

#ifndef BLOCKRR_LABEL_SPACE_HPP_
#define BLOCKRR_LABEL_SPACE_HPP_

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockrr {

// A set of labels, stored sorted ascending without duplicates.
using LabelSet = std::vector<int>;

inline bool is_canonical_set(const LabelSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1] >= s[i]) return false;
  }
  return true;
}

inline LabelSet canonicalize_set(LabelSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool set_contains(const LabelSet& s, int label) {
  return std::binary_search(s.begin(), s.end(), label);
}

inline LabelSet set_union_of(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline LabelSet set_intersection_of(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline LabelSet set_difference_of(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline bool is_subset_of(const LabelSet& a, const LabelSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// The original label set S = {0, ..., k-1}. Labels are canonicalized to
// contiguous 0-based integers at ingestion; external label values map
// through LabelCodec in dataset.hpp.
struct LabelSpace {
  int k = 1;

  LabelSpace() = default;
  explicit LabelSpace(int class_count) : k(class_count) {
    if (k < 1) throw std::invalid_argument("LabelSpace requires k >= 1");
  }

  LabelSet labels() const {
    LabelSet out(static_cast<std::size_t>(k));
    std::iota(out.begin(), out.end(), 0);
    return out;
  }

  bool contains(int label) const { return label >= 0 && label < k; }
};

// Per-label candidate sets B(y), one nonempty subset of S per label, all of
// the same cardinality. Stored explicitly so identity maps, bin maps and
// interval windows share one representation.
class BlockMapping {
 public:
  BlockMapping() : k_(1), image_{{0}} {}

  BlockMapping(int class_count, std::vector<LabelSet> image)
      : k_(class_count), image_(std::move(image)) {
    if (k_ < 1 || image_.size() != static_cast<std::size_t>(k_)) {
      throw std::invalid_argument("BlockMapping needs one entry per label");
    }
    for (const LabelSet& block : image_) {
      if (block.empty()) {
        throw std::invalid_argument("BlockMapping blocks must be nonempty");
      }
      if (!is_canonical_set(block)) {
        throw std::invalid_argument("BlockMapping blocks must be sorted sets");
      }
      if (block.front() < 0 || block.back() >= k_) {
        throw std::invalid_argument("BlockMapping block label out of range");
      }
      if (block.size() != image_.front().size()) {
        throw std::invalid_argument(
            "BlockMapping blocks must share one cardinality");
      }
    }
  }

  int class_count() const { return k_; }
  int block_size() const { return static_cast<int>(image_.front().size()); }

  const LabelSet& block(int label) const {
    if (label < 0 || label >= k_) {
      throw std::out_of_range("BlockMapping label out of range");
    }
    return image_[static_cast<std::size_t>(label)];
  }

  // Image of a whole set: union of B(y) over y in the set.
  LabelSet image_of(const LabelSet& labels) const {
    LabelSet out;
    for (int y : labels) out = set_union_of(out, block(y));
    return out;
  }

  bool is_identity() const {
    for (int y = 0; y < k_; ++y) {
      if (image_[static_cast<std::size_t>(y)] != LabelSet{y}) return false;
    }
    return true;
  }

 private:
  int k_;
  std::vector<LabelSet> image_;
};

inline BlockMapping identity_mapping(int class_count) {
  std::vector<LabelSet> image;
  image.reserve(static_cast<std::size_t>(class_count));
  for (int y = 0; y < class_count; ++y) image.push_back({y});
  return BlockMapping(class_count, image);
}

// Blocks of constant width tiling {0..k-1}; k must be divisible by width.
inline BlockMapping tiled_block_mapping(int class_count, int width) {
  if (width < 1 || class_count % width != 0) {
    throw std::invalid_argument("tiled_block_mapping: width must divide k");
  }
  std::vector<LabelSet> image(static_cast<std::size_t>(class_count));
  for (int y = 0; y < class_count; ++y) {
    const int lo = (y / width) * width;
    LabelSet block(static_cast<std::size_t>(width));
    std::iota(block.begin(), block.end(), lo);
    image[static_cast<std::size_t>(y)] = std::move(block);
  }
  return BlockMapping(class_count, image);
}

}  // namespace blockrr

#endif  // BLOCKRR_LABEL_SPACE_HPP_

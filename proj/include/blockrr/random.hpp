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

#ifndef BLOCKRR_RANDOM_HPP_
#define BLOCKRR_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace blockrr {

// splitmix64 finalizer over a (seed, stream id) pair. Used to derive
// independent child streams so that per-record randomness depends only on
// the pair, never on draw order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL +
                    stream_id * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seeded random stream with platform-independent output.
//
// std::mt19937_64 has a fully specified sequence, but the standard
// distributions do not, so uniforms are produced from raw engine output
// directly. Identical (seed, draw index) gives identical values everywhere.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Child stream fully determined by (this stream's seed, stream_id).
  RandomStream substream(std::uint64_t stream_id) const {
    return RandomStream(mix_seed(seed_, stream_id));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling, unbiased.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below needs n > 0");
    const std::uint64_t threshold = (0 - n) % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r < threshold);
    return r % n;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by the stream above (std::shuffle draws
// through unspecified distributions and is not reproducible across
// standard libraries).
template <typename T>
void seeded_shuffle(std::vector<T>& values, RandomStream& stream) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(stream.uniform_below(static_cast<std::uint64_t>(i)));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace blockrr

#endif  // BLOCKRR_RANDOM_HPP_

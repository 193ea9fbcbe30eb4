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

// Test-only oracles, kept independent of the implementation paths they
// check: a direct elimination solve of the two row equations, an exact
// rational evaluation for rational e^eps, and a random generator of valid
// configurations.

#ifndef BLOCKRR_TESTS_TEST_ORACLES_HPP_
#define BLOCKRR_TESTS_TEST_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "blockrr/blockrr.hpp"

namespace blockrr_test {

using Rational = boost::rational<long long>;

// Coefficients of the two normalization equations, assembled straight from
// the set sizes. Solved by Cramer's rule; never uses the closed form.
inline std::pair<double, double> solve_rows_independent(
    const blockrr::PartitionConfig& config) {
  const double t = std::exp(config.epsilon);
  const double b = config.mapping.block_size();
  const double st = static_cast<double>(config.s_tilde.size());
  const double st1 = static_cast<double>(config.s_tilde1.size());
  const double st2 = static_cast<double>(config.s_tilde2.size());
  const double l = static_cast<double>(config.l);

  const double a11 = t * b + st1 - b;
  const double a12 = st2;
  const double a21 = st1 - l;
  const double a22 = t * b + st2 - b;
  const double r1 = 1.0;
  const double r2 = 1.0 - l / st;

  if (config.s_tilde2.empty()) {
    // One unknown; the accepted degenerate shapes make row 2 redundant.
    return {r1 / a11, 0.0};
  }
  const double det = a11 * a22 - a12 * a21;
  return {(r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det};
}

inline double row1_residual(const blockrr::PartitionConfig& config,
                            double beta, double gamma) {
  const double t = std::exp(config.epsilon);
  const double b = config.mapping.block_size();
  const double st1 = static_cast<double>(config.s_tilde1.size());
  const double st2 = static_cast<double>(config.s_tilde2.size());
  return std::abs((t * b + st1 - b) * beta + st2 * gamma - 1.0);
}

inline double row2_residual(const blockrr::PartitionConfig& config,
                            double beta, double gamma) {
  const double t = std::exp(config.epsilon);
  const double b = config.mapping.block_size();
  const double st = static_cast<double>(config.s_tilde.size());
  const double st1 = static_cast<double>(config.s_tilde1.size());
  const double st2 = static_cast<double>(config.s_tilde2.size());
  const double l = static_cast<double>(config.l);
  return std::abs((st1 - l) * beta + (t * b + st2 - b) * gamma -
                  (1.0 - l / st));
}

// Exact solution for rational e^eps = t. Mirrors the algebra, not the code.
struct RationalBetaGamma {
  Rational beta;
  Rational gamma;
};

inline RationalBetaGamma rational_beta_gamma(const Rational& t, long long b,
                                             long long st1, long long st2,
                                             long long l) {
  const Rational a = (t - 1) * b;
  const Rational st(st1 + st2);
  const Rational beta1 = a + Rational(l * st2) / st;
  const Rational gamma1 = (a + l) - (Rational(l) / st) * (a + st1);
  const Rational kappa =
      (a + st1) * (a + st2) - Rational((st1 - l) * st2);
  return {beta1 / kappa, gamma1 / kappa};
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

// Draws a valid configuration across the shapes the mechanism supports:
// identity blocks with an arbitrary split, tiled multi-label blocks, the
// truncated-output shape (s_tilde = s1, l = |s_tilde1|) and the
// bin-representative shape.
inline blockrr::PartitionConfig random_valid_config(
    blockrr::RandomStream& stream, int max_k = 12, double eps_lo = 0.1,
    double eps_hi = 8.0) {
  using namespace blockrr;
  const int k = 2 + static_cast<int>(stream.uniform_below(
                        static_cast<std::uint64_t>(max_k - 1)));
  const double epsilon = eps_lo + stream.uniform01() * (eps_hi - eps_lo);
  const LabelSet all = LabelSpace(k).labels();
  const std::uint64_t shape = stream.uniform_below(100);

  if (shape < 40) {
    // Identity blocks, full output space.
    LabelSet s1;
    for (int y = 0; y < k; ++y) {
      if (stream.uniform01() < 0.5) s1.push_back(y);
    }
    const LabelSet s2 = set_difference_of(all, s1);
    const LabelSet s_tilde1 = s1;
    const int l = static_cast<int>(
        stream.uniform_below(static_cast<std::uint64_t>(s_tilde1.size()) + 1));
    LabelSet pool = s_tilde1;
    seeded_shuffle(pool, stream);
    pool.resize(static_cast<std::size_t>(l));
    return assemble_config(LabelSpace(k), s1, s2, all, canonicalize_set(pool),
                           l, epsilon, identity_mapping(k));
  }
  if (shape < 70) {
    // Tiled blocks of a width dividing k; split aligned to blocks.
    std::vector<int> widths;
    for (int w = 1; w <= k; ++w) {
      if (k % w == 0) widths.push_back(w);
    }
    const int width = widths[static_cast<std::size_t>(
        stream.uniform_below(widths.size()))];
    const BlockMapping mapping = tiled_block_mapping(k, width);
    LabelSet s1;
    for (int block = 0; block < k / width; ++block) {
      if (stream.uniform01() < 0.5) {
        for (int y = block * width; y < (block + 1) * width; ++y) {
          s1.push_back(y);
        }
      }
    }
    const LabelSet s2 = set_difference_of(all, s1);
    const LabelSet s_tilde1 = s1;  // block-aligned, identity on values
    const int l = static_cast<int>(
        stream.uniform_below(static_cast<std::uint64_t>(s_tilde1.size()) + 1));
    LabelSet pool = s_tilde1;
    seeded_shuffle(pool, stream);
    pool.resize(static_cast<std::size_t>(l));
    return assemble_config(LabelSpace(k), s1, s2, all, canonicalize_set(pool),
                           l, epsilon, mapping);
  }
  if (shape < 85) {
    // Truncated output space: only s1 labels are emitted, delta covers it.
    const int keep = 1 + static_cast<int>(stream.uniform_below(
                             static_cast<std::uint64_t>(k - 1)));
    LabelSet pool = all;
    seeded_shuffle(pool, stream);
    pool.resize(static_cast<std::size_t>(keep));
    const LabelSet s1 = canonicalize_set(pool);
    const LabelSet s2 = set_difference_of(all, s1);
    return assemble_config(LabelSpace(k), s1, s2, s1, s1, keep, epsilon,
                           identity_mapping(k));
  }
  // Bin representatives: values collapse onto one label per bin.
  const int bins = 1 + static_cast<int>(
                           stream.uniform_below(static_cast<std::uint64_t>(k)));
  const blockrr::BinMap bin_map = blockrr::make_equal_width_bins(k, bins);
  std::vector<LabelSet> image(static_cast<std::size_t>(k));
  for (int y = 0; y < k; ++y) {
    image[static_cast<std::size_t>(y)] = {
        bin_map.representative_of[static_cast<std::size_t>(y)]};
  }
  return assemble_config(LabelSpace(k), all, {}, bin_map.representatives, {},
                         0, epsilon, BlockMapping(k, image));
}

// Dirichlet(1,...,1) prior via normalized exponentials.
inline blockrr::PriorDistribution random_prior(blockrr::RandomStream& stream,
                                               int k) {
  std::vector<double> raw(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& v : raw) {
    v = -std::log(1.0 - stream.uniform01());
    total += v;
  }
  for (double& v : raw) v /= total;
  return blockrr::PriorDistribution{std::move(raw)};
}

}  // namespace blockrr_test

#endif  // BLOCKRR_TESTS_TEST_ORACLES_HPP_

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

#ifndef BLOCKRR_VERIFIER_HPP_
#define BLOCKRR_VERIFIER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"
#include "blockrr/matrix.hpp"
#include "blockrr/mechanisms.hpp"
#include "blockrr/partition_config.hpp"
#include "blockrr/prior.hpp"
#include "blockrr/random.hpp"

namespace blockrr {

// Relative slack on privacy-ratio comparisons, absorbing double-precision
// division noise. Equality-style algebraic checks use 1e-12 instead.
inline constexpr double kDpRatioTolerance = 1e-9;
inline constexpr double kAlgebraTolerance = 1e-12;

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Outcome of the privacy-ratio scan over a transition matrix.
struct VerificationReport {
  double max_ratio = 1.0;
  double epsilon_bound = 0.0;  // e^eps
  bool dp_pass = false;
  bool infinite_ratio = false;  // some column mixes zero and positive mass
  std::vector<double> row_residuals;
  std::vector<CheckOutcome> notes;
};

// Scans every output column for the worst probability ratio between two
// input labels. Columns that are identically zero are outputs never
// produced and are skipped; a column mixing zero and positive entries has
// an unbounded ratio and fails outright. Passes when the worst ratio stays
// within e^eps up to relative tolerance 1e-9.
inline VerificationReport check_label_dp(const MechanismMatrix& matrix,
                                         double epsilon) {
  const std::string malformation = matrix.describe_malformation();
  if (!malformation.empty()) {
    throw Error(ErrorCode::kMalformedMatrix, malformation);
  }

  VerificationReport report;
  report.epsilon_bound = std::exp(epsilon);
  report.row_residuals.reserve(matrix.p.size());
  for (const auto& row : matrix.p) {
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    report.row_residuals.push_back(std::abs(sum - 1.0));
  }

  for (std::size_t c = 0; c < matrix.output_labels.size(); ++c) {
    double col_min = std::numeric_limits<double>::infinity();
    double col_max = 0.0;
    bool has_zero = false;
    for (std::size_t r = 0; r < matrix.p.size(); ++r) {
      const double v = matrix.p[r][c];
      if (v == 0.0) {
        has_zero = true;
      } else {
        col_min = std::min(col_min, v);
        col_max = std::max(col_max, v);
      }
    }
    if (col_max == 0.0) continue;  // never-produced output
    if (has_zero) {
      report.infinite_ratio = true;
      report.max_ratio = std::numeric_limits<double>::infinity();
      report.notes.push_back(
          {"column_" + std::to_string(matrix.output_labels[c]), false,
           "column mixes zero and positive entries (unbounded ratio)"});
      continue;
    }
    report.max_ratio = std::max(report.max_ratio, col_max / col_min);
  }

  report.dp_pass = !report.infinite_ratio &&
                   report.max_ratio <=
                       report.epsilon_bound * (1.0 + kDpRatioTolerance);
  report.notes.push_back({"label_dp_ratio", report.dp_pass,
                          "max column ratio " +
                              std::to_string(report.max_ratio) + " vs e^eps " +
                              std::to_string(report.epsilon_bound)});
  return report;
}

inline nlohmann::json verification_report_to_json(
    const VerificationReport& report) {
  nlohmann::json notes = nlohmann::json::array();
  for (const CheckOutcome& note : report.notes) {
    notes.push_back({{"name", note.name},
                     {"pass", note.pass},
                     {"detail", note.detail}});
  }
  return nlohmann::json{{"max_ratio", report.max_ratio},
                        {"epsilon_bound", report.epsilon_bound},
                        {"dp_pass", report.dp_pass},
                        {"infinite_ratio", report.infinite_ratio},
                        {"row_residuals", report.row_residuals},
                        {"notes", notes}};
}

// Solves the block system for every l from 0 to |s_tilde1| on a fixed
// partition shape and records both weight sequences.
struct MonotonicityReport {
  std::vector<double> betas;
  std::vector<double> gammas;
  bool beta_nondecreasing = false;
  bool gamma_nonincreasing = false;
  bool endpoints_equal = false;          // beta(0) == gamma(0)
  bool max_gamma_equals_min_beta = false;

  bool pass() const {
    return beta_nondecreasing && gamma_nonincreasing && endpoints_equal &&
           max_gamma_equals_min_beta;
  }
};

inline MonotonicityReport check_monotonicity(const PartitionConfig& base) {
  if (base.s_tilde2.empty()) {
    throw std::invalid_argument(
        "monotonicity sweep needs the two-block case (s_tilde2 nonempty)");
  }
  MonotonicityReport report;
  const int l_max = static_cast<int>(base.s_tilde1.size());
  for (int l = 0; l <= l_max; ++l) {
    LabelSet delta(base.s_tilde1.begin(), base.s_tilde1.begin() + l);
    PartitionConfig swept = base;
    swept.delta = std::move(delta);
    swept.l = l;
    const BetaGamma bg = solve_beta_gamma(swept);
    report.betas.push_back(bg.beta);
    report.gammas.push_back(bg.gamma);
  }

  report.beta_nondecreasing = true;
  report.gamma_nonincreasing = true;
  for (std::size_t i = 1; i < report.betas.size(); ++i) {
    if (report.betas[i] < report.betas[i - 1] - 1e-15) {
      report.beta_nondecreasing = false;
    }
    if (report.gammas[i] > report.gammas[i - 1] + 1e-15) {
      report.gamma_nonincreasing = false;
    }
  }
  report.endpoints_equal =
      std::abs(report.betas.front() - report.gammas.front()) <= 1e-15;
  const double min_beta =
      *std::min_element(report.betas.begin(), report.betas.end());
  const double max_gamma =
      *std::max_element(report.gammas.begin(), report.gammas.end());
  report.max_gamma_equals_min_beta = std::abs(min_beta - max_gamma) <= 1e-15;
  return report;
}

// ---------------------------------------------------------------------------
// Unification: the block mechanism instantiated at the documented parameter
// shapes must reproduce each baseline mechanism entrywise.
// ---------------------------------------------------------------------------

// Whole space majority, identity blocks, l irrelevant: plain RR.
inline PartitionConfig unification_rr_config(int k, double epsilon) {
  const LabelSet all = LabelSpace(k).labels();
  return assemble_config(LabelSpace(k), all, {}, all, {}, 0, epsilon,
                         identity_mapping(k));
}

// Alternative shape: any split with l = 0 also reduces to RR since both
// block weights coincide there.
inline PartitionConfig unification_rr_split_config(int k, double epsilon,
                                                   LabelSet s1) {
  const LabelSet all = LabelSpace(k).labels();
  LabelSet s2 = set_difference_of(all, s1);
  return assemble_config(LabelSpace(k), std::move(s1), std::move(s2), all, {},
                         0, epsilon, identity_mapping(k));
}

// Outputs restricted to the top-k candidate set, majority = candidate set,
// delta = the whole output side: the prior-aware mechanism.
inline PartitionConfig unification_rrwithprior_config(
    const PriorDistribution& prior, double epsilon) {
  const TopKSelection sel = choose_topk(prior, epsilon);
  const int k = prior.class_count();
  const LabelSet all = LabelSpace(k).labels();
  const LabelSet s2 = set_difference_of(all, sel.y_k);
  return assemble_config(LabelSpace(k), sel.y_k, s2, sel.y_k, sel.y_k,
                         static_cast<int>(sel.y_k.size()), epsilon,
                         identity_mapping(k));
}

// Values collapse onto bin representatives: B maps every value to the
// singleton holding its representative.
inline PartitionConfig unification_rronbins_config(
    const RegressionMechanismConfig& config) {
  const int v = config.value_count;
  std::vector<LabelSet> image(static_cast<std::size_t>(v));
  for (int y = 0; y < v; ++y) {
    image[static_cast<std::size_t>(y)] = {
        config.bin_map.representative_of[static_cast<std::size_t>(y)]};
  }
  const LabelSet all = LabelSpace(v).labels();
  return assemble_config(LabelSpace(v), all, {}, config.bin_map.representatives,
                         {}, 0, config.epsilon, BlockMapping(v, image));
}

// Same bins with a bin-aligned split and l = 0; exercises the two-block
// shape of the binned mechanism. first_bins counts how many bins fall on
// the majority side.
inline PartitionConfig unification_rronbins_split_config(
    const RegressionMechanismConfig& config, int first_bins) {
  const int v = config.value_count;
  std::vector<LabelSet> image(static_cast<std::size_t>(v));
  LabelSet s1;
  const LabelSet& reps = config.bin_map.representatives;
  if (first_bins < 1 || first_bins >= static_cast<int>(reps.size())) {
    throw std::invalid_argument("first_bins must split the bins in two");
  }
  const int boundary_rep = reps[static_cast<std::size_t>(first_bins)];
  for (int y = 0; y < v; ++y) {
    const int rep = config.bin_map.representative_of[static_cast<std::size_t>(y)];
    image[static_cast<std::size_t>(y)] = {rep};
    if (rep < boundary_rep) s1.push_back(y);
  }
  const LabelSet all = LabelSpace(v).labels();
  const LabelSet s2 = set_difference_of(all, s1);
  return assemble_config(LabelSpace(v), std::move(s1), s2, reps, {}, 0,
                         config.epsilon, BlockMapping(v, image));
}

struct MatrixDiff {
  std::string mechanism;
  double max_abs_diff = 0.0;
  bool pass = false;
};

inline MatrixDiff diff_matrices(const std::string& name,
                                const MechanismMatrix& block,
                                const MechanismMatrix& direct) {
  MatrixDiff diff;
  diff.mechanism = name;
  diff.max_abs_diff = max_abs_diff(block, direct);
  diff.pass = diff.max_abs_diff <= kAlgebraTolerance;
  return diff;
}

inline MatrixDiff check_unification_rr(int k, double epsilon,
                                       bool split_variant = false) {
  PartitionConfig config = unification_rr_config(k, epsilon);
  if (split_variant) {
    LabelSet s1;
    for (int y = 0; y < (k + 1) / 2; ++y) s1.push_back(y);
    config = unification_rr_split_config(k, epsilon, std::move(s1));
  }
  return diff_matrices(split_variant ? "rr-split" : "rr",
                       build_blockrr_matrix(config),
                       build_rr_matrix(k, epsilon));
}

inline MatrixDiff check_unification_rrwithprior(const PriorDistribution& prior,
                                                double epsilon) {
  const PartitionConfig config = unification_rrwithprior_config(prior, epsilon);
  return diff_matrices("rrwithprior", build_blockrr_matrix(config),
                       build_rrwithprior_matrix(prior, epsilon));
}

inline MatrixDiff check_unification_rronbins(
    const RegressionMechanismConfig& config, int split_first_bins = 0) {
  const PartitionConfig shape =
      split_first_bins > 0
          ? unification_rronbins_split_config(config, split_first_bins)
          : unification_rronbins_config(config);
  return diff_matrices(split_first_bins > 0 ? "rronbins-split" : "rronbins",
                       build_blockrr_matrix(shape),
                       build_rronbins_matrix(config));
}

// Discretization of the interval mechanism onto a uniform grid. Each grid
// cell of width h carries the mass h * density; a window of half-width
// delta covers 2*round(delta/h)+1 cells, i.e. a window of effective
// half-width delta + h/2. The block instantiation therefore matches the
// density with delta widened by half a cell, exactly, while against the
// raw delta the agreement is O(h).
struct RpGridInstance {
  PartitionConfig config;
  RegressionMechanismConfig widened;  // delta + h/2
  std::vector<double> grid_points;    // physical value of each label
  LabelSet interval_labels;           // rows whose value lies inside [A1, A2]
  double cell_width = 0.0;
};

inline RpGridInstance make_rpwithprior_grid_instance(
    const RegressionMechanismConfig& rp, double h) {
  const long long d = std::llround(rp.delta_width / h);
  const long long w = std::llround((rp.interval_hi - rp.interval_lo) / h);
  if (d < 1 || w < 1) {
    throw std::invalid_argument("grid too coarse for delta or interval");
  }
  const int m = static_cast<int>(w + 2 * d);  // last grid index
  const int n = m + 1;

  std::vector<LabelSet> image(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int start = std::clamp<long long>(j - d, 0, m - 2 * d);
    LabelSet block(static_cast<std::size_t>(2 * d + 1));
    std::iota(block.begin(), block.end(), start);
    image[static_cast<std::size_t>(j)] = std::move(block);
  }

  RpGridInstance out;
  out.cell_width = h;
  out.grid_points.resize(static_cast<std::size_t>(n));
  LabelSet s1;
  for (int j = 0; j < n; ++j) {
    out.grid_points[static_cast<std::size_t>(j)] =
        (rp.interval_lo - rp.delta_width) + static_cast<double>(j) * h;
    if (j >= d && j <= d + w) s1.push_back(j);
  }
  out.interval_labels = s1;
  const LabelSet all = LabelSpace(n).labels();
  const LabelSet s2 = set_difference_of(all, s1);
  // The whole output side is reachable from s1, so s_tilde2 is empty and
  // delta must cover everything (uniform rows for out-of-interval inputs).
  out.config = assemble_config(LabelSpace(n), s1, s2, all, all, n,
                               rp.epsilon, BlockMapping(n, image));
  out.widened = make_rpwithprior_config(rp.interval_lo, rp.interval_hi,
                                        rp.delta_width + h / 2.0, rp.epsilon);
  return out;
}

struct RpUnificationReport {
  double normalization_error = 0.0;  // quadrature vs 1
  double worst_ratio_error = 0.0;    // in/out density ratio vs e^eps
  double grid_max_diff = 0.0;        // cell mass vs h * density
  bool pass = false;
};

// Midpoint quadrature with cells aligned to the density's breakpoints, so
// the piecewise-constant integrand is integrated without discretization
// error beyond floating-point rounding.
inline double rp_density_total_mass(double y,
                                    const RegressionMechanismConfig& config,
                                    int cells_per_segment = 1000) {
  const double d = config.delta_width;
  std::vector<double> cuts{config.interval_lo - d, config.interval_hi + d};
  if (y >= config.interval_lo && y <= config.interval_hi) {
    cuts.push_back(y - d);
    cuts.push_back(y + d);
  }
  std::sort(cuts.begin(), cuts.end());
  double mass = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s];
    const double hi = cuts[s + 1];
    if (!(hi > lo)) continue;
    const double step = (hi - lo) / cells_per_segment;
    for (int c = 0; c < cells_per_segment; ++c) {
      const double mid = lo + (c + 0.5) * step;
      mass += rpwithprior_density(y, mid, config) * step;
    }
  }
  return mass;
}

inline RpUnificationReport check_unification_rpwithprior(
    const RegressionMechanismConfig& rp, double grid_h = 1e-3) {
  RpUnificationReport report;

  // Normalization at a few representative inputs, inside and outside.
  const double span = rp.interval_hi - rp.interval_lo;
  const std::vector<double> inputs{
      rp.interval_lo, rp.interval_lo + 0.25 * span, rp.interval_lo + 0.5 * span,
      rp.interval_hi, rp.interval_hi + 1.0};
  for (double y : inputs) {
    report.normalization_error =
        std::max(report.normalization_error,
                 std::abs(rp_density_total_mass(y, rp) - 1.0));
  }

  // The in-window to out-window density ratio must be exactly e^eps.
  const double e_eps = std::exp(rp.epsilon);
  const double y_mid = rp.interval_lo + 0.5 * span;
  const double inside = rpwithprior_density(y_mid, y_mid, rp);
  const double outside = rpwithprior_density(
      y_mid, rp.interval_lo - 0.5 * rp.delta_width, rp);
  report.worst_ratio_error = std::abs(inside / outside - e_eps);

  // Supplementary grid comparison against the half-cell-widened density.
  const RpGridInstance grid = make_rpwithprior_grid_instance(rp, grid_h);
  const MechanismMatrix block = build_blockrr_matrix(grid.config);
  for (std::size_t r = 0; r < block.p.size(); ++r) {
    const double y = grid.grid_points[r];
    for (std::size_t c = 0; c < block.p[r].size(); ++c) {
      const double expected =
          grid_h * rpwithprior_density(y, grid.grid_points[c], grid.widened);
      report.grid_max_diff =
          std::max(report.grid_max_diff, std::abs(block.p[r][c] - expected));
    }
  }

  report.pass = report.normalization_error <= 1e-9 &&
                report.worst_ratio_error <= 1e-9 * e_eps &&
                report.grid_max_diff <= kAlgebraTolerance;
  return report;
}

// String-keyed dispatcher used by the CLI.
struct UnificationParams {
  int k = 10;
  double epsilon = 1.0;
  PriorDistribution prior;  // rrwithprior only; empty means uniform
  int bin_count = 0;        // rronbins only
  bool split_variant = false;
  double interval_lo = 0.0;   // rpwithprior only
  double interval_hi = 1.0;
  double delta_width = 0.1;
};

struct UnificationOutcome {
  std::string mechanism;
  double max_abs_diff = 0.0;
  bool pass = false;
  nlohmann::json details;
};

inline UnificationOutcome check_unification(const std::string& name,
                                            const UnificationParams& params) {
  UnificationOutcome out;
  out.mechanism = name;
  if (name == "rr") {
    const MatrixDiff diff =
        check_unification_rr(params.k, params.epsilon, params.split_variant);
    out.max_abs_diff = diff.max_abs_diff;
    out.pass = diff.pass;
    out.details = {{"variant", diff.mechanism}};
  } else if (name == "rrwithprior") {
    const PriorDistribution prior = params.prior.probs.empty()
                                        ? uniform_prior(params.k)
                                        : params.prior;
    const MatrixDiff diff = check_unification_rrwithprior(prior, params.epsilon);
    out.max_abs_diff = diff.max_abs_diff;
    out.pass = diff.pass;
    out.details = {{"top_k", choose_topk(prior, params.epsilon).k}};
  } else if (name == "rronbins") {
    const int bins = params.bin_count > 0 ? params.bin_count
                                          : std::max(1, params.k / 2);
    const RegressionMechanismConfig config =
        make_rronbins_config(params.k, bins, params.epsilon);
    const int split = params.split_variant && bins >= 2 ? bins / 2 : 0;
    const MatrixDiff diff = check_unification_rronbins(config, split);
    out.max_abs_diff = diff.max_abs_diff;
    out.pass = diff.pass;
    out.details = {{"bin_count", bins}, {"variant", diff.mechanism}};
  } else if (name == "rpwithprior" || name == "rpwithprior-discretized") {
    const RegressionMechanismConfig config = make_rpwithprior_config(
        params.interval_lo, params.interval_hi, params.delta_width,
        params.epsilon);
    const RpUnificationReport report = check_unification_rpwithprior(config);
    out.max_abs_diff = report.grid_max_diff;
    out.pass = report.pass;
    out.details = {{"normalization_error", report.normalization_error},
                   {"ratio_error", report.worst_ratio_error},
                   {"grid_max_diff", report.grid_max_diff}};
  } else {
    throw Error(ErrorCode::kUnknownMechanism, name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Optimization-side checks: the matrix must be feasible for the constraint
// set (ratio bounds, pinned delta entries, stochasticity) and tight where
// the derivation forces equality: p_{yt|yt} = e^eps * p_{yt|y} whenever yt
// lies outside B(y) (and outside delta for minority rows).
// ---------------------------------------------------------------------------

struct LpReport {
  bool ratio_feasible = false;
  bool delta_constraint_holds = false;
  bool rows_stochastic = false;
  bool nonnegative = false;
  bool boundary_equalities_hold = false;
  double max_ratio_excess = 0.0;     // above e^eps, relative
  double max_delta_gap = 0.0;        // |entry - 1/|s_tilde||
  double max_row_residual = 0.0;
  double max_equality_gap = 0.0;

  bool feasible() const {
    return ratio_feasible && delta_constraint_holds && rows_stochastic &&
           nonnegative;
  }
  bool pass() const { return feasible() && boundary_equalities_hold; }
};

inline LpReport check_lp_conditions(const MechanismMatrix& matrix,
                                    const PartitionConfig& config) {
  LpReport report;
  const double e_eps = std::exp(config.epsilon);
  const double uniform = 1.0 / static_cast<double>(config.s_tilde.size());

  report.nonnegative = true;
  report.rows_stochastic = true;
  for (const auto& row : matrix.p) {
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0) report.nonnegative = false;
      sum += v;
    }
    report.max_row_residual =
        std::max(report.max_row_residual, std::abs(sum - 1.0));
  }
  report.rows_stochastic = report.max_row_residual <= kAlgebraTolerance;

  // Pairwise ratio bound per output column.
  report.ratio_feasible = true;
  for (std::size_t c = 0; c < matrix.output_labels.size(); ++c) {
    double col_min = std::numeric_limits<double>::infinity();
    double col_max = 0.0;
    for (std::size_t r = 0; r < matrix.p.size(); ++r) {
      col_min = std::min(col_min, matrix.p[r][c]);
      col_max = std::max(col_max, matrix.p[r][c]);
    }
    if (col_min <= 0.0) {
      if (col_max > 0.0) report.ratio_feasible = false;
      continue;
    }
    const double excess = col_max / col_min / e_eps - 1.0;
    report.max_ratio_excess = std::max(report.max_ratio_excess, excess);
    if (excess > kDpRatioTolerance) report.ratio_feasible = false;
  }

  // Pinned entries: minority rows put exactly 1/|s_tilde| on delta.
  for (int y : config.s2) {
    for (int yt : config.delta) {
      const double gap = std::abs(matrix.at(y, yt) - uniform);
      report.max_delta_gap = std::max(report.max_delta_gap, gap);
    }
  }
  report.delta_constraint_holds = report.max_delta_gap <= kAlgebraTolerance;

  // Tightness outside the blocks.
  for (int y : config.space.labels()) {
    const bool minority = set_contains(config.s2, y);
    const LabelSet& block = config.mapping.block(y);
    for (int yt : config.s_tilde) {
      if (set_contains(block, yt)) continue;
      if (minority && set_contains(config.delta, yt)) continue;
      const double gap =
          std::abs(matrix.at(yt, yt) - e_eps * matrix.at(y, yt));
      report.max_equality_gap = std::max(report.max_equality_gap, gap);
    }
  }
  report.boundary_equalities_hold =
      report.max_equality_gap <= kAlgebraTolerance;
  return report;
}

// Monte Carlo draw counts per row against the theoretical distribution.
struct EmpiricalReport {
  MechanismMatrix empirical;
  std::vector<double> tv_per_row;
  double max_tv = 0.0;
};

inline EmpiricalReport empirical_transition(const MechanismMatrix& matrix,
                                            long long n,
                                            const RandomStream& stream) {
  if (n < 1) {
    throw Error(ErrorCode::kNonpositiveN, "need at least one draw per row");
  }
  const std::string malformation = matrix.describe_malformation();
  if (!malformation.empty()) {
    throw Error(ErrorCode::kMalformedMatrix, malformation);
  }

  EmpiricalReport report;
  report.empirical.input_labels = matrix.input_labels;
  report.empirical.output_labels = matrix.output_labels;
  report.empirical.p.assign(matrix.p.size(),
                            std::vector<double>(matrix.output_labels.size(),
                                                0.0));
  for (std::size_t r = 0; r < matrix.input_labels.size(); ++r) {
    RandomStream row_stream = stream.substream(r);
    std::vector<long long> counts(matrix.output_labels.size(), 0);
    for (long long i = 0; i < n; ++i) {
      const int yt = sample_label(matrix.input_labels[r], matrix, row_stream);
      ++counts[static_cast<std::size_t>(matrix.col_of(yt))];
    }
    double tv = 0.0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      report.empirical.p[r][c] =
          static_cast<double>(counts[c]) / static_cast<double>(n);
      tv += std::abs(report.empirical.p[r][c] - matrix.p[r][c]);
    }
    report.tv_per_row.push_back(0.5 * tv);
    report.max_tv = std::max(report.max_tv, report.tv_per_row.back());
  }
  return report;
}

}  // namespace blockrr

#endif  // BLOCKRR_VERIFIER_HPP_

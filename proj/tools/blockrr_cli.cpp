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

// Command-line surface for the block randomized-response toolkit.
//
// Exit codes: 0 success, 1 failed comparison, 2 privacy violation,
// 3 malformed matrix input, 64 usage error, 65 data error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockrr/blockrr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCompareFailed = 1;
constexpr int kExitDpViolation = 2;
constexpr int kExitMalformedMatrix = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

using nlohmann::json;

// Payloads go to the named file, or to stdout with "--output -".
void write_payload(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

struct CommonOptions {
  std::string output = "-";
  bool debug = false;
};

struct EstimatePriorOptions {
  std::string input;
  double epsilon = 1.0;
  int k = 0;  // 0 derives the label space from the data
  std::uint64_t seed = 0;
};

struct PartitionOptions {
  std::string prior_path;
  double epsilon = 1.0;
  double sigma = 1.0;
  int l = 0;
};

struct MatrixOptions {
  std::string mechanism;
  std::string config_path;
  std::string prior_path;
  int k = 0;
  int bins = 0;
  double epsilon = 1.0;
};

struct RandomizeOptions {
  std::string input;
  double epsilon = 1.0;
  double sigma = 1.0;
  int l = 0;
  double split_frac = 0.01;
  std::uint64_t seed = 0;
  std::string manifest;
};

struct VerifyOptions {
  std::string matrix_path;
  double epsilon = 1.0;
};

struct SimulateOptions {
  std::vector<long long> counts;
  double epsilon = 1.0;
  double sigma = 1.0;
  int l = 0;
  double split_frac = 0.01;
  std::uint64_t seed = 0;
  long long draws = 100000;
};

struct CompareOptions {
  std::string mechanism;
  int k = 10;
  double epsilon = 1.0;
  std::string prior_path;
  int bins = 0;
  bool split_variant = false;
  double interval_lo = 0.0;
  double interval_hi = 1.0;
  double delta_width = 0.1;
};

json flags_json(std::initializer_list<std::pair<std::string, json>> kv) {
  json out = json::object();
  for (const auto& [key, value] : kv) out[key] = value;
  return out;
}

int run_estimate_prior(const EstimatePriorOptions& opt,
                       const CommonOptions& common) {
  const blockrr::LabelDataset raw = blockrr::read_label_dataset_csv(opt.input);
  if (raw.empty()) throw std::runtime_error("input dataset is empty");

  std::vector<int> labels;
  labels.reserve(raw.size());
  std::optional<blockrr::LabelCodec> codec;
  int k = opt.k;
  if (k > 0) {
    for (const auto& r : raw.records) labels.push_back(r.label);
  } else {
    codec.emplace(blockrr::LabelCodec::from_dataset(raw));
    k = codec->class_count();
    for (const auto& r : raw.records) labels.push_back(codec->encode(r.label));
  }

  blockrr::RandomStream stream(opt.seed);
  blockrr::RandomStream prior_stream =
      stream.substream(blockrr::kPriorStreamId);
  const blockrr::PriorEstimate estimate =
      blockrr::estimate_prior_detailed(labels, opt.epsilon, k, prior_stream);

  if (common.debug) {
    // Noisy counts are post-privatization and safe to reveal.
    std::cerr << "noisy counts:";
    for (double c : estimate.histogram.noisy_counts) std::cerr << ' ' << c;
    std::cerr << '\n';
  }
  if (estimate.fell_back_to_uniform) {
    std::cerr << "warning: all noisy counts clamped to zero; "
                 "returning the uniform prior\n";
  }

  json out = blockrr::prior_to_json(estimate.prior);
  if (codec.has_value() && !codec->is_identity()) {
    out["label_values"] = codec->raw_values();
  }
  write_payload(common.output, dump_json(out));
  return kExitOk;
}

int run_partition(const PartitionOptions& opt, const CommonOptions& common) {
  const blockrr::PriorDistribution prior =
      blockrr::prior_from_json(read_json_file(opt.prior_path));
  const int k = prior.class_count();
  const blockrr::LabelSet s_tilde = blockrr::LabelSpace(k).labels();

  const blockrr::WeightMatrix weights =
      blockrr::build_weight_matrix(prior, opt.sigma, s_tilde);
  auto [s1, s2] = blockrr::split_by_weights(weights);
  const blockrr::BlockMapping mapping = blockrr::identity_mapping(k);
  auto [s_tilde1, s_tilde2] =
      blockrr::derive_output_partition(s1, s2, s_tilde, mapping);

  const int l_effective =
      s2.empty() ? 0
                 : std::min(opt.l, static_cast<int>(s_tilde1.size()));
  const blockrr::LabelSet delta =
      blockrr::select_delta(prior, s_tilde1, l_effective);
  const blockrr::PartitionConfig config = blockrr::assemble_config(
      blockrr::LabelSpace(k), s1, s2, s_tilde, delta, l_effective, opt.epsilon,
      mapping);
  const blockrr::ValidationResult validation =
      blockrr::validate_config(config);
  if (!validation.ok()) {
    throw blockrr::Error(*validation.error, validation.detail);
  }
  write_payload(common.output, dump_json(blockrr::config_to_json(config)));
  return kExitOk;
}

int run_matrix(const MatrixOptions& opt, const CommonOptions& common) {
  blockrr::MechanismMatrix matrix;
  if (opt.mechanism == "blockrr") {
    if (opt.config_path.empty()) {
      throw CLI::ValidationError("--config is required for blockrr");
    }
    matrix = blockrr::build_blockrr_matrix(
        blockrr::config_from_json(read_json_file(opt.config_path)));
  } else if (opt.mechanism == "rr") {
    matrix = blockrr::build_rr_matrix(opt.k, opt.epsilon);
  } else if (opt.mechanism == "rrwithprior") {
    if (opt.prior_path.empty()) {
      throw CLI::ValidationError("--prior is required for rrwithprior");
    }
    matrix = blockrr::build_rrwithprior_matrix(
        blockrr::prior_from_json(read_json_file(opt.prior_path)), opt.epsilon);
  } else if (opt.mechanism == "rronbins") {
    matrix = blockrr::build_rronbins_matrix(
        blockrr::make_rronbins_config(opt.k, opt.bins, opt.epsilon));
  } else {
    throw blockrr::Error(blockrr::ErrorCode::kUnknownMechanism, opt.mechanism);
  }
  write_payload(common.output, dump_json(blockrr::matrix_to_json(matrix)));
  return kExitOk;
}

int run_randomize(const RandomizeOptions& opt, const CommonOptions& common) {
  const blockrr::LabelDataset raw = blockrr::read_label_dataset_csv(opt.input);
  if (raw.empty()) throw std::runtime_error("input dataset is empty");
  const blockrr::LabelCodec codec = blockrr::LabelCodec::from_dataset(raw);
  const blockrr::LabelDataset dataset = codec.encode_dataset(raw);
  const int k = codec.class_count();

  blockrr::RandomStream stream(opt.seed);
  const blockrr::PipelineResult pipeline = blockrr::build_pipeline(
      dataset, opt.epsilon, opt.sigma, opt.l, blockrr::identity_mapping(k),
      opt.split_frac, stream);
  const blockrr::RandomizedDataset randomized = blockrr::randomize_dataset(
      pipeline.d2, pipeline.config.partition,
      stream.substream(blockrr::kRandomizeStreamId));

  // Decode back to the caller's label values.
  blockrr::RandomizedDataset decoded = randomized;
  for (auto& r : decoded.records) r.label = codec.decode(r.label);

  std::ostringstream csv;
  if (common.debug) {
    std::vector<int> original_labels;
    original_labels.reserve(pipeline.d2.size());
    for (const auto& r : pipeline.d2.records) {
      original_labels.push_back(codec.decode(r.label));
    }
    blockrr::write_randomized_dataset_csv(decoded, csv, &original_labels);
  } else {
    blockrr::write_randomized_dataset_csv(decoded, csv);
  }
  write_payload(common.output, csv.str());

  json manifest = blockrr::make_run_manifest(
      pipeline, opt.seed,
      flags_json({{"input", opt.input},
                  {"epsilon", opt.epsilon},
                  {"sigma", opt.sigma},
                  {"l", opt.l},
                  {"split_frac", opt.split_frac},
                  {"seed", opt.seed},
                  {"output", common.output},
                  {"debug", common.debug}}));
  if (!codec.is_identity()) manifest["label_values"] = codec.raw_values();

  std::string manifest_path = opt.manifest;
  if (manifest_path.empty()) {
    if (common.output == "-") {
      std::cerr << "note: no --manifest given in stream mode; "
                   "run manifest not written\n";
      return kExitOk;
    }
    manifest_path = common.output + ".manifest.json";
  }
  write_payload(manifest_path, dump_json(manifest));
  return kExitOk;
}

int run_verify(const VerifyOptions& opt, const CommonOptions& common,
               bool write_report) {
  blockrr::MechanismMatrix matrix;
  try {
    matrix = blockrr::matrix_from_json(read_json_file(opt.matrix_path));
  } catch (const std::exception& e) {
    std::cerr << "malformed matrix input: " << e.what() << '\n';
    return kExitMalformedMatrix;
  }

  blockrr::VerificationReport report;
  try {
    report = blockrr::check_label_dp(matrix, opt.epsilon);
  } catch (const blockrr::Error& e) {
    if (e.code() == blockrr::ErrorCode::kMalformedMatrix) {
      std::cerr << e.what() << '\n';
      return kExitMalformedMatrix;
    }
    throw;
  }

  if (write_report) {
    write_payload(common.output,
                  dump_json(blockrr::verification_report_to_json(report)));
  }
  if (!report.dp_pass) {
    std::cerr << "privacy violation: max column ratio " << report.max_ratio
              << " exceeds e^epsilon " << report.epsilon_bound << '\n';
    return kExitDpViolation;
  }
  std::cerr << "ok: max column ratio " << report.max_ratio
            << " within e^epsilon " << report.epsilon_bound << '\n';
  return kExitOk;
}

int run_simulate(const SimulateOptions& opt, const CommonOptions& common) {
  const blockrr::ClassCountProfile profile{opt.counts};
  blockrr::RandomStream stream(opt.seed);
  blockrr::RandomStream synth_stream = stream.substream(1000);
  const blockrr::LabelDataset dataset =
      blockrr::generate_synthetic(profile, synth_stream);

  const int k = static_cast<int>(profile.counts.size());
  const blockrr::BlockMapping mapping = blockrr::identity_mapping(k);
  const blockrr::PipelineResult pipeline = blockrr::build_pipeline(
      dataset, opt.epsilon, opt.sigma, opt.l, mapping, opt.split_frac, stream);
  const blockrr::RandomizedDataset randomized = blockrr::randomize_dataset(
      pipeline.d2, pipeline.config.partition,
      stream.substream(blockrr::kRandomizeStreamId));

  const blockrr::MechanismMatrix matrix =
      blockrr::build_blockrr_matrix(pipeline.config.partition);
  const blockrr::RetentionReport retention = blockrr::measure_retention(
      pipeline.d2, randomized, matrix, mapping);
  const blockrr::EmpiricalReport empirical = blockrr::empirical_transition(
      matrix, opt.draws, stream.substream(2000));
  const blockrr::VerificationReport dp =
      blockrr::check_label_dp(matrix, opt.epsilon);

  json report{
      {"params", flags_json({{"counts", opt.counts},
                             {"epsilon", opt.epsilon},
                             {"sigma", opt.sigma},
                             {"l", opt.l},
                             {"split_frac", opt.split_frac},
                             {"seed", opt.seed},
                             {"draws", opt.draws}})},
      {"manifest", blockrr::make_run_manifest(pipeline, opt.seed,
                                              json::object())},
      {"retention", blockrr::retention_report_to_json(retention)},
      {"empirical",
       {{"max_tv", empirical.max_tv}, {"tv_per_row", empirical.tv_per_row}}},
      {"dp", blockrr::verification_report_to_json(dp)}};
  write_payload(common.output, dump_json(report));
  return dp.dp_pass ? kExitOk : kExitDpViolation;
}

int run_compare(const CompareOptions& opt, const CommonOptions& common) {
  blockrr::UnificationParams params;
  params.k = opt.k;
  params.epsilon = opt.epsilon;
  params.bin_count = opt.bins;
  params.split_variant = opt.split_variant;
  params.interval_lo = opt.interval_lo;
  params.interval_hi = opt.interval_hi;
  params.delta_width = opt.delta_width;
  if (!opt.prior_path.empty()) {
    params.prior = blockrr::prior_from_json(read_json_file(opt.prior_path));
  }

  const blockrr::UnificationOutcome outcome =
      blockrr::check_unification(opt.mechanism, params);
  json out{{"mechanism", outcome.mechanism},
           {"max_abs_diff", outcome.max_abs_diff},
           {"pass", outcome.pass},
           {"details", outcome.details}};
  write_payload(common.output, dump_json(out));
  if (!outcome.pass) {
    std::cerr << "comparison failed: max diff " << outcome.max_abs_diff
              << '\n';
    return kExitCompareFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block randomized response for label privacy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(blockrr::kVersion));

  CommonOptions common;
  EstimatePriorOptions estimate_opt;
  PartitionOptions partition_opt;
  MatrixOptions matrix_opt;
  RandomizeOptions randomize_opt;
  VerifyOptions verify_opt;
  SimulateOptions simulate_opt;
  CompareOptions compare_opt;

  // Payload subcommands must name their destination; stdout only carries
  // data when '-' is requested explicitly.
  auto add_common = [&common](CLI::App* cmd, bool output_required = true) {
    CLI::Option* output = cmd->add_option("--output", common.output,
                                          "output file, or '-' for stdout");
    if (output_required) output->required();
    cmd->add_flag("--debug", common.debug, "extra diagnostics");
  };

  CLI::App* estimate = app.add_subcommand(
      "estimate-prior", "privately estimate the label prior from a CSV");
  estimate->add_option("--input", estimate_opt.input, "dataset CSV (id,label)")
      ->required();
  estimate->add_option("--epsilon", estimate_opt.epsilon, "privacy budget")
      ->required();
  estimate->add_option("--k", estimate_opt.k,
                       "class count; 0 derives it from the data");
  estimate->add_option("--seed", estimate_opt.seed, "64-bit seed")->required();
  add_common(estimate);

  CLI::App* partition = app.add_subcommand(
      "partition", "derive the label-space split and delta from a prior");
  partition->add_option("--prior", partition_opt.prior_path, "prior JSON")
      ->required();
  partition->add_option("--epsilon", partition_opt.epsilon, "privacy budget")
      ->required();
  partition->add_option("--sigma", partition_opt.sigma, "weight sharpness")
      ->required();
  partition->add_option("--l", partition_opt.l, "delta cardinality")
      ->required();
  add_common(partition);

  CLI::App* matrix = app.add_subcommand(
      "matrix", "emit a mechanism transition matrix as JSON");
  matrix
      ->add_option("--mechanism", matrix_opt.mechanism,
                   "blockrr|rr|rrwithprior|rronbins")
      ->required();
  matrix->add_option("--config", matrix_opt.config_path,
                     "partition config JSON (blockrr)");
  matrix->add_option("--prior", matrix_opt.prior_path,
                     "prior JSON (rrwithprior)");
  matrix->add_option("--k", matrix_opt.k, "class count (rr, rronbins)");
  matrix->add_option("--bins", matrix_opt.bins, "bin count (rronbins)");
  matrix->add_option("--epsilon", matrix_opt.epsilon, "privacy budget");
  add_common(matrix);

  CLI::App* randomize = app.add_subcommand(
      "randomize", "run the full pipeline and privatize a dataset");
  randomize->add_option("--input", randomize_opt.input, "dataset CSV")
      ->required();
  randomize->add_option("--epsilon", randomize_opt.epsilon, "privacy budget")
      ->required();
  randomize->add_option("--sigma", randomize_opt.sigma, "weight sharpness")
      ->required();
  randomize->add_option("--l", randomize_opt.l, "delta cardinality")
      ->required();
  randomize
      ->add_option("--split-frac", randomize_opt.split_frac,
                   "fraction reserved for prior estimation")
      ->capture_default_str();
  randomize->add_option("--seed", randomize_opt.seed, "64-bit seed")
      ->required();
  randomize->add_option("--manifest", randomize_opt.manifest,
                        "run manifest path (default <output>.manifest.json)");
  add_common(randomize);

  CLI::App* verify = app.add_subcommand(
      "verify", "check a matrix file for the epsilon privacy bound");
  verify->add_option("--matrix", verify_opt.matrix_path, "matrix JSON")
      ->required();
  verify->add_option("--epsilon", verify_opt.epsilon, "privacy budget")
      ->required();
  add_common(verify, /*output_required=*/false);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "synthetic data end to end: pipeline, retention, fidelity");
  simulate
      ->add_option("--counts", simulate_opt.counts,
                   "per-class record counts, comma separated")
      ->required()
      ->delimiter(',');
  simulate->add_option("--epsilon", simulate_opt.epsilon, "privacy budget")
      ->required();
  simulate->add_option("--sigma", simulate_opt.sigma, "weight sharpness")
      ->required();
  simulate->add_option("--l", simulate_opt.l, "delta cardinality")->required();
  simulate
      ->add_option("--split-frac", simulate_opt.split_frac,
                   "fraction reserved for prior estimation")
      ->capture_default_str();
  simulate->add_option("--seed", simulate_opt.seed, "64-bit seed")->required();
  simulate->add_option("--draws", simulate_opt.draws,
                       "Monte Carlo draws per matrix row")
      ->capture_default_str();
  add_common(simulate);

  CLI::App* compare = app.add_subcommand(
      "compare", "diff the block mechanism against a baseline mechanism");
  compare
      ->add_option("--mechanism", compare_opt.mechanism,
                   "rr|rrwithprior|rronbins|rpwithprior")
      ->required();
  compare->add_option("--k", compare_opt.k, "class count")
      ->capture_default_str();
  compare->add_option("--epsilon", compare_opt.epsilon, "privacy budget")
      ->required();
  compare->add_option("--prior", compare_opt.prior_path,
                      "prior JSON (rrwithprior)");
  compare->add_option("--bins", compare_opt.bins, "bin count (rronbins)");
  compare->add_flag("--table2", compare_opt.split_variant,
                    "use the two-block parameterization (rr, rronbins)");
  compare->add_option("--interval-lo", compare_opt.interval_lo,
                      "interval start (rpwithprior)");
  compare->add_option("--interval-hi", compare_opt.interval_hi,
                      "interval end (rpwithprior)");
  compare->add_option("--delta", compare_opt.delta_width,
                      "window half-width (rpwithprior)");
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (estimate->parsed()) return run_estimate_prior(estimate_opt, common);
    if (partition->parsed()) return run_partition(partition_opt, common);
    if (matrix->parsed()) return run_matrix(matrix_opt, common);
    if (randomize->parsed()) return run_randomize(randomize_opt, common);
    if (verify->parsed()) {
      return run_verify(verify_opt, common, verify->count("--output") > 0);
    }
    if (simulate->parsed()) return run_simulate(simulate_opt, common);
    if (compare->parsed()) return run_compare(compare_opt, common);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const blockrr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

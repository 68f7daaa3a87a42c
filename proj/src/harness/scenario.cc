// Copyright 2026 The tsaudit Authors
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

#include "tsaudit/harness/scenario.h"

#include <chrono>
#include <filesystem>
#include <system_error>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "tsaudit/core/file_io.h"
#include "tsaudit/core/normalize.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"
#include "tsaudit/data/csv.h"
#include "tsaudit/data/split.h"
#include "tsaudit/data/synthetic.h"
#include "tsaudit/models/training.h"

namespace tsaudit::harness {

data::SyntheticConfig PublicSyntheticConfig(const ExperimentConfig& cfg) {
  if (cfg.data.public_synthetic.has_value()) return *cfg.data.public_synthetic;
  const data::Family other = cfg.data.synthetic.family == data::Family::kA
                                 ? data::Family::kB
                                 : data::Family::kA;
  data::SyntheticConfig synth = data::DefaultSyntheticConfig(other);
  synth.length = cfg.data.synthetic.length;
  synth.dims = cfg.data.synthetic.dims;
  synth.amplitude_min = cfg.data.synthetic.amplitude_min;
  synth.amplitude_max = cfg.data.synthetic.amplitude_max;
  synth.noise_min = cfg.data.synthetic.noise_min;
  synth.noise_max = cfg.data.synthetic.noise_max;
  synth.ar_coefficient = cfg.data.synthetic.ar_coefficient;
  synth.components_min = cfg.data.synthetic.components_min;
  synth.components_max = cfg.data.synthetic.components_max;
  return synth;
}

namespace {

using models::ImputerConfig;
using models::TrainedImputer;

std::vector<TimeSeries> NormalizeAll(std::vector<TimeSeries> corpus,
                                     bool enabled) {
  if (!enabled) return corpus;
  for (TimeSeries& x : corpus) x = ZScoreNormalize(x).first;
  return corpus;
}

absl::StatusOr<std::vector<TimeSeries>> LoadCorpus(const ExperimentConfig& cfg) {
  if (cfg.data.kind == DataSource::Kind::kCsv) {
    TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus,
                             data::LoadCsv(cfg.data.csv_path));
    return NormalizeAll(std::move(corpus), cfg.normalize);
  }
  data::SyntheticConfig synth = cfg.data.synthetic;
  synth.seed = DeriveSeed(cfg.seed, "data");
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus,
                           data::GenerateSynthetic(synth));
  return NormalizeAll(std::move(corpus), cfg.normalize);
}

// The differently distributed public corpus of scenario 1, when one is
// available; otherwise the split's own public slice is kept.
absl::StatusOr<std::vector<TimeSeries>> Scenario1Public(
    const ExperimentConfig& cfg, std::vector<TimeSeries> split_public) {
  if (cfg.data.kind == DataSource::Kind::kCsv) {
    if (cfg.data.public_csv_path.empty()) return split_public;
    TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus,
                             data::LoadCsv(cfg.data.public_csv_path));
    return NormalizeAll(std::move(corpus), cfg.normalize);
  }
  data::SyntheticConfig synth = PublicSyntheticConfig(cfg);
  synth.count = static_cast<int>(split_public.size());
  synth.seed = DeriveSeed(cfg.seed, "public-data");
  if (synth.id_prefix.empty()) {
    synth.id_prefix = synth.family == data::Family::kA ? "OA" : "OB";
  }
  TSAUDIT_RETURN_IF_ERROR(
      data::CheckFrequencySeparation(cfg.data.synthetic, synth));
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus,
                           data::GenerateSynthetic(synth));
  return NormalizeAll(std::move(corpus), cfg.normalize);
}

ImputerConfig Reseeded(ImputerConfig cfg, std::uint64_t master,
                       absl::string_view tag) {
  cfg.seed = DeriveSeed(master, tag);
  return cfg;
}

// Parity gate, attack and metrics shared by both scenarios.
absl::StatusOr<ExperimentReport> Evaluate(const ExperimentConfig& cfg,
                                          const data::ScenarioSplit& split,
                                          int public_count,
                                          const TrainedImputer& target,
                                          const TrainedImputer& reference) {
  ExperimentReport report;
  report.config = cfg;
  report.split = {public_count, static_cast<int>(split.private_set.size()),
                  static_cast<int>(split.test_set.size())};

  TSAUDIT_ASSIGN_OR_RETURN(
      report.parity,
      models::ParityCheck(target, reference, split.test_set,
                          cfg.parity_tolerance, DeriveSeed(cfg.seed, "parity")));
  if (!report.parity.passed && !cfg.override_parity) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "parity check failed: target MAE %.6f vs reference MAE %.6f, gap "
        "%.6f > tolerance %.6f (use --override-parity to proceed)",
        report.parity.mae_target, report.parity.mae_reference,
        report.parity.gap, report.parity.tolerance));
  }
  TSAUDIT_ASSIGN_OR_RETURN(
      report.target_private_mae,
      models::EvaluateMae(target, split.private_set,
                          models::kParityMaskFraction,
                          DeriveSeed(cfg.seed, "private-mae")));

  std::vector<TimeSeries> candidates;
  candidates.reserve(split.private_set.size() + split.test_set.size());
  for (const TimeSeries& x : split.private_set) {
    candidates.push_back(x);
    report.labels.emplace_back(x.id(), true);
  }
  for (const TimeSeries& x : split.test_set) {
    candidates.push_back(x);
    report.labels.emplace_back(x.id(), false);
  }
  attack::AttackConfig attack_cfg = cfg.attack;
  attack_cfg.seed = DeriveSeed(cfg.seed, "attack");
  attack_cfg.known_nonmembers = split.test_set;
  TSAUDIT_ASSIGN_OR_RETURN(
      report.scores,
      attack::RunAttack(target, reference, candidates, attack_cfg));
  const Labels labels(report.labels.begin(), report.labels.end());
  TSAUDIT_ASSIGN_OR_RETURN(report.methods,
                           ComputeMethodMetrics(report.scores, labels));
  return report;
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

absl::StatusOr<ExperimentReport> RunScenario1(const ExperimentConfig& cfg,
                                              TrainedPair* models) {
  const auto start = std::chrono::steady_clock::now();
  TSAUDIT_RETURN_IF_ERROR(Validate(cfg));
  if (cfg.scenario != 1) {
    return absl::InvalidArgumentError("config is not a scenario 1 config");
  }
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus, LoadCorpus(cfg));
  TSAUDIT_ASSIGN_OR_RETURN(
      data::ScenarioSplit split,
      data::SplitScenario1(corpus, cfg.seed));
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> public_set,
                           Scenario1Public(cfg, std::move(split.public_set)));

  TSAUDIT_ASSIGN_OR_RETURN(
      TrainedImputer target,
      models::Train(split.private_set, Reseeded(cfg.target, cfg.seed, "target")));
  TSAUDIT_ASSIGN_OR_RETURN(
      TrainedImputer reference,
      models::Train(public_set, Reseeded(cfg.reference, cfg.seed, "reference")));
  TSAUDIT_ASSIGN_OR_RETURN(
      ExperimentReport report,
      Evaluate(cfg, split, static_cast<int>(public_set.size()), target,
               reference));
  if (models != nullptr) {
    models->target = std::move(target);
    models->reference = std::move(reference);
  }
  report.wall_seconds = SecondsSince(start);
  return report;
}

absl::StatusOr<ExperimentReport> RunScenario2(const ExperimentConfig& cfg,
                                              TrainedPair* models) {
  const auto start = std::chrono::steady_clock::now();
  TSAUDIT_RETURN_IF_ERROR(Validate(cfg));
  if (cfg.scenario != 2) {
    return absl::InvalidArgumentError("config is not a scenario 2 config");
  }
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus, LoadCorpus(cfg));
  TSAUDIT_ASSIGN_OR_RETURN(
      data::ScenarioSplit split,
      data::SplitScenario2(corpus, cfg.seed));

  TSAUDIT_ASSIGN_OR_RETURN(
      TrainedImputer base,
      models::Train(split.public_set,
                    Reseeded(cfg.reference, cfg.seed, "reference")));
  TSAUDIT_ASSIGN_OR_RETURN(
      TrainedImputer target,
      models::FineTune(base, split.private_set,
                       Reseeded(*cfg.fine_tune, cfg.seed, "fine-tune")));
  std::optional<TrainedImputer> independent;
  if (cfg.independent_reference) {
    TSAUDIT_ASSIGN_OR_RETURN(
        independent,
        models::Train(split.public_set,
                      Reseeded(cfg.reference, cfg.seed, "reference-independent")));
  }
  const TrainedImputer& reference = independent.has_value() ? *independent : base;
  TSAUDIT_ASSIGN_OR_RETURN(
      ExperimentReport report,
      Evaluate(cfg, split, static_cast<int>(split.public_set.size()), target,
               reference));
  if (models != nullptr) {
    models->target = target;
    models->reference = reference;
    models->base = base;
  }
  report.wall_seconds = SecondsSince(start);
  return report;
}

absl::StatusOr<ExperimentReport> RunScenario(const ExperimentConfig& cfg,
                                             TrainedPair* models) {
  if (cfg.scenario == 1) return RunScenario1(cfg, models);
  return RunScenario2(cfg, models);
}

nlohmann::json ToJson(const ExperimentReport& report) {
  const std::vector<std::string>& names = report.config.metrics;
  long long flagged = 0;
  long long flagged_members = 0;
  for (std::size_t i = 0; i < report.scores.verdicts.size(); ++i) {
    if (!report.scores.verdicts[i].is_member) continue;
    ++flagged;
    if (report.labels[i].second) ++flagged_members;
  }
  nlohmann::json j;
  j["scenario"] = report.config.scenario;
  j["config"] = ToJson(report.config);
  j["split"] = {{"public", report.split.public_count},
                {"private", report.split.private_count},
                {"test", report.split.test_count}};
  j["parity"] = {{"mae_target", report.parity.mae_target},
                 {"mae_reference", report.parity.mae_reference},
                 {"gap", report.parity.gap},
                 {"tolerance", report.parity.tolerance},
                 {"passed", report.parity.passed}};
  j["target_private_mae"] = report.target_private_mae;
  j["theta"] = report.scores.theta;
  j["theta_rule"] = report.scores.theta_rule.ToString();
  j["verdicts"] = {{"flagged", flagged},
                   {"flagged_members", flagged_members},
                   {"candidates", report.scores.verdicts.size()}};
  j["methods"] = {{"lbrm", MetricsBlock(report.methods.lbrm, names)},
                  {"naive", MetricsBlock(report.methods.naive, names)}};
  j["files"] = {{"scores", "scores.json"},
                {"roc_lbrm", "roc_lbrm.csv"},
                {"roc_naive", "roc_naive.csv"},
                {"labels", "labels.csv"}};
  return j;
}

absl::Status WriteExperimentOutputs(const ExperimentReport& report,
                                    const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create output directory '", dir, "'"));
  }
  const std::filesystem::path root(dir);
  TSAUDIT_RETURN_IF_ERROR(WriteFileAtomic((root / "report.json").string(),
                                          ToJson(report).dump(2) + "\n"));
  TSAUDIT_RETURN_IF_ERROR(WriteFileAtomic(
      (root / "scores.json").string(),
      attack::AttackReportToJson(report.scores).dump(2) + "\n"));
  TSAUDIT_RETURN_IF_ERROR(
      WriteFileAtomic((root / "roc_lbrm.csv").string(),
                      metrics::RocToCsv(report.methods.lbrm_curve)));
  TSAUDIT_RETURN_IF_ERROR(
      WriteFileAtomic((root / "roc_naive.csv").string(),
                      metrics::RocToCsv(report.methods.naive_curve)));
  TSAUDIT_RETURN_IF_ERROR(WriteFileAtomic((root / "labels.csv").string(),
                                          FormatLabelsCsv(report.labels)));
  const nlohmann::json timing = {{"wall_seconds", report.wall_seconds}};
  return WriteFileAtomic((root / "timing.json").string(), timing.dump(2) + "\n");
}

}  // namespace tsaudit::harness

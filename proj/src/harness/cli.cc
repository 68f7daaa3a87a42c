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

#include "tsaudit/harness/cli.h"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <system_error>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tsaudit/core/file_io.h"
#include "tsaudit/core/normalize.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"
#include "tsaudit/data/csv.h"
#include "tsaudit/data/synthetic.h"
#include "tsaudit/harness/experiment_config.h"
#include "tsaudit/harness/scenario.h"
#include "tsaudit/models/serialization.h"
#include "tsaudit/models/training.h"

namespace tsaudit::harness {
namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool override_parity = false;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Experiment config (JSON)");
  cmd->add_option("--seed", flags.seed, "Master seed, overrides the config");
  cmd->add_option("--out", flags.out, "Output directory");
}

// Loads the experiment config (or defaults when none is given) and applies
// the command-line overrides.
absl::StatusOr<ExperimentConfig> ResolveConfig(const CommonFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    TSAUDIT_ASSIGN_OR_RETURN(cfg, LoadExperimentConfig(flags.config_path));
  }
  if (flags.seed.has_value()) cfg.seed = *flags.seed;
  if (flags.override_parity) cfg.override_parity = true;
  if (!flags.out.empty()) {
    cfg.output_dir = flags.out;
  } else if (const char* env = std::getenv(kOutputDirEnv);
             env != nullptr && *env != '\0') {
    cfg.output_dir = env;
  }
  return cfg;
}

absl::Status EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create output directory '", dir, "'"));
  }
  return absl::OkStatus();
}

std::string InDir(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

absl::StatusOr<nlohmann::json> ReadJson(const std::string& path) {
  TSAUDIT_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", path, "' is not valid JSON"));
  }
  return j;
}

absl::Status RunGenerate(const CommonFlags& flags, const std::string& family,
                         std::optional<int> count) {
  TSAUDIT_ASSIGN_OR_RETURN(ExperimentConfig cfg, ResolveConfig(flags));
  data::SyntheticConfig synth = cfg.data.synthetic;
  if (family == "B") {
    synth = PublicSyntheticConfig(cfg);
  } else if (family != "A") {
    return absl::InvalidArgumentError(
        absl::StrCat("--family must be A or B, got '", family, "'"));
  }
  if (count.has_value()) synth.count = *count;
  synth.seed = DeriveSeed(cfg.seed, family == "B" ? "public-data" : "data");
  TSAUDIT_RETURN_IF_ERROR(data::Validate(synth));
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus,
                           data::GenerateSynthetic(synth));
  TSAUDIT_RETURN_IF_ERROR(EnsureDir(cfg.output_dir));
  return data::SaveCsv(corpus, InDir(cfg.output_dir, "corpus.csv"));
}

absl::Status RunTrain(const CommonFlags& flags, const std::string& data_path,
                      const std::string& role, const std::string& base_path) {
  TSAUDIT_ASSIGN_OR_RETURN(ExperimentConfig cfg, ResolveConfig(flags));
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> corpus,
                           data::LoadCsv(data_path));
  if (cfg.normalize) {
    for (TimeSeries& x : corpus) x = ZScoreNormalize(x).first;
  }
  models::ImputerConfig imputer;
  if (role == "target") {
    imputer = cfg.target;
  } else if (role == "reference") {
    imputer = cfg.reference;
  } else if (role == "fine_tune") {
    if (!cfg.fine_tune.has_value() || base_path.empty()) {
      return absl::InvalidArgumentError(
          "--role fine_tune needs a fine_tune config and --base");
    }
    imputer = *cfg.fine_tune;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "--role must be target, reference or fine_tune, got '", role, "'"));
  }
  imputer.seed = DeriveSeed(cfg.seed, role == "fine_tune" ? "fine-tune" : role);
  std::optional<models::TrainedImputer> model;
  if (role == "fine_tune") {
    TSAUDIT_ASSIGN_OR_RETURN(models::TrainedImputer base,
                             models::LoadImputer(base_path));
    TSAUDIT_ASSIGN_OR_RETURN(model, models::FineTune(base, corpus, imputer));
  } else {
    TSAUDIT_ASSIGN_OR_RETURN(model, models::Train(corpus, imputer));
  }
  TSAUDIT_RETURN_IF_ERROR(EnsureDir(cfg.output_dir));
  return models::SaveImputer(*model, InDir(cfg.output_dir, "model.json"));
}

absl::Status RunAttackCommand(const CommonFlags& flags,
                              const std::string& target_path,
                              const std::string& reference_path,
                              const std::string& candidates_path,
                              const std::string& nonmembers_path,
                              const std::string& theta_rule) {
  TSAUDIT_ASSIGN_OR_RETURN(ExperimentConfig cfg, ResolveConfig(flags));
  TSAUDIT_ASSIGN_OR_RETURN(models::TrainedImputer target,
                           models::LoadImputer(target_path));
  TSAUDIT_ASSIGN_OR_RETURN(models::TrainedImputer reference,
                           models::LoadImputer(reference_path));
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<TimeSeries> candidates,
                           data::LoadCsv(candidates_path));
  attack::AttackConfig attack_cfg = cfg.attack;
  attack_cfg.seed = DeriveSeed(cfg.seed, "attack");
  if (!theta_rule.empty()) {
    TSAUDIT_ASSIGN_OR_RETURN(attack_cfg.theta_rule,
                             attack::ThetaRule::Parse(theta_rule));
  }
  if (!nonmembers_path.empty()) {
    TSAUDIT_ASSIGN_OR_RETURN(attack_cfg.known_nonmembers,
                             data::LoadCsv(nonmembers_path));
  }
  if (cfg.normalize) {
    for (TimeSeries& x : candidates) x = ZScoreNormalize(x).first;
    for (TimeSeries& x : attack_cfg.known_nonmembers) {
      x = ZScoreNormalize(x).first;
    }
  }
  TSAUDIT_ASSIGN_OR_RETURN(
      attack::AttackReport report,
      attack::RunAttack(target, reference, candidates, attack_cfg));
  TSAUDIT_RETURN_IF_ERROR(EnsureDir(cfg.output_dir));
  return WriteFileAtomic(InDir(cfg.output_dir, "scores.json"),
                         attack::AttackReportToJson(report).dump(2) + "\n");
}

absl::Status RunMetrics(const CommonFlags& flags,
                        const std::string& scores_path,
                        const std::string& labels_path,
                        const std::string& theta_rule, std::ostream& out) {
  TSAUDIT_ASSIGN_OR_RETURN(ExperimentConfig cfg, ResolveConfig(flags));
  TSAUDIT_ASSIGN_OR_RETURN(nlohmann::json scores_json, ReadJson(scores_path));
  TSAUDIT_ASSIGN_OR_RETURN(attack::AttackReport scores,
                           attack::AttackReportFromJson(scores_json));
  TSAUDIT_ASSIGN_OR_RETURN(Labels labels, LoadLabels(labels_path));
  attack::ThetaRule rule = scores.theta_rule;
  if (!theta_rule.empty()) {
    TSAUDIT_ASSIGN_OR_RETURN(rule, attack::ThetaRule::Parse(theta_rule));
  }
  TSAUDIT_ASSIGN_OR_RETURN(MetricsReport report,
                           RecomputeMetrics(std::move(scores), rule, labels));
  const nlohmann::json j = ToJson(report, cfg.metrics);
  TSAUDIT_RETURN_IF_ERROR(EnsureDir(cfg.output_dir));
  TSAUDIT_RETURN_IF_ERROR(
      WriteFileAtomic(InDir(cfg.output_dir, "report.json"), j.dump(2) + "\n"));
  TSAUDIT_RETURN_IF_ERROR(
      WriteFileAtomic(InDir(cfg.output_dir, "roc_lbrm.csv"),
                      metrics::RocToCsv(report.methods.lbrm_curve)));
  TSAUDIT_RETURN_IF_ERROR(
      WriteFileAtomic(InDir(cfg.output_dir, "roc_naive.csv"),
                      metrics::RocToCsv(report.methods.naive_curve)));
  out << j["methods"].dump(2) << "\n";
  return absl::OkStatus();
}

absl::Status RunScenarioCommand(int scenario, const CommonFlags& flags,
                                std::ostream& out) {
  TSAUDIT_ASSIGN_OR_RETURN(ExperimentConfig cfg, ResolveConfig(flags));
  if (flags.config_path.empty()) cfg.scenario = scenario;
  if (scenario == 2 && !cfg.fine_tune.has_value()) {
    cfg.fine_tune = cfg.target;
  }
  if (cfg.scenario != scenario) {
    return absl::InvalidArgumentError(
        absl::StrCat("config '", flags.config_path, "' is for scenario ",
                     cfg.scenario, ", not ", scenario));
  }
  TSAUDIT_ASSIGN_OR_RETURN(ExperimentReport report, RunScenario(cfg));
  TSAUDIT_RETURN_IF_ERROR(WriteExperimentOutputs(report, cfg.output_dir));
  const nlohmann::json j = ToJson(report);
  out << "scenario " << scenario << ": lbrm "
      << j["methods"]["lbrm"].dump() << " naive "
      << j["methods"]["naive"].dump() << "\n";
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<MetricsReport> RecomputeMetrics(attack::AttackReport scores,
                                               const attack::ThetaRule& rule,
                                               const Labels& labels) {
  std::vector<attack::MembershipScore> raw;
  std::vector<double> nonmember_r;
  raw.reserve(scores.verdicts.size());
  for (attack::Verdict& v : scores.verdicts) {
    if (auto it = labels.find(v.candidate_id);
        it != labels.end() && !it->second) {
      nonmember_r.push_back(v.score.r);
    }
    raw.push_back(std::move(v.score));
  }
  MetricsReport report;
  TSAUDIT_ASSIGN_OR_RETURN(
      report.scores, attack::ClassifyScores(std::move(raw), rule, nonmember_r));
  TSAUDIT_ASSIGN_OR_RETURN(report.methods,
                           ComputeMethodMetrics(report.scores, labels));
  return report;
}

nlohmann::json ToJson(const MetricsReport& report,
                      const std::vector<std::string>& metric_names) {
  long long flagged = 0;
  for (const attack::Verdict& v : report.scores.verdicts) flagged += v.is_member;
  nlohmann::json j;
  j["theta"] = report.scores.theta;
  j["theta_rule"] = report.scores.theta_rule.ToString();
  j["verdicts"] = {{"flagged", flagged},
                   {"candidates", report.scores.verdicts.size()}};
  j["methods"] = {{"lbrm", MetricsBlock(report.methods.lbrm, metric_names)},
                  {"naive", MetricsBlock(report.methods.naive, metric_names)}};
  return j;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Membership-inference audit for time-series imputers",
               "tsaudit"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string family = "A";
  std::optional<int> count;
  std::string data_path, role = "target", base_path;
  std::string target_path, reference_path, candidates_path, nonmembers_path;
  std::string scores_path, labels_path, theta_rule;

  CLI::App* generate =
      app.add_subcommand("generate", "Write a synthetic corpus to corpus.csv");
  AddCommonFlags(generate, flags);
  generate->add_option("--family", family, "Synthetic family, A or B");
  generate->add_option("--count", count, "Number of series");

  CLI::App* train = app.add_subcommand("train", "Train an imputer to model.json");
  AddCommonFlags(train, flags);
  train->add_option("--data", data_path, "Training corpus (CSV)")->required();
  train->add_option("--role", role, "target, reference or fine_tune");
  train->add_option("--base", base_path, "Base model for fine_tune");

  CLI::App* attack_cmd =
      app.add_subcommand("attack", "Score candidates into scores.json");
  AddCommonFlags(attack_cmd, flags);
  attack_cmd->add_option("--target", target_path, "Target model")->required();
  attack_cmd->add_option("--reference", reference_path, "Reference model")
      ->required();
  attack_cmd->add_option("--candidates", candidates_path, "Candidates (CSV)")
      ->required();
  attack_cmd->add_option("--nonmembers", nonmembers_path,
                         "Known non-members for std_rule (CSV)");
  attack_cmd->add_option("--theta-rule", theta_rule, "Overrides the config");

  CLI::App* metrics_cmd = app.add_subcommand(
      "metrics", "Recompute metrics from scores.json and labels.csv");
  AddCommonFlags(metrics_cmd, flags);
  metrics_cmd->add_option("--scores", scores_path, "scores.json")->required();
  metrics_cmd->add_option("--labels", labels_path, "labels.csv")->required();
  metrics_cmd->add_option("--theta-rule", theta_rule,
                          "Reclassify under this rule");

  CLI::App* s1 = app.add_subcommand("scenario1", "Full scenario 1 pipeline");
  CLI::App* s2 = app.add_subcommand("scenario2", "Full scenario 2 pipeline");
  for (CLI::App* cmd : {s1, s2}) {
    AddCommonFlags(cmd, flags);
    cmd->add_flag("--override-parity", flags.override_parity,
                  "Proceed even if the parity check fails");
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "tsaudit: " << e.what() << "\n\n" << app.help();
    return kUsageExitCode;
  }

  absl::Status status;
  if (generate->parsed()) {
    status = RunGenerate(flags, family, count);
  } else if (train->parsed()) {
    status = RunTrain(flags, data_path, role, base_path);
  } else if (attack_cmd->parsed()) {
    status = RunAttackCommand(flags, target_path, reference_path,
                              candidates_path, nonmembers_path, theta_rule);
  } else if (metrics_cmd->parsed()) {
    status = RunMetrics(flags, scores_path, labels_path, theta_rule, out);
  } else if (s1->parsed()) {
    status = RunScenarioCommand(1, flags, out);
  } else {
    status = RunScenarioCommand(2, flags, out);
  }
  if (!status.ok()) {
    err << "tsaudit: " << status.ToString() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tsaudit::harness

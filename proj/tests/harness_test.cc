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

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tsaudit/core/file_io.h"
#include "tsaudit/harness/cli.h"
#include "tsaudit/harness/experiment_config.h"
#include "tsaudit/harness/report_io.h"
#include "tsaudit/harness/scenario.h"

namespace tsaudit::harness {
namespace {

namespace fs = std::filesystem;

// A config small enough to run a whole pipeline in well under a second.
nlohmann::json TinyConfig(int scenario) {
  nlohmann::json j = {
      {"scenario", scenario},
      {"seed", 7},
      {"data",
       {{"source", "synthetic"},
        {"synthetic", {{"count", 30}, {"length", 12}}}}},
      {"target", {{"architecture", "autoencoder"}, {"epochs", 20}}},
      {"reference", {{"architecture", "autoencoder"}, {"epochs", 20}}},
      {"attack", {{"repeats", 3}, {"theta_rule", "top_percent(25)"}}},
      {"parity_tolerance", 10.0}};
  if (scenario == 2) {
    j["fine_tune"] = {{"architecture", "autoencoder"}, {"epochs", 20}};
  }
  return j;
}

ExperimentConfig Parse(const nlohmann::json& j) {
  auto cfg = ExperimentConfigFromJson(j);
  EXPECT_TRUE(cfg.ok()) << cfg.status();
  return *cfg;
}

std::string Dir(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / "harness" / name;
  fs::remove_all(p);
  return p.string();
}

std::string WriteConfig(const nlohmann::json& j, const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "harness-configs";
  fs::create_directories(dir);
  const std::string path = (dir / name).string();
  EXPECT_TRUE(WriteFileAtomic(path, j.dump(2)).ok());
  return path;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tsaudit");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const std::string& path) {
  auto text = ReadFile(path);
  EXPECT_TRUE(text.ok()) << text.status();
  return text.ok() ? *text : "";
}

TEST(ExperimentConfigTest, DefaultsAndStrictKeys) {
  const ExperimentConfig cfg = Parse(TinyConfig(2));
  EXPECT_EQ(cfg.scenario, 2);
  EXPECT_EQ(cfg.attack.repeats, 3);
  EXPECT_EQ(cfg.metrics.size(), 3u);
  nlohmann::json typo = TinyConfig(2);
  typo["seeed"] = 1;
  EXPECT_FALSE(ExperimentConfigFromJson(typo).ok());
  nlohmann::json no_ft = TinyConfig(2);
  no_ft.erase("fine_tune");
  EXPECT_FALSE(ExperimentConfigFromJson(no_ft).ok());
  nlohmann::json bad_scenario = TinyConfig(1);
  bad_scenario["scenario"] = 3;
  EXPECT_FALSE(ExperimentConfigFromJson(bad_scenario).ok());
  nlohmann::json bad_metric = TinyConfig(1);
  bad_metric["metrics"] = {"auroc", "f1"};
  EXPECT_FALSE(ExperimentConfigFromJson(bad_metric).ok());
  nlohmann::json overlap = TinyConfig(1);
  overlap["data"]["public_synthetic"] = {{"family", "B"},
                                         {"freq_min", 0.05},
                                         {"freq_max", 0.1}};
  EXPECT_FALSE(ExperimentConfigFromJson(overlap).ok());
}

TEST(ExperimentConfigTest, JsonEchoRoundTrips) {
  const ExperimentConfig cfg = Parse(TinyConfig(2));
  const nlohmann::json echo = ToJson(cfg);
  EXPECT_FALSE(echo.contains("output_dir"));
  EXPECT_EQ(ToJson(Parse(echo)), echo);
}

TEST(ExperimentConfigTest, MissingFileNamesPath) {
  auto cfg = LoadExperimentConfig("/no/such/dir/exp.json");
  ASSERT_FALSE(cfg.ok());
  EXPECT_NE(cfg.status().message().find("/no/such/dir/exp.json"),
            absl::string_view::npos);
}

TEST(ExperimentConfigTest, ShippedFixturesParse) {
  for (const char* name : {"scenario1.json", "scenario2.json"}) {
    auto cfg = LoadExperimentConfig(std::string(TSAUDIT_FIXTURE_DIR) + "/" + name);
    EXPECT_TRUE(cfg.ok()) << name << ": " << cfg.status();
  }
}

TEST(LabelsTest, ParseAndFormat) {
  std::istringstream in("id,is_member\na,1\nb,0\nc,true\n");
  auto labels = ParseLabelsCsv(in);
  ASSERT_TRUE(labels.ok());
  EXPECT_TRUE(labels->at("a"));
  EXPECT_FALSE(labels->at("b"));
  EXPECT_TRUE(labels->at("c"));
  EXPECT_EQ(FormatLabelsCsv({{"a", true}, {"b", false}}),
            "id,is_member\na,1\nb,0\n");
  std::istringstream dup("id,is_member\na,1\na,0\n");
  EXPECT_FALSE(ParseLabelsCsv(dup).ok());
  std::istringstream bad("id,is_member\na,maybe\n");
  EXPECT_FALSE(ParseLabelsCsv(bad).ok());
}

TEST(ScenarioTest, BothMethodsShareTheCandidatePool) {
  for (int scenario : {1, 2}) {
    auto report = RunScenario(Parse(TinyConfig(scenario)));
    ASSERT_TRUE(report.ok()) << report.status();
    // 30 series: scenario 1 keeps 12 private + 6 test, scenario 2 6 + 6.
    const std::size_t expected = scenario == 1 ? 18 : 12;
    EXPECT_EQ(report->scores.verdicts.size(), expected);
    EXPECT_EQ(report->labels.size(), expected);
    EXPECT_EQ(report->split.test_count, 6);
    int members = 0;
    for (std::size_t i = 0; i < expected; ++i) {
      EXPECT_EQ(report->labels[i].first, report->scores.verdicts[i].candidate_id);
      members += report->labels[i].second;
    }
    EXPECT_EQ(members, report->split.private_count);
    const nlohmann::json j = ToJson(*report);
    EXPECT_TRUE(j["methods"]["lbrm"].contains("auroc"));
    EXPECT_TRUE(j["methods"]["naive"].contains("auroc"));
    EXPECT_FALSE(j.contains("wall_seconds"));
  }
}

TEST(ScenarioTest, Scenario1PublicSetComesFromOtherFamily) {
  TrainedPair models;
  auto report = RunScenario1(Parse(TinyConfig(1)), &models);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->split.public_count, 12);
  for (const auto& [id, member] : report->labels) EXPECT_EQ(id[0], 'A');
  ASSERT_TRUE(models.target.has_value() && models.reference.has_value());
  EXPECT_FALSE(models.base.has_value());
}

TEST(ScenarioTest, Scenario2FineTunedTargetDiffersFromBase) {
  TrainedPair models;
  auto report = RunScenario2(Parse(TinyConfig(2)), &models);
  ASSERT_TRUE(report.ok()) << report.status();
  ASSERT_TRUE(models.base.has_value() && models.target.has_value());
  const auto base = models.base->parameters();
  const auto target = models.target->parameters();
  EXPECT_FALSE(std::equal(base.begin(), base.end(), target.begin(), target.end()));
  const auto reference = models.reference->parameters();
  EXPECT_TRUE(std::equal(base.begin(), base.end(), reference.begin(),
                         reference.end()));
}

TEST(ScenarioTest, IndependentReferenceIsTrainedSeparately) {
  nlohmann::json j = TinyConfig(2);
  j["independent_reference"] = true;
  TrainedPair models;
  ASSERT_TRUE(RunScenario2(Parse(j), &models).ok());
  const auto base = models.base->parameters();
  const auto reference = models.reference->parameters();
  EXPECT_FALSE(std::equal(base.begin(), base.end(), reference.begin(),
                          reference.end()));
}

TEST(ScenarioTest, ParityFailureAbortsUnlessOverridden) {
  nlohmann::json j = TinyConfig(1);
  j["parity_tolerance"] = 1e-9;
  auto report = RunScenario(Parse(j));
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(report.status().message().find("parity"), absl::string_view::npos);
  j["override_parity"] = true;
  auto forced = RunScenario(Parse(j));
  ASSERT_TRUE(forced.ok());
  EXPECT_FALSE(forced->parity.passed);
}

TEST(ScenarioTest, ReportIsDeterministic) {
  for (int scenario : {1, 2}) {
    const ExperimentConfig cfg = Parse(TinyConfig(scenario));
    auto a = RunScenario(cfg);
    auto b = RunScenario(cfg);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_EQ(ToJson(*a).dump(2), ToJson(*b).dump(2));
  }
}

TEST(ScenarioTest, WritesOutputLayout) {
  auto report = RunScenario(Parse(TinyConfig(2)));
  ASSERT_TRUE(report.ok());
  const std::string dir = Dir("layout");
  ASSERT_TRUE(WriteExperimentOutputs(*report, dir).ok());
  for (const char* f : {"report.json", "scores.json", "roc_lbrm.csv",
                        "roc_naive.csv", "labels.csv", "timing.json"}) {
    EXPECT_TRUE(fs::exists(fs::path(dir) / f)) << f;
    EXPECT_FALSE(fs::exists(fs::path(dir) / (std::string(f) + ".tmp"))) << f;
  }
  const auto scores = attack::AttackReportFromJson(
      nlohmann::json::parse(Slurp(dir + "/scores.json")));
  ASSERT_TRUE(scores.ok());
  EXPECT_EQ(scores->verdicts.size(), report->scores.verdicts.size());
}

TEST(ScenarioTest, FixtureMembersHaveLowerRatios) {
  auto cfg = LoadExperimentConfig(std::string(TSAUDIT_FIXTURE_DIR) +
                                  "/scenario2.json");
  ASSERT_TRUE(cfg.ok());
  auto report = RunScenario(*cfg);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_TRUE(report->parity.passed);
  double member_sum = 0, nonmember_sum = 0;
  int members = 0, nonmembers = 0;
  for (std::size_t i = 0; i < report->labels.size(); ++i) {
    const double r = report->scores.verdicts[i].score.r;
    if (report->labels[i].second) {
      member_sum += r;
      ++members;
    } else {
      nonmember_sum += r;
      ++nonmembers;
    }
  }
  EXPECT_LT(member_sum / members, nonmember_sum / nonmembers);
}

TEST(RecomputeMetricsTest, ThetaRuleLeavesMetricsUntouched) {
  auto report = RunScenario(Parse(TinyConfig(2)));
  ASSERT_TRUE(report.ok());
  const Labels labels(report->labels.begin(), report->labels.end());
  std::string reference_block;
  for (const char* rule : {"std_rule(1)", "std_rule(2)", "top_percent(25)",
                           "fixed(1.0)"}) {
    auto m = RecomputeMetrics(report->scores, *attack::ThetaRule::Parse(rule),
                              labels);
    ASSERT_TRUE(m.ok()) << rule << ": " << m.status();
    const std::string block = ToJson(*m, report->config.metrics)["methods"].dump();
    if (reference_block.empty()) reference_block = block;
    EXPECT_EQ(block, reference_block) << rule;
  }
}

TEST(CliTest, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"bogus"}, {"scenario2", "--frobnicate"}, {"metrics"}}) {
    const CliResult r = Cli(args);
    EXPECT_EQ(r.code, kUsageExitCode);
    EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  }
  EXPECT_EQ(Cli({"--help"}).code, 0);
}

TEST(CliTest, MissingConfigNamesPath) {
  const CliResult r = Cli({"scenario2", "--config", "/nope/fixture.json"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.code, kUsageExitCode);
  EXPECT_NE(r.err.find("/nope/fixture.json"), std::string::npos) << r.err;
}

TEST(CliTest, ScenarioTwiceGivesIdenticalReports) {
  const std::string cfg = WriteConfig(TinyConfig(2), "s2.json");
  const std::string a = Dir("twice-a"), b = Dir("twice-b");
  ASSERT_EQ(Cli({"scenario2", "--config", cfg, "--seed", "7", "--out", a}).code,
            0);
  ASSERT_EQ(Cli({"scenario2", "--config", cfg, "--seed", "7", "--out", b}).code,
            0);
  EXPECT_EQ(Slurp(a + "/report.json"), Slurp(b + "/report.json"));
  EXPECT_EQ(Slurp(a + "/scores.json"), Slurp(b + "/scores.json"));
  const std::string c = Dir("twice-c");
  ASSERT_EQ(Cli({"scenario2", "--config", cfg, "--seed", "8", "--out", c}).code,
            0);
  EXPECT_NE(Slurp(a + "/report.json"), Slurp(c + "/report.json"));
}

TEST(CliTest, ScenarioSubcommandMustMatchConfig) {
  const std::string cfg = WriteConfig(TinyConfig(2), "mismatch.json");
  const CliResult r = Cli({"scenario1", "--config", cfg, "--out", Dir("mm")});
  EXPECT_EQ(r.code, 1);
}

TEST(CliTest, OutputDirectoryPrecedence) {
  nlohmann::json j = TinyConfig(1);
  const std::string from_config = Dir("from-config");
  j["output_dir"] = from_config;
  const std::string cfg = WriteConfig(j, "out.json");
  ASSERT_EQ(Cli({"scenario1", "--config", cfg}).code, 0);
  EXPECT_TRUE(fs::exists(from_config + "/report.json"));

  const std::string from_env = Dir("from-env");
  ::setenv(kOutputDirEnv, from_env.c_str(), 1);
  ASSERT_EQ(Cli({"scenario1", "--config", cfg}).code, 0);
  EXPECT_TRUE(fs::exists(from_env + "/report.json"));

  const std::string from_flag = Dir("from-flag");
  ASSERT_EQ(Cli({"scenario1", "--config", cfg, "--out", from_flag}).code, 0);
  EXPECT_TRUE(fs::exists(from_flag + "/report.json"));
  ::unsetenv(kOutputDirEnv);
}

TEST(CliTest, OverrideParityFlag) {
  nlohmann::json j = TinyConfig(1);
  j["parity_tolerance"] = 1e-9;
  const std::string cfg = WriteConfig(j, "tight.json");
  EXPECT_EQ(Cli({"scenario1", "--config", cfg, "--out", Dir("tight")}).code, 1);
  EXPECT_EQ(Cli({"scenario1", "--config", cfg, "--out", Dir("tight2"),
                 "--override-parity"})
                .code,
            0);
}

TEST(CliTest, MetricsOnHandWrittenReport) {
  // r: m1=0.2, m2=0.6 against n1=0.4, n2=0.8. Member below nonmember in
  // (m1,n1), (m1,n2), (m2,n2): AUROC 3/4. Naive l_t: m1=0.9, m2=0.3 against
  // n1=0.1, n2=0.5, only (m2,n2): AUROC 1/4. is_member follows r <= 0.5.
  const nlohmann::json scores = {
      {"theta", 0.5},
      {"theta_rule", "fixed(0.5)"},
      {"per_candidate",
       {{{"id", "m1"}, {"l_t", 0.9}, {"l_r", 4.5}, {"r", 0.2}, {"is_member", true}},
        {{"id", "n1"}, {"l_t", 0.1}, {"l_r", 0.25}, {"r", 0.4}, {"is_member", true}},
        {{"id", "m2"}, {"l_t", 0.3}, {"l_r", 0.5}, {"r", 0.6}, {"is_member", false}},
        {{"id", "n2"}, {"l_t", 0.5}, {"l_r", 0.625}, {"r", 0.8}, {"is_member", false}}}}};
  const std::string dir = Dir("metrics");
  fs::create_directories(dir);
  ASSERT_TRUE(WriteFileAtomic(dir + "/scores.json", scores.dump()).ok());
  ASSERT_TRUE(WriteFileAtomic(dir + "/labels.csv",
                              "id,is_member\nm1,1\nm2,1\nn1,0\nn2,0\n")
                  .ok());
  const CliResult r = Cli({"metrics", "--scores", dir + "/scores.json",
                           "--labels", dir + "/labels.csv", "--out", dir});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json report = nlohmann::json::parse(Slurp(dir + "/report.json"));
  EXPECT_DOUBLE_EQ(report["methods"]["lbrm"]["auroc"].get<double>(), 0.75);
  EXPECT_DOUBLE_EQ(report["methods"]["naive"]["auroc"].get<double>(), 0.25);
  EXPECT_EQ(report["theta_rule"], "fixed(0.5)");
  EXPECT_TRUE(fs::exists(dir + "/roc_lbrm.csv"));
}

TEST(CliTest, GenerateTrainAttackMetricsPipeline) {
  nlohmann::json j = TinyConfig(1);
  j["attack"]["theta_rule"] = "std_rule(1)";
  const std::string cfg = WriteConfig(j, "pipeline.json");
  const std::string dir = Dir("pipeline");
  ASSERT_EQ(Cli({"generate", "--config", cfg, "--out", dir + "/a"}).code, 0);
  ASSERT_EQ(Cli({"generate", "--config", cfg, "--family", "B", "--count", "12",
                 "--out", dir + "/b"})
                .code,
            0);
  ASSERT_EQ(Cli({"train", "--config", cfg, "--data", dir + "/a/corpus.csv",
                 "--role", "target", "--out", dir + "/t"})
                .code,
            0);
  ASSERT_EQ(Cli({"train", "--config", cfg, "--data", dir + "/b/corpus.csv",
                 "--role", "reference", "--out", dir + "/r"})
                .code,
            0);
  const CliResult attack =
      Cli({"attack", "--config", cfg, "--target", dir + "/t/model.json",
           "--reference", dir + "/r/model.json", "--candidates",
           dir + "/a/corpus.csv", "--nonmembers", dir + "/b/corpus.csv",
           "--out", dir + "/s"});
  ASSERT_EQ(attack.code, 0) << attack.err;
  auto scores = attack::AttackReportFromJson(
      nlohmann::json::parse(Slurp(dir + "/s/scores.json")));
  ASSERT_TRUE(scores.ok());
  ASSERT_EQ(scores->verdicts.size(), 30u);
  std::string labels = "id,is_member\n";
  for (std::size_t i = 0; i < scores->verdicts.size(); ++i) {
    labels += scores->verdicts[i].candidate_id + (i % 2 ? ",1\n" : ",0\n");
  }
  ASSERT_TRUE(WriteFileAtomic(dir + "/labels.csv", labels).ok());
  const CliResult metrics =
      Cli({"metrics", "--scores", dir + "/s/scores.json", "--labels",
           dir + "/labels.csv", "--theta-rule", "top_percent(50)", "--out",
           dir + "/m"});
  ASSERT_EQ(metrics.code, 0) << metrics.err;
  EXPECT_EQ(Cli({"train", "--config", cfg, "--data", dir + "/a/corpus.csv",
                 "--role", "fine_tune", "--out", dir + "/f"})
                .code,
            1);
}

}  // namespace
}  // namespace tsaudit::harness

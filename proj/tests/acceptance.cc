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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Registered with ctest alongside the unit suites.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "gradient_check.h"
#include "tsaudit/attack/lbrm.h"
#include "tsaudit/core/file_io.h"
#include "tsaudit/core/mask.h"
#include "tsaudit/core/normalize.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"
#include "tsaudit/data/csv.h"
#include "tsaudit/data/split.h"
#include "tsaudit/data/synthetic.h"
#include "tsaudit/dtw/dtw.h"
#include "tsaudit/harness/cli.h"
#include "tsaudit/harness/experiment_config.h"
#include "tsaudit/harness/scenario.h"
#include "tsaudit/metrics/roc.h"
#include "tsaudit/models/networks.h"
#include "tsaudit/models/training.h"

namespace tsaudit {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

TimeSeries RandomSeries(Rng& rng, int length, int dims, std::string id = "x") {
  SeriesMatrix m(length, dims);
  for (int t = 0; t < length; ++t) {
    for (int d = 0; d < dims; ++d) m(t, d) = rng.Normal();
  }
  return *TimeSeries::Create(std::move(id), std::move(m));
}

// Pairwise rank statistic with ties counted as one half.
double MannWhitney(const metrics::LabeledScores& data) {
  const bool lower = data.direction == metrics::Direction::kLowerIsMember;
  double wins = 0;
  long long pairs = 0;
  for (const metrics::LabeledScore& m : data.items) {
    if (!m.is_member) continue;
    for (const metrics::LabeledScore& n : data.items) {
      if (n.is_member) continue;
      ++pairs;
      if (m.score == n.score) {
        wins += 0.5;
      } else if ((m.score < n.score) == lower) {
        wins += 1.0;
      }
    }
  }
  return wins / static_cast<double>(pairs);
}

metrics::LabeledScores TiedScores(Rng& rng, int max_n) {
  metrics::LabeledScores data;
  const int n = 2 + static_cast<int>(rng.UniformIndex(max_n - 1));
  const int levels = 1 + static_cast<int>(rng.UniformIndex(20));
  for (int i = 0; i < n; ++i) {
    const bool member = i == 0 || (i > 1 && rng.Uniform() < 0.5);
    const double s = std::floor(rng.Uniform() * levels) - (member ? 1.0 : 0.0);
    data.items.push_back({s, member});
  }
  return data;
}

Outcome DtwAgainstBruteForce() {
  const auto start = Clock::now();
  Rng rng(1001);
  double worst = 0.0;
  for (int pair = 0; pair < 500; ++pair) {
    const int dims = 1 + static_cast<int>(rng.UniformIndex(2));
    const TimeSeries a =
        RandomSeries(rng, 1 + static_cast<int>(rng.UniformIndex(6)), dims);
    const TimeSeries b =
        RandomSeries(rng, 1 + static_cast<int>(rng.UniformIndex(6)), dims);
    auto fast = dtw::DtwDistance(a, b);
    auto brute = dtw::DtwBruteForce(a, b);
    if (!fast.ok() || !brute.ok()) return {false, "dtw error"};
    worst = std::max(worst, std::abs(fast->value - brute->value));
  }
  const double secs = Seconds(start);
  return {worst <= 1e-9 && secs < 10.0,
          absl::StrFormat("500 pairs, max |diff| %.3g, %.2fs", worst, secs)};
}

Outcome AurocAgainstMannWhitney() {
  const auto start = Clock::now();
  Rng rng(1002);
  double worst = 0.0;
  int ties = 0;
  for (int set = 0; set < 200; ++set) {
    metrics::LabeledScores data = TiedScores(rng, 500);
    auto curve = metrics::BuildRocCurve(data);
    if (!curve.ok()) return {false, std::string(curve.status().message())};
    worst = std::max(worst, std::abs(metrics::Auroc(*curve) - MannWhitney(data)));
    std::vector<double> s;
    for (const auto& item : data.items) s.push_back(item.score);
    std::sort(s.begin(), s.end());
    ties += std::adjacent_find(s.begin(), s.end()) != s.end();
  }
  const double secs = Seconds(start);
  return {worst <= 1e-12 && secs < 10.0 && ties > 0,
          absl::StrFormat("200 sets (%d with ties), max |diff| %.3g, %.2fs",
                          ties, worst, secs)};
}

Outcome GradientChecks() {
  std::string detail;
  bool pass = true;
  const std::pair<const char*, models::ImputerConfig> nets[] = {
      {"autoencoder", testing::TinyAutoencoder()},
      {"attention", testing::TinyAttention()}};
  std::uint64_t seed = 1003;
  for (const auto& [name, cfg] : nets) {
    auto net = models::MakeNetwork(cfg, cfg.architecture ==
                                                models::Architecture::kAutoencoder
                                            ? 4
                                            : 3,
                                   1);
    Rng rng(seed++);
    double worst = 0.0;
    for (int probe = 0; probe < 20; ++probe) {
      worst = std::max(worst, testing::ProbeGradient(*net, rng).relative_error);
    }
    const std::size_t params = net->layout().size();
    pass &= params <= 200 && worst <= 1e-4;
    absl::StrAppendFormat(&detail, "%s%s %zu params max rel err %.3g",
                          detail.empty() ? "" : "; ", name, params, worst);
  }
  return {pass, detail};
}

Outcome Memorization() {
  data::SyntheticConfig synth;
  synth.count = 8;
  synth.length = 24;
  synth.seed = 11;
  auto all = data::GenerateSynthetic(synth);
  if (!all.ok()) return {false, std::string(all.status().message())};
  for (TimeSeries& x : *all) x = ZScoreNormalize(x).first;
  const std::vector<TimeSeries> train(all->begin(), all->begin() + 4);
  const std::vector<TimeSeries> other(all->begin() + 4, all->end());
  models::ImputerConfig cfg;
  cfg.epochs = 8000;
  cfg.batch_size = 4;
  cfg.seed = 3;
  auto target = models::Train(train, cfg);
  cfg.seed = 4;
  auto reference = models::Train(other, cfg);
  if (!target.ok() || !reference.ok()) return {false, "training failed"};
  double target_max = 0, reference_sum = 0;
  int n = 0;
  for (const TimeSeries& x : train) {
    for (int p = 0; p < x.length(); ++p) {
      auto masked = SingleUnitMask(x, {.start = p, .length = 1, .dim = 0});
      auto yt = target->Impute(*masked);
      auto yr = reference->Impute(*masked);
      if (!yt.ok() || !yr.ok()) return {false, "impute failed"};
      target_max = std::max(target_max, std::abs(yt->at(p, 0) - x.at(p, 0)));
      reference_sum += std::abs(yr->at(p, 0) - x.at(p, 0));
      ++n;
    }
  }
  const double reference_mean = reference_sum / n;
  return {target_max < 0.1 && reference_mean > 0.3,
          absl::StrFormat("overfit max masked err %.4f (< 0.1), fresh mean "
                          "err %.4f (> 0.3)",
                          target_max, reference_mean)};
}

struct FixtureRun {
  harness::ExperimentReport report;
  double seconds = 0.0;
};

absl::StatusOr<FixtureRun> RunFixture(const std::string& name) {
  TSAUDIT_ASSIGN_OR_RETURN(
      harness::ExperimentConfig cfg,
      harness::LoadExperimentConfig(std::string(TSAUDIT_FIXTURE_DIR) + "/" +
                                    name));
  const auto start = Clock::now();
  TSAUDIT_ASSIGN_OR_RETURN(harness::ExperimentReport report,
                           harness::RunScenario(cfg));
  return FixtureRun{std::move(report), Seconds(start)};
}

double MethodAuroc(const harness::ExperimentReport& r, const char* method) {
  return harness::ToJson(r)["methods"][method]["auroc"].get<double>();
}

Outcome Fixtures(const std::optional<FixtureRun>& s1,
                 const std::optional<FixtureRun>& s2) {
  if (!s1.has_value() || !s2.has_value()) return {false, "fixture run failed"};
  const double l1 = MethodAuroc(s1->report, "lbrm");
  const double n1 = MethodAuroc(s1->report, "naive");
  const double l2 = MethodAuroc(s2->report, "lbrm");
  const double n2 = MethodAuroc(s2->report, "naive");
  const bool pass = l2 >= n2 + 0.10 && l2 >= 0.65 && l1 > n1 &&
                    s1->seconds < 300.0 && s2->seconds < 300.0;
  return {pass, absl::StrFormat("scenario2 lbrm %.4f naive %.4f (%.1fs); "
                                "scenario1 lbrm %.4f naive %.4f (%.1fs)",
                                l2, n2, s2->seconds, l1, n1, s1->seconds)};
}

Outcome ThetaIndependence(const std::vector<const FixtureRun*>& runs) {
  if (runs.empty()) return {false, "no fixture reports"};
  int compared = 0;
  for (const FixtureRun* run : runs) {
    const harness::Labels labels(run->report.labels.begin(),
                                 run->report.labels.end());
    std::optional<std::string> first;
    for (const char* rule :
         {"std_rule(1)", "std_rule(2)", "top_percent(25)", "fixed(1.0)"}) {
      auto parsed = attack::ThetaRule::Parse(rule);
      if (!parsed.ok()) return {false, std::string(parsed.status().message())};
      auto m = harness::RecomputeMetrics(run->report.scores, *parsed, labels);
      if (!m.ok()) return {false, absl::StrCat(rule, ": ", m.status().message())};
      const std::string block =
          harness::ToJson(*m, run->report.config.metrics)["methods"].dump();
      if (!first.has_value()) {
        first = block;
      } else if (block != *first) {
        return {false, absl::StrCat("metric block changed under ", rule)};
      }
      ++compared;
    }
  }
  return {true, absl::StrFormat("%d rule applications, metric blocks identical",
                                compared)};
}

Outcome Splits() {
  auto numbered = [](int n) {
    std::vector<TimeSeries> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
      v.push_back(*TimeSeries::Create(absl::StrCat("s", i), SeriesMatrix::Zero(1, 1)));
    }
    return v;
  };
  const auto a = numbered(5565);
  const auto b = numbered(1477);
  auto s1 = data::SplitScenario1(a, 1);
  auto s2 = data::SplitScenario2(b, 1);
  if (!s1.ok() || !s2.ok()) return {false, "split failed"};
  const auto sizes = [](const data::ScenarioSplit& s) {
    return std::array<std::size_t, 3>{s.public_set.size(), s.private_set.size(),
                                      s.test_set.size()};
  };
  const auto z1 = sizes(*s1);
  const auto z2 = sizes(*s2);
  return {z1 == std::array<std::size_t, 3>{2226, 2226, 1113} &&
              z2 == std::array<std::size_t, 3>{886, 295, 296},
          absl::StrFormat("5565 -> %zu/%zu/%zu, 1477 -> %zu/%zu/%zu", z1[0],
                          z1[1], z1[2], z2[0], z2[1], z2[2])};
}

Outcome Determinism(const std::optional<FixtureRun>& first) {
  if (!first.has_value()) return {false, "fixture run failed"};
  auto second = RunFixture("scenario2.json");
  if (!second.ok()) return {false, std::string(second.status().message())};
  const fs::path root = fs::temp_directory_path() / "tsaudit-acceptance";
  fs::remove_all(root);
  if (!harness::WriteExperimentOutputs(first->report, (root / "a").string()).ok() ||
      !harness::WriteExperimentOutputs(second->report, (root / "b").string()).ok()) {
    return {false, "could not write reports"};
  }
  auto a = ReadFile((root / "a" / "report.json").string());
  auto b = ReadFile((root / "b" / "report.json").string());
  if (!a.ok() || !b.ok()) return {false, "could not read reports"};
  fs::remove_all(root);
  return {*a == *b, absl::StrFormat("scenario2 report.json %zu bytes, %s", a->size(),
                                    *a == *b ? "identical" : "differs")};
}

// Condensed versions of the unit-level property suites.
Outcome Properties() {
  Rng rng(1009);
  std::vector<std::string> failed;
  auto check = [&](const char* name, const std::function<bool()>& body) {
    if (!body()) failed.push_back(name);
  };

  check("mask exactness", [&] {
    for (int trial = 0; trial < 100; ++trial) {
      const int length = 2 + static_cast<int>(rng.UniformIndex(30));
      const int dims = 1 + static_cast<int>(rng.UniformIndex(3));
      const TimeSeries x = RandomSeries(rng, length, dims);
      const double fraction = rng.Uniform(0.05, 0.95);
      auto mask = RandomMissingMask(length, dims, fraction, rng.NextBits());
      auto m = ApplyMask(x, *mask);
      if (!mask.ok() || !m.ok()) return false;
      int missing = 0;
      for (int t = 0; t < length; ++t) {
        for (int d = 0; d < dims; ++d) {
          const bool observed = mask->observed(t, d);
          missing += !observed;
          if (m->series().at(t, d) != (observed ? x.at(t, d) : kMissingFill)) {
            return false;
          }
        }
      }
      if (missing != std::lround(fraction * length * dims)) return false;
    }
    return true;
  });

  check("keep-observed", [&] {
    std::vector<TimeSeries> corpus;
    for (int i = 0; i < 6; ++i) corpus.push_back(RandomSeries(rng, 12, 1));
    models::ImputerConfig cfg;
    cfg.epochs = 2;
    for (auto arch : {models::Architecture::kAutoencoder,
                      models::Architecture::kAttention}) {
      cfg.architecture = arch;
      auto model = models::Train(corpus, cfg);
      if (!model.ok()) return false;
      for (int trial = 0; trial < 20; ++trial) {
        auto mask = RandomMissingMask(12, 1, rng.Uniform(0.05, 0.9), rng.NextBits());
        auto x = ApplyMask(corpus[trial % 6], *mask);
        auto y = model->Impute(*x);
        if (!y.ok()) return false;
        for (int t = 0; t < 12; ++t) {
          if (mask->observed(t, 0) && y->at(t, 0) != x->original().at(t, 0)) {
            return false;
          }
        }
      }
    }
    return true;
  });

  check("R scale invariance", [&] {
    for (int trial = 0; trial < 500; ++trial) {
      const double lt = std::exp(rng.Uniform(-5, 5));
      const double lr = std::exp(rng.Uniform(-5, 5));
      const double c = std::exp(rng.Uniform(-8, 8));
      const double r = attack::ScoreFromLosses("x", lt, lr).r;
      const double rc = attack::ScoreFromLosses("x", c * lt, c * lr).r;
      if (std::abs(rc / r - 1.0) > 1e-12) return false;
    }
    return true;
  });

  check("classify monotonicity", [&] {
    for (int trial = 0; trial < 100; ++trial) {
      double t1 = rng.Uniform(0, 5), t2 = rng.Uniform(0, 5);
      if (t1 > t2) std::swap(t1, t2);
      for (int i = 0; i < 30; ++i) {
        const auto s = attack::ScoreFromLosses("x", rng.Uniform(0, 2),
                                               rng.Uniform(0.1, 2));
        if (attack::Classify(s, t1).is_member && !attack::Classify(s, t2).is_member) {
          return false;
        }
      }
    }
    return true;
  });

  check("ROC monotonicity", [&] {
    for (int trial = 0; trial < 100; ++trial) {
      auto c = metrics::BuildRocCurve(TiedScores(rng, 200));
      if (!c.ok()) return false;
      const auto& p = c->points;
      if (p.front().fpr != 0 || p.front().tpr != 0 || p.back().fpr != 1 ||
          p.back().tpr != 1) {
        return false;
      }
      for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i].fpr < p[i - 1].fpr || p[i].tpr < p[i - 1].tpr) return false;
      }
    }
    return true;
  });

  check("label-flip duality", [&] {
    for (int trial = 0; trial < 100; ++trial) {
      metrics::LabeledScores data = TiedScores(rng, 300);
      const double a = metrics::Auroc(*metrics::BuildRocCurve(data));
      data.direction = metrics::Direction::kHigherIsMember;
      const double flipped = metrics::Auroc(*metrics::BuildRocCurve(data));
      if (std::abs(flipped - (1.0 - a)) > 1e-12) return false;
    }
    return true;
  });

  check("CSV round-trip", [&] {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<TimeSeries> corpus;
      const int length = 1 + static_cast<int>(rng.UniformIndex(8));
      const int dims = 1 + static_cast<int>(rng.UniformIndex(3));
      for (int i = 0; i < 1 + static_cast<int>(rng.UniformIndex(5)); ++i) {
        SeriesMatrix m(length, dims);
        for (int t = 0; t < length; ++t) {
          for (int d = 0; d < dims; ++d) {
            const double mantissa =
                static_cast<double>(static_cast<long long>(rng.Uniform(-1e9, 1e9))) /
                1e9;
            m(t, d) = mantissa *
                      std::pow(10.0, static_cast<int>(rng.UniformIndex(13)) - 6);
          }
        }
        corpus.push_back(*TimeSeries::Create(absl::StrCat("id", i), m));
      }
      std::istringstream in(data::FormatCsv(corpus));
      auto back = data::ParseCsv(in);
      if (!back.ok() || *back != corpus) return false;
    }
    return true;
  });

  if (failed.empty()) return {true, "7 property groups hold"};
  std::string detail = "failed:";
  for (const std::string& f : failed) absl::StrAppend(&detail, " ", f, ";");
  return {false, detail};
}

int Main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  };

  report(1, "DTW vs brute force", DtwAgainstBruteForce());
  report(2, "AUROC vs Mann-Whitney", AurocAgainstMannWhitney());
  report(3, "gradient checks", GradientChecks());
  report(4, "memorization", Memorization());

  std::optional<FixtureRun> s1, s2;
  for (auto [name, slot] : {std::pair{"scenario1.json", &s1},
                            std::pair{"scenario2.json", &s2}}) {
    auto run = RunFixture(name);
    if (run.ok()) {
      *slot = std::move(*run);
    } else {
      std::printf("  %s: %s\n", name, run.status().ToString().c_str());
    }
  }
  report(5, "fixtures", Fixtures(s1, s2));
  std::vector<const FixtureRun*> runs;
  if (s1.has_value()) runs.push_back(&*s1);
  if (s2.has_value()) runs.push_back(&*s2);
  report(6, "theta independence", ThetaIndependence(runs));
  report(7, "splits", Splits());
  report(8, "determinism", Determinism(s2));
  report(9, "property suites", Properties());

  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace tsaudit

int main() { return tsaudit::Main(); }

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

#include <cmath>
#include <vector>

#include "gradient_check.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "tsaudit/core/mask.h"
#include "tsaudit/core/normalize.h"
#include "tsaudit/data/synthetic.h"
#include "tsaudit/models/evaluation.h"
#include "tsaudit/models/imputer_config.h"
#include "tsaudit/models/networks.h"
#include "tsaudit/models/serialization.h"
#include "tsaudit/models/trained_imputer.h"
#include "tsaudit/models/training.h"

namespace tsaudit::models {
namespace {

using ::tsaudit::testing::ProbeGradient;
using ::tsaudit::testing::RandomSeries;
using ::tsaudit::testing::TinyAttention;
using ::tsaudit::testing::TinyAutoencoder;

std::vector<TimeSeries> Corpus(int count, int length, std::uint64_t seed) {
  data::SyntheticConfig cfg;
  cfg.count = count;
  cfg.length = length;
  cfg.seed = seed;
  std::vector<TimeSeries> out = *data::GenerateSynthetic(cfg);
  for (TimeSeries& x : out) x = ZScoreNormalize(x).first;
  return out;
}

ImputerConfig SmallConfig(int epochs) {
  ImputerConfig cfg;
  cfg.autoencoder = {.hidden1 = 16, .hidden2 = 8, .code = 4};
  cfg.epochs = epochs;
  cfg.batch_size = 8;
  cfg.seed = 21;
  return cfg;
}

// Returns its input with every masked entry set to zero.
class ZeroOracle : public ImputationOracle {
 public:
  absl::StatusOr<TimeSeries> Impute(const MaskedSeries& x) const override {
    seen_.push_back(x);
    return KeepObserved(
        x, SeriesMatrix::Zero(x.series().length(), x.series().dims()));
  }
  mutable std::vector<MaskedSeries> seen_;
};

TEST(ImputerConfigTest, Validation) {
  ImputerConfig cfg = TinyAttention();
  EXPECT_TRUE(Validate(cfg).ok());
  cfg.attention.model_dim = 5;
  EXPECT_FALSE(Validate(cfg).ok());
  cfg = TinyAutoencoder();
  cfg.epochs = 0;
  EXPECT_FALSE(Validate(cfg).ok());
  cfg = TinyAutoencoder();
  cfg.batch_size = 0;
  EXPECT_FALSE(Validate(cfg).ok());
}

TEST(ImputerConfigTest, JsonRoundTripAndStrictKeys) {
  ImputerConfig cfg = TinyAttention();
  cfg.epochs = 17;
  cfg.learning_rate = 0.125;
  auto back = ImputerConfigFromJson(ToJson(cfg));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(ToJson(*back), ToJson(cfg));
  nlohmann::json bad = ToJson(cfg);
  bad["epoch"] = 3;
  EXPECT_FALSE(ImputerConfigFromJson(bad).ok());
}

TEST(GradientTest, AutoencoderMatchesFiniteDifferences) {
  auto net = MakeNetwork(TinyAutoencoder(), 4, 1);
  ASSERT_LE(net->layout().size(), 200u);
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto probe = ProbeGradient(*net, rng);
    EXPECT_LE(probe.relative_error, 1e-4)
        << "probe " << i << " analytic " << probe.analytic << " numeric "
        << probe.numeric;
  }
}

TEST(GradientTest, AttentionMatchesFiniteDifferences) {
  auto net = MakeNetwork(TinyAttention(), 3, 1);
  ASSERT_LE(net->layout().size(), 200u);
  Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    const auto probe = ProbeGradient(*net, rng);
    EXPECT_LE(probe.relative_error, 1e-4)
        << "probe " << i << " analytic " << probe.analytic << " numeric "
        << probe.numeric;
  }
}

TEST(GradientTest, MultiDimensionalInputs) {
  Rng rng(33);
  for (const ImputerConfig& cfg : {TinyAutoencoder(), TinyAttention()}) {
    auto net = MakeNetwork(cfg, 3, 2);
    for (int i = 0; i < 10; ++i) {
      EXPECT_LE(ProbeGradient(*net, rng).relative_error, 1e-4);
    }
  }
}

TEST(TrainTest, MoreEpochsLowerFinalLoss) {
  const auto data = Corpus(32, 16, 1);
  auto one = Train(data, SmallConfig(1));
  auto fifty = Train(data, SmallConfig(50));
  ASSERT_TRUE(one.ok() && fifty.ok());
  ASSERT_EQ(one->history().size(), 1u);
  ASSERT_EQ(fifty->history().size(), 50u);
  EXPECT_LT(fifty->history().back(), one->history().back());
}

TEST(TrainTest, EpochSweepWeaklyDecreasesLoss) {
  const auto data = Corpus(16, 16, 2);
  double previous = INFINITY;
  for (int epochs : {1, 5, 25, 125}) {
    auto m = Train(data, SmallConfig(epochs));
    ASSERT_TRUE(m.ok());
    auto mae = EvaluateMae(*m, data, 0.2, 5);
    ASSERT_TRUE(mae.ok());
    EXPECT_LE(*mae, previous) << epochs;
    previous = *mae;
  }
}

TEST(TrainTest, Deterministic) {
  const auto data = Corpus(12, 16, 3);
  for (const ImputerConfig& base : {SmallConfig(5), TinyAttention()}) {
    ImputerConfig cfg = base;
    cfg.epochs = 5;
    cfg.seed = 8;
    auto a = Train(data, cfg);
    auto b = Train(data, cfg);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_TRUE(std::equal(a->parameters().begin(), a->parameters().end(),
                           b->parameters().begin(), b->parameters().end()));
    EXPECT_TRUE(std::equal(a->history().begin(), a->history().end(),
                           b->history().begin(), b->history().end()));
  }
}

TEST(TrainTest, OverfitsTinyDataset) {
  const auto data = Corpus(4, 24, 11);
  ImputerConfig cfg;
  cfg.epochs = 8000;
  cfg.batch_size = 4;
  cfg.seed = 3;
  auto m = Train(data, cfg);
  ASSERT_TRUE(m.ok());
  EXPECT_LT(m->history().back(), 0.05);
}

TEST(TrainTest, RejectsBadDatasets) {
  EXPECT_FALSE(Train({}, SmallConfig(1)).ok());
  Rng rng(1);
  std::vector<TimeSeries> mixed = {RandomSeries(rng, 8, 1),
                                   RandomSeries(rng, 9, 1)};
  EXPECT_EQ(Train(mixed, SmallConfig(1)).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(TrainTest, DivergenceNamesEpoch) {
  const auto data = Corpus(8, 16, 4);
  ImputerConfig cfg = SmallConfig(20);
  cfg.learning_rate = 1e300;
  auto m = Train(data, cfg);
  ASSERT_FALSE(m.ok());
  EXPECT_EQ(m.status().code(), absl::StatusCode::kInternal);
  EXPECT_NE(m.status().message().find("epoch"), absl::string_view::npos)
      << m.status();
}

TEST(FineTuneTest, ZeroLearningRateIsIdentity) {
  const auto data = Corpus(8, 16, 5);
  auto base = Train(data, SmallConfig(3));
  ASSERT_TRUE(base.ok());
  ImputerConfig ft = SmallConfig(3);
  ft.learning_rate = 0.0;
  auto tuned = FineTune(*base, data, ft);
  ASSERT_TRUE(tuned.ok()) << tuned.status();
  EXPECT_TRUE(std::equal(base->parameters().begin(), base->parameters().end(),
                         tuned->parameters().begin(),
                         tuned->parameters().end()));
}

TEST(FineTuneTest, LowersPrivateLossAndLeavesBaseIntact) {
  const auto pub = Corpus(16, 16, 6);
  const auto priv = Corpus(6, 16, 7);
  auto base = Train(pub, SmallConfig(20));
  ASSERT_TRUE(base.ok());
  const std::vector<double> before(base->parameters().begin(),
                                   base->parameters().end());
  auto tuned = FineTune(*base, priv, SmallConfig(200));
  ASSERT_TRUE(tuned.ok());
  EXPECT_TRUE(std::equal(before.begin(), before.end(),
                         base->parameters().begin(),
                         base->parameters().end()));
  EXPECT_FALSE(std::equal(before.begin(), before.end(),
                          tuned->parameters().begin(),
                          tuned->parameters().end()));
  const double base_mae = *EvaluateMae(*base, priv, 0.2, 9);
  const double tuned_mae = *EvaluateMae(*tuned, priv, 0.2, 9);
  EXPECT_LT(tuned_mae, base_mae);
}

TEST(FineTuneTest, ShapeMismatch) {
  auto base = Train(Corpus(4, 16, 8), SmallConfig(1));
  ASSERT_TRUE(base.ok());
  EXPECT_FALSE(FineTune(*base, Corpus(4, 12, 8), SmallConfig(1)).ok());
}

TEST(ImputeTest, KeepObservedAndShape) {
  const auto data = Corpus(6, 12, 9);
  for (const ImputerConfig& base : {SmallConfig(2), TinyAttention()}) {
    ImputerConfig cfg = base;
    cfg.epochs = 2;
    auto m = Train(data, cfg);
    ASSERT_TRUE(m.ok());
    auto full = ApplyMask(data[0], MaskMatrix::AllObserved(12, 1));
    auto out = m->Impute(*full);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(out->values(), data[0].values());
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
      auto mask = RandomMissingMask(12, 1, rng.Uniform(0.05, 0.9),
                                    rng.NextBits());
      auto x = ApplyMask(data[trial % 6], *mask);
      auto y = m->Impute(*x);
      ASSERT_TRUE(y.ok());
      ASSERT_EQ(y->length(), 12);
      ASSERT_EQ(y->dims(), 1);
      for (int t = 0; t < 12; ++t) {
        if (mask->observed(t, 0)) ASSERT_EQ(y->at(t, 0), x->original().at(t, 0));
      }
    }
    auto wrong = ApplyMask(*TimeSeries::Create("w", SeriesMatrix::Zero(10, 1)),
                           MaskMatrix::AllObserved(10, 1));
    EXPECT_EQ(m->Impute(*wrong).status().code(),
              absl::StatusCode::kInvalidArgument);
  }
}

TEST(EvaluateMaeTest, ZeroPredictorGivesMeanAbsoluteMaskedValue) {
  const auto data = Corpus(5, 20, 10);
  ZeroOracle zero;
  auto mae = EvaluateMae(zero, data, 0.2, 3);
  ASSERT_TRUE(mae.ok());
  double sum = 0;
  int count = 0;
  for (const MaskedSeries& x : zero.seen_) {
    for (int t = 0; t < x.original().length(); ++t) {
      if (!x.mask().observed(t, 0)) {
        sum += std::abs(x.original().at(t, 0));
        ++count;
      }
    }
  }
  ASSERT_EQ(count, 5 * 4);
  EXPECT_NEAR(*mae, sum / count, 1e-12);
  EXPECT_FALSE(EvaluateMae(zero, data, 0.0, 3).ok());
}

TEST(EvaluateMaeTest, MemorisedSingleSeries) {
  const auto data = Corpus(1, 16, 12);
  // A small step is needed: the MAE gradient does not shrink near the
  // optimum, so the error floor scales with the learning rate.
  ImputerConfig cfg = SmallConfig(20000);
  cfg.batch_size = 1;
  cfg.learning_rate = 0.001;
  auto m = Train(data, cfg);
  ASSERT_TRUE(m.ok());
  auto mae = EvaluateMae(*m, data, 0.2, 1);
  ASSERT_TRUE(mae.ok());
  EXPECT_LT(*mae, 1e-3);
}

TEST(ParityTest, IdenticalModelsPass) {
  const auto data = Corpus(8, 16, 13);
  auto m = Train(data, SmallConfig(5));
  ASSERT_TRUE(m.ok());
  auto p = ParityCheck(*m, *m, data, 0.01);
  ASSERT_TRUE(p.ok());
  EXPECT_TRUE(p->passed);
  EXPECT_EQ(p->gap, 0.0);
  EXPECT_FALSE(ParityCheck(*m, *m, data, 0.0).ok());
}

TEST(ParityTest, UntrainedVersusTrainedFails) {
  const auto data = Corpus(16, 16, 14);
  ImputerConfig cfg = SmallConfig(200);
  auto trained = Train(data, cfg);
  ASSERT_TRUE(trained.ok());
  auto net = MakeNetwork(cfg, 16, 1);
  auto untrained =
      TrainedImputer::Create(cfg, 16, 1, net->Initialize(77), {});
  ASSERT_TRUE(untrained.ok()) << untrained.status();
  auto p = ParityCheck(*trained, *untrained, data, 0.05);
  ASSERT_TRUE(p.ok());
  EXPECT_FALSE(p->passed) << p->mae_target << " vs " << p->mae_reference;
}

TEST(SerializationTest, RoundTripIsBitExact) {
  const auto data = Corpus(6, 12, 15);
  for (const ImputerConfig& base : {SmallConfig(3), TinyAttention()}) {
    ImputerConfig cfg = base;
    cfg.epochs = 3;
    auto m = Train(data, cfg);
    ASSERT_TRUE(m.ok());
    const std::string path = ::testing::TempDir() + "/model.json";
    ASSERT_TRUE(SaveImputer(*m, path).ok());
    auto back = LoadImputer(path);
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_TRUE(std::equal(m->parameters().begin(), m->parameters().end(),
                           back->parameters().begin(),
                           back->parameters().end()));
    EXPECT_TRUE(std::equal(m->history().begin(), m->history().end(),
                           back->history().begin(), back->history().end()));
    EXPECT_EQ(ToJson(back->config()), ToJson(m->config()));
    auto x = RandomMissingMask(12, 1, 0.3, 2);
    auto masked = ApplyMask(data[0], *x);
    EXPECT_EQ(m->Impute(*masked)->values(), back->Impute(*masked)->values());
  }
}

TEST(SerializationTest, RejectsTamperedParameterCount) {
  auto m = Train(Corpus(4, 12, 16), SmallConfig(1));
  ASSERT_TRUE(m.ok());
  nlohmann::json j = ImputerToJson(*m);
  j["parameters"].erase(0);
  EXPECT_FALSE(ImputerFromJson(j).ok());
}

}  // namespace
}  // namespace tsaudit::models

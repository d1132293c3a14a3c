// Copyright 2026 The KBC Tagger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "kbc/errors.h"
#include "kbc/mtltrain/optimizer.h"
#include "kbc/mtltrain/trainer.h"
#include "kbc/numcore/graph.h"
#include "nlohmann/json.hpp"
#include "overfit_fixture.h"
#include "test_util.h"

namespace kbc::mtltrain {
namespace {

using numcore::Parameter;
using numcore::Rng;
using numcore::Tensor;
using kbc::testing::TinyModel;

TEST(SgdTest, FirstStepFromRest) {
  Parameter p("p", Tensor::Scalar(1.0));
  p.grad[0] = 2.0;
  Tensor v = Tensor::Scalar(0.0);
  SgdMomentumStep(p, v, 0.001, 0.9);
  EXPECT_DOUBLE_EQ(v[0], -0.002);
  EXPECT_DOUBLE_EQ(p.value[0], 0.998);
}

TEST(SgdTest, ZeroGradientIsFixedPoint) {
  Parameter p("p", Tensor::Vector({1.0, -3.5}));
  Tensor v = Tensor::Vector({0.0, 0.0});
  for (int i = 0; i < 1000; ++i) SgdMomentumStep(p, v, 0.1, 0.9);
  EXPECT_EQ(p.value, Tensor::Vector({1.0, -3.5}));
}

TEST(SgdTest, HandRecursion) {
  Parameter p("p", Tensor::Scalar(0.0));
  Tensor v = Tensor::Scalar(0.0);
  double oracle_v = 0.0, oracle_p = 0.0;
  for (int step = 0; step < 2; ++step) {
    p.grad[0] = 1.0;
    SgdMomentumStep(p, v, 0.1, 0.5);
    oracle_v = 0.5 * oracle_v - 0.1 * 1.0;
    oracle_p += oracle_v;
    EXPECT_DOUBLE_EQ(v[0], oracle_v);
    EXPECT_DOUBLE_EQ(p.value[0], oracle_p);
  }
  EXPECT_DOUBLE_EQ(v[0], -0.15);
  EXPECT_DOUBLE_EQ(p.value[0], -0.25);
}

TEST(SgdTest, ShapeMismatch) {
  Parameter p("p", Tensor::Vector({1, 2}));
  Tensor v = Tensor::Vector({0, 0, 0});
  EXPECT_THROW(SgdMomentumStep(p, v, 0.1, 0.9), DimensionError);
}

// Corpus over the TinyModel vocabulary (w0..w7) and BIO tagset.
tagdata::Corpus Corpus(const std::string &task, std::size_t n, std::uint64_t seed,
                       bool is_main) {
  Rng rng(seed);
  tagdata::Corpus c;
  for (std::size_t s = 0; s < n; ++s) {
    tagdata::LabelledSentence ls;
    const std::size_t len = 2 + rng.UniformInt(4);
    for (std::size_t i = 0; i < len; ++i) {
      ls.sentence.tokens.push_back("w" + std::to_string(rng.UniformInt(8)));
    }
    ls.tags = kbc::testing::RandomWellFormed(rng, len, {"Task", "Process"});
    c.sentences.push_back(ls);
  }
  c.task = tagdata::TaskSpec(task, {"B-Task", "I-Task", "B-Process", "I-Process"},
                             is_main);
  return c;
}

TrainConfig Config(std::size_t epochs = 1, std::uint64_t seed = 1) {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.seed = seed;
  return cfg;
}

TEST(TrainerTest, SingleTaskAlwaysSamplesMain) {
  auto main = Corpus("main", 4, 1, true);
  TrainRun run(TinyModel(2, 1, 1, 1), main);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(TrainingStep(run, Config(), rng).task_index, 0u);
}

TEST(TrainerTest, UniformSamplingFrequency) {
  auto main = Corpus("main", 3, 1, true);
  auto aux = Corpus("aux1", 17, 2, false);
  TrainRun run(TinyModel(2, 1, 2, 1), main, &aux);
  Rng rng(5);
  std::size_t main_steps = 0;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) main_steps += TrainingStep(run, Config(), rng).task_index == 0;
  // Binomial(10000, 0.5): sigma = 0.005.
  const double freq = static_cast<double>(main_steps) / n;
  EXPECT_GE(freq, 0.48);
  EXPECT_LE(freq, 0.52);
}

TEST(TrainerTest, ProportionalSampling) {
  auto main = Corpus("main", 4, 1, true);
  auto aux = Corpus("aux1", 12, 2, false);
  TrainRun run(TinyModel(2, 1, 2, 1), main, &aux);
  TrainConfig cfg = Config();
  cfg.task_sampling = TaskSampling::kProportional;
  Rng rng(6);
  std::size_t main_steps = 0;
  for (int i = 0; i < 8000; ++i) main_steps += TrainingStep(run, cfg, rng).task_index == 0;
  // p = 0.25, sigma ~ 0.0048.
  EXPECT_NEAR(main_steps / 8000.0, 0.25, 0.02);
}

TEST(TrainerTest, OneStepDecreasesLoss) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto main = Corpus("main", 1, seed, true);
    TrainRun run(TinyModel(3, 2, 1, seed), main);
    const auto &enc = run.corpora()[0];
    auto sentence_loss = [&] {
      numcore::Graph g;
      return g.value(taggernet::SentenceLoss(g, run.model(), enc.tokens[0], enc.tags[0],
                                            0, false, nullptr))[0];
    };
    const double before = sentence_loss();
    Rng rng(seed);
    TrainingStep(run, Config(), rng);
    EXPECT_LT(sentence_loss(), before) << "seed " << seed;
  }
}

TEST(TrainerTest, EpochAccounting) {
  auto main = Corpus("main", 5, 1, true);
  TrainRun run(TinyModel(2, 1, 1, 1), main);
  EXPECT_THROW(Train(run, Config(0)), ConfigError);
  auto records = Train(run, Config(1));
  EXPECT_EQ(run.steps_done(), 5u);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].epoch, 1u);
  EXPECT_EQ(records[0].steps, 5u);
  EXPECT_EQ(records[0].task, "main");
}

TEST(TrainerTest, EpochLengthIsSumOfCorpora) {
  auto main = Corpus("main", 5, 1, true);
  auto aux = Corpus("aux1", 7, 2, false);
  TrainRun run(TinyModel(2, 1, 2, 1), main, &aux);
  auto records = Train(run, Config(2));
  EXPECT_EQ(run.steps_done(), 24u);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0].steps + records[1].steps, 12u);
  EXPECT_EQ(run.log.size(), 4u);
}

TEST(TrainerTest, SeedDeterminism) {
  auto main = Corpus("main", 6, 1, true);
  auto aux = Corpus("aux1", 6, 2, false);
  auto run_once = [&](std::uint64_t seed) {
    TrainRun run(TinyModel(3, 2, 2, 7, 8, 0.2), main, &aux);
    Train(run, Config(3, seed));
    return run;
  };
  TrainRun a = run_once(11), b = run_once(11), c = run_once(12);
  EXPECT_TRUE(kbc::testing::SameParameters(a.model(), b.model()));
  EXPECT_FALSE(kbc::testing::SameParameters(a.model(), c.model()));
  ASSERT_EQ(a.log.size(), b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    EXPECT_EQ(a.log[i].mean_loss, b.log[i].mean_loss);
  }
}

TEST(TrainerTest, HeadIsolationAndEncoderCoupling) {
  auto main = Corpus("main", 4, 1, true);
  auto aux = Corpus("aux1", 4, 2, false);
  TrainRun run(TinyModel(3, 2, 2, 8), main, &aux);
  Rng rng(9);
  std::size_t aux_steps = 0;
  for (int s = 0; s < 40; ++s) {
    const taggernet::Model before = run.model();
    std::vector<Tensor> vel;
    for (std::size_t i = 0; i < run.optimizer().size(); ++i) vel.push_back(run.optimizer().velocity(i));
    StepRecord rec = TrainingStep(run, Config(), rng);
    const std::size_t other = 1 - rec.task_index;
    const std::size_t n_enc = run.model().EncoderParameters().size();
    const std::size_t other_pos = n_enc + 2 * other;
    EXPECT_EQ(run.model().heads()[other].w.value, before.heads()[other].w.value);
    EXPECT_EQ(run.model().heads()[other].b.value, before.heads()[other].b.value);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(run.optimizer().velocity(other_pos + k), vel[other_pos + k]);
    }
    bool encoder_changed = false;
    auto now = run.model().AllParameters();
    auto was = before.AllParameters();
    for (std::size_t i = 0; i < n_enc; ++i) encoder_changed |= !(now[i]->value == was[i]->value);
    EXPECT_TRUE(encoder_changed) << "step " << s;
    aux_steps += rec.task_index == 1;
  }
  EXPECT_GT(aux_steps, 0u);
}

TEST(TrainerTest, FrozenEmbeddingsStay) {
  auto main = Corpus("main", 4, 1, true);
  taggernet::Model m = TinyModel(3, 1, 1, 2);
  taggernet::TaggerConfig cfg = m.config();
  cfg.freeze_embeddings = true;
  taggernet::Model frozen(cfg, m.vocab(), {m.task(0)});
  const Tensor table = frozen.embeddings().value;
  TrainRun run(std::move(frozen), main);
  Train(run, Config(2));
  EXPECT_EQ(run.model().embeddings().value, table);
}

TEST(TrainerTest, NanLossAborts) {
  auto main = Corpus("main", 2, 1, true);
  taggernet::Model m = TinyModel(2, 1, 1, 2);
  m.heads()[0].b.value[0] = std::numeric_limits<double>::quiet_NaN();
  TrainRun run(std::move(m), main);
  Rng rng(1);
  EXPECT_THROW(TrainingStep(run, Config(), rng), NumericalError);
}

TEST(TrainerTest, MainTaskChecks) {
  auto main = Corpus("main", 2, 1, true);
  auto unknown = Corpus("zzz", 2, 1, false);
  EXPECT_THROW(TrainRun(TinyModel(2, 1, 2, 1), unknown), TaskError);
  EXPECT_THROW(TrainRun(TinyModel(2, 1, 2, 1), main, &main), TaskError);
  tagdata::Corpus main_bad = main;
  main_bad.sentences[0].tags[0] = "B-Unseen";
  EXPECT_THROW(TrainRun(TinyModel(2, 1, 1, 1), main_bad), LabelError);
}

TEST(TrainerTest, EmptyAuxIsRedrawn) {
  auto main = Corpus("main", 3, 1, true);
  auto aux = Corpus("aux1", 0, 2, false);
  TrainRun run(TinyModel(2, 1, 2, 1), main, &aux);
  Train(run, Config(3));
  EXPECT_EQ(run.steps_done(), 9u);
  EXPECT_GT(run.empty_draws(), 0u);
}

TEST(TrainerTest, GradientClippingBoundsTheStep) {
  auto main = Corpus("main", 1, 1, true);
  TrainRun run(TinyModel(3, 1, 1, 3), main);
  TrainConfig cfg = Config();
  cfg.max_grad_norm = 1e-6;
  cfg.momentum = 0.0;
  cfg.learning_rate = 1.0;
  const taggernet::Model before = run.model();
  Rng rng(2);
  TrainingStep(run, cfg, rng);
  double sq = 0.0;
  auto now = run.model().AllParameters();
  auto was = before.AllParameters();
  for (std::size_t i = 0; i < now.size(); ++i) {
    for (std::size_t k = 0; k < now[i]->value.size(); ++k) {
      const double d = now[i]->value[k] - was[i]->value[k];
      sq += d * d;
    }
  }
  EXPECT_LE(std::sqrt(sq), 1e-6 * (1 + 1e-9));
}

TEST(TrainerTest, LogLineIsJson) {
  std::ostringstream out;
  WriteTrainLogLine(out, EpochRecord{3, "main", 20, 1.25});
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["epoch"], 3);
  EXPECT_EQ(j["task"], "main");
  EXPECT_EQ(j["steps"], 20);
  EXPECT_EQ(j["mean_loss"], 1.25);
  EXPECT_EQ(out.str().back(), '\n');
}

TEST(TrainerTest, OverfitsSyntheticCorpus) {
  auto r = kbc::testing::RunOverfitFixture();
  EXPECT_GE(r.token_accuracy, 0.99);
  EXPECT_LT(r.last_epoch_loss, 0.1 * r.first_epoch_loss);
  ASSERT_EQ(r.log.size(), kbc::testing::kOverfitEpochs);
}

}  // namespace
}  // namespace kbc::mtltrain

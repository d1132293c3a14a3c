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
#ifndef KBC_MTLTRAIN_TRAINER_H_
#define KBC_MTLTRAIN_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kbc/mtltrain/optimizer.h"
#include "kbc/numcore/random.h"
#include "kbc/tagdata/types.h"
#include "kbc/taggernet/model.h"

namespace kbc::mtltrain {

enum class TaskSampling {
  kUniform,       // every task equally likely at each step
  kProportional,  // task t with probability |D_t| / sum |D|
};

struct TrainConfig {
  double learning_rate = 0.001;
  double momentum = 0.9;
  std::size_t epochs = 10;
  std::uint64_t seed = 1;
  TaskSampling task_sampling = TaskSampling::kUniform;
  std::size_t checkpoint_every = 0;  // epochs; 0 disables
  double max_grad_norm = 0.0;        // global L2 clip; 0 disables

  void Validate() const;
};

// A corpus mapped onto vocabulary and tagset indices of one model head.
struct EncodedCorpus {
  std::size_t task_index = 0;
  std::string name;
  std::vector<std::vector<std::size_t>> tokens;
  std::vector<std::vector<std::size_t>> tags;

  std::size_t size() const { return tokens.size(); }
};

// LabelError when a tag is outside the head's tagset.
EncodedCorpus EncodeCorpus(const taggernet::Model &model,
                           const tagdata::Corpus &corpus, std::size_t task_index);

// A model with one head for the main task and, optionally, one for a single
// auxiliary task. Heads are in the order main, auxiliary.
taggernet::Model MakeModel(const taggernet::TaggerConfig &config,
                           tagdata::Vocabulary vocab,
                           const tagdata::Corpus &main,
                           const tagdata::Corpus *aux,
                           std::optional<tagdata::EmbeddingTable> embeddings);

struct StepRecord {
  std::size_t step = 0;
  std::size_t task_index = 0;
  std::size_t instance = 0;
  double loss = 0.0;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  std::string task;
  std::size_t steps = 0;
  double mean_loss = 0.0;  // 0 when steps == 0
};

// Training state: the model, its optimizer state, the main corpus D_main and
// at most one auxiliary corpus D_aux.
class TrainRun {
 public:
  TrainRun(taggernet::Model model, const tagdata::Corpus &main,
           const tagdata::Corpus *aux = nullptr);

  taggernet::Model &model() { return model_; }
  const taggernet::Model &model() const { return model_; }
  OptimizerState &optimizer() { return optimizer_; }
  const std::vector<EncodedCorpus> &corpora() const { return corpora_; }
  std::size_t total_sentences() const;
  std::size_t steps_done() const { return steps_done_; }
  // Draws of a task whose corpus is empty, each followed by a redraw.
  std::size_t empty_draws() const { return empty_draws_; }

  std::vector<EpochRecord> log;

 private:
  friend StepRecord TrainingStep(TrainRun &run, const TrainConfig &cfg,
                                 numcore::Rng &rng);

  taggernet::Model model_;
  OptimizerState optimizer_;
  std::vector<EncodedCorpus> corpora_;  // main first
  std::vector<std::size_t> encoder_positions_;
  std::vector<std::vector<std::size_t>> head_positions_;
  std::size_t steps_done_ = 0;
  std::size_t empty_draws_ = 0;
};

// Samples a task by cfg.task_sampling, then an instance of its corpus
// uniformly (with replacement), computes the train-mode sentence loss,
// backpropagates, and applies momentum SGD to the encoder (and embeddings
// unless frozen) and to the sampled task's head only.
// NumericalError on a non-finite loss.
StepRecord TrainingStep(TrainRun &run, const TrainConfig &cfg, numcore::Rng &rng);

struct TrainHooks {
  std::function<void(const EpochRecord &)> on_epoch;
  // Called after every cfg.checkpoint_every-th epoch.
  std::function<void(std::size_t epoch, const taggernet::Model &)> on_checkpoint;
};

// cfg.epochs epochs of run.total_sentences() steps each, driven by one Rng
// seeded with cfg.seed. Appends one EpochRecord per task per epoch to
// run.log and returns the records of this call.
std::vector<EpochRecord> Train(TrainRun &run, const TrainConfig &cfg,
                               const TrainHooks &hooks = {});

// One JSON object per line: {"epoch":..,"task":..,"steps":..,"mean_loss":..}
void WriteTrainLogLine(std::ostream &out, const EpochRecord &record);

}  // namespace kbc::mtltrain

#endif  // KBC_MTLTRAIN_TRAINER_H_

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
#include "kbc/mtltrain/trainer.h"

#include <cmath>
#include <ostream>

#include "json.hpp"
#include "kbc/errors.h"
#include "kbc/numcore/graph.h"

namespace kbc::mtltrain {

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ConfigError("momentum must lie in [0, 1)");
  }
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(max_grad_norm >= 0.0)) throw ConfigError("max_grad_norm must be >= 0");
}

EncodedCorpus EncodeCorpus(const taggernet::Model &model,
                           const tagdata::Corpus &corpus,
                           std::size_t task_index) {
  EncodedCorpus out;
  out.task_index = task_index;
  out.name = model.task(task_index).name;
  for (const auto &ls : corpus.sentences) {
    out.tokens.push_back(taggernet::TokenIndices(model, ls.sentence.tokens));
    out.tags.push_back(taggernet::TagIndices(model.task(task_index), ls.tags));
  }
  return out;
}

taggernet::Model MakeModel(const taggernet::TaggerConfig &config,
                           tagdata::Vocabulary vocab,
                           const tagdata::Corpus &main,
                           const tagdata::Corpus *aux,
                           std::optional<tagdata::EmbeddingTable> embeddings) {
  std::vector<tagdata::TaskSpec> tasks;
  tasks.push_back(main.task);
  tasks.back().is_main = true;
  if (aux) {
    tasks.push_back(aux->task);
    tasks.back().is_main = false;
  }
  return taggernet::Model(config, std::move(vocab), std::move(tasks),
                          std::move(embeddings));
}

TrainRun::TrainRun(taggernet::Model model, const tagdata::Corpus &main,
                   const tagdata::Corpus *aux)
    : model_(std::move(model)), optimizer_(model_) {
  std::size_t n_main = 0;
  for (const auto &h : model_.heads()) n_main += h.task.is_main ? 1 : 0;
  if (n_main != 1) {
    throw TaskError("exactly one task must be the main task, found " +
                    std::to_string(n_main));
  }
  corpora_.push_back(EncodeCorpus(model_, main, model_.TaskIndex(main.task.name)));
  if (!model_.task(corpora_[0].task_index).is_main) {
    throw TaskError("corpus " + main.task.name + " is not the model's main task");
  }
  if (aux) {
    corpora_.push_back(EncodeCorpus(model_, *aux, model_.TaskIndex(aux->task.name)));
    if (corpora_[1].task_index == corpora_[0].task_index) {
      throw TaskError("auxiliary task must differ from the main task");
    }
  }

  const std::size_t n_encoder = model_.EncoderParameters().size();
  const bool frozen = model_.config().freeze_embeddings;
  // Position 0 is the embedding table.
  for (std::size_t i = frozen ? 1 : 0; i < n_encoder; ++i) {
    encoder_positions_.push_back(i);
  }
  std::size_t pos = n_encoder;
  for (std::size_t t = 0; t < model_.num_tasks(); ++t) {
    head_positions_.push_back({pos, pos + 1});
    pos += 2;
  }
}

std::size_t TrainRun::total_sentences() const {
  std::size_t n = 0;
  for (const auto &c : corpora_) n += c.size();
  return n;
}

namespace {

std::size_t SampleCorpus(const std::vector<EncodedCorpus> &corpora,
                         TaskSampling policy, std::size_t total,
                         numcore::Rng &rng) {
  if (policy == TaskSampling::kUniform) return rng.UniformInt(corpora.size());
  std::uint64_t r = rng.UniformInt(total);
  for (std::size_t c = 0; c < corpora.size(); ++c) {
    if (r < corpora[c].size()) return c;
    r -= corpora[c].size();
  }
  return corpora.size() - 1;
}

}  // namespace

StepRecord TrainingStep(TrainRun &run, const TrainConfig &cfg,
                        numcore::Rng &rng) {
  const std::size_t total = run.total_sentences();
  if (total == 0) throw TaskError("every training corpus is empty");

  std::size_t c = SampleCorpus(run.corpora_, cfg.task_sampling, total, rng);
  while (run.corpora_[c].size() == 0) {
    ++run.empty_draws_;
    c = SampleCorpus(run.corpora_, cfg.task_sampling, total, rng);
  }
  const EncodedCorpus &corpus = run.corpora_[c];
  const std::size_t instance = rng.UniformInt(corpus.size());

  StepRecord rec;
  rec.step = run.steps_done_;
  rec.task_index = corpus.task_index;
  rec.instance = instance;

  std::vector<std::size_t> positions = run.encoder_positions_;
  for (std::size_t p : run.head_positions_[corpus.task_index]) positions.push_back(p);

  auto params = run.model_.AllParameters();
  // The embedding gradient is needed even when the table is frozen only to
  // keep the graph uniform; it is simply never applied.
  params[0]->ZeroGrad();
  for (std::size_t p : positions) params[p]->ZeroGrad();

  numcore::Graph graph;
  numcore::Var loss = taggernet::SentenceLoss(
      graph, run.model_, corpus.tokens[instance], corpus.tags[instance],
      corpus.task_index, /*train_mode=*/true, &rng);
  rec.loss = graph.value(loss)[0];
  if (!std::isfinite(rec.loss)) {
    throw NumericalError("non-finite loss at step " + std::to_string(rec.step) +
                         ", task " + corpus.name + ", instance " +
                         std::to_string(instance));
  }
  graph.Backward(loss);

  if (cfg.max_grad_norm > 0.0) {
    double sq = 0.0;
    for (std::size_t p : positions) {
      for (double g : params[p]->grad.data()) sq += g * g;
    }
    const double norm = std::sqrt(sq);
    if (norm > cfg.max_grad_norm) {
      const double scale = cfg.max_grad_norm / norm;
      for (std::size_t p : positions) {
        for (double &g : params[p]->grad.data()) g *= scale;
      }
    }
  }

  SgdMomentumStep(run.model_, run.optimizer_, positions, cfg.learning_rate,
                  cfg.momentum);
  ++run.steps_done_;
  return rec;
}

std::vector<EpochRecord> Train(TrainRun &run, const TrainConfig &cfg,
                               const TrainHooks &hooks) {
  cfg.Validate();
  const std::size_t steps_per_epoch = run.total_sentences();
  if (steps_per_epoch == 0) throw TaskError("every training corpus is empty");

  numcore::Rng rng(cfg.seed);
  std::vector<EpochRecord> records;
  const auto &corpora = run.corpora();
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::vector<double> loss_sum(run.model().num_tasks(), 0.0);
    std::vector<std::size_t> steps(run.model().num_tasks(), 0);
    for (std::size_t s = 0; s < steps_per_epoch; ++s) {
      StepRecord rec = TrainingStep(run, cfg, rng);
      loss_sum[rec.task_index] += rec.loss;
      ++steps[rec.task_index];
    }
    for (const auto &c : corpora) {
      EpochRecord er;
      er.epoch = epoch;
      er.task = c.name;
      er.steps = steps[c.task_index];
      er.mean_loss = er.steps ? loss_sum[c.task_index] / er.steps : 0.0;
      run.log.push_back(er);
      records.push_back(er);
      if (hooks.on_epoch) hooks.on_epoch(er);
    }
    if (hooks.on_checkpoint && cfg.checkpoint_every > 0 &&
        epoch % cfg.checkpoint_every == 0) {
      hooks.on_checkpoint(epoch, run.model());
    }
  }
  return records;
}

void WriteTrainLogLine(std::ostream &out, const EpochRecord &record) {
  nlohmann::ordered_json j;
  j["epoch"] = record.epoch;
  j["task"] = record.task;
  j["steps"] = record.steps;
  j["mean_loss"] = record.mean_loss;
  out << j.dump() << '\n';
}

}  // namespace kbc::mtltrain

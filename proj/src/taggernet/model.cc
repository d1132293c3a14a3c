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
#include "kbc/taggernet/model.h"

#include <cmath>
#include <cstdint>

#include "kbc/errors.h"
#include "kbc/tagdata/bio.h"

namespace kbc::taggernet {

using numcore::Graph;
using numcore::Parameter;
using numcore::Tensor;
using numcore::Var;

void TaggerConfig::Validate() const {
  if (d_embed == 0 || d_hidden == 0 || n_layers == 0) {
    throw ConfigError("tagger dimensions and layer count must be positive");
  }
  if (!(input_dropout >= 0.0 && input_dropout < 1.0)) {
    throw ConfigError("input_dropout must lie in [0, 1)");
  }
  if (peepholes) {
    throw ConfigError("peephole LSTM cells are not supported");
  }
}

Model::Model(TaggerConfig config, tagdata::Vocabulary vocab,
             std::vector<tagdata::TaskSpec> tasks,
             std::optional<tagdata::EmbeddingTable> embeddings)
    : config_(config), vocab_(std::move(vocab)) {
  config_.Validate();
  if (tasks.empty()) throw TaskError("a model needs at least one task");
  numcore::Rng rng(config_.seed);

  const std::uint64_t embed_seed = rng.Fork();
  if (embeddings) {
    if (embeddings->matrix.rows() != vocab_.size() ||
        embeddings->dim != config_.d_embed) {
      throw DimensionError("embedding table " + embeddings->matrix.ShapeString() +
                           " does not match |V|=" + std::to_string(vocab_.size()) +
                           " x d_embed=" + std::to_string(config_.d_embed));
    }
    embeddings_ = Parameter("embeddings", std::move(embeddings->matrix));
  } else {
    embeddings_ = Parameter(
        "embeddings",
        tagdata::RandomEmbeddings(vocab_, config_.d_embed, embed_seed).matrix);
  }

  std::size_t d_in = config_.d_embed;
  for (std::size_t l = 0; l < config_.n_layers; ++l) {
    const std::string prefix = "layer" + std::to_string(l);
    BiLstmLayer layer;
    layer.forward =
        LstmCellParams::Create(prefix + ".fwd", d_in, config_.d_hidden, rng);
    layer.backward =
        LstmCellParams::Create(prefix + ".bwd", d_in, config_.d_hidden, rng);
    layers_.push_back(std::move(layer));
    d_in = 2 * config_.d_hidden;
  }

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    for (std::size_t s = 0; s < t; ++s) {
      if (heads_[s].task.name == tasks[t].name) {
        throw TaskError("duplicate task name " + tasks[t].name);
      }
    }
    TaskHead head;
    head.task = std::move(tasks[t]);
    head.task.task_id = static_cast<int>(t);
    const std::size_t k = head.task.num_tags();
    if (k < 2) {
      throw TaskError("task " + head.task.name + " needs at least 2 tags");
    }
    const std::string prefix = "head." + head.task.name;
    Tensor w({encoding_dim(), k});
    const double limit =
        std::sqrt(6.0 / static_cast<double>(encoding_dim() + k));
    for (double &v : w.data()) v = rng.Uniform(-limit, limit);
    head.w = Parameter(prefix + ".w", std::move(w));
    head.b = Parameter(prefix + ".b", Tensor({k}));
    heads_.push_back(std::move(head));
  }
}

std::size_t Model::TaskIndex(const std::string &name) const {
  for (std::size_t i = 0; i < heads_.size(); ++i) {
    if (heads_[i].task.name == name) return i;
  }
  throw TaskError("model has no head for task '" + name + "'");
}

std::vector<Parameter *> Model::EncoderParameters() {
  std::vector<Parameter *> out{&embeddings_};
  for (auto &layer : layers_) {
    for (Parameter *p : layer.forward.Parameters()) out.push_back(p);
    for (Parameter *p : layer.backward.Parameters()) out.push_back(p);
  }
  return out;
}

std::vector<Parameter *> Model::HeadParameters(std::size_t task_index) {
  TaskHead &h = heads_.at(task_index);
  return {&h.w, &h.b};
}

std::vector<Parameter *> Model::AllParameters() {
  std::vector<Parameter *> out = EncoderParameters();
  for (std::size_t t = 0; t < heads_.size(); ++t) {
    for (Parameter *p : HeadParameters(t)) out.push_back(p);
  }
  return out;
}

std::vector<const Parameter *> Model::AllParameters() const {
  std::vector<const Parameter *> out;
  for (Parameter *p : const_cast<Model *>(this)->AllParameters()) out.push_back(p);
  return out;
}

void Model::ZeroGrad() {
  for (Parameter *p : AllParameters()) p->ZeroGrad();
}

std::vector<std::size_t> TokenIndices(const Model &model,
                                      const std::vector<std::string> &tokens) {
  return model.vocab().LookupAll(tokens);
}

std::vector<std::size_t> TagIndices(const tagdata::TaskSpec &task,
                                    const tagdata::LabelSequence &tags) {
  std::vector<std::size_t> out;
  out.reserve(tags.size());
  for (const auto &t : tags) {
    auto idx = task.IndexOf(t);
    if (!idx) {
      throw LabelError("tag '" + t + "' not in tagset of task " + task.name);
    }
    out.push_back(*idx);
  }
  return out;
}

namespace {

// Shared by the trainable and the read-only paths: graph.Param resolves to
// a gradient leaf for Model& and to a constant view for const Model&.
template <typename M>
Var EncodeImpl(Graph &graph, M &model, std::span<const std::size_t> tokens,
               bool train_mode, numcore::Rng *rng) {
  const TaggerConfig &cfg = model.config();
  if (tokens.empty()) throw ContractError("cannot encode an empty sentence");
  for (std::size_t idx : tokens) {
    if (idx >= model.vocab().size()) {
      throw VocabError("token index " + std::to_string(idx) +
                       " outside vocabulary of size " +
                       std::to_string(model.vocab().size()));
    }
  }
  Var table = graph.Param(model.embeddings());
  Var x = graph.GatherRows(table, tokens);

  if (train_mode && cfg.input_dropout > 0.0) {
    if (rng == nullptr) throw ContractError("train-mode dropout needs an rng");
    const double keep = 1.0 - cfg.input_dropout;
    Tensor mask(graph.value(x).shape());
    for (double &m : mask.data()) m = rng->Bernoulli(keep) ? 1.0 / keep : 0.0;
    x = graph.Mul(x, graph.Constant(std::move(mask)));
  }

  for (auto &layer : model.layers()) {
    Var fwd = RunLstm(graph, BindCell(graph, layer.forward), x, false);
    Var bwd = RunLstm(graph, BindCell(graph, layer.backward), x, true);
    Var parts[] = {fwd, bwd};
    x = graph.ConcatCols(parts);
  }
  return x;
}

template <typename M>
Var HeadLogitsImpl(Graph &graph, M &model, Var encoding,
                   std::size_t task_index) {
  if (task_index >= model.heads().size()) {
    throw TaskError("no head with index " + std::to_string(task_index));
  }
  auto &head = model.heads()[task_index];
  return graph.Affine(encoding, graph.Param(head.w), graph.Param(head.b));
}

}  // namespace

Var Encode(Graph &graph, Model &model, std::span<const std::size_t> tokens,
           bool train_mode, numcore::Rng *rng) {
  return EncodeImpl(graph, model, tokens, train_mode, rng);
}

Var Encode(Graph &graph, const Model &model,
           std::span<const std::size_t> tokens, bool train_mode,
           numcore::Rng *rng) {
  return EncodeImpl(graph, model, tokens, train_mode, rng);
}

Var HeadLogits(Graph &graph, Model &model, Var encoding,
               std::size_t task_index) {
  return HeadLogitsImpl(graph, model, encoding, task_index);
}

Var HeadLogits(Graph &graph, const Model &model, Var encoding,
               std::size_t task_index) {
  return HeadLogitsImpl(graph, model, encoding, task_index);
}

Tensor Forward(const Model &model, std::span<const std::size_t> tokens,
               std::size_t task_index, bool train_mode, numcore::Rng *rng) {
  if (task_index >= model.num_tasks()) {
    throw TaskError("no head with index " + std::to_string(task_index));
  }
  Graph graph(/*record_gradients=*/false);
  Var enc = Encode(graph, model, tokens, train_mode, rng);
  return numcore::SoftmaxRows(graph.value(HeadLogits(graph, model, enc, task_index)));
}

Var SentenceLoss(Graph &graph, Model &model, std::span<const std::size_t> tokens,
                 std::span<const std::size_t> gold, std::size_t task_index,
                 bool train_mode, numcore::Rng *rng) {
  if (task_index >= model.num_tasks()) {
    throw TaskError("no head with index " + std::to_string(task_index));
  }
  if (gold.size() != tokens.size()) {
    throw LabelError(std::to_string(gold.size()) + " gold tags for " +
                     std::to_string(tokens.size()) + " tokens");
  }
  const std::size_t k = model.task(task_index).num_tags();
  for (std::size_t g : gold) {
    if (g >= k) {
      throw LabelError("gold tag index " + std::to_string(g) +
                       " outside tagset of size " + std::to_string(k));
    }
  }
  Var enc = Encode(graph, model, tokens, train_mode, rng);
  Var logits = HeadLogits(graph, model, enc, task_index);
  return graph.SoftmaxCrossEntropyRows(logits, gold);
}

Var SentenceLoss(Graph &graph, Model &model, std::span<const std::size_t> tokens,
                 const tagdata::LabelSequence &gold, std::size_t task_index,
                 bool train_mode, numcore::Rng *rng) {
  if (task_index >= model.num_tasks()) {
    throw TaskError("no head with index " + std::to_string(task_index));
  }
  std::vector<std::size_t> idx = TagIndices(model.task(task_index), gold);
  return SentenceLoss(graph, model, tokens, idx, task_index, train_mode, rng);
}

tagdata::LabelSequence Predict(const Model &model,
                               std::span<const std::size_t> tokens,
                               std::size_t task_index) {
  Tensor probs = Forward(model, tokens, task_index);
  const tagdata::TaskSpec &task = model.task(task_index);
  tagdata::LabelSequence tags;
  tags.reserve(probs.rows());
  for (std::size_t r = 0; r < probs.rows(); ++r) {
    auto row = probs.row(r);
    std::size_t best = 0;
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k] > row[best]) best = k;
    }
    tags.push_back(task.tag(best));
  }
  tagdata::RepairBio(tags);
  return tags;
}

tagdata::LabelSequence Predict(const Model &model,
                               const tagdata::Sentence &sentence,
                               std::size_t task_index) {
  return Predict(model, TokenIndices(model, sentence.tokens), task_index);
}

std::vector<tagdata::LabelSequence> PredictBatch(
    const Model &model, std::span<const std::vector<std::size_t>> sentences,
    std::size_t task_index) {
  if (task_index >= model.num_tasks()) {
    throw TaskError("no head with index " + std::to_string(task_index));
  }
  std::vector<tagdata::LabelSequence> out(sentences.size());
  const auto n = static_cast<std::int64_t>(sentences.size());
  // Exceptions must not escape an OpenMP region; validate up front instead.
  for (const auto &s : sentences) {
    if (s.empty()) throw ContractError("cannot tag an empty sentence");
    for (std::size_t idx : s) {
      if (idx >= model.vocab().size()) {
        throw VocabError("token index " + std::to_string(idx) +
                         " outside vocabulary");
      }
    }
  }
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = Predict(model, sentences[i], task_index);
  }
  return out;
}

}  // namespace kbc::taggernet

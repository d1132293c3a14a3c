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
#ifndef KBC_TAGGERNET_MODEL_H_
#define KBC_TAGGERNET_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kbc/numcore/graph.h"
#include "kbc/numcore/random.h"
#include "kbc/numcore/tensor.h"
#include "kbc/tagdata/embeddings.h"
#include "kbc/tagdata/types.h"
#include "kbc/tagdata/vocab.h"
#include "kbc/taggernet/lstm.h"

namespace kbc::taggernet {

struct TaggerConfig {
  std::size_t d_embed = 50;
  std::size_t d_hidden = 50;
  std::size_t n_layers = 3;
  double input_dropout = 0.1;
  std::uint64_t seed = 1;
  bool freeze_embeddings = false;
  // Peephole connections are not implemented; the flag must stay false.
  bool peepholes = false;

  // Throws ConfigError on out-of-range values.
  void Validate() const;
  friend bool operator==(const TaggerConfig &, const TaggerConfig &) = default;
};

struct BiLstmLayer {
  LstmCellParams forward;   // left to right
  LstmCellParams backward;  // right to left
};

// Independent classification function of one task over the shared top layer.
struct TaskHead {
  tagdata::TaskSpec task;
  numcore::Parameter w;  // 2 d_hidden x |L^t|
  numcore::Parameter b;  // |L^t|
};

// Hard parameter sharing: an embedding table and a stack of bidirectional
// LSTM layers shared by all tasks, plus one affine + softmax head per task.
class Model {
 public:
  // Randomly initialized from config.seed. When embeddings is given it
  // replaces the random embedding table (row count must equal |V|).
  Model(TaggerConfig config, tagdata::Vocabulary vocab,
        std::vector<tagdata::TaskSpec> tasks,
        std::optional<tagdata::EmbeddingTable> embeddings = std::nullopt);

  const TaggerConfig &config() const { return config_; }
  const tagdata::Vocabulary &vocab() const { return vocab_; }

  numcore::Parameter &embeddings() { return embeddings_; }
  const numcore::Parameter &embeddings() const { return embeddings_; }
  std::vector<BiLstmLayer> &layers() { return layers_; }
  const std::vector<BiLstmLayer> &layers() const { return layers_; }
  std::vector<TaskHead> &heads() { return heads_; }
  const std::vector<TaskHead> &heads() const { return heads_; }

  std::size_t num_tasks() const { return heads_.size(); }
  const tagdata::TaskSpec &task(std::size_t index) const {
    return heads_.at(index).task;
  }
  // Index of the head named name; TaskError when absent.
  std::size_t TaskIndex(const std::string &name) const;
  std::size_t encoding_dim() const { return 2 * config_.d_hidden; }

  // Embedding table and every LSTM block, in a fixed order.
  std::vector<numcore::Parameter *> EncoderParameters();
  std::vector<numcore::Parameter *> HeadParameters(std::size_t task_index);
  // Encoder parameters followed by every head, in task order.
  std::vector<numcore::Parameter *> AllParameters();
  std::vector<const numcore::Parameter *> AllParameters() const;

  void ZeroGrad();

 private:
  TaggerConfig config_;
  tagdata::Vocabulary vocab_;
  numcore::Parameter embeddings_;
  std::vector<BiLstmLayer> layers_;
  std::vector<TaskHead> heads_;
};

// Vocabulary indices of a token sequence.
std::vector<std::size_t> TokenIndices(const Model &model,
                                      const std::vector<std::string> &tokens);

// Gold tag indices under task; LabelError for tags outside L^t.
std::vector<std::size_t> TagIndices(const tagdata::TaskSpec &task,
                                    const tagdata::LabelSequence &tags);

// Shared encoder: embedding lookup, inverted input dropout (train_mode only;
// rng required then), n_layers bidirectional layers each consuming the
// concatenated [forward, backward] output of the layer below. Returns the
// n x 2 d_hidden top-layer encoding. VocabError for out-of-range indices.
numcore::Var Encode(numcore::Graph &graph, Model &model,
                    std::span<const std::size_t> tokens, bool train_mode,
                    numcore::Rng *rng);
numcore::Var Encode(numcore::Graph &graph, const Model &model,
                    std::span<const std::size_t> tokens, bool train_mode,
                    numcore::Rng *rng);

// n x |L^t| tag logits of task head task_index over an encoding.
numcore::Var HeadLogits(numcore::Graph &graph, Model &model, numcore::Var encoding,
                        std::size_t task_index);
numcore::Var HeadLogits(numcore::Graph &graph, const Model &model,
                        numcore::Var encoding, std::size_t task_index);

// Row-wise tag distributions, n x |L^t|.
numcore::Tensor Forward(const Model &model, std::span<const std::size_t> tokens,
                        std::size_t task_index, bool train_mode = false,
                        numcore::Rng *rng = nullptr);

// Sum over tokens of the per-token cross-entropy, as a differentiable node.
numcore::Var SentenceLoss(numcore::Graph &graph, Model &model,
                          std::span<const std::size_t> tokens,
                          std::span<const std::size_t> gold,
                          std::size_t task_index, bool train_mode,
                          numcore::Rng *rng);
numcore::Var SentenceLoss(numcore::Graph &graph, Model &model,
                          std::span<const std::size_t> tokens,
                          const tagdata::LabelSequence &gold,
                          std::size_t task_index, bool train_mode,
                          numcore::Rng *rng);

// Greedy per-token argmax (lowest tag index on ties) followed by BIO repair.
tagdata::LabelSequence Predict(const Model &model,
                               std::span<const std::size_t> tokens,
                               std::size_t task_index);
tagdata::LabelSequence Predict(const Model &model,
                               const tagdata::Sentence &sentence,
                               std::size_t task_index);

// Predictions for many token-index sequences. Sentences are distributed over
// OpenMP threads, each with its own graph; output order matches input order
// and equals calling Predict on each sentence.
std::vector<tagdata::LabelSequence> PredictBatch(
    const Model &model, std::span<const std::vector<std::size_t>> sentences,
    std::size_t task_index);

}  // namespace kbc::taggernet

#endif  // KBC_TAGGERNET_MODEL_H_

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
#ifndef KBC_APP_CONFIG_H_
#define KBC_APP_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "kbc/mtltrain/trainer.h"
#include "kbc/taggernet/model.h"

namespace kbc::app {

enum class CorpusFormat { kConll, kBrat };

CorpusFormat ParseFormat(const std::string &name);
const char *FormatName(CorpusFormat format);

struct DatasetConfig {
  std::string name;
  CorpusFormat format = CorpusFormat::kConll;
  std::filesystem::path train;
  std::optional<std::filesystem::path> test;
  // Used only when test is absent: a document-level split of train.
  double test_fraction = 1.0 / 3.0;
  std::uint64_t split_seed = 1;
};

struct EmbeddingConfig {
  std::filesystem::path path;
};

struct EvalFlags {
  bool labelled = true;
  bool unlabelled = true;
};

EvalFlags ParseEvalMode(const std::string &mode);  // labelled|unlabelled|both

// One experiment, i.e. one model variant of a results table:
//
//   {
//     "name": "BiLSTM + Multi-word",
//     "main": {"name": "semeval", "format": "brat", "train": "...",
//              "test": "...", "test_fraction": 0.3333, "split_seed": 1},
//     "aux":  {"name": "mwe", "format": "conll", "train": "..."},
//     "embeddings": {"path": "senna50.txt"},
//     "tagger": {"d_embed": 50, "d_hidden": 50, "n_layers": 3,
//                "input_dropout": 0.1, "seed": 1, "freeze_embeddings": false,
//                "lowercase_vocab": false},
//     "train": {"learning_rate": 0.001, "momentum": 0.9, "epochs": 10,
//               "seed": 1, "task_sampling": "uniform",
//               "checkpoint_every": 0, "max_grad_norm": 0},
//     "output_dir": "runs/semeval-mwe",
//     "eval": {"mode": "both"}
//   }
//
// Only "main" (with "train") and "output_dir" are required. Relative paths
// are resolved against the directory holding the config file.
struct ExperimentConfig {
  std::string name = "BiLSTM";
  DatasetConfig main;
  std::optional<DatasetConfig> aux;
  std::optional<EmbeddingConfig> embeddings;
  taggernet::TaggerConfig tagger;
  bool lowercase_vocab = false;
  mtltrain::TrainConfig train;
  std::filesystem::path output_dir;
  EvalFlags eval;

  // ConfigError on invalid values or missing input paths.
  void Validate() const;
  // Sets both the model-initialization and the training seed.
  void OverrideSeed(std::uint64_t seed);
};

ExperimentConfig ParseExperimentConfig(const nlohmann::json &doc,
                                       const std::filesystem::path &base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path &path);

// Fully resolved form, written as the run's config snapshot.
nlohmann::ordered_json ToJson(const ExperimentConfig &config);

}  // namespace kbc::app

#endif  // KBC_APP_CONFIG_H_

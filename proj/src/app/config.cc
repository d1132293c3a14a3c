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
#include "kbc/app/config.h"

#include <fstream>

#include "kbc/errors.h"

namespace kbc::app {

namespace fs = std::filesystem;
using nlohmann::json;

CorpusFormat ParseFormat(const std::string &name) {
  if (name == "conll") return CorpusFormat::kConll;
  if (name == "brat") return CorpusFormat::kBrat;
  throw ConfigError("unknown corpus format '" + name + "' (conll|brat)");
}

const char *FormatName(CorpusFormat format) {
  return format == CorpusFormat::kBrat ? "brat" : "conll";
}

EvalFlags ParseEvalMode(const std::string &mode) {
  if (mode == "both") return {true, true};
  if (mode == "labelled") return {true, false};
  if (mode == "unlabelled") return {false, true};
  throw ConfigError("unknown eval mode '" + mode +
                    "' (labelled|unlabelled|both)");
}

namespace {

const char *ModeString(const EvalFlags &f) {
  if (f.labelled && f.unlabelled) return "both";
  return f.labelled ? "labelled" : "unlabelled";
}

template <typename T>
T Get(const json &obj, const char *key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

fs::path Resolve(const fs::path &base, const std::string &p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void CheckKeys(const json &obj, const char *where,
               std::initializer_list<const char *> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto &[key, value] : obj.items()) {
    bool ok = false;
    for (const char *a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown field '" + key + "' in " + where);
  }
}

DatasetConfig ParseDataset(const json &obj, const char *where,
                           const fs::path &base) {
  CheckKeys(obj, where,
            {"name", "format", "train", "test", "test_fraction", "split_seed"});
  DatasetConfig d;
  d.name = Get<std::string>(obj, "name", where);
  d.format = ParseFormat(Get<std::string>(obj, "format", "conll"));
  if (!obj.contains("train")) {
    throw ConfigError(std::string(where) + ".train is required");
  }
  d.train = Resolve(base, Get<std::string>(obj, "train", ""));
  if (obj.contains("test")) d.test = Resolve(base, Get<std::string>(obj, "test", ""));
  d.test_fraction = Get<double>(obj, "test_fraction", d.test_fraction);
  d.split_seed = Get<std::uint64_t>(obj, "split_seed", d.split_seed);
  return d;
}

json DatasetJson(const DatasetConfig &d, bool with_test) {
  nlohmann::ordered_json j;
  j["name"] = d.name;
  j["format"] = FormatName(d.format);
  j["train"] = d.train.string();
  if (with_test) {
    if (d.test) {
      j["test"] = d.test->string();
    } else {
      j["test_fraction"] = d.test_fraction;
      j["split_seed"] = d.split_seed;
    }
  }
  return j;
}

}  // namespace

void ExperimentConfig::Validate() const {
  tagger.Validate();
  train.Validate();
  if (main.name.empty()) throw ConfigError("main.name must not be empty");
  if (aux && aux->name == main.name) {
    throw ConfigError("auxiliary task name must differ from the main task");
  }
  if (!main.test && !(main.test_fraction > 0.0 && main.test_fraction < 1.0)) {
    throw ConfigError("main.test_fraction must lie in (0, 1)");
  }
  if (output_dir.empty()) throw ConfigError("output_dir is required");
  auto require = [](const fs::path &p, const std::string &what) {
    if (!fs::exists(p)) throw ConfigError(what + " not found: " + p.string());
  };
  require(main.train, "main.train");
  if (main.test) require(*main.test, "main.test");
  if (aux) require(aux->train, "aux.train");
  if (embeddings) require(embeddings->path, "embeddings.path");
}

void ExperimentConfig::OverrideSeed(std::uint64_t seed) {
  tagger.seed = seed;
  train.seed = seed;
}

ExperimentConfig ParseExperimentConfig(const json &doc, const fs::path &base) {
  CheckKeys(doc, "config",
            {"name", "main", "aux", "embeddings", "tagger", "train",
             "output_dir", "eval"});
  ExperimentConfig c;
  c.name = Get<std::string>(doc, "name", c.name);
  if (!doc.contains("main")) throw ConfigError("main dataset is required");
  c.main = ParseDataset(doc.at("main"), "main", base);
  if (doc.contains("aux") && !doc.at("aux").is_null()) {
    c.aux = ParseDataset(doc.at("aux"), "aux", base);
    if (c.aux->test) throw ConfigError("aux.test is not used; remove it");
  }
  if (doc.contains("embeddings") && !doc.at("embeddings").is_null()) {
    const json &e = doc.at("embeddings");
    CheckKeys(e, "embeddings", {"path"});
    c.embeddings = EmbeddingConfig{Resolve(base, Get<std::string>(e, "path", ""))};
  }
  if (doc.contains("tagger")) {
    const json &t = doc.at("tagger");
    CheckKeys(t, "tagger",
              {"d_embed", "d_hidden", "n_layers", "input_dropout", "seed",
               "freeze_embeddings", "lowercase_vocab", "peepholes"});
    c.tagger.d_embed = Get<std::size_t>(t, "d_embed", c.tagger.d_embed);
    c.tagger.d_hidden = Get<std::size_t>(t, "d_hidden", c.tagger.d_hidden);
    c.tagger.n_layers = Get<std::size_t>(t, "n_layers", c.tagger.n_layers);
    c.tagger.input_dropout = Get<double>(t, "input_dropout", c.tagger.input_dropout);
    c.tagger.seed = Get<std::uint64_t>(t, "seed", c.tagger.seed);
    c.tagger.freeze_embeddings =
        Get<bool>(t, "freeze_embeddings", c.tagger.freeze_embeddings);
    c.tagger.peepholes = Get<bool>(t, "peepholes", c.tagger.peepholes);
    c.lowercase_vocab = Get<bool>(t, "lowercase_vocab", c.lowercase_vocab);
  }
  if (doc.contains("train")) {
    const json &t = doc.at("train");
    CheckKeys(t, "train",
              {"learning_rate", "momentum", "epochs", "seed", "task_sampling",
               "checkpoint_every", "max_grad_norm"});
    c.train.learning_rate = Get<double>(t, "learning_rate", c.train.learning_rate);
    c.train.momentum = Get<double>(t, "momentum", c.train.momentum);
    c.train.epochs = Get<std::size_t>(t, "epochs", c.train.epochs);
    c.train.seed = Get<std::uint64_t>(t, "seed", c.train.seed);
    const std::string sampling = Get<std::string>(t, "task_sampling", "uniform");
    if (sampling == "uniform") {
      c.train.task_sampling = mtltrain::TaskSampling::kUniform;
    } else if (sampling == "proportional") {
      c.train.task_sampling = mtltrain::TaskSampling::kProportional;
    } else {
      throw ConfigError("unknown task_sampling '" + sampling + "'");
    }
    c.train.checkpoint_every =
        Get<std::size_t>(t, "checkpoint_every", c.train.checkpoint_every);
    c.train.max_grad_norm = Get<double>(t, "max_grad_norm", c.train.max_grad_norm);
  }
  if (!doc.contains("output_dir")) throw ConfigError("output_dir is required");
  c.output_dir = Resolve(base, Get<std::string>(doc, "output_dir", ""));
  if (doc.contains("eval")) {
    const json &e = doc.at("eval");
    CheckKeys(e, "eval", {"mode"});
    c.eval = ParseEvalMode(Get<std::string>(e, "mode", "both"));
  }
  return c;
}

ExperimentConfig LoadExperimentConfig(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return ParseExperimentConfig(doc, fs::absolute(path).parent_path());
}

nlohmann::ordered_json ToJson(const ExperimentConfig &c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["main"] = DatasetJson(c.main, true);
  if (c.aux) j["aux"] = DatasetJson(*c.aux, false);
  if (c.embeddings) j["embeddings"] = {{"path", c.embeddings->path.string()}};
  nlohmann::ordered_json t;
  t["d_embed"] = c.tagger.d_embed;
  t["d_hidden"] = c.tagger.d_hidden;
  t["n_layers"] = c.tagger.n_layers;
  t["input_dropout"] = c.tagger.input_dropout;
  t["seed"] = c.tagger.seed;
  t["freeze_embeddings"] = c.tagger.freeze_embeddings;
  t["lowercase_vocab"] = c.lowercase_vocab;
  j["tagger"] = t;
  nlohmann::ordered_json tr;
  tr["learning_rate"] = c.train.learning_rate;
  tr["momentum"] = c.train.momentum;
  tr["epochs"] = c.train.epochs;
  tr["seed"] = c.train.seed;
  tr["task_sampling"] = c.train.task_sampling == mtltrain::TaskSampling::kUniform
                            ? "uniform"
                            : "proportional";
  tr["checkpoint_every"] = c.train.checkpoint_every;
  tr["max_grad_norm"] = c.train.max_grad_norm;
  j["train"] = tr;
  j["output_dir"] = c.output_dir.string();
  j["eval"] = {{"mode", ModeString(c.eval)}};
  return j;
}

}  // namespace kbc::app

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
#include "kbc/app/commands.h"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kbc/errors.h"
#include "kbc/kpeval/corpus_stats.h"
#include "kbc/kpeval/report_format.h"
#include "kbc/tagdata/brat.h"
#include "kbc/tagdata/conll.h"
#include "kbc/tagdata/embeddings.h"
#include "kbc/tagdata/split.h"
#include "kbc/tagdata/tokenizer.h"
#include "kbc/tagdata/vocab.h"
#include "kbc/taggernet/checkpoint.h"

namespace kbc::app {

namespace fs = std::filesystem;

namespace {

void WriteText(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::size_t MainTaskIndex(const taggernet::Model &model) {
  for (std::size_t t = 0; t < model.num_tasks(); ++t) {
    if (model.task(t).is_main) return t;
  }
  throw CompatibilityError("checkpoint has no main task head");
}

nlohmann::ordered_json IngestJson(const tagdata::IngestReport &r) {
  nlohmann::ordered_json j;
  j["sentences"] = r.sentences;
  j["tokens"] = r.tokens;
  j["repaired_tags"] = r.repaired_tags;
  j["expanded_spans"] = r.expanded_spans;
  j["dropped_overlaps"] = r.dropped_overlaps;
  j["empty_spans"] = r.empty_spans;
  j["dropped_ids"] = r.dropped_ids;
  return j;
}

}  // namespace

OutputLock::OutputLock(const fs::path &dir) : path_(dir / kLockFile) {
  fs::create_directories(dir);
  int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    throw ConfigError("output directory " + dir.string() +
                      " is in use (remove " + path_.string() +
                      " if no other run is active)");
  }
  std::string pid = std::to_string(::getpid()) + "\n";
  if (::write(fd, pid.data(), pid.size()) < 0) {
    // The lock is the file's existence; its content is informational only.
  }
  ::close(fd);
}

OutputLock::~OutputLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

tagdata::Corpus LoadCorpus(CorpusFormat format, const fs::path &path,
                           const std::string &task_name,
                           tagdata::IngestReport *report) {
  if (format == CorpusFormat::kConll) {
    return tagdata::ReadConll(path, task_name, report);
  }
  if (fs::is_directory(path)) {
    return tagdata::ReadBratDirectory(path, task_name, report);
  }
  fs::path txt = path, ann = path;
  txt.replace_extension(".txt");
  ann.replace_extension(".ann");
  return tagdata::ReadBrat(txt, ann, task_name, report);
}

MainSplit LoadMainSplit(const ExperimentConfig &config,
                        tagdata::IngestReport *report) {
  const DatasetConfig &d = config.main;
  MainSplit split;
  tagdata::Corpus train = LoadCorpus(d.format, d.train, d.name, report);
  if (d.test) {
    split.train = std::move(train);
    split.test = LoadCorpus(d.format, *d.test, d.name, report);
  } else {
    auto parts = tagdata::SplitCorpus(train, d.test_fraction, d.split_seed);
    split.train = std::move(parts.train);
    split.test = std::move(parts.test);
  }
  // The label schema is the union of both portions, so every gold type has
  // an output unit even if it never occurs in the training portion.
  std::vector<tagdata::LabelSequence> all = split.train.Labels();
  for (auto &seq : split.test.Labels()) all.push_back(std::move(seq));
  split.train.task = split.test.task =
      tagdata::TaskSpec::FromSequences(d.name, all, /*is_main=*/true);
  return split;
}

void WriteIngestReport(std::ostream &diag, const tagdata::IngestReport &r) {
  diag << "sentences: " << r.sentences << '\n'
       << "tokens: " << r.tokens << '\n'
       << "repaired_tags: " << r.repaired_tags << '\n'
       << "expanded_spans: " << r.expanded_spans << '\n'
       << "dropped_overlaps: " << r.dropped_overlaps << '\n'
       << "empty_spans: " << r.empty_spans << '\n';
  for (const auto &id : r.dropped_ids) diag << "dropped: " << id << '\n';
}

void CmdConvert(const ConvertOptions &opts, std::ostream &out,
                std::ostream &diag) {
  tagdata::IngestReport report;
  tagdata::Corpus corpus = LoadCorpus(opts.format, opts.input, opts.task_name, &report);
  if (opts.output) {
    tagdata::WriteConll(*opts.output, corpus);
  } else {
    tagdata::WriteConll(out, corpus);
  }
  WriteIngestReport(diag, report);
}

TrainOutcome CmdTrain(const ExperimentConfig &config, std::ostream &diag) {
  config.Validate();
  OutputLock lock(config.output_dir);
  WriteText(config.output_dir / kConfigSnapshot, ToJson(config).dump(2) + "\n");

  tagdata::IngestReport report;
  MainSplit split = LoadMainSplit(config, &report);
  std::optional<tagdata::Corpus> aux;
  if (config.aux) {
    aux = LoadCorpus(config.aux->format, config.aux->train, config.aux->name, &report);
  }
  WriteText(config.output_dir / kIngestReport, IngestJson(report).dump(2) + "\n");
  diag << "main train: " << split.train.size() << " sentences, test: "
       << split.test.size() << " sentences";
  if (aux) diag << ", aux " << aux->task.name << ": " << aux->size();
  diag << '\n';

  std::vector<const tagdata::Corpus *> corpora{&split.train};
  if (aux) corpora.push_back(&*aux);
  std::optional<std::vector<std::string>> emb_vocab;
  if (config.embeddings) emb_vocab = tagdata::ReadEmbeddingVocab(config.embeddings->path);
  tagdata::Vocabulary vocab = tagdata::BuildVocab(
      corpora, emb_vocab ? &*emb_vocab : nullptr, config.lowercase_vocab);

  std::optional<tagdata::EmbeddingTable> table;
  if (config.embeddings) {
    tagdata::EmbeddingCoverage cov;
    numcore::Rng seeder(config.tagger.seed);
    table = tagdata::LoadEmbeddings(config.embeddings->path, vocab,
                                    config.tagger.d_embed, seeder.Fork(), &cov);
    diag << "embeddings: " << cov.covered << "/" << cov.vocab_entries
         << " vocabulary entries covered (" << kpeval::Percent(cov.ratio())
         << "%)\n";
  }

  taggernet::Model model = mtltrain::MakeModel(
      config.tagger, std::move(vocab), split.train, aux ? &*aux : nullptr,
      std::move(table));
  mtltrain::TrainRun run(std::move(model), split.train, aux ? &*aux : nullptr);

  std::ofstream log(config.output_dir / kTrainLog, std::ios::binary);
  if (!log) throw IoError("cannot write training log");
  mtltrain::TrainHooks hooks;
  hooks.on_epoch = [&](const mtltrain::EpochRecord &r) {
    mtltrain::WriteTrainLogLine(log, r);
    log.flush();
    diag << "epoch " << r.epoch << " task " << r.task << " steps " << r.steps
         << " mean_loss " << r.mean_loss << '\n';
  };
  hooks.on_checkpoint = [&](std::size_t epoch, const taggernet::Model &m) {
    fs::create_directories(config.output_dir / kCheckpointDir);
    taggernet::WriteCheckpoint(config.output_dir / kCheckpointDir /
                                   ("epoch_" + std::to_string(epoch) + ".ckpt"),
                               m);
  };

  TrainOutcome outcome;
  outcome.log = mtltrain::Train(run, config.train, hooks);
  outcome.checkpoint = config.output_dir / kModelFile;
  taggernet::WriteCheckpoint(outcome.checkpoint, run.model());
  return outcome;
}

EvalOutcome CmdEval(const EvalOptions &opts, const tagdata::Corpus &test,
                    std::ostream &out, std::ostream &diag) {
  std::vector<tagdata::LabelSequence> gold = test.Labels();
  std::vector<tagdata::LabelSequence> pred;
  if (opts.gold_as_pred) {
    pred = gold;
  } else {
    if (!opts.checkpoint) throw ConfigError("eval needs a checkpoint");
    taggernet::Model model = taggernet::ReadCheckpoint(*opts.checkpoint);
    const std::size_t main = MainTaskIndex(model);
    const tagdata::TaskSpec &task = model.task(main);
    for (const auto &seq : gold) {
      for (const auto &tag : seq) {
        if (!task.Contains(tag)) {
          throw CompatibilityError("test tag '" + tag +
                                   "' is not in the checkpoint's tagset for " +
                                   task.name);
        }
      }
    }
    std::vector<std::vector<std::size_t>> inputs;
    inputs.reserve(test.size());
    for (const auto &ls : test.sentences) {
      inputs.push_back(taggernet::TokenIndices(model, ls.sentence.tokens));
    }
    pred = taggernet::PredictBatch(model, inputs, main);
  }

  EvalOutcome outcome;
  nlohmann::ordered_json report;
  report["model"] = opts.model_name;
  report["sentences"] = test.size();
  if (opts.modes.unlabelled) {
    outcome.unlabelled = kpeval::TokenPrf(gold, pred, kpeval::EvalMode::kUnlabelled);
    report["unlabelled"] = kpeval::ToJson(*outcome.unlabelled);
  }
  if (opts.modes.labelled) {
    outcome.labelled = kpeval::TokenPrf(gold, pred, kpeval::EvalMode::kLabelled);
    report["labelled"] = kpeval::ToJson(*outcome.labelled);
  }
  outcome.length = kpeval::LengthStratifiedReport(gold, pred);
  report["length"] = kpeval::ToJson(outcome.length);
  outcome.table = kpeval::FormatResultsTable(
      {{opts.model_name, outcome.unlabelled, outcome.labelled}});

  fs::create_directories(opts.out_dir);
  WriteText(opts.out_dir / kEvalReport, report.dump(2) + "\n");
  WriteText(opts.out_dir / kResultsTable, outcome.table);
  WriteText(opts.out_dir / kLengthTable, kpeval::FormatLengthReport(outcome.length));
  out << outcome.table;
  diag << "evaluated " << test.size() << " sentences\n";
  return outcome;
}

void CmdPredict(const PredictOptions &opts, std::ostream &out) {
  taggernet::Model model = taggernet::ReadCheckpoint(opts.checkpoint);
  const std::size_t task =
      opts.task ? model.TaskIndex(*opts.task) : MainTaskIndex(model);

  std::vector<std::vector<std::string>> sentences;
  if (opts.format == PredictInput::kText) {
    std::ifstream in(opts.input, std::ios::binary);
    if (!in) throw IoError("cannot open " + opts.input.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto tokens = tagdata::Tokenize(text);
    for (auto [begin, end] : tagdata::SegmentSentences(text, tokens)) {
      std::vector<std::string> words;
      for (std::size_t i = begin; i < end; ++i) words.push_back(tokens[i].text);
      sentences.push_back(std::move(words));
    }
  } else {
    tagdata::Corpus c = LoadCorpus(opts.format == PredictInput::kConll
                                       ? CorpusFormat::kConll
                                       : CorpusFormat::kBrat,
                                   opts.input, "input");
    for (auto &ls : c.sentences) sentences.push_back(std::move(ls.sentence.tokens));
  }

  std::vector<std::vector<std::size_t>> inputs;
  for (const auto &s : sentences) inputs.push_back(taggernet::TokenIndices(model, s));
  auto tags = taggernet::PredictBatch(model, inputs, task);
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (std::size_t i = 0; i < sentences[s].size(); ++i) {
      out << sentences[s][i] << '\t' << tags[s][i] << '\n';
    }
    out << '\n';
  }
}

void CmdStats(const StatsOptions &opts, std::ostream &out, std::ostream &diag) {
  tagdata::IngestReport report;
  tagdata::Corpus corpus = LoadCorpus(opts.format, opts.input, opts.name, &report);
  kpeval::CorpusStats stats = kpeval::ComputeCorpusStats(corpus);
  if (opts.json) {
    out << kpeval::ToJson(stats).dump(2) << '\n';
  } else {
    out << kpeval::FormatCorpusStats(opts.name, stats);
  }
  WriteIngestReport(diag, report);
}

}  // namespace kbc::app

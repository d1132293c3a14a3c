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
#ifndef KBC_APP_COMMANDS_H_
#define KBC_APP_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kbc/app/config.h"
#include "kbc/kpeval/length_report.h"
#include "kbc/kpeval/token_prf.h"
#include "kbc/mtltrain/trainer.h"
#include "kbc/tagdata/types.h"

namespace kbc::app {

// Files of an experiment output directory.
inline constexpr char kConfigSnapshot[] = "config.json";
inline constexpr char kModelFile[] = "model.ckpt";
inline constexpr char kCheckpointDir[] = "checkpoints";
inline constexpr char kTrainLog[] = "train_log.jsonl";
inline constexpr char kIngestReport[] = "ingest_report.json";
inline constexpr char kEvalDir[] = "eval";
inline constexpr char kEvalReport[] = "eval_report.json";
inline constexpr char kResultsTable[] = "results_table.txt";
inline constexpr char kLengthTable[] = "length_report.txt";
inline constexpr char kLockFile[] = ".lock";

// Exclusive use of an output directory for the lifetime of the object.
// ConfigError when another process holds the lock.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path &dir);
  ~OutputLock();
  OutputLock(const OutputLock &) = delete;
  OutputLock &operator=(const OutputLock &) = delete;

 private:
  std::filesystem::path path_;
};

// brat input may be a directory of .txt/.ann pairs or one .ann/.txt file.
tagdata::Corpus LoadCorpus(CorpusFormat format, const std::filesystem::path &path,
                           const std::string &task_name,
                           tagdata::IngestReport *report = nullptr);

struct MainSplit {
  tagdata::Corpus train;
  tagdata::Corpus test;
};

// The main task's train and test portions: the configured test file, or a
// document-level split of the training file.
MainSplit LoadMainSplit(const ExperimentConfig &config,
                        tagdata::IngestReport *report = nullptr);

// One line per counter, then one line per dropped annotation id.
void WriteIngestReport(std::ostream &diag, const tagdata::IngestReport &report);

struct ConvertOptions {
  CorpusFormat format = CorpusFormat::kBrat;
  std::filesystem::path input;
  std::optional<std::filesystem::path> output;  // stdout when absent
  std::string task_name = "main";
};
void CmdConvert(const ConvertOptions &opts, std::ostream &out, std::ostream &diag);

struct TrainOutcome {
  std::filesystem::path checkpoint;
  std::vector<mtltrain::EpochRecord> log;
};
// Builds the shared vocabulary over main + auxiliary training data, loads
// embeddings, trains, and writes the config snapshot, final checkpoint,
// periodic checkpoints, ingest report, and training log to output_dir.
TrainOutcome CmdTrain(const ExperimentConfig &config, std::ostream &diag);

struct EvalOptions {
  std::optional<std::filesystem::path> checkpoint;  // required unless gold_as_pred
  std::filesystem::path out_dir;
  EvalFlags modes;
  bool gold_as_pred = false;  // debug: score the gold tags against themselves
  std::string model_name = "BiLSTM";
};
struct EvalOutcome {
  std::optional<kpeval::EvalReport> unlabelled;
  std::optional<kpeval::EvalReport> labelled;
  std::vector<kpeval::LengthBucket> length;
  std::string table;
};
// Tags the test corpus with the checkpoint's main head and writes the
// report files to out_dir; the results table also goes to out.
// CompatibilityError when the test data uses tags the model cannot emit.
EvalOutcome CmdEval(const EvalOptions &opts, const tagdata::Corpus &test,
                    std::ostream &out, std::ostream &diag);

enum class PredictInput { kText, kConll, kBrat };
struct PredictOptions {
  std::filesystem::path checkpoint;
  std::filesystem::path input;
  PredictInput format = PredictInput::kText;
  std::optional<std::string> task;  // main task when absent
};
// Text input: one sentence per line, tokenized like brat text. Emits
// two-column CoNLL with predicted tags.
void CmdPredict(const PredictOptions &opts, std::ostream &out);

struct StatsOptions {
  CorpusFormat format = CorpusFormat::kBrat;
  std::filesystem::path input;
  std::string name = "corpus";
  bool json = false;
};
void CmdStats(const StatsOptions &opts, std::ostream &out, std::ostream &diag);

}  // namespace kbc::app

#endif  // KBC_APP_COMMANDS_H_

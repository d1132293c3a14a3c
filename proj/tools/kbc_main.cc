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
// kbc: keyphrase boundary classification experiments.
//
//   kbc convert --format brat --input DIR [--output FILE]
//   kbc train   --config EXP.json [--seed N] [--out DIR]
//   kbc eval    --config EXP.json [--out DIR] [--mode labelled|unlabelled|both]
//   kbc eval    --checkpoint M.ckpt --input TEST --format conll --out DIR
//   kbc predict --checkpoint M.ckpt --input FILE [--format text|conll|brat]
//   kbc stats   --input DIR --format brat [--name N] [--json]
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 NaN abort.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kbc/app/commands.h"
#include "kbc/app/config.h"
#include "kbc/errors.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

int ExitCodeFor(kbc::ErrorKind kind) {
  switch (kind) {
    case kbc::ErrorKind::kUsage:
      return kExitUsage;
    case kbc::ErrorKind::kNumerical:
      return kExitNumerical;
    case kbc::ErrorKind::kData:
    case kbc::ErrorKind::kContract:
      return kExitData;
  }
  return kExitData;
}

}  // namespace

int main(int argc, char **argv) {
  using namespace kbc::app;
  CLI::App app{"Keyphrase boundary classification with a multi-task BiLSTM tagger"};
  app.require_subcommand(1);

  std::string config_path, out_dir, mode = "both", input, format, output,
                           checkpoint, name, task;
  std::optional<std::uint64_t> seed;
  bool gold_as_pred = false, as_json = false;

  auto *convert = app.add_subcommand("convert", "Convert brat or CoNLL input to canonical CoNLL");
  convert->add_option("--input", input, "Input file or brat directory")->required();
  convert->add_option("--format", format, "brat|conll")->required();
  convert->add_option("--output", output, "Output CoNLL file (default: stdout)");
  convert->add_option("--task", task, "Task name recorded in the corpus");

  auto *train = app.add_subcommand("train", "Train a model from an experiment config");
  train->add_option("--config", config_path, "Experiment config (JSON)")->required();
  train->add_option("--seed", seed, "Override model and training seeds");
  train->add_option("--out", out_dir, "Override output directory");

  auto *eval = app.add_subcommand("eval", "Evaluate a checkpoint on a test set");
  eval->add_option("--config", config_path, "Experiment config (JSON)");
  eval->add_option("--checkpoint", checkpoint, "Model checkpoint");
  eval->add_option("--input", input, "Test corpus (with --checkpoint)");
  eval->add_option("--format", format, "brat|conll (with --input)");
  eval->add_option("--out", out_dir, "Report directory");
  eval->add_option("--mode", mode, "labelled|unlabelled|both");
  eval->add_option("--seed", seed, "Accepted for symmetry with train; unused");
  eval->add_option("--name", name, "Model name used in the results table");
  eval->add_flag("--gold-as-pred", gold_as_pred, "Debug: score gold against itself");

  auto *predict = app.add_subcommand("predict", "Tag raw text or a corpus with BIO labels");
  predict->add_option("--checkpoint", checkpoint, "Model checkpoint")->required();
  predict->add_option("--input", input, "Input file or brat directory")->required();
  predict->add_option("--format", format, "text|conll|brat (default text)");
  predict->add_option("--task", task, "Task head to use (default: main task)");

  auto *stats = app.add_subcommand("stats", "Keyphrase statistics of a training set");
  stats->add_option("--input", input, "Corpus file or brat directory");
  stats->add_option("--format", format, "brat|conll");
  stats->add_option("--config", config_path, "Use the main training set of a config");
  stats->add_option("--name", name, "Corpus name for the table header");
  stats->add_flag("--json", as_json, "Emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*convert) {
      ConvertOptions opts;
      opts.format = ParseFormat(format);
      opts.input = input;
      if (!output.empty()) opts.output = output;
      if (!task.empty()) opts.task_name = task;
      CmdConvert(opts, std::cout, std::cerr);
    } else if (*train) {
      ExperimentConfig cfg = LoadExperimentConfig(config_path);
      if (seed) cfg.OverrideSeed(*seed);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      TrainOutcome outcome = CmdTrain(cfg, std::cerr);
      std::cout << outcome.checkpoint.string() << '\n';
    } else if (*eval) {
      EvalOptions opts;
      opts.modes = ParseEvalMode(mode);
      opts.gold_as_pred = gold_as_pred;
      kbc::tagdata::Corpus test;
      if (!config_path.empty()) {
        ExperimentConfig cfg = LoadExperimentConfig(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (*eval->get_option("--mode")) cfg.eval = opts.modes;
        opts.modes = cfg.eval;
        opts.model_name = cfg.name;
        opts.checkpoint = checkpoint.empty()
                              ? cfg.output_dir / kModelFile
                              : std::filesystem::path(checkpoint);
        opts.out_dir = cfg.output_dir / kEvalDir;
        test = LoadMainSplit(cfg).test;
      } else {
        if (input.empty() || format.empty() || out_dir.empty()) {
          throw kbc::ConfigError(
              "eval needs --config, or --input, --format and --out");
        }
        if (!checkpoint.empty()) opts.checkpoint = checkpoint;
        opts.out_dir = out_dir;
        test = LoadCorpus(ParseFormat(format), input, "test");
      }
      if (!name.empty()) opts.model_name = name;
      CmdEval(opts, test, std::cout, std::cerr);
    } else if (*predict) {
      PredictOptions opts;
      opts.checkpoint = checkpoint;
      opts.input = input;
      if (format.empty() || format == "text") {
        opts.format = PredictInput::kText;
      } else if (format == "conll") {
        opts.format = PredictInput::kConll;
      } else if (format == "brat") {
        opts.format = PredictInput::kBrat;
      } else {
        throw kbc::ConfigError("unknown predict format '" + format + "'");
      }
      if (!task.empty()) opts.task = task;
      CmdPredict(opts, std::cout);
    } else if (*stats) {
      StatsOptions opts;
      opts.json = as_json;
      if (!config_path.empty()) {
        ExperimentConfig cfg = LoadExperimentConfig(config_path);
        opts.format = cfg.main.format;
        opts.input = cfg.main.train;
        opts.name = cfg.main.name;
      } else {
        if (input.empty() || format.empty()) {
          throw kbc::ConfigError("stats needs --config, or --input and --format");
        }
        opts.format = ParseFormat(format);
        opts.input = input;
      }
      if (!name.empty()) opts.name = name;
      CmdStats(opts, std::cout, std::cerr);
    }
  } catch (const kbc::Error &e) {
    std::cerr << "kbc: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "kbc: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "kbc: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

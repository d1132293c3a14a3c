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
#ifndef KBC_KPEVAL_REPORT_FORMAT_H_
#define KBC_KPEVAL_REPORT_FORMAT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbc/kpeval/corpus_stats.h"
#include "kbc/kpeval/length_report.h"
#include "kbc/kpeval/token_prf.h"

namespace kbc::kpeval {

// One model variant: a row of the results table.
struct ResultRow {
  std::string model;
  std::optional<EvalReport> unlabelled;
  std::optional<EvalReport> labelled;
};

// Aligned text table with Precision/Recall/F1 for the unlabelled and the
// labelled block, as percentages with two decimals. The best F1 of each
// block is marked with '*'; a missing block renders as dashes.
std::string FormatResultsTable(const std::vector<ResultRow> &rows);

// Percentage with two decimals, e.g. 0.7242 -> "72.42".
std::string Percent(double ratio);

// Machine-readable forms. Keys keep insertion order, so dumps are
// byte-stable for equal inputs.
nlohmann::ordered_json ToJson(const PrfCounts &counts);
nlohmann::ordered_json ToJson(const EvalReport &report);
nlohmann::ordered_json ToJson(const std::vector<LengthBucket> &buckets);
nlohmann::ordered_json ToJson(const CorpusStats &stats);

// Corpus characteristics as a two-column table in the order: number of
// keyphrases, singleton share, single-word share, length >= 2, >= 3, >= 5.
std::string FormatCorpusStats(const std::string &corpus_name,
                              const CorpusStats &stats);

std::string FormatLengthReport(const std::vector<LengthBucket> &buckets);

}  // namespace kbc::kpeval

#endif  // KBC_KPEVAL_REPORT_FORMAT_H_
